"""Singularity analysis of hyperplane sections of the Segre variety.

A state phi cuts the variety of product states with the hyperplane
sum conj(a_m) x^(1)_{m_1} ... x^(n)_{m_n} = 0.  In each of the 2^n affine
charts (one homogeneous coordinate per factor set to 1) this is a
multilinear polynomial f; singular points of the section satisfy f = 0 and
grad f = 0.  We find them with a damped multistart Newton iteration on the
square system grad f = 0, filter by |f|, classify each point by the corank
of its Hessian (corank 0 is a Morse/A1 point), and merge points seen in
several charts by projective distance.

Non-isolated singular loci are detected heuristically, hence the verdict
name NonIsolatedCandidate; the signals are a large number of distinct
points, chains of points closer than the cluster tolerance, and families
of three or more points that all carry degenerate Hessians (a continuum of
singular points forces a Hessian kernel along itself).
"""

from dataclasses import dataclass, field

import numpy as np

from .hyperstate import build_hypergraph_state, k_uniform


def chart_mask(chart, n):
    """Accept an int mask or a length-n 0/1 tuple (factor j -> bit n-j)."""
    if isinstance(chart, (int, np.integer)):
        if not 0 <= chart < 2**n:
            raise ValueError("chart out of range")
        return int(chart)
    bits = tuple(int(b) for b in chart)
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise ValueError("chart must pick coordinate 0 or 1 per factor")
    m = 0
    for j, b in enumerate(bits, start=1):
        m |= b << (n - j)
    return m


@dataclass(frozen=True)
class SectionPolynomial:
    """Multilinear chart polynomial: coeffs[mask] multiplies prod of the
    variables whose factor bits are set in mask (bit n-j = variable j)."""

    n: int
    chart: int
    coeffs: np.ndarray


def section_polynomial(state, chart):
    """Substitute the chart's fixed coordinates into the hyperplane form.

    The coefficient of the monomial with variable-mask t is the conjugated
    amplitude conj(a_{t XOR chart}); real states give real coefficients.
    """
    c = chart_mask(chart, state.n)
    idx = np.arange(2**state.n)
    coeffs = np.conj(state.amps[idx ^ c])
    return SectionPolynomial(state.n, c, coeffs)


def _tables(poly):
    """Gradient and Hessian coefficient tables (n, 2^n) and (n, n, 2^n)."""
    n, co = poly.n, poly.coeffs
    size = 2**n
    bits = [1 << (n - j) for j in range(1, n + 1)]
    masks = np.arange(size)
    grad_t = np.zeros((n, size), dtype=np.complex128)
    hess_t = np.zeros((n, n, size), dtype=np.complex128)
    for i, bi in enumerate(bits):
        free = masks[(masks & bi) == 0]
        grad_t[i, free] = co[free | bi]
        for j, bj in enumerate(bits):
            if i == j:
                continue
            fr = masks[((masks & bi) == 0) & ((masks & bj) == 0)]
            hess_t[i, j, fr] = co[fr | bi | bj]
    return grad_t, hess_t


def _monomials(points, n):
    """(S, n) points -> (S, 2^n) table of all monomial values."""
    size = 2**n
    mono = np.empty((points.shape[0], size), dtype=np.complex128)
    mono[:, 0] = 1.0
    for mask in range(1, size):
        lsb = mask & -mask
        var = n - lsb.bit_length()  # variable index, 0-based
        mono[:, mask] = mono[:, mask ^ lsb] * points[:, var]
    return mono


def _f_grad_hess(points, poly, tables):
    grad_t, hess_t = tables
    n = poly.n
    mono = _monomials(points, n)
    f = mono @ poly.coeffs
    grad = mono @ grad_t.T
    hess = (mono @ hess_t.reshape(n * n, -1).T).reshape(-1, n, n)
    return f, grad, hess


def evaluate_direct(poly, point):
    """Independent slow evaluation path (per-monomial products) for audits."""
    total = 0.0 + 0.0j
    for mask in range(2**poly.n):
        term = poly.coeffs[mask]
        for j in range(1, poly.n + 1):
            if mask >> (poly.n - j) & 1:
                term = term * point[j - 1]
        total += term
    return complex(total)


def gradient_direct(poly, point):
    out = []
    for j in range(1, poly.n + 1):
        bj = 1 << (poly.n - j)
        acc = 0.0 + 0.0j
        for mask in range(2**poly.n):
            if not mask & bj:
                continue
            term = poly.coeffs[mask]
            for i in range(1, poly.n + 1):
                bi = 1 << (poly.n - i)
                if mask & bi and i != j:
                    term = term * point[i - 1]
            acc += term
        out.append(acc)
    return np.array(out)


@dataclass(frozen=True)
class SectionConfig:
    starts: int = 500  # Newton starts per chart
    max_iter: int = 50
    radius: float = 3.0  # start components uniform in this complex disk
    step_tol: float = 1e-12
    grad_tol: float = 1e-10
    f_tol: float = 1e-8
    borderline_grad: float = 1e-7  # residuals between accept and this band
    borderline_f: float = 1e-5  # are reported as Inconclusive evidence
    dedup_tol: float = 1e-6
    merge_tol: float = 1e-6
    corank_cutoff: float = 1e-7  # relative to the largest singular value
    cluster_tol: float = 1e-2
    many_points: int = 20
    max_merged: int = 200  # hard cap; beyond it the verdict is settled anyway
    seed: int = 0


def find_critical_points(poly, config=None, rng=None):
    """Multistart damped Newton on grad f = 0; returns accepted points."""
    pts, _ = _newton_search(poly, config or SectionConfig(), rng)
    return pts


def _newton_search(poly, config, rng=None):
    n = poly.n
    if rng is None:
        rng = np.random.default_rng(config.seed)
    tables = _tables(poly)
    radii = config.radius * np.sqrt(rng.uniform(size=(config.starts, n)))
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(config.starts, n))
    x = radii * np.exp(1j * angles)
    done = np.zeros(config.starts, dtype=bool)
    alive = np.ones(config.starts, dtype=bool)
    for _ in range(config.max_iter):
        act = np.where(alive & ~done)[0]
        if act.size == 0:
            break
        _, grad, hess = _f_grad_hess(x[act], poly, tables)
        gnorm = np.linalg.norm(grad, axis=1)
        delta = _solve_batch(hess, grad)
        scale = np.ones(act.size)
        trial = x[act] - delta
        for _ in range(3):  # halve the step while the gradient norm worsens
            _, g2, _ = _f_grad_hess(trial, poly, tables)
            worse = np.linalg.norm(g2, axis=1) > gnorm
            if not worse.any():
                break
            scale[worse] *= 0.5
            trial[worse] = x[act][worse] - scale[worse, None] * delta[worse]
        x[act] = trial
        moved = np.linalg.norm(scale[:, None] * delta, axis=1)
        done[act[moved <= config.step_tol]] = True
        alive[act[np.linalg.norm(trial, axis=1) > 1e8]] = False
    f, grad, _ = _f_grad_hess(x, poly, tables)
    gnorm = np.linalg.norm(grad, axis=1)
    fabs = np.abs(f)
    ok = alive & (gnorm <= config.grad_tol) & (fabs <= config.f_tol)
    borderline = (
        alive
        & ~ok
        & (gnorm <= config.borderline_grad)
        & (fabs <= config.borderline_f)
    )
    accepted = []
    for p in x[ok]:
        if not any(np.linalg.norm(p - q) <= config.dedup_tol for q in accepted):
            accepted.append(p.copy())
    stats = {
        "starts": config.starts,
        "converged": int(ok.sum()),
        "borderline": int(borderline.sum()),
        "discarded": int(config.starts - ok.sum() - borderline.sum()),
    }
    return accepted, stats


def _solve_batch(hess, grad):
    try:
        return np.linalg.solve(hess, grad[..., None])[..., 0]
    except np.linalg.LinAlgError:
        delta = np.empty_like(grad)
        for i in range(grad.shape[0]):
            try:
                delta[i] = np.linalg.solve(hess[i], grad[i])
            except np.linalg.LinAlgError:
                delta[i] = np.linalg.lstsq(hess[i], grad[i], rcond=None)[0]
        return delta


@dataclass(frozen=True)
class SingularPoint:
    chart: int
    affine: tuple  # coordinates in the discovery chart
    projective: tuple  # n pairs, each scaled so its larger entry is 1
    residual: float  # max(|f|, |grad f|) at the point
    hessian_corank: int


def _projective_rep(affine, n, chart):
    rep = []
    for j in range(1, n + 1):
        fixed = (chart >> (n - j)) & 1
        pair = (1.0 + 0.0j, complex(affine[j - 1]))
        if fixed == 1:
            pair = (pair[1], pair[0])
        if abs(pair[0]) >= abs(pair[1]):
            rep.append((1.0 + 0.0j, pair[1] / pair[0]))
        else:
            rep.append((pair[0] / pair[1], 1.0 + 0.0j))
    return tuple(rep)


def projective_distance(a, b):
    """Max over factors of the 2x2 cross-product modulus."""
    return max(
        abs(p0 * q1 - p1 * q0) for (p0, p1), (q0, q1) in zip(a, b)
    )


def classify_point(poly, point, config=None):
    """Package a critical point with its residual and Hessian corank."""
    config = config or SectionConfig()
    pt = np.asarray(point, dtype=np.complex128)
    tables = _tables(poly)
    f, grad, hess = _f_grad_hess(pt[None, :], poly, tables)
    residual = max(abs(f[0]), float(np.linalg.norm(grad[0])))
    svals = np.linalg.svd(hess[0], compute_uv=False)
    if svals[0] == 0:
        corank = poly.n
    else:
        corank = int(np.sum(svals < config.corank_cutoff * svals[0]))
    return SingularPoint(
        chart=poly.chart,
        affine=tuple(complex(v) for v in pt),
        projective=_projective_rep(pt, poly.n, poly.chart),
        residual=residual,
        hessian_corank=corank,
    )


@dataclass(frozen=True)
class SectionReport:
    verdict: str  # Smooth | IsolatedSingular | NonIsolatedCandidate | Inconclusive
    points: tuple  # merged SingularPoints
    counts_by_corank: dict
    diagnostics: dict = field(default_factory=dict)


def analyze_section(state, config=None):
    """Search all 2^n charts, merge projectively, and classify.

    Smooth means no point survived an exhaustive multistart budget in any
    chart.  The NonIsolated verdict is heuristic (see module docstring).
    """
    config = config or SectionConfig()
    n = state.n
    if n > 7:
        raise ValueError("section analysis capped at n <= 7")
    children = np.random.SeedSequence(config.seed).spawn(2**n)
    merged = []
    per_chart = {}
    borderline_total = 0
    truncated = False
    for chart in range(2**n):
        poly = section_polynomial(state, chart)
        rng = np.random.default_rng(children[chart])
        raw, stats = _newton_search(poly, config, rng)
        per_chart[chart] = stats
        borderline_total += stats["borderline"]
        for aff in raw:
            point = classify_point(poly, aff, config)
            if any(
                projective_distance(point.projective, q.projective)
                <= config.merge_tol
                for q in merged
            ):
                continue
            if len(merged) >= config.max_merged:
                truncated = True
                break
            merged.append(point)
        if truncated:
            break
    counts = {}
    for p in merged:
        counts[p.hessian_corank] = counts.get(p.hessian_corank, 0) + 1
    verdict = _verdict(merged, borderline_total, truncated, config)
    diag = {"per_chart": per_chart, "borderline": borderline_total}
    if truncated:
        diag["truncated"] = True
    return SectionReport(verdict, tuple(merged), counts, diag)


def _verdict(points, borderline, truncated, config):
    if not points:
        return "Inconclusive" if borderline else "Smooth"
    if truncated or len(points) > config.many_points:
        return "NonIsolatedCandidate"
    if _has_cluster(points, config.cluster_tol):
        return "NonIsolatedCandidate"
    degenerate = sum(1 for p in points if p.hessian_corank > 0)
    if degenerate >= 3 and degenerate == len(points):
        return "NonIsolatedCandidate"
    if borderline:
        return "Inconclusive"
    return "IsolatedSingular"


def _has_cluster(points, tol):
    """A chain of >= 3 points whose neighbor gaps are all within tol."""
    m = len(points)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if projective_distance(points[i].projective, points[j].projective) <= tol:
                parent[find(i)] = find(j)
    sizes = {}
    for i in range(m):
        r = find(i)
        sizes[r] = sizes.get(r, 0) + 1
    return any(s >= 3 for s in sizes.values())


def kuniform_section_survey(n, k_range=None, config=None):
    """analyze_section over the k-uniform states of size n; verdict grid."""
    if n not in (5, 6):
        raise ValueError("survey covers n in {5, 6}")
    ks = list(k_range) if k_range is not None else list(range(2, n + 1))
    out = {}
    for k in ks:
        state = build_hypergraph_state(k_uniform(n, k))
        out[k] = analyze_section(state, config)
    return out


def point_to_dict(p):
    return {
        "chart": p.chart,
        "affine": [[v.real, v.imag] for v in p.affine],
        "projective": [
            [[z.real, z.imag] for z in pair] for pair in p.projective
        ],
        "residual": p.residual,
        "hessian_corank": p.hessian_corank,
    }


def report_to_dict(r):
    return {
        "verdict": r.verdict,
        "points": [point_to_dict(p) for p in r.points],
        "counts_by_corank": {str(k): v for k, v in r.counts_by_corank.items()},
        "diagnostics": {
            "borderline": r.diagnostics.get("borderline", 0),
            "truncated": r.diagnostics.get("truncated", False),
        },
    }
