"""Mermin polynomials and the non-locality invariants mu and mu-tilde.

M_1 = a_1 and M_n = 1/2 M_{n-1}(a_n + a_n') + 1/2 M'_{n-1}(a_n - a_n'),
where M' swaps every primed/unprimed observable and each a_j is a spin
observable alpha X + beta Y + gamma Z along a unit Bloch direction.  Local
realism bounds <M_n> by 1; quantum mechanics allows up to 2^((n-1)/2).

mu(psi) is the maximum of <psi|M_n|psi> over all 2n directions, and
mu-tilde maximizes <M_n>^2 + <M_n'>^2 under one shared family.  Both are
LU-invariants; mu-tilde > 2 witnesses states that are at least 3-entangled
and mu-tilde > 4 witnesses genuine 4-partite entanglement.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import backend
from .hyperstate import StateVector


@dataclass(frozen=True)
class BlochVector:
    """Unit direction on the Bloch sphere; inputs are renormalized."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        norm = math.sqrt(self.alpha**2 + self.beta**2 + self.gamma**2)
        if norm < 1e-12:
            raise ValueError("zero direction")
        object.__setattr__(self, "alpha", self.alpha / norm)
        object.__setattr__(self, "beta", self.beta / norm)
        object.__setattr__(self, "gamma", self.gamma / norm)

    @classmethod
    def from_angles(cls, theta, phi):
        """theta = polar angle from +Z, phi = azimuth from +X."""
        st = math.sin(theta)
        return cls(st * math.cos(phi), st * math.sin(phi), math.cos(theta))

    @property
    def theta(self):
        return math.acos(max(-1.0, min(1.0, self.gamma)))

    @property
    def phi(self):
        return math.atan2(self.beta, self.alpha)


@dataclass(frozen=True)
class ObservableFamily:
    """The 2n directions (a_1..a_n, a_1'..a_n') of one Mermin instance."""

    n: int
    a: tuple
    a_prime: tuple

    def __post_init__(self):
        if len(self.a) != self.n or len(self.a_prime) != self.n:
            raise ValueError("need n unprimed and n primed directions")
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "a_prime", tuple(self.a_prime))

    def interleaved_matrices(self):
        """(2n, 2, 2) array ordered [a_1, a_1', a_2, a_2', ...]."""
        mats = np.empty((2 * self.n, 2, 2), dtype=np.complex128)
        for j in range(self.n):
            mats[2 * j] = observable_matrix(self.a[j])
            mats[2 * j + 1] = observable_matrix(self.a_prime[j])
        return mats


def observable_matrix(v):
    """alpha X + beta Y + gamma Z as a 2x2 Hermitian matrix."""
    return np.array(
        [
            [v.gamma, v.alpha - 1j * v.beta],
            [v.alpha + 1j * v.beta, -v.gamma],
        ],
        dtype=np.complex128,
    )


@dataclass(frozen=True)
class MerminExpansion:
    """Coefficients of M_n (and M_n') over the 2^n prime-pattern monomials.

    Index i selects the monomial c_1...c_n with c_j primed iff bit (n-j)
    of i is 1, so index 0 is a_1...a_n and index 2^n - 1 is all-primed.
    """

    n: int
    coeffs: np.ndarray
    coeffs_prime: np.ndarray


def expand_mermin(n):
    """Unroll the recursion into explicit monomial coefficients."""
    if not 1 <= n <= 12:
        raise ValueError("n must be in 1..12")
    c = np.array([1.0, 0.0])  # M_1 = a_1
    for _ in range(2, n + 1):
        cp = c[::-1]  # primed swap is index complement, i.e. reversal
        nxt = np.empty(2 * c.shape[0])
        nxt[0::2] = 0.5 * (c + cp)
        nxt[1::2] = 0.5 * (c - cp)
        c = nxt
    return MerminExpansion(n, c, c[::-1].copy())


def monomial_expectation(state, directions):
    """<psi| c_1 x ... x c_n |psi> by sequential 2x2 application.

    Never materializes the 2^n x 2^n operator; cost O(n 2^n).
    """
    if len(directions) != state.n:
        raise ValueError("need one direction per qubit")
    v = state.amps.copy()
    for j, d in enumerate(directions, start=1):
        m = observable_matrix(d)
        backend.apply_single_qubit(v, state.n - j, m[0, 0], m[0, 1], m[1, 0], m[1, 1])
    val = np.vdot(state.amps, v)
    return float(val.real)


def mermin_expectation(state, family, use_prime=False):
    """<M_n> (or <M_n'>) as the coefficient-weighted sum of monomials."""
    if family.n != state.n:
        raise ValueError("family size does not match state")
    exp = expand_mermin(state.n)
    coeffs = exp.coeffs_prime if use_prime else exp.coeffs
    total = 0.0
    for i, c in enumerate(coeffs):
        if c == 0.0:
            continue
        dirs = [
            family.a_prime[j - 1] if (i >> (state.n - j)) & 1 else family.a[j - 1]
            for j in range(1, state.n + 1)
        ]
        total += c * monomial_expectation(state, dirs)
    return total


def mermin_pair_expectation(state, family):
    """(<M_n>, <M_n'>) through the pair recursion kernel."""
    mats = family.interleaved_matrices()
    return backend.mermin_pair(state.amps, state.n, mats)


@dataclass(frozen=True)
class OptimizationConfig:
    restarts: int = 20
    iterations: int = 5000
    initial_step: float = 0.5
    decay: float = 0.999
    seed: int = 0
    tolerance: float = 1e-12  # step-size floor; a restart stops below it

    def __post_init__(self):
        if self.restarts < 1 or self.iterations < 1:
            raise ValueError("budget must be positive")
        if not 0 < self.decay < 1:
            raise ValueError("decay must be in (0, 1)")
        if self.initial_step <= 0 or self.tolerance <= 0:
            raise ValueError("step and tolerance must be positive")


@dataclass(frozen=True)
class MuResult:
    value: float
    family: ObservableFamily
    trace: tuple  # best value reached by each restart


def _family_from_angles(n, thetas, phis):
    a = tuple(BlochVector.from_angles(thetas[2 * j], phis[2 * j]) for j in range(n))
    ap = tuple(
        BlochVector.from_angles(thetas[2 * j + 1], phis[2 * j + 1]) for j in range(n)
    )
    return ObservableFamily(n, a, ap)


def _optimize(state, config, tilde):
    """Seeded multistart hill-climb over the 4n spherical angles.

    Every iteration perturbs all angles with Gaussian noise scaled by the
    current step, accepts only improvements, and decays the step.  Restart
    streams are split from the master seed, so runs are reproducible and
    restarts could run in any order; ties go to the lowest restart index.
    """
    n = state.n
    if n > 9:
        raise ValueError("optimizer capped at n <= 9")
    amps = state.amps
    work = np.empty((6 * n + 2, amps.shape[0]), dtype=np.complex128)

    def objective(th, ph):
        m, mp = backend.mermin_objective(amps, n, th, ph, work)
        return m * m + mp * mp if tilde else m

    children = np.random.SeedSequence(config.seed).spawn(config.restarts)
    best_val = -np.inf
    best_angles = None
    trace = []
    for child in children:
        rng = np.random.default_rng(child)
        th = np.arccos(rng.uniform(-1.0, 1.0, 2 * n))
        ph = rng.uniform(0.0, 2.0 * np.pi, 2 * n)
        cur = objective(th, ph)
        step = config.initial_step
        for _ in range(config.iterations):
            if step < config.tolerance:
                break
            noise = rng.standard_normal(4 * n) * step
            th_c = th + noise[: 2 * n]
            ph_c = ph + noise[2 * n :]
            val = objective(th_c, ph_c)
            if val > cur:
                cur = val
                th, ph = th_c, ph_c
            step *= config.decay
        trace.append(cur)
        if cur > best_val:
            best_val = cur
            best_angles = (th, ph)
    family = _family_from_angles(n, *best_angles)
    return MuResult(float(best_val), family, tuple(trace))


def optimize_mu(state, config=None):
    """Maximize <M_n>; result is bounded by 2^((n-1)/2)."""
    return _optimize(state, config or OptimizationConfig(), tilde=False)


def optimize_mu_tilde(state, config=None):
    """Maximize <M_n>^2 + <M_n'>^2 under one shared family."""
    return _optimize(state, config or OptimizationConfig(), tilde=True)


@dataclass(frozen=True)
class WitnessReport:
    mu_tilde: float
    verdict: str

    THRESHOLD_3 = 2.0
    THRESHOLD_4 = 4.0


def entanglement_witness(mu_tilde):
    """Entanglement-depth witness from a mu-tilde value.

    Only violations carry information: mu_tilde > 4 certifies genuine
    4-partite entanglement, mu_tilde > 2 rules out 2-entangled states.
    Below both thresholds nothing is claimed (never separability).
    """
    if mu_tilde < 0:
        raise ValueError("mu_tilde is a maximum of squares, cannot be negative")
    if mu_tilde > WitnessReport.THRESHOLD_4:
        return WitnessReport(mu_tilde, "genuinely 4-entangled")
    if mu_tilde > WitnessReport.THRESHOLD_3:
        return WitnessReport(mu_tilde, "at least 3-entangled")
    return WitnessReport(mu_tilde, "inconclusive")


# ---------------------------------------------------------------------------
# serialization

def family_to_dict(f):
    return {
        "n": f.n,
        "a": [[v.alpha, v.beta, v.gamma] for v in f.a],
        "a_prime": [[v.alpha, v.beta, v.gamma] for v in f.a_prime],
    }


def family_from_dict(d):
    return ObservableFamily(
        int(d["n"]),
        tuple(BlochVector(*v) for v in d["a"]),
        tuple(BlochVector(*v) for v in d["a_prime"]),
    )


def mu_result_to_dict(r):
    return {
        "value": r.value,
        "family": family_to_dict(r.family),
        "trace": list(r.trace),
    }
