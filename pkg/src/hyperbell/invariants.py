"""Cayley hyperdeterminants and SLOCC stratum classification.

The 2x2x2 hyperdeterminant is the classical degree-4 polynomial; the
2x2x2x2 one is evaluated by the Schlaefli construction: leave the fourth
tensor slot symbolic, so each 2x2x2 entry becomes a linear form in
(z0, z1), take the 2x2x2 hyperdeterminant of that tensor of linear forms
(a binary quartic), and return the quartic's discriminant.  The result is
a degree-24 invariant under local SL(2) action; its vanishing is what
carries meaning, and it vanishes exactly when the state's hyperplane
section of the Segre variety is singular.
"""

from dataclasses import dataclass

import numpy as np

from . import singular

# 2x2x2 hyperdeterminant monomials as (coefficient, four slice indices).
# Slice index ijk is the integer 4i + 2j + k.
_SQ_PAIRS = [(0b000, 0b111), (0b001, 0b110), (0b010, 0b101), (0b011, 0b100)]
_HDET222_TERMS = (
    [(1, (a, a, b, b)) for a, b in _SQ_PAIRS]
    + [
        (-2, (a, b, c, d))
        for (a, b), (c, d) in [
            (_SQ_PAIRS[i], _SQ_PAIRS[j])
            for i in range(4)
            for j in range(i + 1, 4)
        ]
    ]
    + [(4, (0b000, 0b011, 0b101, 0b110)), (4, (0b001, 0b010, 0b100, 0b111))]
)


def cayley_hyperdet_222(t):
    """Hyperdeterminant of a 2x2x2 tensor (flat length-8 or (2,2,2) array)."""
    t = np.asarray(t, dtype=np.complex128).reshape(8)
    total = 0.0 + 0.0j
    for coef, (p, q, r, s) in _HDET222_TERMS:
        total += coef * t[p] * t[q] * t[r] * t[s]
    return complex(total)


@dataclass(frozen=True)
class BinaryQuartic:
    """q(z0, z1) = sum_k coeffs[k] z0^(4-k) z1^k."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        if len(c) != 5:
            raise ValueError("a binary quartic has 5 coefficients")
        object.__setattr__(self, "coeffs", c)


def schlafli_quartic(state):
    """2x2x2 hyperdeterminant of the tensor with the 4th slot symbolic.

    Each slice entry is the linear form a_{ijk0} z0 + a_{ijk1} z1; the
    hyperdeterminant's monomials are products of four such forms, expanded
    by coefficient convolution.
    """
    if state.n != 4:
        raise ValueError("Schlaefli construction needs a 4-qubit state")
    a = state.amps
    # linear form of slice ijk as [z0-coeff, z1-coeff]
    lin = [np.array([a[2 * m], a[2 * m + 1]]) for m in range(8)]
    q = np.zeros(5, dtype=np.complex128)
    for coef, (p, r, s, t) in _HDET222_TERMS:
        q += coef * np.convolve(np.convolve(lin[p], lin[r]), np.convolve(lin[s], lin[t]))
    return BinaryQuartic(tuple(q))


def quartic_invariants(q):
    """Degree-2 and degree-3 SL(2) invariants (I, J) of a binary quartic."""
    c0, c1, c2, c3, c4 = q.coeffs
    i_inv = 12 * c0 * c4 - 3 * c1 * c3 + c2**2
    j_inv = (
        72 * c0 * c2 * c4
        - 27 * c0 * c3**2
        - 27 * c1**2 * c4
        + 9 * c1 * c2 * c3
        - 2 * c2**3
    )
    return i_inv, j_inv


def quartic_discriminant(q):
    """Discriminant (4I^3 - J^2)/27.

    This normalization equals c0^6 prod_{i<j} (r_i - r_j)^2 over the roots,
    so it vanishes exactly on quartics with a repeated root (including at
    infinity).  Only the vanishing carries meaning downstream.
    """
    i_inv, j_inv = quartic_invariants(q)
    return (4 * i_inv**3 - j_inv**2) / 27


def hdet_2222(state):
    """Degree-24 hyperdeterminant of a 4-qubit state via Schlaefli."""
    return quartic_discriminant(schlafli_quartic(state))


def hdet_zero(state, rel=1e-10):
    """Zero test at `rel` relative to the largest combined monomial."""
    i_inv, j_inv = quartic_invariants(schlafli_quartic(state))
    value = (4 * i_inv**3 - j_inv**2) / 27
    scale = max(abs(4 * i_inv**3), abs(j_inv**2)) / 27
    return abs(value) <= rel * max(scale, 1e-300), value


@dataclass(frozen=True)
class StratumReport:
    hdet_value: complex
    hdet_zero: bool
    stratum: str  # Generic | Node | CuspCandidate | Undetermined
    evidence: object = None  # SectionReport when the section was analyzed


def classify_stratum(state, config=None):
    """Place a 4-qubit state in the dual-variety stratification.

    Generic (hyperdeterminant nonzero); otherwise the hyperplane section is
    analyzed: two or more singular points with full-rank Hessians put the
    state on the node component, any degenerate Hessian flags the cusp
    component, and anything weaker stays Undetermined.
    """
    if state.n != 4:
        raise ValueError("stratum classification is for 4-qubit states")
    is_zero, value = hdet_zero(state)
    if not is_zero:
        return StratumReport(value, False, "Generic")
    try:
        report = singular.analyze_section(state, config)
    except Exception as exc:  # noqa: BLE001 - classified, not hidden
        return StratumReport(value, True, "Undetermined", evidence=str(exc))
    pts = report.points
    if any(p.hessian_corank > 0 for p in pts):
        stratum = "CuspCandidate"
    elif len(pts) >= 2:
        stratum = "Node"
    else:
        stratum = "Undetermined"
    return StratumReport(value, True, stratum, evidence=report)


def stratum_report_to_dict(r):
    d = {
        "hdet": [r.hdet_value.real, r.hdet_value.imag],
        "hdet_zero": r.hdet_zero,
        "stratum": r.stratum,
        "points": [],
    }
    if r.evidence is not None and hasattr(r.evidence, "points"):
        d["points"] = [singular.point_to_dict(p) for p in r.evidence.points]
    return d
