"""Hypergraph states: data model, construction, and inversion.

A hypergraph G = (V, E) on vertices {1..n} defines the n-qubit state
|G> = prod_{e in E} C_eZ |+>^n, where C_eZ negates the amplitude of every
basis state whose qubits in e are all 1.  All amplitudes of such a state
are +-1/sqrt(2^n), so the state is equivalently a Boolean sign function,
and the edge set is recoverable as the algebraic normal form of that
function (Moebius transform over the subset lattice).

Index convention: basis index i = a_{n-1} 2^{n-1} + ... + a_0, and vertex j
owns bit a_{n-j}.  Vertex 1 is the most significant bit.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

MAX_QUBITS = 12


def _canon_edges(edges):
    seen = set()
    out = []
    for e in edges:
        t = tuple(sorted(set(int(v) for v in e)))
        if not t:
            raise ValueError("empty edge")
        if t not in seen:
            seen.add(t)
            out.append(t)
    return tuple(sorted(out, key=lambda e: (len(e), e)))


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus a canonical (sorted, deduplicated) edge tuple."""

    n: int
    edges: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one vertex")
        object.__setattr__(self, "edges", _canon_edges(self.edges))
        for e in self.edges:
            for v in e:
                if not 1 <= v <= self.n:
                    raise ValueError(f"vertex {v} outside 1..{self.n}")

    def edge_mask(self, edge):
        """Bit mask of an edge under the vertex/bit convention."""
        m = 0
        for v in edge:
            m |= 1 << (self.n - v)
        return m


@dataclass(frozen=True)
class StateVector:
    """Dense unit-norm amplitude vector over 2^n basis states."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if a.shape != (2**self.n,):
            raise ValueError(f"expected {2**self.n} amplitudes, got {a.shape}")
        norm = np.linalg.norm(a)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |psi| = {norm}")
        a.flags.writeable = False
        object.__setattr__(self, "amps", a)

    def __eq__(self, other):
        return (
            isinstance(other, StateVector)
            and self.n == other.n
            and np.array_equal(self.amps, other.amps)
        )


def plus_state(n):
    """|+>^n: all 2^n amplitudes equal to 1/sqrt(2^n)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}")
    amp = 1.0 / math.sqrt(2**n)
    return StateVector(n, np.full(2**n, amp, dtype=np.complex128))


def apply_controlled_z(state, edge):
    """C_eZ: negate amplitudes where every vertex of `edge` has bit 1."""
    g = Hypergraph(state.n, [edge])
    mask = g.edge_mask(g.edges[0])
    amps = state.amps.copy()
    idx = np.arange(amps.shape[0])
    sel = (idx & mask) == mask
    amps[sel] = -amps[sel]
    return StateVector(state.n, amps)


def build_hypergraph_state(g):
    """prod_e C_eZ |+>^n.  The gates are diagonal, so order is irrelevant."""
    amps = plus_state(g.n).amps.copy()
    idx = np.arange(amps.shape[0])
    for e in g.edges:
        mask = g.edge_mask(e)
        sel = (idx & mask) == mask
        amps[sel] = -amps[sel]
    return StateVector(g.n, amps)


def phase_distance(a, b):
    """Largest amplitude deviation after aligning the global phase.

    The phase is read off the component where both states carry the most
    weight; sqrt(2 - 2|<a|b>|) would square away precision and bottom out
    near 1e-8, which is useless for 1e-12 equivalence checks.
    """
    if a.n != b.n:
        raise ValueError("states have different qubit counts")
    weight = np.abs(a.amps) * np.abs(b.amps)
    k = int(np.argmax(weight))
    if weight[k] == 0.0:
        return float(np.max(np.abs(a.amps - b.amps)))
    phase = b.amps[k] / a.amps[k]
    phase /= abs(phase)
    return float(np.max(np.abs(a.amps * phase - b.amps)))


def infer_hypergraph(state, tol=1e-9):
    """Invert build_hypergraph_state.

    Requires every amplitude to be +-1/sqrt(2^n) within `tol` (global phase
    fixed by forcing the all-zeros amplitude positive).  The sign pattern
    (-1)^f(i) is reduced to its algebraic normal form with the in-place XOR
    butterfly; the monomials of f are exactly the edges.
    """
    n = state.n
    amp = 1.0 / math.sqrt(2**n)
    a = state.amps
    if abs(a[0]) < tol:
        raise ValueError("not a hypergraph state: zero amplitude at |0...0>")
    a = a * (abs(a[0]) / a[0])
    if np.max(np.abs(np.abs(a.real) - amp)) > tol or np.max(np.abs(a.imag)) > tol:
        raise ValueError("not a hypergraph state: amplitudes off +-1/sqrt(2^n)")
    f = (a.real < 0).astype(np.uint8)
    # subset-lattice Moebius transform over GF(2); self-inverse
    for b in range(n):
        step = 1 << b
        idx = np.arange(2**n)
        hi = idx[(idx & step) != 0]
        f[hi] ^= f[hi ^ step]
    edges = []
    for m in np.nonzero(f)[0]:
        edges.append(tuple(n - p for p in range(n) if m >> p & 1))
    return Hypergraph(n, edges)


def k_uniform(n, k):
    """Hypergraph holding all C(n, k) edges of size k."""
    if not 1 <= k <= n:
        raise ValueError("k must be in 1..n")
    import itertools

    return Hypergraph(n, list(itertools.combinations(range(1, n + 1), k)))


def is_connected(g):
    """True iff the edges join all n vertices into one component."""
    parent = list(range(g.n + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        for v in e[1:]:
            parent[find(v)] = find(e[0])
    roots = {find(v) for v in range(1, g.n + 1)}
    return len(roots) == 1


# ---------------------------------------------------------------------------
# file formats

def hypergraph_to_dict(g):
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def hypergraph_from_dict(d):
    return Hypergraph(int(d["n"]), [tuple(e) for e in d["edges"]])


def state_to_dict(s):
    return {"n": s.n, "amps": [[float(a.real), float(a.imag)] for a in s.amps]}


def state_from_dict(d):
    try:
        amps = np.array([complex(re, im) for re, im in d["amps"]], dtype=np.complex128)
        n = int(d["n"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"not a statevector payload: {exc}") from exc
    return StateVector(n, amps)


def save_hypergraph(g, path):
    with open(path, "w") as fh:
        json.dump(hypergraph_to_dict(g), fh)


def load_hypergraph(path):
    with open(path) as fh:
        return hypergraph_from_dict(json.load(fh))


def save_state(s, path):
    with open(path, "w") as fh:
        json.dump(state_to_dict(s), fh)


def load_state(path):
    with open(path) as fh:
        return state_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class CatalogEntry:
    """Named reference state with optional expected invariant values.

    Carries a hypergraph, an explicit sign vector, or both; when both are
    present they must agree under build_hypergraph_state.
    """

    name: str
    hypergraph: Hypergraph = None
    signs: tuple = None
    expected_mu: float = None
    expected_mu_tilde: float = None
    expected_singularities: str = None

    def state(self):
        if self.signs is not None:
            n = (len(self.signs) - 1).bit_length()
            amp = 1.0 / math.sqrt(len(self.signs))
            return StateVector(n, amp * np.array(self.signs, dtype=np.complex128))
        return build_hypergraph_state(self.hypergraph)

    def graph(self):
        if self.hypergraph is not None:
            return self.hypergraph
        return infer_hypergraph(self.state())


def catalog_load(path):
    """Parse a line-delimited catalog file (one JSON object per line)."""
    entries = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                d = json.loads(line)
                entry = _entry_from_dict(d)
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad catalog entry: {exc}") from exc
            entries.append(entry)
    return entries


def _entry_from_dict(d):
    g = hypergraph_from_dict(d["hypergraph"]) if "hypergraph" in d else None
    signs = tuple(int(s) for s in d["signs"]) if "signs" in d else None
    if g is None and signs is None:
        raise ValueError("entry needs a hypergraph or a sign vector")
    if signs is not None and any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be +-1")
    exp = d.get("expected", {})
    entry = CatalogEntry(
        name=str(d["name"]),
        hypergraph=g,
        signs=signs,
        expected_mu=exp.get("mu"),
        expected_mu_tilde=exp.get("mu_tilde"),
        expected_singularities=exp.get("singular"),
    )
    if g is not None and signs is not None:
        built = build_hypergraph_state(g)
        if not np.allclose(built.amps, entry.state().amps, atol=1e-12):
            raise ValueError(f"entry {entry.name}: hypergraph and signs disagree")
    return entry


def default_catalog_path():
    import importlib.resources as res
    import os

    env = os.environ.get("HYPERBELL_CATALOG")
    if env:
        return env
    return str(res.files("hyperbell").joinpath("data/catalog.jsonl"))


def catalog_entry(name, path=None):
    """Look up one entry by name from the default (or given) catalog."""
    entries = catalog_load(path or default_catalog_path())
    for e in entries:
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")
