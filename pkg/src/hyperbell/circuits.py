"""Gate-level IR, hypergraph-state compilation, simulation, and sampling.

Circuits use H, CZ, Toffoli, U3 and Measure.  Hyperedges compile to
controlled-Z ladders: sizes 1..3 directly (a CCZ is H-Toffoli-H on the
last edge qubit), size k >= 4 ANDs the first k-1 edge qubits into a chain
of k-2 shared ancillas, applies one CZ from the last ancilla to the last
edge qubit, and uncomputes the chain so every ancilla returns to |0>.

Circuit qubit q corresponds to hypergraph vertex q+1; ancillas follow the
main register.  The simulator writes qubit q at bit (total-1-q), so the
main register occupies the high bits and discarding clean ancillas is a
stride-slice.

OpenQASM 2.0 emission covers the subset qreg/creg/h/cz/ccx/u3/measure and
round-trips through parse_qasm.
"""

import math
import re
from dataclasses import dataclass, field

import numpy as np

from ._kernels import backend
from .hyperstate import StateVector
from .mermin import expand_mermin

H_GATE = "h"
CZ_GATE = "cz"
TOFFOLI = "ccx"
U3_GATE = "u3"
MEASURE = "measure"

MAX_SIM_QUBITS = 14


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    params: tuple = ()
    clbit: int = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError("gate operands must be distinct")
        arity = {H_GATE: 1, CZ_GATE: 2, TOFFOLI: 3, U3_GATE: 1, MEASURE: 1}
        if self.kind not in arity:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != arity[self.kind]:
            raise ValueError(f"{self.kind} takes {arity[self.kind]} qubits")
        if self.kind == U3_GATE and len(self.params) != 3:
            raise ValueError("u3 takes three angles")
        if self.kind == MEASURE and self.clbit is None:
            raise ValueError("measure needs a classical bit")


@dataclass(frozen=True)
class Circuit:
    num_main: int
    num_ancillas: int = 0
    gates: tuple = field(default_factory=tuple)
    num_clbits: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        total = self.num_main + self.num_ancillas
        seen_measure = False
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < total:
                    raise ValueError(f"qubit {q} out of range")
            if g.kind == MEASURE:
                seen_measure = True
                if not 0 <= g.clbit < self.num_clbits:
                    raise ValueError("classical bit out of range")
            elif seen_measure:
                raise ValueError("measurements must come last")

    @property
    def total_qubits(self):
        return self.num_main + self.num_ancillas


def hypergraph_circuit(g):
    """Compile |G>: H everywhere, then one controlled-Z ladder per edge."""
    n = g.n
    # only the >= 4 ladders touch ancillas; sizes 1..3 compile in place
    n_anc = max((len(e) - 2 for e in g.edges if len(e) >= 4), default=0)
    gates = [Gate(H_GATE, (q,)) for q in range(n)]
    anc0 = n
    for edge in g.edges:
        qs = [v - 1 for v in edge]
        k = len(qs)
        if k == 1:
            gates.append(Gate(U3_GATE, (qs[0],), (0.0, 0.0, math.pi)))  # Z
        elif k == 2:
            gates.append(Gate(CZ_GATE, tuple(qs)))
        elif k == 3:
            gates.append(Gate(H_GATE, (qs[2],)))
            gates.append(Gate(TOFFOLI, (qs[0], qs[1], qs[2])))
            gates.append(Gate(H_GATE, (qs[2],)))
        else:
            ladder = [Gate(TOFFOLI, (qs[0], qs[1], anc0))]
            for i in range(2, k - 1):
                ladder.append(Gate(TOFFOLI, (qs[i], anc0 + i - 2, anc0 + i - 1)))
            gates.extend(ladder)
            gates.append(Gate(CZ_GATE, (anc0 + k - 3, qs[-1])))
            gates.extend(reversed(ladder))
    return Circuit(num_main=n, num_ancillas=n_anc, gates=gates)


def u3_matrix(theta, phi, lam):
    ct, st = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array(
        [
            [ct, -np.exp(1j * lam) * st],
            [np.exp(1j * phi) * st, np.exp(1j * (phi + lam)) * ct],
        ],
        dtype=np.complex128,
    )


def basis_change_u3(direction):
    """U3 angles rotating the measurement direction onto the Z axis.

    For v with polar angle t and azimuth p, U3(t, pi, -p - pi) equals the
    adjoint of the eigenbasis matrix P of v.sigma, so measuring Z after the
    rotation reproduces the v.sigma statistics.
    """
    return (direction.theta, math.pi, -direction.phi - math.pi)


def measurement_circuit(base, directions):
    """Append one basis-change U3 and one Measure per main qubit."""
    if len(directions) != base.num_main:
        raise ValueError("need one direction per main qubit")
    gates = list(base.gates)
    for q, d in enumerate(directions):
        gates.append(Gate(U3_GATE, (q,), basis_change_u3(d)))
    for q in range(base.num_main):
        gates.append(Gate(MEASURE, (q,), clbit=q))
    return Circuit(base.num_main, base.num_ancillas, gates, num_clbits=base.num_main)


_H_MAT = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2.0)


def simulate(c):
    """Run the gate list on |0...0>; Measure gates are ignored here."""
    total = c.total_qubits
    if total > MAX_SIM_QUBITS:
        raise ValueError(f"simulator capped at {MAX_SIM_QUBITS} qubits")
    amps = np.zeros(2**total, dtype=np.complex128)
    amps[0] = 1.0
    bit = lambda q: total - 1 - q  # noqa: E731 - tiny local alias
    for g in c.gates:
        if g.kind == H_GATE:
            m = _H_MAT
            backend.apply_single_qubit(
                amps, bit(g.qubits[0]), m[0, 0], m[0, 1], m[1, 0], m[1, 1]
            )
        elif g.kind == U3_GATE:
            m = u3_matrix(*g.params)
            backend.apply_single_qubit(
                amps, bit(g.qubits[0]), m[0, 0], m[0, 1], m[1, 0], m[1, 1]
            )
        elif g.kind == CZ_GATE:
            mask = (1 << bit(g.qubits[0])) | (1 << bit(g.qubits[1]))
            backend.phase_flip(amps, mask)
        elif g.kind == TOFFOLI:
            ctrl = (1 << bit(g.qubits[0])) | (1 << bit(g.qubits[1]))
            backend.apply_controlled_x(amps, ctrl, bit(g.qubits[2]))
        # MEASURE: no-op for the statevector
    return StateVector(total, amps)


def main_register_state(c, full=None, atol=1e-10):
    """Project onto ancillas = |0..0> and return the main-register state.

    Raises if any weight lives outside the clean-ancilla block.
    """
    if full is None:
        full = simulate(c)
    a = c.num_ancillas
    if a == 0:
        return full
    block = full.amps[:: 2**a].copy()
    leak = 1.0 - float(np.sum(np.abs(block) ** 2))
    if leak > atol:
        raise ValueError(f"ancillas not disentangled: leakage {leak:.3e}")
    return StateVector(c.num_main, block / np.linalg.norm(block))


def ancilla_purity(c, full=None):
    """tr(rho_anc^2) of the reduced ancilla state; 1 means disentangled."""
    if full is None:
        full = simulate(c)
    a = c.num_ancillas
    if a == 0:
        return 1.0
    psi = full.amps.reshape(2**c.num_main, 2**a)
    rho = psi.conj().T @ psi
    return float(np.real(np.trace(rho @ rho)))


@dataclass(frozen=True)
class ShotCounts:
    """Outcome bitstrings to counts; character position = classical bit."""

    counts: dict
    shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to the shot total")


def _measured_probs(c):
    meas = [g for g in c.gates if g.kind == MEASURE]
    if not meas:
        raise ValueError("circuit has no measurements")
    state = simulate(c)
    total = c.total_qubits
    probs = np.abs(state.amps.reshape([2] * total)) ** 2
    order = [g.qubits[0] for g in sorted(meas, key=lambda g: g.clbit)]
    rest = [q for q in range(total) if q not in order]
    p = probs.transpose(order + rest).reshape(2 ** len(order), -1).sum(axis=1)
    return p / p.sum(), len(order)


def sample(c, shots, seed=0):
    """Draw outcomes from the exact measured marginal; seeded, reproducible."""
    p, k = _measured_probs(c)
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, p)
    counts = {
        format(o, f"0{k}b"): int(cnt) for o, cnt in enumerate(draws) if cnt > 0
    }
    return ShotCounts(counts, int(shots))


def estimate_monomial(counts):
    """Parity estimator: mean of (-1)^(number of 1 bits) over shots."""
    if counts.shots == 0:
        raise ValueError("no shots")
    total = 0
    for bits, cnt in counts.counts.items():
        total += cnt * (-1) ** bits.count("1")
    return total / counts.shots


def _exact_parity_expectation(c):
    p, k = _measured_probs(c)
    signs = np.array([(-1) ** bin(o).count("1") for o in range(2**k)])
    return float(np.dot(p, signs))


def estimate_mermin(g, family, shots=None, seed=0):
    """Shot-based (or exact, shots=None) Mermin evaluation via circuits.

    One measurement circuit per nonzero expansion coefficient; estimates
    are combined with the coefficients.  Sampling seeds are split from
    `seed` per monomial, so the whole estimate is reproducible.
    """
    if family.n != g.n:
        raise ValueError("family size does not match hypergraph")
    value = 0.0
    for _, coeff, est in mermin_monomial_estimates(g, family, shots, seed):
        value += coeff * est
    return value


def mermin_monomial_estimates(g, family, shots=None, seed=0):
    """Yield (index, coefficient, estimate) per nonzero Mermin monomial."""
    exp = expand_mermin(g.n)
    base = hypergraph_circuit(g)
    nz = [i for i, c in enumerate(exp.coeffs) if c != 0.0]
    seeds = np.random.SeedSequence(seed).spawn(len(nz))
    out = []
    for child, i in zip(seeds, nz):
        dirs = [
            family.a_prime[j - 1] if (i >> (g.n - j)) & 1 else family.a[j - 1]
            for j in range(1, g.n + 1)
        ]
        mc = measurement_circuit(base, dirs)
        if shots is None:
            est = _exact_parity_expectation(mc)
        else:
            est = estimate_monomial(sample(mc, shots, child))
        out.append((i, float(exp.coeffs[i]), est))
    return out


# ---------------------------------------------------------------------------
# OpenQASM 2.0 subset

def emit_qasm(c):
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{c.total_qubits}];"]
    if c.num_clbits:
        lines.append(f"creg c[{c.num_clbits}];")
    for g in c.gates:
        if g.kind == MEASURE:
            lines.append(f"measure q[{g.qubits[0]}] -> c[{g.clbit}];")
        elif g.kind == U3_GATE:
            th, ph, lam = (repr(p) for p in g.params)
            lines.append(f"u3({th},{ph},{lam}) q[{g.qubits[0]}];")
        else:
            ops = ",".join(f"q[{q}]" for q in g.qubits)
            lines.append(f"{g.kind} {ops};")
    return "\n".join(lines) + "\n"


_QASM_GATE = re.compile(
    r"^(?P<name>h|cz|ccx)\s+(?P<ops>q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;$"
)
_QASM_U3 = re.compile(r"^u3\((?P<args>[^)]*)\)\s+q\[(?P<q>\d+)\]\s*;$")
_QASM_MEASURE = re.compile(r"^measure\s+q\[(?P<q>\d+)\]\s*->\s*c\[(?P<c>\d+)\]\s*;$")


def _qasm_float(token):
    token = token.strip().replace("pi", repr(math.pi))
    if not re.fullmatch(r"[0-9eE+\-.*/() ]+", token):
        raise ValueError(f"bad angle expression {token!r}")
    return float(eval(token, {"__builtins__": {}}))  # noqa: S307 - filtered above


def parse_qasm(text, num_main=None):
    """Parse the emitted subset back into a Circuit.

    The qreg is split into main and ancilla parts with `num_main` (defaults
    to the full register).
    """
    nq = nc = 0
    gates = []
    for raw in text.splitlines():
        line = raw.split("//")[0].strip()
        if not line or line.startswith(("OPENQASM", "include")):
            continue
        if m := re.fullmatch(r"qreg\s+q\[(\d+)\]\s*;", line):
            nq = int(m.group(1))
        elif m := re.fullmatch(r"creg\s+c\[(\d+)\]\s*;", line):
            nc = int(m.group(1))
        elif m := _QASM_MEASURE.fullmatch(line):
            gates.append(Gate(MEASURE, (int(m.group("q")),), clbit=int(m.group("c"))))
        elif m := _QASM_U3.fullmatch(line):
            args = [_qasm_float(t) for t in m.group("args").split(",")]
            gates.append(Gate(U3_GATE, (int(m.group("q")),), tuple(args)))
        elif m := _QASM_GATE.fullmatch(line):
            qs = tuple(int(x) for x in re.findall(r"q\[(\d+)\]", m.group("ops")))
            gates.append(Gate(m.group("name"), qs))
        else:
            raise ValueError(f"unsupported QASM line: {raw!r}")
    main = num_main if num_main is not None else nq
    return Circuit(main, nq - main, gates, num_clbits=nc)


def circuit_to_dict(c):
    gates = []
    for g in c.gates:
        d = {"kind": g.kind, "qubits": list(g.qubits)}
        if g.params:
            d["params"] = list(g.params)
        if g.clbit is not None:
            d["clbit"] = g.clbit
        gates.append(d)
    return {
        "qubits": c.num_main,
        "ancillas": c.num_ancillas,
        "clbits": c.num_clbits,
        "gates": gates,
    }


def circuit_from_dict(d):
    gates = [
        Gate(
            g["kind"],
            tuple(g["qubits"]),
            tuple(g.get("params", ())),
            g.get("clbit"),
        )
        for g in d["gates"]
    ]
    return Circuit(d["qubits"], d.get("ancillas", 0), gates, d.get("clbits", 0))
