"""Brute-force dense statevector oracle, independent of the package's
compilation path. Everything here is built from explicit gate matrices and
matrix exponentials; nothing is shared with the code under test."""
from __future__ import annotations

import math

import numpy as np

from qinject.frontend import Circuit, Gate, GateKind
from qinject.pauli import PauliString
from qinject.pbc import PBCProgram

_SQ = {
    GateKind.H: np.array([[1, 1], [1, -1]]) / math.sqrt(2),
    GateKind.S: np.diag([1, 1j]),
    GateKind.SDG: np.diag([1, -1j]),
    GateKind.X: np.array([[0, 1], [1, 0]]),
    GateKind.Y: np.array([[0, -1j], [1j, 0]]),
    GateKind.Z: np.diag([1, -1]),
}
_CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
_CZ = np.diag([1, 1, 1, -1])
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])

_PAULI = {"I": np.eye(2), "X": _SQ[GateKind.X], "Y": _SQ[GateKind.Y],
          "Z": _SQ[GateKind.Z]}


def gate_matrix(gate: Gate) -> np.ndarray:
    if gate.kind in _SQ:
        return _SQ[gate.kind].astype(complex)
    if gate.kind is GateKind.RZ:
        return np.diag([np.exp(-0.5j * gate.angle), np.exp(0.5j * gate.angle)])
    if gate.kind is GateKind.CX:
        return _CX.astype(complex)
    if gate.kind is GateKind.CZ:
        return _CZ.astype(complex)
    if gate.kind is GateKind.SWAP:
        return _SWAP.astype(complex)
    raise ValueError(f"no matrix for {gate.kind}")


def apply_unitary(state: np.ndarray, u: np.ndarray,
                  targets: tuple[int, ...], n: int) -> np.ndarray:
    """Apply a 2^k x 2^k unitary on the given qubit axes (qubit 0 = axis 0)."""
    k = len(targets)
    psi = state.reshape((2,) * n)
    u = np.asarray(u, dtype=complex).reshape((2,) * (2 * k))
    psi = np.tensordot(u, psi, axes=(list(range(k, 2 * k)), list(targets)))
    psi = np.moveaxis(psi, range(k), targets)
    return psi.reshape(-1)


def circuit_state(circuit: Circuit) -> np.ndarray:
    """Statevector of the unitary prefix (measurements excluded)."""
    n = circuit.num_qubits
    state = np.zeros(2 ** n, dtype=complex)
    state[0] = 1.0
    for gate in circuit.gates:
        if gate.kind is GateKind.MEASURE:
            continue
        state = apply_unitary(state, gate_matrix(gate), gate.targets, n)
    return state


def pauli_matrix(p: PauliString) -> np.ndarray:
    m = np.array([[p.sign]], dtype=complex)
    for letter in p.letters:
        m = np.kron(m, _PAULI[letter])
    return m


def rotation_unitary(p: PauliString, angle: float) -> np.ndarray:
    pm = pauli_matrix(p)
    dim = pm.shape[0]
    return math.cos(angle) * np.eye(dim) - 1j * math.sin(angle) * pm


def pbc_state(program: PBCProgram) -> np.ndarray:
    state = np.zeros(2 ** program.num_qubits, dtype=complex)
    state[0] = 1.0
    for rot in program.rotations:
        state = rotation_unitary(rot.pauli, rot.angle) @ state
    return state


def states_equal_up_to_phase(a: np.ndarray, b: np.ndarray,
                             tol: float = 1e-9) -> bool:
    idx = int(np.argmax(np.abs(a)))
    if abs(a[idx]) < tol:
        return bool(np.all(np.abs(b) < tol))
    phase = b[idx] / a[idx]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(a * phase - b)) < tol)


def direct_distribution(circuit: Circuit) -> dict[tuple[int, ...], float]:
    """Joint outcome distribution of the terminal Z measurements, keyed by
    bits in measure-gate order."""
    measured = [g.targets[0] for g in circuit.gates if g.kind is GateKind.MEASURE]
    state = circuit_state(circuit)
    n = circuit.num_qubits
    probs = np.abs(state.reshape((2,) * n)) ** 2
    dist: dict[tuple[int, ...], float] = {}
    for flat_idx, p in enumerate(probs.reshape(-1)):
        if p == 0:
            continue
        bits = [(flat_idx >> (n - 1 - q)) & 1 for q in range(n)]
        key = tuple(bits[q] for q in measured)
        dist[key] = dist.get(key, 0.0) + float(p)
    return dist


def pbc_distribution(program: PBCProgram) -> dict[tuple[int, ...], float]:
    """Joint distribution over the program's Pauli measurements, outcome bit
    b = (1 - eigenvalue)/2 per measurement in list order."""
    state = pbc_state(program)
    ops = [pauli_matrix(p) for p, _ in program.measurements]
    m = len(ops)
    dim = state.shape[0]
    dist: dict[tuple[int, ...], float] = {}
    for outcome in range(2 ** m):
        psi = state
        bits = []
        for i in range(m):
            bit = (outcome >> (m - 1 - i)) & 1
            sign = 1 - 2 * bit
            psi = 0.5 * (psi + sign * (ops[i] @ psi))
            bits.append(bit)
        p = float(np.vdot(psi, psi).real)
        if p > 0:
            dist[tuple(bits)] = p
    return dist


def distributions_close(a: dict, b: dict, tol: float = 1e-9) -> bool:
    keys = set(a) | set(b)
    return all(abs(a.get(k, 0.0) - b.get(k, 0.0)) <= tol for k in keys)


# ---------------------------------------------------------------------------
# Reference matrices for composite source gates (round-trip tests)
# ---------------------------------------------------------------------------

def _u3(theta, phi, lam):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -np.exp(1j * lam) * s],
                     [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]])


def _ctrl(u):
    dim = u.shape[0]
    out = np.eye(2 * dim, dtype=complex)
    out[dim:, dim:] = u
    return out


SOURCE_GATES: dict[str, tuple[int, int, object]] = {
    # name -> (arity, n_params, matrix builder)
    "x": (1, 0, lambda: _SQ[GateKind.X]),
    "y": (1, 0, lambda: _SQ[GateKind.Y]),
    "z": (1, 0, lambda: _SQ[GateKind.Z]),
    "h": (1, 0, lambda: _SQ[GateKind.H]),
    "s": (1, 0, lambda: _SQ[GateKind.S]),
    "sdg": (1, 0, lambda: _SQ[GateKind.SDG]),
    "t": (1, 0, lambda: np.diag([1, np.exp(0.25j * math.pi)])),
    "tdg": (1, 0, lambda: np.diag([1, np.exp(-0.25j * math.pi)])),
    "sx": (1, 0, lambda: 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])),
    "sxdg": (1, 0, lambda: 0.5 * np.array([[1 - 1j, 1 + 1j], [1 + 1j, 1 - 1j]])),
    "rx": (1, 1, lambda a: _u3(a, -math.pi / 2, math.pi / 2)),
    "ry": (1, 1, lambda a: _u3(a, 0, 0)),
    "rz": (1, 1, lambda a: np.diag([np.exp(-0.5j * a), np.exp(0.5j * a)])),
    "p": (1, 1, lambda a: np.diag([1, np.exp(1j * a)])),
    "u1": (1, 1, lambda a: np.diag([1, np.exp(1j * a)])),
    "u2": (1, 2, lambda a, b: _u3(math.pi / 2, a, b)),
    "u3": (1, 3, _u3),
    "u": (1, 3, _u3),
    "cx": (2, 0, lambda: _CX),
    "cz": (2, 0, lambda: _CZ),
    "cy": (2, 0, lambda: _ctrl(_SQ[GateKind.Y])),
    "ch": (2, 0, lambda: _ctrl(_SQ[GateKind.H])),
    "swap": (2, 0, lambda: _SWAP),
    "cp": (2, 1, lambda a: np.diag([1, 1, 1, np.exp(1j * a)])),
    "cu1": (2, 1, lambda a: np.diag([1, 1, 1, np.exp(1j * a)])),
    "crz": (2, 1, lambda a: np.diag([1, 1, np.exp(-0.5j * a), np.exp(0.5j * a)])),
    "ccx": (3, 0, lambda: _ctrl(_CX)),
    "cswap": (3, 0, lambda: _ctrl(_SWAP)),
}


def source_circuit_state(n: int, ops: list[tuple[str, tuple[int, ...], tuple[float, ...]]]):
    """Statevector of a composite-gate program evaluated from the reference
    matrices (no frontend involvement)."""
    state = np.zeros(2 ** n, dtype=complex)
    state[0] = 1.0
    for name, qubits, params in ops:
        _, _, builder = SOURCE_GATES[name]
        state = apply_unitary(state, builder(*params), qubits, n)
    return state


def render_qasm(n: int, ops, with_measure: bool = False) -> str:
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{n}];",
             f"creg c[{n}];"]
    for name, qubits, params in ops:
        args = ",".join(f"q[{q}]" for q in qubits)
        if params:
            ps = ",".join(repr(p) for p in params)
            lines.append(f"{name}({ps}) {args};")
        else:
            lines.append(f"{name} {args};")
    if with_measure:
        lines += [f"measure q[{q}] -> c[{q}];" for q in range(n)]
    return "\n".join(lines) + "\n"
