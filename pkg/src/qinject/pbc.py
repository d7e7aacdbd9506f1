"""Lowering circuits to Pauli-Based Computing programs.

Clifford gates are absorbed by conjugating the Z operators of later Rz
rotations and terminal measurements, leaving a sequence of non-Clifford
Pauli product rotations followed by Pauli product measurements.

Rotation convention: P(phi) = exp(-i * phi * P), so Rz(theta) maps to a
rotation with angle theta/2 on the conjugated Z string.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import NotCliffordError
from .frontend import CLIFFORD_KINDS, Circuit, Gate, GateKind
from .pauli import PauliString, multiply

_TWO_PI = 2 * math.pi
_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class PauliRotation:
    """exp(-i * angle * pauli); angle normalized into (-pi, pi]."""

    pauli: PauliString
    angle: float


@dataclass
class PBCProgram:
    num_qubits: int
    rotations: list[PauliRotation] = field(default_factory=list)
    measurements: list[tuple[PauliString, int]] = field(default_factory=list)
    name: str = ""

    def dump(self) -> str:
        """Line-oriented debug text: ROT <sign><letters> <angle> / MEAS ..."""
        lines = [f"ROT {r.pauli} {r.angle!r}" for r in self.rotations]
        lines += [f"MEAS {p}" for p, _ in self.measurements]
        return "\n".join(lines)


def normalize_angle(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    a = math.fmod(angle, _TWO_PI)
    if a <= -math.pi:
        a += _TWO_PI
    elif a > math.pi:
        a -= _TWO_PI
    return a


def _multiple_of(angle: float, unit: float) -> int | None:
    """Integer m with angle ~= m*unit, or None."""
    m = round(angle / unit)
    if abs(angle - m * unit) <= _ANGLE_TOL:
        return m
    return None


# ---------------------------------------------------------------------------
# Clifford conjugation: images of X/Z generators under g P g^dagger.
# Entries map (operand_index, letter) -> (sign, ((operand_index, letter), ...)).
# ---------------------------------------------------------------------------

_IMAGES: dict[GateKind, dict[tuple[int, str], tuple[int, tuple[tuple[int, str], ...]]]] = {
    GateKind.H: {
        (0, "X"): (1, ((0, "Z"),)),
        (0, "Z"): (1, ((0, "X"),)),
    },
    GateKind.S: {
        (0, "X"): (1, ((0, "Y"),)),
        (0, "Z"): (1, ((0, "Z"),)),
    },
    GateKind.SDG: {
        (0, "X"): (-1, ((0, "Y"),)),
        (0, "Z"): (1, ((0, "Z"),)),
    },
    GateKind.X: {
        (0, "X"): (1, ((0, "X"),)),
        (0, "Z"): (-1, ((0, "Z"),)),
    },
    GateKind.Y: {
        (0, "X"): (-1, ((0, "X"),)),
        (0, "Z"): (-1, ((0, "Z"),)),
    },
    GateKind.Z: {
        (0, "X"): (-1, ((0, "X"),)),
        (0, "Z"): (1, ((0, "Z"),)),
    },
    GateKind.CX: {
        (0, "X"): (1, ((0, "X"), (1, "X"))),
        (0, "Z"): (1, ((0, "Z"),)),
        (1, "X"): (1, ((1, "X"),)),
        (1, "Z"): (1, ((0, "Z"), (1, "Z"))),
    },
    GateKind.CZ: {
        (0, "X"): (1, ((0, "X"), (1, "Z"))),
        (0, "Z"): (1, ((0, "Z"),)),
        (1, "X"): (1, ((0, "Z"), (1, "X"))),
        (1, "Z"): (1, ((1, "Z"),)),
    },
    GateKind.SWAP: {
        (0, "X"): (1, ((1, "X"),)),
        (0, "Z"): (1, ((1, "Z"),)),
        (1, "X"): (1, ((0, "X"),)),
        (1, "Z"): (1, ((0, "Z"),)),
    },
}

_INVERSE = {GateKind.S: GateKind.SDG, GateKind.SDG: GateKind.S}

# single-letter product table, reused for assembling images of Y factors
from .pauli import _MUL  # noqa: E402


def inverse_gate(gate: Gate) -> Gate:
    """Inverse of a Clifford gate (all but S/Sdg are involutions)."""
    kind = _INVERSE.get(gate.kind, gate.kind)
    return Gate(kind, gate.targets)


def conjugate(clifford: Gate, p: PauliString) -> PauliString:
    """C P C^dagger for a Clifford gate C, with sign tracking."""
    if clifford.kind not in CLIFFORD_KINDS:
        raise NotCliffordError(f"{clifford.kind.name} is not a Clifford gate")
    images = _IMAGES[clifford.kind]
    out = list(p.letters)
    phase = 0 if p.sign == 1 else 2
    for pos, q in enumerate(clifford.targets):
        out[q] = "I"
    for pos, q in enumerate(clifford.targets):
        letter = p.letters[q]
        if letter == "I":
            continue
        has_x = letter in ("X", "Y")
        has_z = letter in ("Z", "Y")
        if has_x and has_z:
            phase += 1  # Y = i X Z
        for gen, present in (("X", has_x), ("Z", has_z)):
            if not present:
                continue
            sign, factors = images[(pos, gen)]
            if sign == -1:
                phase += 2
            for fpos, fletter in factors:
                fq = clifford.targets[fpos]
                new_letter, dk = _MUL[(out[fq], fletter)]
                out[fq] = new_letter
                phase += dk
    phase %= 4
    if phase % 2 != 0:
        raise AssertionError("conjugation produced an imaginary phase")
    return PauliString(1 if phase == 0 else -1, "".join(out))


# ---------------------------------------------------------------------------
# Compilation
# ---------------------------------------------------------------------------

class _Frame:
    """Images of X_q / Z_q under the inverse of the accumulated Clifford.

    Maintains, for each qubit q, the strings C^dagger X_q C and
    C^dagger Z_q C where C is the product of all Cliffords seen so far.
    """

    def __init__(self, n: int):
        self.n = n
        self.ix = [PauliString.single(n, q, "X") for q in range(n)]
        self.iz = [PauliString.single(n, q, "Z") for q in range(n)]

    def _expand(self, small: PauliString) -> PauliString:
        """Rewrite a string over original qubits through the current images."""
        out = ["I"] * self.n
        phase = 0 if small.sign == 1 else 2
        for q, letter in enumerate(small.letters):
            if letter == "I":
                continue
            has_x = letter in ("X", "Y")
            has_z = letter in ("Z", "Y")
            if has_x and has_z:
                phase += 1
            for img, present in ((self.ix[q], has_x), (self.iz[q], has_z)):
                if not present:
                    continue
                if img.sign == -1:
                    phase += 2
                for fq, fletter in enumerate(img.letters):
                    if fletter == "I":
                        continue
                    new_letter, dk = _MUL[(out[fq], fletter)]
                    out[fq] = new_letter
                    phase += dk
        phase %= 4
        if phase % 2 != 0:
            raise AssertionError("frame expansion produced an imaginary phase")
        return PauliString(1 if phase == 0 else -1, "".join(out))

    def absorb(self, gate: Gate) -> None:
        """Append a Clifford gate: C <- gate . C."""
        ginv = inverse_gate(gate)
        updates = {}
        for q in gate.targets:
            for letter, table in (("X", self.ix), ("Z", self.iz)):
                small = conjugate(ginv, PauliString.single(self.n, q, letter))
                updates[(q, letter)] = self._expand(small)
        for (q, letter), img in updates.items():
            (self.ix if letter == "X" else self.iz)[q] = img

    def z_image(self, q: int) -> PauliString:
        return self.iz[q]


def _clifford_rz_gates(q: int, m: int) -> list[Gate]:
    """Rz(m * pi/2) on qubit q as Clifford gates."""
    m %= 4
    if m == 0:
        return []
    if m == 1:
        return [Gate(GateKind.S, (q,))]
    if m == 2:
        return [Gate(GateKind.Z, (q,))]
    return [Gate(GateKind.SDG, (q,))]


def compile_to_pbc(circuit: Circuit, merge: bool = False) -> PBCProgram:
    """Lower a Clifford+Rz circuit to a PBC program.

    With merge=True, adjacent rotations on identical Pauli strings are
    combined; merged angles that land on a Clifford multiple of pi/4 are
    absorbed into the subsequent strings.
    """
    circuit.validate()
    n = circuit.num_qubits
    frame = _Frame(n)
    program = PBCProgram(n, name=circuit.name)
    for gate in circuit.gates:
        if gate.kind is GateKind.MEASURE:
            program.measurements.append((frame.z_image(gate.targets[0]), gate.cbit))
        elif gate.kind is GateKind.RZ:
            theta = normalize_angle(gate.angle)
            m = _multiple_of(theta, math.pi / 2)
            if m is not None:
                for g in _clifford_rz_gates(gate.targets[0], m):
                    frame.absorb(g)
                continue
            img = frame.z_image(gate.targets[0])
            phi = normalize_angle(theta / 2 * img.sign)
            program.rotations.append(PauliRotation(img.unsigned(), phi))
        elif gate.kind in CLIFFORD_KINDS:
            frame.absorb(gate)
        else:
            raise NotCliffordError(f"unexpected gate kind {gate.kind.name}")
    if merge:
        _merge_rotations(program)
    return program


def _rotate_string(p: PauliString, q: PauliString, phi: float) -> PauliString:
    """Image of Q under conjugation by exp(-i*phi*P), phi a multiple of pi/4."""
    if p.commutes_with(q):
        return q
    m = _multiple_of(2 * phi, math.pi / 2)
    assert m is not None
    m %= 4
    if m == 0:
        return q
    if m == 2:
        return PauliString(-q.sign, q.letters)
    # result is -i*sin(2*phi) * P * Q
    k, letters = multiply(p, q)
    k = (k + (3 if m == 1 else 1)) % 4
    assert k % 2 == 0
    return PauliString(1 if k == 0 else -1, letters)


def _merge_rotations(program: PBCProgram) -> None:
    """Combine adjacent same-string rotations; absorb Clifford remainders."""
    merged: list[PauliRotation] = []
    pending = program.rotations
    i = 0
    # frame of absorbed Clifford rotations applied to everything downstream
    absorbed: list[tuple[PauliString, float]] = []

    def transform(ps: PauliString) -> PauliString:
        for p, phi in absorbed:
            ps = _rotate_string(p, ps, phi)
        return ps

    while i < len(pending):
        rot = pending[i]
        pauli = transform(rot.pauli)
        angle = normalize_angle(rot.angle * pauli.sign)
        pauli = pauli.unsigned()
        i += 1
        if merged and merged[-1].pauli.letters == pauli.letters:
            angle = normalize_angle(merged[-1].angle + angle)
            merged.pop()
        if abs(angle) <= _ANGLE_TOL:
            continue
        if _multiple_of(angle, math.pi / 4) is not None:
            absorbed.append((PauliString(1, pauli.letters), angle))
            continue
        merged.append(PauliRotation(pauli, angle))
    program.rotations = merged
    program.measurements = [(transform(p), c) for p, c in program.measurements]
