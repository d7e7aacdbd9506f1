"""Signed Pauli strings and their group algebra.

Strings carry an explicit +/-1 sign; products of Hermitian strings can pick
up factors of i, which are tracked internally as powers of i and must cancel
to +/-1 anywhere a PauliString is returned.
"""
from __future__ import annotations

from dataclasses import dataclass

LETTERS = "IXYZ"

# a * b = i**k * result, single-qubit letters
_MUL: dict[tuple[str, str], tuple[str, int]] = {
    ("I", "I"): ("I", 0), ("I", "X"): ("X", 0), ("I", "Y"): ("Y", 0), ("I", "Z"): ("Z", 0),
    ("X", "I"): ("X", 0), ("Y", "I"): ("Y", 0), ("Z", "I"): ("Z", 0),
    ("X", "X"): ("I", 0), ("Y", "Y"): ("I", 0), ("Z", "Z"): ("I", 0),
    ("X", "Y"): ("Z", 1), ("Y", "X"): ("Z", 3),
    ("Y", "Z"): ("X", 1), ("Z", "Y"): ("X", 3),
    ("Z", "X"): ("Y", 1), ("X", "Z"): ("Y", 3),
}


@dataclass(frozen=True)
class PauliString:
    """A signed n-qubit Pauli operator, e.g. -XIZ."""

    sign: int
    letters: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if any(ch not in LETTERS for ch in self.letters):
            raise ValueError(f"invalid Pauli letters: {self.letters!r}")

    @property
    def num_qubits(self) -> int:
        return len(self.letters)

    @property
    def weight(self) -> int:
        return sum(1 for ch in self.letters if ch != "I")

    def support(self) -> tuple[int, ...]:
        return tuple(q for q, ch in enumerate(self.letters) if ch != "I")

    def is_identity(self) -> bool:
        return self.weight == 0

    def commutes_with(self, other: "PauliString") -> bool:
        if len(self.letters) != len(other.letters):
            raise ValueError("length mismatch")
        anti = sum(
            1
            for a, b in zip(self.letters, other.letters)
            if a != "I" and b != "I" and a != b
        )
        return anti % 2 == 0

    def unsigned(self) -> "PauliString":
        return self if self.sign == 1 else PauliString(1, self.letters)

    def __str__(self) -> str:
        return ("+" if self.sign == 1 else "-") + self.letters

    @staticmethod
    def identity(n: int) -> "PauliString":
        return PauliString(1, "I" * n)

    @staticmethod
    def single(n: int, qubit: int, letter: str, sign: int = 1) -> "PauliString":
        if not 0 <= qubit < n:
            raise ValueError(f"qubit {qubit} out of range for {n} qubits")
        letters = "I" * qubit + letter + "I" * (n - qubit - 1)
        return PauliString(sign, letters)


def multiply(a: PauliString, b: PauliString) -> tuple[int, str]:
    """Product a*b as (k, letters) meaning i**k times the unsigned string."""
    if len(a.letters) != len(b.letters):
        raise ValueError("length mismatch")
    k = 0 if a.sign == 1 else 2
    if b.sign == -1:
        k += 2
    out = []
    for x, y in zip(a.letters, b.letters):
        letter, dk = _MUL[(x, y)]
        out.append(letter)
        k += dk
    return k % 4, "".join(out)


def multiply_hermitian(a: PauliString, b: PauliString) -> PauliString:
    """Product of two strings that is known to be Hermitian (phase +/-1)."""
    k, letters = multiply(a, b)
    if k % 2 != 0:
        raise ValueError(f"product {a} * {b} is anti-Hermitian")
    return PauliString(1 if k == 0 else -1, letters)
