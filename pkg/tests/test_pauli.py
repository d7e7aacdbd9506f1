import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qinject.pauli import PauliString, multiply, multiply_hermitian

from oracle import pauli_matrix

letters_st = st.text(alphabet="IXYZ", min_size=1, max_size=5)
sign_st = st.sampled_from([1, -1])


def pauli_st(n=None):
    base = st.text(alphabet="IXYZ", min_size=n or 1, max_size=n or 5)
    return st.builds(PauliString, sign_st, base)


class TestBasics:
    def test_validation(self):
        with pytest.raises(ValueError):
            PauliString(2, "X")
        with pytest.raises(ValueError):
            PauliString(1, "XQ")

    def test_weight_support(self):
        p = PauliString(-1, "IXYZ")
        assert p.weight == 3
        assert p.support() == (1, 2, 3)
        assert p.num_qubits == 4
        assert not p.is_identity()
        assert PauliString.identity(3).is_identity()

    def test_single(self):
        assert PauliString.single(3, 1, "Y").letters == "IYI"
        with pytest.raises(ValueError):
            PauliString.single(2, 2, "X")

    def test_str(self):
        assert str(PauliString(-1, "XZ")) == "-XZ"
        assert str(PauliString(1, "I")) == "+I"

    def test_unsigned(self):
        assert PauliString(-1, "X").unsigned() == PauliString(1, "X")


class TestAlgebra:
    @given(st.integers(1, 4).flatmap(
        lambda n: st.tuples(pauli_st(n), pauli_st(n))))
    def test_multiply_matches_dense(self, pair):
        a, b = pair
        k, letters = multiply(a, b)
        got = (1j ** k) * pauli_matrix(PauliString(1, letters))
        want = pauli_matrix(a) @ pauli_matrix(b)
        assert np.allclose(got, want)

    @given(st.integers(1, 4).flatmap(
        lambda n: st.tuples(pauli_st(n), pauli_st(n))))
    def test_commutes_matches_dense(self, pair):
        a, b = pair
        ma, mb = pauli_matrix(a), pauli_matrix(b)
        assert a.commutes_with(b) == bool(np.allclose(ma @ mb, mb @ ma))

    def test_multiply_hermitian(self):
        x, z = PauliString(1, "X"), PauliString(1, "Z")
        assert multiply_hermitian(x, x) == PauliString(1, "I")
        with pytest.raises(ValueError):
            multiply_hermitian(x, z)  # XZ = -iY, not Hermitian

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            multiply(PauliString(1, "X"), PauliString(1, "XX"))
        with pytest.raises(ValueError):
            PauliString(1, "X").commutes_with(PauliString(1, "XX"))
