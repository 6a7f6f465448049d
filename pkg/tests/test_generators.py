"""Tests for concurrence_bounds.generators module."""
import numpy as np
import pytest

from concurrence_bounds.errors import DimensionError
from concurrence_bounds.generators import su_generators


@pytest.mark.parametrize('d', [2, 3, 4, 6])
def test_count(d):
    assert len(su_generators(d).mats) == d * d - 1
    assert su_generators(d).stacked.shape == (d * d - 1, d, d)


@pytest.mark.parametrize('d', [2, 3, 4, 8])
def test_hermitian_traceless_orthonormal(d):
    g = su_generators(d).stacked
    for m in g:
        assert np.allclose(m, m.conj().T)
        assert abs(np.trace(m)) < 1e-12
    gram = np.einsum('iab,jba->ij', g, g)
    assert np.allclose(gram, np.eye(d * d - 1), atol=1e-12)


def test_qubit_generators_are_scaled_paulis():
    x, y, z = su_generators(2).mats
    s = np.sqrt(2.0)
    assert np.allclose(x, np.array([[0, 1], [1, 0]]) / s)
    assert np.allclose(y, np.array([[0, -1j], [1j, 0]]) / s)
    assert np.allclose(z, np.array([[1, 0], [0, -1]]) / s)


def test_qutrit_block_order():
    mats = su_generators(3).mats
    # symmetric (0,1), (0,2), (1,2), antisymmetric likewise, then two diagonals
    assert mats[1][0, 2] == pytest.approx(1 / np.sqrt(2))
    assert mats[3][0, 1] == pytest.approx(-1j / np.sqrt(2))
    assert np.allclose(np.diag(mats[7]), np.array([1, 1, -2]) / np.sqrt(6))


def test_completeness():
    # sum_k l_k (x) conj(l_k) = vec(I) vec(I)^T - I/d
    d = 3
    g = su_generators(d).stacked
    total = sum(np.kron(m, m.conj()) for m in g)
    ident = np.eye(d * d)
    vec_i = np.eye(d).reshape(-1)
    assert np.allclose(total, np.outer(vec_i, vec_i) - ident / d, atol=1e-12)


def test_matrices_read_only():
    with pytest.raises(ValueError):
        su_generators(2).mats[0][0, 0] = 5.0


@pytest.mark.parametrize('d', [0, 1, 2.0, True])
def test_invalid_dimension(d):
    with pytest.raises(DimensionError):
        su_generators(d)


@pytest.mark.parametrize('d', [2, 3, 5])
def test_hermitian_expansion_round_trip(d):
    # h = (Tr h / d) I + sum_k Tr(h l_k) l_k
    rng = np.random.default_rng(40 + d)
    g = su_generators(d).stacked
    for _ in range(5):
        a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = a + a.conj().T
        coeffs = np.einsum('ab,kba->k', h, g)
        assert np.allclose(coeffs.imag, 0.0, atol=1e-12)
        rebuilt = np.trace(h) / d * np.eye(d) + np.einsum('k,kab->ab', coeffs, g)
        assert np.allclose(rebuilt, h, atol=1e-12)
