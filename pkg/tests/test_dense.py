import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wcep.dense import (
    Tolerance,
    as_matrix,
    conj_transpose,
    identity,
    matmul,
    numerical_rank,
    pinv,
    pivoted_qr,
    power,
    spectral_norm,
    svd,
)
from wcep.errors import DimensionError, ValidationError

IDEMP = np.array([[1, 1], [0, 0]], dtype=complex)
J2 = np.array([[0, 1], [0, 0]], dtype=complex)


def rand_complex(rng, m, n, rank=None):
    a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    if rank is not None:
        a = (rng.standard_normal((m, rank)) + 1j * rng.standard_normal((m, rank))) @ (
            rng.standard_normal((rank, n)) + 1j * rng.standard_normal((rank, n)))
    return a


def penrose_residuals(a, x):
    ax, xa = a @ x, x @ a
    return (
        np.linalg.norm(a @ x @ a - a, 2) / (1 + np.linalg.norm(a, 2)),
        np.linalg.norm(x @ a @ x - x, 2) / (1 + np.linalg.norm(x, 2)),
        np.linalg.norm(ax.conj().T - ax, 2) / (1 + np.linalg.norm(ax, 2)),
        np.linalg.norm(xa.conj().T - xa, 2) / (1 + np.linalg.norm(xa, 2)),
    )


class TestMatrixAndTolerance:
    def test_real_input_embedded_as_complex(self):
        a = as_matrix([[1, 2], [3, 4]])
        assert a.dtype == np.complex128
        assert np.all(a.imag == 0)

    @pytest.mark.parametrize("bad", [[[np.nan, 1.0]], [[np.inf]], [1, 2, 3], np.zeros((0, 2))])
    def test_rejects_bad_entries_and_shapes(self, bad):
        with pytest.raises(ValidationError):
            as_matrix(bad)

    @pytest.mark.parametrize("field", ["rank_rtol", "residual_atol", "residual_rtol"])
    @pytest.mark.parametrize("value", [0.0, 1.0, -1e-3])
    def test_tolerance_bounds(self, field, value):
        with pytest.raises(ValidationError):
            Tolerance(**{field: value})


def test_conj_transpose_examples():
    assert np.array_equal(conj_transpose(identity(3)), identity(3))
    a = np.array([[1j, 0], [0, 0]])
    assert np.array_equal(conj_transpose(a), np.array([[-1j, 0], [0, 0]]))
    row = np.array([[1, 2, 3]], dtype=complex)
    assert np.array_equal(conj_transpose(row), np.array([[1], [2], [3]]))


def test_matmul_examples():
    assert np.array_equal(matmul(identity(2), IDEMP), IDEMP)
    assert np.array_equal(matmul(IDEMP, IDEMP), IDEMP)
    e = np.array([[1, 0, 0], [0, 0, 0]], dtype=complex)
    f = np.array([[1, 0], [0, 1], [0, 0]], dtype=complex)
    assert np.array_equal(matmul(e, f), np.array([[1, 0], [0, 0]]))
    with pytest.raises(DimensionError):
        matmul(e, e)


def test_power_examples():
    assert np.array_equal(power(J2, 2), np.zeros((2, 2)))
    assert np.array_equal(power(IDEMP, 0), identity(2))
    assert np.array_equal(power(IDEMP, 5), IDEMP)
    with pytest.raises(DimensionError):
        power(np.ones((2, 3)), 2)


@pytest.mark.parametrize("l", range(0, 17))
def test_power_matches_repeated_multiplication(l):
    rng = np.random.default_rng(l)
    a = rand_complex(rng, 5, 5) / 3
    expected = np.eye(5, dtype=complex)
    for _ in range(l):
        expected = expected @ a
    scale = max(1.0, np.linalg.norm(a, 2)) ** l
    assert np.linalg.norm(power(a, l) - expected, 2) <= 1e-12 * scale


def test_svd_examples():
    f = svd(np.diag([3.0, 1.0]))
    assert np.allclose(f.sigma, [3, 1])
    assert np.allclose(np.abs(f.u), np.eye(2)) and np.allclose(np.abs(f.v), np.eye(2))
    assert np.array_equal(svd(np.zeros((2, 3))).sigma, [0, 0])
    # oracle: singular values are square roots of eigenvalues of A^* A
    eig = np.sort(np.linalg.eigvalsh(IDEMP.conj().T @ IDEMP))[::-1]
    assert np.allclose(svd(IDEMP).sigma, np.sqrt(np.clip(eig, 0, None)))
    assert np.allclose(svd(IDEMP).sigma, [np.sqrt(2), 0])


def test_svd_factor_invariants():
    rng = np.random.default_rng(3)
    a = rand_complex(rng, 7, 4)
    f = svd(a)
    assert np.allclose(f.u.conj().T @ f.u, np.eye(7), atol=1e-13)
    assert np.allclose(f.v.conj().T @ f.v, np.eye(4), atol=1e-13)
    assert np.all(np.diff(f.sigma) <= 0)
    assert np.linalg.norm(f.reconstruct() - a, 2) <= 1e-12 * f.sigma[0]


def test_numerical_rank_examples():
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.zeros((3, 2))) == 0
    assert numerical_rank(IDEMP) == 1


def test_pinv_examples():
    assert np.allclose(pinv(np.diag([2.0, 0.0])), np.diag([0.5, 0.0]))
    assert np.array_equal(pinv(np.zeros((2, 3))), np.zeros((3, 2)))
    x = pinv(IDEMP)
    expected = np.array([[0.5, 0], [0.5, 0]])
    # the frozen value satisfies all four Penrose equations exactly
    assert max(penrose_residuals(IDEMP, expected)) == 0.0
    assert np.allclose(x, expected, atol=1e-15)


def test_pivoted_qr_examples():
    f = pivoted_qr(np.eye(2))
    assert np.allclose(np.abs(f.q), np.eye(2)) and np.allclose(np.abs(f.r), np.eye(2))
    assert list(f.perm) == [0, 1]
    assert pivoted_qr(np.zeros((2, 2))).numerical_rank == 0
    ones = np.ones((2, 2))
    f = pivoted_qr(ones)
    assert f.numerical_rank == 1
    # |r00| equals the norm of the pivot column
    assert np.isclose(abs(f.r[0, 0]), np.linalg.norm(ones[:, f.perm[0]]))
    assert np.isclose(abs(f.r[0, 0]), np.sqrt(2))


def test_spectral_norm_examples():
    assert spectral_norm(np.eye(3)) == pytest.approx(1.0)
    assert spectral_norm(np.zeros((2, 4))) == 0.0
    assert spectral_norm(IDEMP) == pytest.approx(np.sqrt(2))


dims = st.integers(min_value=1, max_value=6)


@settings(max_examples=60, deadline=None)
@given(dims, dims, dims, st.integers(0, 2**32 - 1))
def test_conj_transpose_reverses_products(m, k, n, seed):
    rng = np.random.default_rng(seed)
    a, b = rand_complex(rng, m, k), rand_complex(rng, k, n)
    lhs = conj_transpose(matmul(a, b))
    rhs = matmul(conj_transpose(b), conj_transpose(a))
    scale = np.linalg.norm(a, 2) * np.linalg.norm(b, 2)
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * scale


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_power_is_additive(i, j, seed):
    rng = np.random.default_rng(seed)
    a = rand_complex(rng, 6, 6) / 4
    scale = max(1.0, np.linalg.norm(a, 2)) ** (i + j)
    err = np.max(np.abs(power(a, i + j) - power(a, i) @ power(a, j)))
    assert err <= 1e-12 * scale


@settings(max_examples=60, deadline=None)
@given(dims, dims, st.integers(0, 6), st.integers(0, 2**32 - 1))
def test_rank_is_transpose_invariant(m, n, r, seed):
    rng = np.random.default_rng(seed)
    r = min(r, m, n)
    a = rand_complex(rng, m, n, rank=r) if r else np.zeros((m, n))
    assert numerical_rank(a) == numerical_rank(conj_transpose(a))


@pytest.mark.parametrize("rank", [5, 4, 2, 1])
@pytest.mark.parametrize("seed", range(5))
def test_pinv_is_involutive(rank, seed):
    rng = np.random.default_rng(100 + seed)
    a = rand_complex(rng, 8, 5, rank=rank)
    smax = np.linalg.norm(a, 2)
    assert np.linalg.norm(pinv(pinv(a)) - a, 2) <= 1e-10 * smax


@pytest.mark.parametrize("shape,rank", [((6, 9), 6), ((9, 6), 3), ((7, 7), 4), ((5, 5), 5)])
def test_pivoted_qr_reconstruction(shape, rank):
    rng = np.random.default_rng(7)
    a = rand_complex(rng, *shape, rank=rank)
    f = pivoted_qr(a)
    smax = np.linalg.norm(a, 2)
    assert np.linalg.norm(f.q @ f.r - a @ f.permutation_matrix(), 2) <= 1e-12 * smax
    assert np.allclose(f.q.conj().T @ f.q, np.eye(shape[0]), atol=1e-13)
    d = np.abs(np.diag(f.r))
    s = f.numerical_rank
    assert s == rank
    assert np.all(np.diff(d[:s]) <= 1e-12 * smax)
    assert np.all(d[s:] <= 1e-12 * smax)
    assert np.allclose(np.tril(f.r, -1), 0)
