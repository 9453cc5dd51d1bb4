import numpy as np
import pytest

from eigendesign.linalg import (
    eigh_ascending,
    gram,
    jacobi_eigh,
    max_norm,
    random_orthonormal,
    random_psd,
    rotate_columns,
    sym_matrix,
)
from eigendesign.utils.errors import DimensionMismatch, DimensionZero, NotPSD


def _residual(spec, s):
    return max_norm(spec.reconstruct() - s)


class TestEighAscending:
    def test_identity(self):
        spec = eigh_ascending(np.eye(2))
        assert np.allclose(spec.t, [1, 1])
        assert np.allclose(spec.Q.T @ spec.Q, np.eye(2))

    def test_diagonal_is_sorted(self):
        spec = eigh_ascending(np.diag([3.0, 1.0]))
        assert np.array_equal(spec.t, [1.0, 3.0])
        assert np.array_equal(np.abs(spec.Q), [[0.0, 1.0], [1.0, 0.0]])

    def test_rank_one(self):
        x0 = np.array([[1.0], [0.0]])
        spec = eigh_ascending(x0 @ x0.T)
        assert np.allclose(spec.t, [0, 1])
        assert np.allclose(np.abs(spec.Q[:, 1]), [1, 0])

    @pytest.mark.parametrize("d", [1, 2, 5, 10])
    def test_random_reconstruction(self, rng, d):
        for _ in range(5):
            s = random_psd(d, rng, scale=3.0)
            spec = eigh_ascending(s)
            assert np.all(np.diff(spec.t) >= 0)
            assert max_norm(spec.Q.T @ spec.Q - np.eye(d)) <= 1e-10
            assert _residual(spec, s) <= 1e-8 * max(1, max_norm(s))

    def test_permutation_stable(self, rng):
        s = random_psd(6, rng)
        perm = np.eye(6)[rng.permutation(6)]
        t1 = eigh_ascending(s).t
        t2 = eigh_ascending(perm @ s @ perm.T).t
        assert np.allclose(t1, t2, atol=1e-12 * max_norm(s))

    def test_matches_lapack(self, rng):
        s = random_psd(7, rng, rank=4)
        assert np.allclose(eigh_ascending(s).t, eigh_ascending(s, method="lapack").t, atol=1e-10)

    def test_clamps_roundoff(self):
        spec = eigh_ascending([[1.0, 1.0], [1.0, 1.0 - 1e-12]])
        assert spec.t[0] == 0.0

    def test_not_psd(self):
        with pytest.raises(NotPSD):
            eigh_ascending([[0.0, 1.0], [1.0, 0.0]])

    def test_dimension_zero(self):
        with pytest.raises(DimensionZero):
            eigh_ascending(np.zeros((0, 0)))

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            sym_matrix(np.zeros((2, 3)))

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            eigh_ascending(np.eye(2), method="power")


class TestJacobi:
    def test_symmetric_input_is_symmetrized(self):
        s = sym_matrix([[2.0, 1.0], [0.0, 2.0]])
        assert s[0, 1] == s[1, 0] == 0.5

    def test_two_by_two(self):
        w, v = jacobi_eigh(np.array([[2.0, 1.0], [1.0, 2.0]]))
        assert np.allclose(sorted(w), [1.0, 3.0])
        assert np.allclose(v @ np.diag(w) @ v.T, [[2.0, 1.0], [1.0, 2.0]])

    def test_subnormal_coupling(self):
        s = np.array([[1.0, 1e-310, 0.5], [1e-310, 2.0, 0.0], [0.5, 0.0, 3.0]])
        with np.errstate(over="raise", divide="raise", invalid="raise"):
            w, v = jacobi_eigh(s)
        assert np.allclose(sorted(w), np.linalg.eigvalsh(s))
        assert np.allclose(v.T @ v, np.eye(3))


class TestGram:
    def test_zero(self):
        assert np.array_equal(gram(np.zeros((3, 2))), np.zeros((3, 3)))

    def test_identity(self):
        assert np.array_equal(gram(np.eye(4)), np.eye(4))

    def test_repeated_column(self):
        assert np.array_equal(gram([[1.0, 1.0], [0.0, 0.0]]), [[2.0, 0.0], [0.0, 0.0]])

    def test_psd(self, rng):
        x = rng.standard_normal((5, 3))
        lam = np.linalg.eigvalsh(gram(x))
        assert lam.min() >= -1e-10 * np.sum(x**2)


class TestRotations:
    def test_gram_invariant(self, rng):
        y = rng.standard_normal((4, 3))
        before = gram(y)
        theta = 0.7
        rotate_columns(y, 0, 2, np.cos(theta), np.sin(theta))
        assert max_norm(gram(y) - before) <= 1e-12

    def test_random_orthonormal(self, rng):
        q = random_orthonormal(5, rng)
        assert np.allclose(q.T @ q, np.eye(5))

    def test_random_psd_rank(self, rng):
        s = random_psd(6, rng, rank=2)
        assert np.sum(np.linalg.eigvalsh(s) > 1e-10) == 2
        assert np.array_equal(random_psd(3, rng, rank=0), np.zeros((3, 3)))
