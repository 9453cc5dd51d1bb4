import numpy as np
import pytest

from eigendesign.construct import (
    closed_form_design,
    equalize_column_norms,
    factor_diagonal,
    isotropic_axis_design,
    isotropic_fourier_design,
)
from eigendesign.designer import majorizes, schur_horn_feasible
from eigendesign.linalg import gram, max_norm
from eigendesign.utils.errors import BadRange, RankBudgetExceeded, TraceBudgetExceeded


def _check_vectors(dv, target, k):
    s = float(np.sum(target))
    norms = dv.column_norms2
    assert dv.Z.shape == (len(target), k)
    assert max_norm(gram(dv.Z) - np.diag(target)) <= 1e-10 * max(1, s)
    assert np.all(norms <= 1 + 1e-10)
    assert np.allclose(norms, s / k, atol=1e-10)


class TestFactorDiagonal:
    def test_staircase_prior(self):
        target = np.array([1.05, 0.95, 0, 0, 0])
        dv = factor_diagonal(target, 2)
        _check_vectors(dv, target, 2)
        assert dv.rotations == 1

    def test_zero_target(self):
        dv = factor_diagonal(np.zeros(3), 2)
        assert np.array_equal(dv.Z, np.zeros((3, 2)))

    def test_more_vectors_than_support(self):
        target = np.array([0.5, 0.3])
        dv = factor_diagonal(target, 3)
        _check_vectors(dv, target, 3)
        assert dv.rotations <= 2

    def test_rank_exceeded(self):
        with pytest.raises(RankBudgetExceeded):
            factor_diagonal([1.0, 1.0, 1.0], 2)

    def test_trace_exceeded(self):
        with pytest.raises(TraceBudgetExceeded):
            factor_diagonal([1.5, 1.0], 2)

    def test_random_targets(self, rng):
        for _ in range(200):
            d = int(rng.integers(1, 9))
            k = int(rng.integers(1, 13))
            support = min(d, k)
            target = np.zeros(d)
            idx = rng.choice(d, size=int(rng.integers(0, support + 1)), replace=False)
            target[idx] = rng.uniform(0.01, 1, size=len(idx))
            if len(idx):
                target *= rng.uniform(0, k) / target.sum()
            dv = factor_diagonal(target, k)
            _check_vectors(dv, target, k)
            assert dv.rotations <= k - 1

    def test_schur_horn_diagonal(self):
        target = np.array([0.9, 0.6, 0.3, 0.0])
        dv = factor_diagonal(target, 3)
        g = dv.Z.T @ dv.Z
        assert np.allclose(np.diag(g), target.sum() / 3)
        assert schur_horn_feasible(np.diag(g), np.linalg.eigvalsh(g))


class TestEqualize:
    def test_already_equal(self):
        y = np.array([[1.0, 0.0], [0.0, 1.0]])
        assert np.array_equal(equalize_column_norms(y), y)

    def test_single_rotation(self):
        z = equalize_column_norms([[np.sqrt(2), 0.0], [0.0, 0.0]])
        assert np.allclose(np.sum(z**2, axis=0), [1.0, 1.0])
        assert np.allclose(gram(z), [[2.0, 0.0], [0.0, 0.0]])

    def test_two_axis_endgame(self):
        y = np.diag(np.sqrt([1.05, 0.95]))
        z = equalize_column_norms(y)
        assert np.allclose(np.sum(z**2, axis=0), [1.0, 1.0], atol=1e-12)
        assert np.allclose(gram(z), np.diag([1.05, 0.95]), atol=1e-12)

    def test_random_dense(self, rng):
        for _ in range(100):
            d, k = int(rng.integers(1, 6)), int(rng.integers(1, 8))
            y = rng.standard_normal((d, k))
            z = equalize_column_norms(y)
            scale = max(1, np.sum(y**2))
            assert max_norm(gram(z) - gram(y)) <= 1e-11 * scale
            assert np.allclose(np.sum(z**2, axis=0), np.sum(y**2) / k, atol=1e-10 * scale)


class TestIsotropic:
    def test_axis_identity(self):
        assert np.allclose(isotropic_axis_design(3, 3, 3).Z, np.eye(3))

    def test_axis_flat_prior(self):
        z = isotropic_axis_design(2, 2, 5).Z
        assert np.allclose(gram(z), np.diag([1, 1, 0, 0, 0]))

    def test_axis_half_mass(self):
        dv = isotropic_axis_design(1, 2, 3)
        assert np.allclose(dv.column_norms2, [0.5, 0.5])

    def test_axis_range(self):
        with pytest.raises(BadRange):
            isotropic_axis_design(1, 4, 3)

    @pytest.mark.parametrize("d, k", [(2, 3), (2, 8), (3, 5), (4, 7)])
    def test_fourier_tight_frame(self, d, k):
        dv = isotropic_fourier_design(k, k, d)
        assert max_norm(gram(dv.Z) - k / d * np.eye(d)) <= 1e-10
        assert np.allclose(dv.column_norms2, 1.0)

    def test_fourier_three_in_plane(self):
        z = isotropic_fourier_design(3, 3, 2).Z
        cosines = [z[:, i] @ z[:, (i + 1) % 3] for i in range(3)]
        assert np.allclose(cosines, -0.5)

    def test_fourier_odd_dimension(self):
        dv = isotropic_fourier_design(2, 5, 3)
        assert max_norm(gram(dv.Z) - 2 / 3 * np.eye(3)) <= 1e-10

    def test_fourier_zero_mass(self):
        assert np.array_equal(isotropic_fourier_design(0, 4, 3).Z, np.zeros((3, 4)))

    def test_fourier_range(self):
        with pytest.raises(BadRange):
            isotropic_fourier_design(2, 2, 2)

    def test_trigonometric_sums_vanish(self):
        k = 9
        theta = 2 * np.pi * np.arange(k) / k
        for m in range(1, k):
            assert abs(np.sum(np.sin(m * theta))) <= 1e-10
            assert abs(np.sum(np.cos(m * theta))) <= 1e-10

    def test_closed_form_dispatch(self):
        assert closed_form_design(2, 2, 3).Z.shape == (3, 2)
        assert np.allclose(gram(closed_form_design(4, 4, 3).Z), 4 / 3 * np.eye(3))


def test_majorization_examples():
    assert majorizes([1, 1], [2, 0])
    assert not majorizes([2, 0], [1, 1])
    assert majorizes([3, 1, 2], [1, 2, 3])
