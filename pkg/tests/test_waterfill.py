import numpy as np
import pytest

from eigendesign.designer import majorizes, sample_unit_ball, weyl_sandwich
from eigendesign.linalg import gram
from eigendesign.waterfill import (
    UNBOUNDED,
    allocate,
    compact_allocation,
    feasibility,
    fill_amount,
    uncapped,
    water_level,
    weyl_caps,
)


def _random_t(rng, d):
    t = np.sort(rng.exponential(size=d))
    t[: rng.integers(0, d)] = 0.0
    return np.sort(t)


def _random_box_point(rng, t, caps, s):
    """Random y with t ≤ y ≤ u and Σy = Σt + s, by pouring random chunks."""
    y = t.copy()
    room = np.array([np.inf if r is None else r for r in caps.room(t)])
    left = s
    while left > 1e-12:
        open_ = np.flatnonzero(room - (y - t) > 1e-12)
        j = rng.choice(open_)
        amount = min(left, room[j] - (y[j] - t[j]), rng.uniform(0, s))
        y[j] += amount
        left -= amount
    return y


class TestCaps:
    def test_staircase_prior(self, staircase_t):
        assert weyl_caps(staircase_t, 2).u == (1.1, 1.3, 3.0, UNBOUNDED, UNBOUNDED)

    def test_large_k_is_unbounded(self, staircase_t):
        caps = weyl_caps(staircase_t, 7)
        assert all(cap is UNBOUNDED for cap in caps.u)
        assert caps.dhat == 5

    def test_single_vector(self):
        caps = weyl_caps([0.0, 2.0, 5.0], 1)
        assert caps.u == (2.0, 5.0, UNBOUNDED)
        assert caps.room(np.array([0.0, 2.0, 5.0])) == [2.0, 3.0, None]


class TestFillAndLevel:
    def test_fill_amount_staircase(self, staircase_t):
        caps = weyl_caps(staircase_t, 2)
        assert fill_amount(staircase_t, caps, 1.1) == pytest.approx(0.1, abs=1e-12)
        assert fill_amount(staircase_t, caps, 1.0) == 0.0
        assert fill_amount(staircase_t, caps, 2.05) == pytest.approx(2.0, abs=1e-12)

    def test_water_level_staircase(self, staircase_t):
        caps = weyl_caps(staircase_t, 2)
        assert water_level(staircase_t, caps, 2) == pytest.approx(2.05, abs=1e-12)
        assert water_level(staircase_t, caps, 0.5) == pytest.approx(1.3, abs=1e-12)
        assert water_level(staircase_t, caps, 0) == 1.0

    def test_level_is_a_float(self, staircase_t):
        caps = weyl_caps(staircase_t, 2)
        for s in (0, 0.5, 2):
            assert type(water_level(staircase_t, caps, s)) is float

    def test_round_trip(self, rng):
        for _ in range(200):
            d = int(rng.integers(1, 8))
            k = int(rng.integers(1, 10))
            t = _random_t(rng, d)
            caps = weyl_caps(t, k)
            s = rng.uniform(0, k)
            c = water_level(t, caps, s)
            assert fill_amount(t, caps, c) == pytest.approx(s, abs=1e-12 * max(1, s))

    def test_level_is_monotone(self, rng):
        t = _random_t(rng, 6)
        caps = weyl_caps(t, 3)
        levels = [water_level(t, caps, s) for s in np.linspace(0, 3, 50)]
        assert np.all(np.diff(levels) >= -1e-12)


class TestAllocate:
    def test_staircase_prior(self, staircase_t):
        alloc = allocate(staircase_t, weyl_caps(staircase_t, 2), 2)
        assert np.allclose(alloc.beta, [0.1, 0.2, 0.95, 0.75, 0.0], atol=1e-12)
        assert np.allclose(alloc.beta_compact, [1.05, 0.95, 0, 0, 0], atol=1e-12)
        assert np.allclose(np.sort(alloc.compact_levels), [1.1, 1.3, 2.05, 2.05, 3.0], atol=1e-12)
        assert alloc.c == pytest.approx(2.05, abs=1e-12)

    def test_zero_budget(self, staircase_t):
        alloc = allocate(staircase_t, weyl_caps(staircase_t, 2), 0)
        assert np.array_equal(alloc.beta, np.zeros(5))

    def test_cap_binds_exactly(self):
        t = np.array([0.0, 1.0])
        alloc = allocate(t, weyl_caps(t, 1), 1)
        assert np.allclose(alloc.beta, [1.0, 0.0])
        assert np.allclose(alloc.levels, [1.0, 1.0])
        assert np.allclose(compact_allocation(t, weyl_caps(t, 1), alloc.c), [1.0, 0.0])

    def test_compact_equals_beta_when_k_ge_d(self, staircase_t):
        caps = weyl_caps(staircase_t, 5)
        alloc = allocate(staircase_t, caps, 3.3)
        assert np.allclose(alloc.beta, alloc.beta_compact, atol=1e-12)

    def test_invariants_random(self, rng):
        for _ in range(1000):
            d = int(rng.integers(1, 9))
            k = int(rng.integers(1, 12))
            t = _random_t(rng, d)
            caps = weyl_caps(t, k)
            s = rng.uniform(0, k)
            alloc = allocate(t, caps, s)
            assert np.all(alloc.beta >= 0)
            assert abs(alloc.beta.sum() - s) <= 1e-10 * max(1, k)
            for bj, room in zip(alloc.beta, caps.room(t)):
                if room is not None:
                    assert bj <= room + 1e-10
            assert np.count_nonzero(alloc.beta_compact > 0) <= min(d, k)
            assert np.allclose(np.sort(alloc.levels), np.sort(alloc.compact_levels), atol=1e-10)

    def test_monotone_in_budget(self, rng):
        t = _random_t(rng, 6)
        caps = weyl_caps(t, 4)
        previous = allocate(t, caps, 0).beta
        for s in np.linspace(0.1, 4, 40):
            beta = allocate(t, caps, s).beta
            assert np.all(beta >= previous - 1e-10)
            previous = beta

    def test_uncapped_spreads_on_all(self):
        t = np.array([0.5, 0.5])
        alloc = allocate(t, uncapped(t, 1), 1)
        assert np.allclose(alloc.levels, [1.0, 1.0])


class TestFeasibility:
    def test_kernel_too_large(self):
        check = feasibility([0.0, 0.0, 1.0], 1, True)
        assert not check
        assert check.needed == 2
        assert "2" in check.message

    def test_positive_prior(self):
        assert feasibility([0.5, 0.5], 1, True)

    def test_boundary(self):
        assert feasibility([0.0, 0.0, 1.0], 2, True)

    def test_finite_criterion(self):
        assert feasibility([0.0, 0.0, 0.0], 1, False)


class TestProperties:
    def test_weyl_sandwich_random_designs(self, rng):
        for _ in range(1000):
            d = int(rng.integers(1, 6))
            k = int(rng.integers(1, 7))
            t = _random_t(rng, d)
            x = sample_unit_ball(d, k, rng)
            lam = np.linalg.eigvalsh(np.diag(t) + gram(x))
            assert weyl_sandwich(t, lam, k)

    def test_water_filling_is_least_spread(self, rng):
        for _ in range(1000):
            d = int(rng.integers(1, 7))
            k = int(rng.integers(1, 8))
            t = _random_t(rng, d)
            caps = weyl_caps(t, k)
            s = rng.uniform(0, k)
            y = _random_box_point(rng, t, caps, s)
            assert majorizes(allocate(t, caps, s).levels, y, tol=1e-9)
