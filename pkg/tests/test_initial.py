import numpy as np
import pytest

from kball import (PointSet, Tolerance, count_covered, oracle_mkeb,
                   random_knn_start, solve_meb, spherical_ordering,
                   spherical_peeling)

ALL = [spherical_ordering, spherical_peeling]


def test_spherical_ordering_k_equals_m():
    rng = np.random.default_rng(30)
    ps = PointSet(rng.standard_normal((10, 3)))
    ball = spherical_ordering(ps, 10)
    full = solve_meb(ps, range(10)).ball
    assert ball.radius == pytest.approx(full.radius, rel=1e-12)


def test_spherical_ordering_symmetric_line():
    ps = PointSet([[-2.0], [-1.0], [0.0], [1.0], [2.0]])
    ball = spherical_ordering(ps, 3)
    assert np.allclose(ball.center, [0.0])
    assert ball.radius == pytest.approx(1.0, rel=1e-12)


def test_peeling_k_equals_m_no_steps():
    rng = np.random.default_rng(31)
    ps = PointSet(rng.standard_normal((8, 2)))
    ball = spherical_peeling(ps, 8)
    full = solve_meb(ps, range(8)).ball
    assert ball.radius == pytest.approx(full.radius, rel=1e-12)


def test_peeling_removes_the_outlier():
    # the boundary point farthest from the remaining centroid is peeled,
    # so the far point goes first and the tight triple remains
    ps = PointSet([[0.0], [1.0], [2.0], [10.0]])
    ball = spherical_peeling(ps, 3)
    assert np.allclose(ball.center, [1.0])
    assert ball.radius == pytest.approx(1.0, rel=1e-12)


def test_random_knn_k1_radius_zero():
    rng = np.random.default_rng(32)
    ps = PointSet(rng.standard_normal((7, 2)))
    assert random_knn_start(ps, 1, seed=5).radius == 0.0


def test_random_knn_k_equals_m_any_seed():
    rng = np.random.default_rng(33)
    ps = PointSet(rng.standard_normal((7, 2)))
    full = solve_meb(ps, range(7)).ball.radius
    for seed in (0, 1, 99):
        assert random_knn_start(ps, 7, seed=seed).radius == pytest.approx(
            full, rel=1e-12)


def test_random_knn_deterministic():
    rng = np.random.default_rng(34)
    ps = PointSet(rng.standard_normal((20, 3)))
    a = random_knn_start(ps, 8, seed=42)
    b = random_knn_start(ps, 8, seed=42)
    assert a.radius == b.radius
    assert np.array_equal(a.center, b.center)


def test_k_out_of_range():
    ps = PointSet([[0.0], [1.0]])
    for fn in ALL:
        with pytest.raises(ValueError):
            fn(ps, 0)
        with pytest.raises(ValueError):
            fn(ps, 3)


def test_all_strategies_yield_valid_incumbents():
    rng = np.random.default_rng(35)
    for _ in range(30):
        m = int(rng.integers(4, 12))
        n = int(rng.integers(2, 5))
        ps = PointSet(rng.standard_normal((m, n)))
        k = int(rng.integers(1, m + 1))
        tol = Tolerance.for_points(ps)
        optimum = oracle_mkeb(ps, k).radius
        for ball in (spherical_ordering(ps, k), spherical_peeling(ps, k),
                     random_knn_start(ps, k, seed=7)):
            assert count_covered(ball, ps, tol) >= k
            assert ball.radius >= optimum * (1 - 1e-9)
