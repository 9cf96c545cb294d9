import numpy as np
import pytest

from kball import DatasetSpec, generate, load_points, save_points

BIG = 100_000


def _norms(ps):
    return np.linalg.norm(ps.coords, axis=1)


def test_ball_norms_at_most_one():
    ps = generate(DatasetSpec(kind="ball", m=BIG, n=3, seed=1))
    assert (_norms(ps) <= 1.0 + 1e-12).all()


def test_ring_norms_within_annulus():
    ps = generate(DatasetSpec(kind="ring", m=BIG, n=2, seed=2))
    norms = _norms(ps)
    assert (norms >= 0.8 - 1e-12).all()
    assert (norms <= 1.2 + 1e-12).all()


def test_ring_custom_radii():
    ps = generate(DatasetSpec(kind="ring", m=5000, n=4, seed=3,
                              ring_inner=2.0, ring_outer=2.5))
    norms = _norms(ps)
    assert norms.min() >= 2.0 - 1e-12
    assert norms.max() <= 2.5 + 1e-12


def test_boutliers_split_exactly():
    ps = generate(DatasetSpec(kind="boutliers", m=1000, n=3, seed=4,
                              outliers=10))
    norms = _norms(ps)
    inside = int((norms <= 1.0 + 1e-12).sum())
    shell = int(((norms >= 1.0 - 1e-12) & (norms <= 3.0 + 1e-12)).sum())
    assert inside == 990
    assert shell >= 10  # the 10 outliers, plus inliers touching norm 1 if any
    assert int((norms > 1.0 + 1e-12).sum()) == 10


def test_exponential_coordinate_mean():
    ps = generate(DatasetSpec(kind="exponential", m=BIG, n=1, seed=5))
    assert 0.98 <= float(ps.coords.mean()) <= 1.02


def test_ball_mean_norm_2d():
    # E||x|| = 2/3 for area-uniform sampling of the unit disc
    ps = generate(DatasetSpec(kind="ball", m=BIG, n=2, seed=6))
    assert 0.66 <= float(_norms(ps).mean()) <= 0.67


def test_normal_shape_and_spread():
    ps = generate(DatasetSpec(kind="normal", m=BIG, n=2, seed=7))
    assert abs(float(ps.coords.mean())) < 0.02
    assert 0.98 <= float(ps.coords.std()) <= 1.02


def test_deterministic_bitwise():
    spec = DatasetSpec(kind="boutliers", m=500, n=5, seed=99, outliers=7)
    a, b = generate(spec), generate(spec)
    assert np.array_equal(a.coords, b.coords)


def test_deterministic_files(tmp_path):
    spec = DatasetSpec(kind="ring", m=200, n=2, seed=123)
    p1, p2 = tmp_path / "a.pts", tmp_path / "b.pts"
    save_points(generate(spec), p1)
    save_points(generate(spec), p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert np.array_equal(load_points(p1).coords, generate(spec).coords)


def test_spec_validation():
    with pytest.raises(ValueError):
        DatasetSpec(kind="blob", m=10, n=2)
    with pytest.raises(ValueError):
        DatasetSpec(kind="ball", m=0, n=2)
    with pytest.raises(ValueError):
        DatasetSpec(kind="ball", m=10, n=0)
    with pytest.raises(ValueError):
        DatasetSpec(kind="ring", m=10, n=2, ring_inner=1.2, ring_outer=0.8)
    with pytest.raises(ValueError):
        DatasetSpec(kind="boutliers", m=10, n=2, outliers=10)
    with pytest.raises(ValueError):
        DatasetSpec(kind="boutliers", m=10, n=2, outliers=2,
                    shell_inner=3.0, shell_outer=1.0)
