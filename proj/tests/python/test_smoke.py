import math

import numpy as np
import pytest

import axivort


def test_kernel_limits():
    s = np.array([1e-6, 1e6])
    F = axivort.eval_F(s)
    assert abs(F[0] - (math.log(8 / math.sqrt(1e-6)) - 2)) < 1e-2
    assert abs(F[1] * 1e9 - math.pi / 2) < 1e-2
    H = axivort.eval_H(np.array([1e-4]))
    assert abs(H[0] - (1 - 0.75e-4)) < 2e-3


def test_kernel_domain():
    with pytest.raises(ValueError):
        axivort.eval_F(np.array([0.0]))


def test_grid_and_norms():
    g = axivort.Grid(32, 64, 12.0, 12.0)
    assert g.r.shape == (32,) and g.z.shape == (64,)
    w = axivort.gaussian_ring(g, l1=0.1)
    assert w.shape == (32, 64)
    assert axivort.norms(g, w)["l1"] == pytest.approx(0.1, rel=1e-12)


def test_shape_mismatch():
    g = axivort.Grid(8, 16, 4.0, 4.0)
    with pytest.raises(ValueError):
        axivort.velocity(g, np.zeros((16, 8)))


def test_velocity_is_antisymmetric_in_z():
    g = axivort.Grid(24, 48, 10.0, 10.0)
    w = axivort.gaussian_ring(g, l1=0.1)
    ur, uz = axivort.velocity(g, w)
    assert np.allclose(ur, -ur[:, ::-1], atol=1e-14)
    assert np.allclose(uz, uz[:, ::-1], atol=1e-14)


def test_semigroup_keeps_impulse():
    g = axivort.Grid(48, 96, 16.0, 16.0)
    w = axivort.gaussian_ring(g, l1=0.1)
    before = axivort.norms(g, w)["impulse"]
    after = axivort.norms(g, axivort.apply_S(g, 1.0, w))["impulse"]
    assert after == pytest.approx(before, rel=1e-3)
    with pytest.raises(ValueError):
        axivort.apply_S(g, -1.0, w)


def test_short_evolution():
    g = axivort.Grid(32, 64, 12.0, 12.0)
    w = axivort.gaussian_ring(g, l1=0.1)
    out = axivort.evolve(g, w, t_final=0.6, dt=0.2)
    l1 = out["l1"]
    assert len(l1) == 4
    assert all(b < a for a, b in zip(l1, l1[1:]))
    assert out["omega"].shape == w.shape
