import math

import numpy as np
import pytest

from heatctrl.radial import (
    ExpMixture,
    PlaneFieldRadial,
    PolyExpMixture,
    Sampled,
    add,
    l2_norm_halfline,
    profile_from_json,
    profile_to_json,
    psi_forward,
    psi_inverse,
    sample_profile,
    scale,
)

SQRT_PI = math.sqrt(math.pi)


def test_exp_mixture_norm_closed_form():
    g = ExpMixture(((2.0, 3.0),))
    # int 4 e^{-6r} = 2/3
    assert g.l2_norm() == pytest.approx(math.sqrt(2.0 / 3.0), rel=1e-14)


def test_polyexp_norm_vs_quadrature():
    g = PolyExpMixture(((1.0, 2, 0.5), (-0.3, 0, 1.0)))
    grid = np.geomspace(1e-6, 120.0, 60000)
    vals = g.eval(grid)
    num = math.sqrt(np.trapezoid(vals**2, grid))
    assert g.l2_norm() == pytest.approx(num, rel=1e-5)


def test_plane_norm_factor():
    # ||f||_{L2(R2)} = sqrt(pi) ||g||_{L2(R+)} for f(x) = g(|x|^2)
    g = ExpMixture(((1.0, 1.0),))
    f = psi_inverse(g)
    # direct polar computation: int_0^inf e^{-2 s^2} 2 pi s ds = pi/2
    plane_sq = math.pi / 2.0
    assert SQRT_PI * l2_norm_halfline(g) == pytest.approx(math.sqrt(plane_sq), rel=1e-14)
    assert psi_forward(f) is g


def test_sampled_eval_and_tail():
    base = ExpMixture(((1.0, 1.0),))
    s = sample_profile(base, np.geomspace(1e-3, 20.0, 400))
    for r in (0.01, 0.5, 3.0, 30.0):
        assert s.eval(r) == pytest.approx(math.exp(-r), rel=1e-5)
    assert s.l2_norm() == pytest.approx(base.l2_norm(), rel=1e-3)


def test_json_round_trip():
    for g in (
        ExpMixture(((0.5, 1.0), (-0.25, 2.0))),
        PolyExpMixture(((1.0, 3, 0.125),)),
        Sampled((1.0, 2.0, 3.0), (0.1, 0.2, 0.05), 0.7),
    ):
        back = profile_from_json(profile_to_json(g))
        assert back == g
        # byte-identical re-serialization
        assert profile_to_json(back) == profile_to_json(g)


def test_scale_add():
    g = ExpMixture(((1.0, 1.0),))
    h = PolyExpMixture(((2.0, 1, 0.5),))
    s = add(scale(g, 3.0), h)
    assert s.eval(1.0) == pytest.approx(3.0 * math.exp(-1.0) + 2.0 * math.exp(-0.5), rel=1e-14)


def test_validation():
    with pytest.raises(ValueError):
        ExpMixture(((1.0, -1.0),))
    with pytest.raises(ValueError):
        Sampled((1.0, 0.5), (0.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        Sampled((1.0, 2.0), (0.0, 0.0), -1.0)
