import math

import numpy as np
import pytest

from heatctrl.radial import ExpMixture, PolyExpMixture, Sampled, sample_profile
from heatctrl.transform import phi, phi_closed_form, phi_quadrature_reference


def test_exponential_image_exact():
    for alpha in (0.25, 1.0, 10.0):
        img = phi(ExpMixture(((1.0, alpha),)))
        assert img.terms == ((1.0 / (2.0 * alpha), 0, 1.0 / (4.0 * alpha)),)


def test_power_images_match_quadrature():
    # closed-form alpha-differentiation route vs direct oscillatory quadrature
    for p in (1, 2, 3):
        g = PolyExpMixture(((1.0, p, 0.8),))
        img = phi_closed_form(g)
        for rho in (0.1, 1.0, 4.0):
            ref = phi_quadrature_reference(g, rho, tol=1e-10)
            assert img.eval(rho) == pytest.approx(ref, rel=2e-7, abs=1e-10)


def test_involution_closed_form():
    g = PolyExpMixture(((1.0, 0, 1.0), (-0.5, 2, 0.3)))
    back = phi(phi(g))
    grid = np.geomspace(1e-3, 30.0, 300)
    num = math.sqrt(np.trapezoid((back.eval(grid) - g.eval(grid)) ** 2, grid))
    assert num / g.l2_norm() <= 1e-10


def test_involution_sampled():
    base = ExpMixture(((1.0, 0.5),))
    s = sample_profile(base, np.geomspace(1e-3, 60.0, 500))
    back = phi(phi(s))
    grid = np.array(s.grid)
    diff = np.array(back.values) - base.eval(grid)
    rel = math.sqrt(np.trapezoid(diff**2, grid)) / base.l2_norm()
    assert rel <= 1e-4


def test_isometry_closed_form():
    g = PolyExpMixture(((1.0, 1, 0.6), (0.2, 0, 2.0)))
    assert phi(g).l2_norm() == pytest.approx(g.l2_norm(), rel=1e-12)
