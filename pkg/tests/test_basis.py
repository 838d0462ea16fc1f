import math

import numpy as np
import pytest

from heatctrl.basis import (
    BasisContext,
    CoefficientVector,
    deviation_bound,
    expand,
    phi_n,
    phi_n_l,
    psi_hat_n,
    psi_n,
    reconstruct,
)
from heatctrl.errors import PreconditionError
from heatctrl.radial import ExpMixture, sample_profile
from heatctrl.special import integrate
from heatctrl.transform import phi


@pytest.fixture(params=[1.0, 3.0])
def ctx(request):
    return BasisContext(request.param)


def test_psi_orthonormal(ctx):
    for m in range(5):
        for n in range(5):
            pm, pn = psi_n(ctx, m), psi_n(ctx, n)
            val = sum(
                cm * cn * math.factorial(qm + qn) / (bm + bn) ** (qm + qn + 1)
                for cm, qm, bm in pm.terms
                for cn, qn, bn in pn.terms
            )
            assert val == pytest.approx(1.0 if m == n else 0.0, abs=1e-9)


def test_transform_exchanges_bases(ctx):
    rho = np.linspace(1e-6, 10.0 / ctx.T, 80)
    for n in range(6):
        img = phi(psi_n(ctx, n))
        ref = psi_hat_n(ctx, n)
        assert np.max(np.abs(img.eval(rho) - ref.eval(rho))) <= 1e-9


def test_phi_n_l_limits(ctx):
    f = phi_n_l(ctx, 2, 1000)
    ref = phi_n(ctx, 2)
    rho = np.geomspace(1e-8, 5.0 / ctx.T, 50)
    # mollifier factor is 1 + O(rho/l) pointwise, so ~1e-2 at rho = 5/T, l = 1000
    assert np.allclose(f(rho), ref.eval(rho), rtol=2e-2, atol=1e-12)
    # removable singularity at 0: mollifier factor -> 1
    assert f(1e-300) == pytest.approx(0.0, abs=1e-30)


def test_phi_n_l_precondition(ctx):
    with pytest.raises(PreconditionError):
        phi_n_l(ctx, 5, int(6 / ctx.T))
    with pytest.raises(PreconditionError):
        deviation_bound(ctx, 5, int(6 / ctx.T))


def test_deviation_bound_dominates_measured(ctx):
    T = ctx.T
    for n in range(4):
        for mult in (4, 10, 100):
            l = math.ceil(mult * (n + 1) / T) + 1
            f = phi_n_l(ctx, n, l)
            ref = phi_n(ctx, n)
            rate = 2.0 * (T - (n + 1) / l)

            def diff_sq(rho):
                d = ref.eval(rho) - f(rho)
                return d * d

            measured = math.sqrt(integrate(diff_sq, (0.0, math.inf), tol=1e-12, decay_rate=rate))
            assert measured <= deviation_bound(ctx, n, l)


def test_expand_reconstruct_roundtrip(ctx):
    g = ExpMixture(((-0.3, 1.0 / (10.0 * ctx.T)),))
    coeffs = expand(g, ctx, 10)
    rec = reconstruct(coeffs)
    grid = np.geomspace(1e-3 * ctx.T, 40.0 * ctx.T, 200)
    resid = math.sqrt(np.trapezoid((g.eval(grid) - rec.eval(grid)) ** 2, grid))
    tail = math.sqrt(max(g.l2_norm() ** 2 - sum(x * x for x in coeffs.g_coeffs), 0.0))
    assert resid <= tail * 1.05 + 1e-12


def test_expand_sampled_agrees_with_closed_form():
    ctx = BasisContext(3.0)
    g = ExpMixture(((-0.3, 1.0 / 30.0),))
    s = sample_profile(g, np.geomspace(1e-4, 200.0, 1200))
    exact = expand(g, ctx, 4)
    approx = expand(s, ctx, 4)
    for a, b in zip(exact.g_coeffs, approx.g_coeffs):
        assert b == pytest.approx(a, rel=2e-4, abs=1e-6)


def test_coefficient_vector_json():
    c = CoefficientVector(3.0, (1.0, -0.5), (0.5, 0.5))
    back = CoefficientVector.from_json(c.to_json())
    assert back == c
