import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heatctrl.basis import BasisContext, expand
from heatctrl.control import (
    Control,
    control_moments,
    entire_bound,
    entire_eval,
    gamma_moments,
    mollified_delta_derivative,
    necessary_condition,
    omega_moments,
    synthesize,
    verify_against_target,
    zero_control,
)
from heatctrl.errors import PreconditionError
from heatctrl.radial import ExpMixture, PlaneFieldRadial, PolyExpMixture

T = 3.0
TARGET = ExpMixture(((-0.3, 1.0 / (10.0 * T)),))


def test_control_eval_and_json():
    u = Control(2.0, (0.0, 0.5, 2.0), (1.0, -3.0))
    assert u.eval(0.25) == 1.0
    assert u.eval(1.0) == -3.0
    assert u.sup_norm == 3.0
    assert Control.from_json(u.to_json()) == u
    assert "t_start,t_end,level" in u.to_csv()


def test_control_validation():
    with pytest.raises(ValueError):
        Control(1.0, (0.0, 0.5), (1.0, 2.0))
    with pytest.raises(ValueError):
        Control(1.0, (0.1, 1.0), (1.0,))


def test_mollified_delta_moments():
    # u_l^n has xi-moments: int xi^k u_l^n(xi) dxi -> delta_{kn} * n! as l grows
    n, l = 2, 200
    u = mollified_delta_derivative(n, l, 1.0)
    for k in range(4):
        acc = sum(
            v * (b ** (k + 1) - a ** (k + 1)) / (k + 1)
            for a, b, v in zip(u.breakpoints, u.breakpoints[1:], u.levels)
        )
        expected = math.factorial(n) if k == n else 0.0
        assert acc == pytest.approx(expected, abs=0.05 * max(1.0, math.factorial(k)))


def test_synthesize_precondition():
    with pytest.raises(PreconditionError):
        synthesize(TARGET, T, 5, 2)


def test_gamma_moments_exponential():
    # gamma_n for e^{-r/(4T)}: integral n! (4T)^{n+1} gives -2 pi T^{n+1}
    g = ExpMixture(((1.0, 1.0 / (4.0 * T)),))
    seq = gamma_moments(g, 3)
    for n, val in enumerate(seq.values):
        assert val == pytest.approx(-2.0 * math.pi * T ** (n + 1), rel=1e-13)


def test_omega_equals_gamma():
    fields = [
        ExpMixture(((1.0, 0.2),)),
        ExpMixture(((-0.4, 0.08), (0.1, 0.5))),
        PolyExpMixture(((0.3, 1, 0.15),)),
    ]
    for g in fields:
        om = omega_moments(PlaneFieldRadial(g), 4)
        ga = gamma_moments(g, 4)
        for a, b in zip(om.values, ga.values):
            assert a == pytest.approx(b, rel=1e-6, abs=1e-10)


def test_control_moments_match_target_up_to_N():
    # synthesized control approximately matches the target gamma moments
    N, l = 4, 400
    u = synthesize(TARGET, T, N, l)
    ctx = BasisContext(T)
    coeffs = expand(TARGET, ctx, N)
    from heatctrl.basis import reconstruct

    partial = reconstruct(coeffs)
    want = gamma_moments(partial, N)
    got = control_moments(u, N)
    for n, (a, b) in enumerate(zip(want.values, got.values)):
        assert b == pytest.approx(a, rel=5e-2, abs=1e-3), f"moment {n}"


def test_necessary_condition_example():
    g = ExpMixture(((-2.0 / (math.pi * T), 1.0 / (2.0 * T)),))
    sup = necessary_condition(g, T)
    assert sup <= 4.0 / (math.pi * T) * (1.0 + 1e-9)


def test_entire_eval_against_quadrature():
    import scipy.integrate

    u = mollified_delta_derivative(1, 5, 2.0)
    for z in (0.0, 1.0 + 2.0j, -0.5 + 0.3j):
        def fr(xi):
            return (-u.eval(u.T - xi) / math.pi * np.exp(-xi * z)).real

        def fi(xi):
            return (-u.eval(u.T - xi) / math.pi * np.exp(-xi * z)).imag

        pts = [u.T - b for b in u.breakpoints if 0 < u.T - b < u.T]
        re, _ = scipy.integrate.quad(fr, 0, u.T, points=pts, limit=200)
        im, _ = scipy.integrate.quad(fi, 0, u.T, points=pts, limit=200)
        got = entire_eval(u, z)
        assert got.real == pytest.approx(re, rel=1e-8, abs=1e-10)
        assert got.imag == pytest.approx(im, rel=1e-8, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(0.5, 4.0),
    st.lists(st.floats(-5.0, 5.0), min_size=1, max_size=6),
    st.floats(-3.0, 3.0),
    st.floats(-3.0, 3.0),
)
def test_entire_bound_property(T_, levels, re, im):
    bp = np.linspace(0.0, T_, len(levels) + 1)
    u = Control(T_, tuple(bp), tuple(levels))
    z = complex(re, im)
    assert abs(entire_eval(u, z)) <= entire_bound(u, z) * (1.0 + 1e-9) + 1e-12


def test_verify_report_keys():
    u = synthesize(TARGET, T, 3, 20)
    rep = verify_against_target(u, TARGET, T, 3)
    assert set(rep) == {
        "sup_norm",
        "condition_supremum",
        "condition_threshold",
        "condition_holds",
        "entire_bound_max_ratio",
        "moment_residuals",
    }
    assert rep["entire_bound_max_ratio"] <= 1.0 + 1e-9
    assert len(rep["moment_residuals"]) == 4


def test_zero_control():
    u = zero_control(1.5)
    assert u.sup_norm == 0.0
    assert control_moments(u, 2).values == (0.0, 0.0, 0.0)
