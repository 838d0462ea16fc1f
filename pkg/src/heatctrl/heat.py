"""Solution formulas: free evolution, the controlled term, end states, reports.

The controlled term is evaluated through exponential-integral closed
forms per control segment (substitution y = r/(4 xi)), which removes the
integrable singularity at xi -> 0 from the numerics.  Free evolution of
closed-form mixtures stays closed-form; sampled profiles go through the
transform-multiplier route.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisContext, expand
from .control import Control
from .radial import (
    ExpMixture,
    PolyExpMixture,
    RadialProfile,
    Sampled,
    _fmt,
    add,
    sample_profile,
)
from .special import exp_integral_e1
from .transform import phi

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ErrorBudget:
    """Analytic bound on the synthesis residual: basis tail + mollification penalty."""

    tail_term: float
    mollification_term: float

    @property
    def total(self) -> float:
        return self.tail_term + self.mollification_term


@dataclass(frozen=True)
class EndStateReport:
    target_norm: float
    residual_norm: float
    budget: ErrorBudget

    @property
    def plane_residual(self) -> float:
        return SQRT_PI * self.residual_norm

    def to_json(self) -> str:
        d = {
            "target_norm": _fmt(self.target_norm),
            "residual_norm": _fmt(self.residual_norm),
            "plane_residual": _fmt(self.plane_residual),
            "budget": {
                "tail_term": _fmt(self.budget.tail_term),
                "mollification_term": _fmt(self.budget.mollification_term),
                "total": _fmt(self.budget.total),
            },
        }
        return json.dumps(d, indent=2) + "\n"


def free_evolution(g0: RadialProfile, t: float) -> RadialProfile:
    """Profile of the freely evolved plane field after time t.

    ExpMixture: c e^{-b r} -> c/(1+4bt) e^{-b r/(1+4bt)} term-wise.
    PolyExpMixture: transform, multiply by e^{-t rho}, transform back
    (closed under the mixture class).  Sampled: same multiplier route on
    the sampled transform path; accuracy is 1e-4 class.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return g0
    if isinstance(g0, ExpMixture):
        terms = tuple(
            (c / (1.0 + 4.0 * b * t), b / (1.0 + 4.0 * b * t)) for c, b in g0.terms
        )
        return ExpMixture(terms)
    if isinstance(g0, PolyExpMixture):
        image = phi(g0)
        damped = PolyExpMixture(tuple((c, p, b + t) for c, p, b in image.terms))
        return phi(damped)
    if isinstance(g0, Sampled):
        image = phi(g0)
        damped = Sampled(
            image.grid,
            tuple(v * math.exp(-t * rho) for v, rho in zip(image.values, image.grid)),
            image.tail_rate + t,
        )
        return phi(damped)
    raise TypeError(type(g0))


def controlled_term(u: Control, t: float, r: float) -> float:
    """Y_u(r, t): reduced profile of the control-driven solution part.

    Per segment (a, b) in xi with constant (time-reversed) level v the
    integral is v/2 * [E_1(r/(4b)) - E_1(r/(4a))], with E_1(inf) = 0 at
    the xi -> 0 endpoint; the whole sum is scaled by -1/pi.
    """
    if not 0 < t <= u.T + 1e-12:
        raise ValueError("need 0 < t <= T")
    if r <= 0:
        raise ValueError("need r > 0")
    acc = 0.0
    for ba, bb, v in zip(u.breakpoints, u.breakpoints[1:], u.levels):
        if v == 0.0 or ba >= t:
            continue
        # u(t - xi) = v for xi in (t - min(bb, t), t - ba)
        a, b = t - min(bb, t), t - ba
        e_at_b = exp_integral_e1(r / (4.0 * b))
        e_at_a = exp_integral_e1(r / (4.0 * a)) if a > 0 else 0.0
        acc += v * 0.5 * (e_at_b - e_at_a)
    return -acc / math.pi


def controlled_term_quadrature(u: Control, t: float, r: float, tol: float = 1e-10) -> float:
    """Direct adaptive time-quadrature of the controlled term; test oracle."""
    import scipy.integrate

    def integrand(xi):
        return -u.eval(t - xi) * math.exp(-r / (4.0 * xi)) / (2.0 * math.pi * xi)

    pts = sorted({t - b for b in u.breakpoints if 0 < t - b < t})
    val, _ = scipy.integrate.quad(
        integrand, 0.0, t, points=pts or None, epsabs=tol, epsrel=tol, limit=400
    )
    return float(val)


def default_residual_grid(T: float, n_points: int = 600) -> np.ndarray:
    """Log-spaced r grid capturing both the log spike near 0 and the Gaussian tail."""
    return np.geomspace(1e-4 * T, 60.0 * T, n_points)


def controlled_profile(u: Control, t: float, grid=None) -> Sampled:
    """Y_u(., t) sampled on a grid."""
    if grid is None:
        grid = default_residual_grid(u.T)
    grid = np.asarray(grid, dtype=float)
    vals = np.array([controlled_term(u, t, r) for r in grid])
    return Sampled(tuple(grid), tuple(vals), 1.0 / (4.0 * t))


def end_state(u: Control, g0: RadialProfile, T: float, grid=None) -> Sampled:
    """Profile of the full end state: free evolution plus controlled term."""
    if grid is None:
        grid = default_residual_grid(T)
    grid = np.asarray(grid, dtype=float)
    free = free_evolution(g0, T)
    vals = np.array(
        [free.eval(r) + controlled_term(u, T, r) for r in grid]
    )
    tail = min(
        1.0 / (4.0 * T),
        min(b for *_, b in free.to_polyexp().terms) if isinstance(free, (ExpMixture, PolyExpMixture)) else free.tail_rate,
    )
    return Sampled(tuple(grid), tuple(vals), tail)


def residual_norm(g_target: RadialProfile, u: Control, T: float, grid=None) -> float:
    """||g_target - Y_u(., T)||_{L2(R+)} by trapezoid on the log grid with tail closure."""
    if grid is None:
        grid = default_residual_grid(T)
    grid = np.asarray(grid, dtype=float)
    diff = np.array([g_target.eval(r) - controlled_term(u, T, r) for r in grid])
    core = float(np.trapezoid(diff**2, grid))
    head = diff[0] ** 2 * grid[0]
    # both target and controlled term decay at least like e^{-r/(4T)} out here
    rate = 1.0 / (4.0 * T)
    tail = diff[-1] ** 2 / (2.0 * rate)
    return math.sqrt(core + head + tail)


def error_budget(g: RadialProfile, T: float, N: int, l: int) -> ErrorBudget:
    """Analytic residual bound: truncation tail plus the mollification sum."""
    coeffs = expand(g, BasisContext(T), N)
    norm_sq = g.l2_norm() ** 2
    tail = math.sqrt(max(norm_sq - sum(x * x for x in coeffs.g_coeffs), 0.0))
    moll = 0.0
    for k in range(N + 1):
        moll += (
            T**k
            * math.sqrt(math.factorial(2 * k + 2))
            / (T - (k + 1) / l) ** (k + 1.5)
            * (k + 1)
            / math.factorial(k)
            * abs(coeffs.d_coeffs[k])
        )
    moll *= math.sqrt(T) / (4.0 * l)
    return ErrorBudget(tail, moll)


def report(g_target: RadialProfile, u: Control, T: float, N: int, l: int, grid=None) -> EndStateReport:
    """Measured residual against the synthesized control plus its analytic budget."""
    budget = error_budget(g_target, T, N, l)
    measured = residual_norm(g_target, u, T, grid=grid)
    return EndStateReport(g_target.l2_norm(), measured, budget)


def bounded_growth_check(u: Control, t_grid) -> float:
    """Max over t of sqrt(pi)||Y_u(., t)|| / ((2/sqrt(pi))(t+1)||u||_inf); must be <= 1."""
    L = u.sup_norm
    if L == 0:
        return 0.0
    worst = 0.0
    for t in t_grid:
        prof = controlled_profile(u, t)
        ratio = SQRT_PI * prof.l2_norm() / ((2.0 / SQRT_PI) * (t + 1.0) * L)
        worst = max(worst, ratio)
    return worst
