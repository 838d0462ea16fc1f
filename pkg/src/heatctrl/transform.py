"""Self-inverse Hankel-type transform of order 0 on half-line profiles.

(Phi g)(rho) = 1/2 int_0^inf g(r) J0(sqrt(r rho)) dr.

Closed-form fast paths: e^{-a r} maps to (1/(2a)) e^{-rho/(4a)}, and
r^p e^{-a r} follows by differentiating that identity p times under the
rate a, which keeps the image inside the poly-exponential class.  The
quadrature fallback handles sampled profiles and serves as the
independent oracle for the closed-form path.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import QuadratureError
from .radial import (
    ExpMixture,
    PolyExpMixture,
    RadialProfile,
    Sampled,
    estimate_tail_rate,
)
from .special import bessel_j0, gauss_legendre


def _phi_power_term(p: int, alpha: float) -> list[tuple[float, int]]:
    """Image of r^p e^{-alpha r}: coefficients of rho^m in the poly-exp image.

    Returns [(coeff, power)] such that the image is
    sum(coeff * rho^power) * e^{-rho/(4 alpha)}.  Obtained by applying
    (-d/d alpha)^p to (1/(2 alpha)) e^{-rho/(4 alpha)}; each derivative
    acts on monomials rho^m alpha^{-s} as
        (-d/da): (m, s) -> s*(m, s+1) - (1/4)*(m+1, s+2).
    """
    # terms: {(m, s): rational coefficient} for coeff * rho^m * alpha^{-s}
    terms: dict[tuple[int, int], Fraction] = {(0, 1): Fraction(1, 2)}
    for _ in range(p):
        nxt: dict[tuple[int, int], Fraction] = {}
        for (m, s), c in terms.items():
            nxt[(m, s + 1)] = nxt.get((m, s + 1), Fraction(0)) + s * c
            nxt[(m + 1, s + 2)] = nxt.get((m + 1, s + 2), Fraction(0)) - c / 4
        terms = nxt
    return [(float(c) * alpha ** (-s), m) for (m, s), c in sorted(terms.items())]


def phi_closed_form(g: PolyExpMixture | ExpMixture) -> PolyExpMixture:
    out: list[tuple[float, int, float]] = []
    for c, p, alpha in g.to_polyexp().terms:
        rho_rate = 1.0 / (4.0 * alpha)
        for coeff, m in _phi_power_term(p, alpha):
            out.append((c * coeff, m, rho_rate))
    return PolyExpMixture(tuple(out))


def _truncation_point(g: RadialProfile, tol: float) -> float:
    """N with int_N^inf |g| dr <= tol, using |J0| <= 1 and the exponential tail."""
    if isinstance(g, (ExpMixture, PolyExpMixture)):
        terms = g.to_polyexp().terms
        n = max(10.0 / min(b for *_, b in terms), 1.0)
        for _ in range(200):
            # int_N^inf r^p e^{-b r} dr = e^{-bN} sum_k (p!/k!) N^k / b^{p-k+1}
            bound = sum(
                abs(c) * math.exp(-b * n) * sum(
                    math.factorial(p) / math.factorial(k) * n ** k / b ** (p - k + 1)
                    for k in range(p + 1)
                )
                for c, p, b in terms
            )
            if bound <= tol:
                return n
            n *= 1.5
        raise QuadratureError("could not bound the transform tail")
    if isinstance(g, Sampled):
        c = abs(g.values[-1]) * math.exp(g.tail_rate * g.grid[-1]) + 1e-300
        n = max(g.grid[-1], math.log(c / (g.tail_rate * tol) + 1.0) / g.tail_rate)
        return n
    raise TypeError(type(g))


def _phi_quad_values(g: RadialProfile, rhos: np.ndarray, tol: float) -> np.ndarray:
    """Panel quadrature of 1/2 int_0^N g(r) J0(sqrt(r rho)) dr for each rho.

    Substituting r = y^2 turns the kernel into J0(y sqrt(rho)); panels of
    width pi/sqrt(rho) in y track the oscillation, each integrated by
    Gauss-Legendre of order 12.
    """
    import scipy.special

    n_trunc = _truncation_point(g, tol)
    y_max = math.sqrt(n_trunc)
    base = gauss_legendre(12)
    base_nodes = (np.array(base.nodes) + 1.0) / 2.0
    base_weights = np.array(base.weights) / 2.0
    out = np.empty(len(rhos))
    for i, rho in enumerate(rhos):
        width = math.pi / math.sqrt(rho) if rho > 0 else y_max
        width = min(width, y_max / 4.0) if y_max > 0 else width
        n_panels = max(int(math.ceil(y_max / width)), 1)
        edges = np.linspace(0.0, y_max, n_panels + 1)
        h = edges[1] - edges[0]
        # all panel nodes at once: (n_panels, order) flattened
        y = (edges[:-1, None] + h * base_nodes[None, :]).ravel()
        w = np.tile(h * base_weights, n_panels)
        vals = np.asarray(g.eval(y * y))
        kern = scipy.special.j0(y * math.sqrt(rho))
        out[i] = float(np.sum(w * vals * kern * y))
    return out


def phi_quadrature_reference(g: RadialProfile, rho: float, tol: float = 1e-8) -> float:
    """Direct numerical evaluation of the transform at one point; oracle path."""
    return float(_phi_quad_values(g, np.array([float(rho)]), tol)[0])


def phi(g: RadialProfile, tol: float = 1e-8) -> RadialProfile:
    """Apply the transform; closed form for mixtures, panel quadrature for Sampled."""
    if isinstance(g, (ExpMixture, PolyExpMixture)):
        return phi_closed_form(g)
    if isinstance(g, Sampled):
        rhos = np.array(g.grid)
        vals = _phi_quad_values(g, rhos, tol)
        return Sampled(g.grid, tuple(vals), estimate_tail_rate(rhos, vals))
    raise TypeError(type(g))
