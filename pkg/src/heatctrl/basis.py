"""Laguerre function bases at horizon T and coefficient extraction.

psi_n(r)     = 1/sqrt(2T) L_n(r/(2T)) e^{-r/(4T)}   (orthonormal on R+)
psi_hat_n(p) = (-1)^n sqrt(2T) L_n(2T p) e^{-T p}   (its transform image)
phi_n(p)     = p^n e^{-T p}                          (monomial-exponential system)
phi_n_l      = phi_n damped-mollifier variant with the ((e^{p/l}-1)/(p/l))^{n+1} factor

Coefficient extraction g_n = <g, psi_n> is fully closed-form for
poly-exponential mixtures and is carried out in exact rational
arithmetic: the alternating sums d_k^N downstream amplify rounding to
control levels near 1e10, so the float path is not trusted here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .radial import ExpMixture, PolyExpMixture, RadialProfile, Sampled, _fmt
from .special import integrate, log_factorial


@dataclass(frozen=True)
class BasisContext:
    """Horizon parameter shared by all basis functions."""

    T: float

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("T must be positive")


@dataclass(frozen=True)
class CoefficientVector:
    """Expansion coefficients g_0..g_N and the derived alternating sums d_k^N."""

    T: float
    g_coeffs: tuple[float, ...]
    d_coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.g_coeffs) != len(self.d_coeffs):
            raise ValueError("g and d coefficient lengths differ")

    def to_json(self) -> str:
        d = {
            "T": _fmt(self.T),
            "g": [_fmt(x) for x in self.g_coeffs],
            "d": [_fmt(x) for x in self.d_coeffs],
        }
        return json.dumps(d, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "CoefficientVector":
        d = json.loads(text)
        return CoefficientVector(
            float(d["T"]),
            tuple(float(x) for x in d["g"]),
            tuple(float(x) for x in d["d"]),
        )


def psi_n(ctx: BasisContext, n: int) -> PolyExpMixture:
    """n-th orthonormal Laguerre function at scale r/(2T), as a mixture."""
    T = ctx.T
    norm = 1.0 / math.sqrt(2.0 * T)
    terms = tuple(
        (norm * math.comb(n, k) * (-1) ** k / (math.factorial(k) * (2.0 * T) ** k), k, 1.0 / (4.0 * T))
        for k in range(n + 1)
    )
    return PolyExpMixture(terms)


def psi_hat_n(ctx: BasisContext, n: int) -> PolyExpMixture:
    """Transform image of psi_n: (-1)^n sqrt(2T) L_n(2T rho) e^{-T rho}."""
    T = ctx.T
    norm = (-1) ** n * math.sqrt(2.0 * T)
    terms = tuple(
        (norm * math.comb(n, k) * (-1) ** k * (2.0 * T) ** k / math.factorial(k), k, T)
        for k in range(n + 1)
    )
    return PolyExpMixture(terms)


def phi_n(ctx: BasisContext, n: int) -> PolyExpMixture:
    """Monomial-exponential function rho^n e^{-T rho}."""
    return PolyExpMixture(((1.0, n, ctx.T),))


def phi_n_l(ctx: BasisContext, n: int, l: int):
    """phi_n with the mollifier factor ((e^{rho/l}-1)/(rho/l))^{n+1}.

    The factor has a removable singularity at rho=0 (limit 1); expm1
    keeps it accurate for small arguments.
    """
    if l <= (n + 1) / ctx.T:
        raise PreconditionError(f"need l > (n+1)/T = {(n + 1) / ctx.T}")
    T = ctx.T

    def f(rho):
        rho = np.asarray(rho, dtype=float)
        x = rho / l
        with np.errstate(invalid="ignore"):
            factor = np.where(x > 0, np.expm1(x) / np.where(x > 0, x, 1.0), 1.0)
        out = rho**n * np.exp(-T * rho) * factor ** (n + 1)
        return out if out.ndim else float(out)

    return f


def deviation_bound(ctx: BasisContext, n: int, l: int) -> float:
    """Upper bound on ||phi_n - phi_n^l||_{L2(R+)}; vanishes as l grows."""
    T = ctx.T
    if l <= (n + 1) / T:
        raise PreconditionError(f"need l > (n+1)/T = {(n + 1) / T}")
    log_val = (
        math.log(n + 1)
        - (n + 2.5) * math.log(2.0)
        - math.log(l)
        + 0.5 * log_factorial(2 * n + 2)
        - (n + 1.5) * math.log(T - (n + 1) / l)
    )
    return math.exp(log_val)


def _inner_product_closed_form(g: PolyExpMixture, ctx: BasisContext, n: int) -> float:
    """<g, psi_n> in exact rational arithmetic (rates and coefficients promoted)."""
    T = Fraction(ctx.T)
    acc = Fraction(0)
    for c, p, beta in g.terms:
        cf, bf = Fraction(c), Fraction(beta)
        s = bf + Fraction(1, 4) / T
        for k in range(n + 1):
            num = Fraction(math.comb(n, k) * (-1) ** k * math.factorial(p + k), math.factorial(k))
            acc += cf * num / ((2 * T) ** k * s ** (p + k + 1))
    return float(acc) / math.sqrt(2.0 * ctx.T)


def _inner_product_quadrature(g: Sampled, ctx: BasisContext, n: int) -> float:
    psi = psi_n(ctx, n)
    rate = 1.0 / (4.0 * ctx.T) + min(g.tail_rate, 1.0 / (4.0 * ctx.T))

    def f(r):
        return g.eval(r) * psi.eval(r)

    # the pchip interpolant is only C1, so demanding 1e-10 here stalls
    return integrate(f, (0.0, math.inf), tol=1e-7, decay_rate=rate)


def expand(g: RadialProfile, ctx: BasisContext, N: int) -> CoefficientVector:
    """Coefficients g_n = <g, psi_n>, n <= N, and d_k^N = sum C(n,k)(-1)^n g_n.

    The d sums are alternating with binomial growth; they are formed in
    exact rational arithmetic from the (float) g_n.
    """
    if isinstance(g, (ExpMixture, PolyExpMixture)):
        gm = g.to_polyexp()
        g_coeffs = [_inner_product_closed_form(gm, ctx, n) for n in range(N + 1)]
    elif isinstance(g, Sampled):
        g_coeffs = [_inner_product_quadrature(g, ctx, n) for n in range(N + 1)]
    else:
        raise TypeError(type(g))
    g_frac = [Fraction(x) for x in g_coeffs]
    d_coeffs = [
        float(sum(math.comb(n, k) * (-1) ** n * g_frac[n] for n in range(k, N + 1)))
        for k in range(N + 1)
    ]
    return CoefficientVector(ctx.T, tuple(g_coeffs), tuple(d_coeffs))


def reconstruct(coeffs: CoefficientVector) -> PolyExpMixture:
    """Partial sum sum_{n<=N} g_n psi_n as a mixture."""
    ctx = BasisContext(coeffs.T)
    terms: list[tuple[float, int, float]] = []
    for n, gn in enumerate(coeffs.g_coeffs):
        terms.extend((gn * c, p, b) for c, p, b in psi_n(ctx, n).terms)
    return PolyExpMixture(tuple(terms))
