"""Radial profiles g(r) standing for plane fields f(x) = g(|x|^2).

All profiles live in the squared-radius variable r = |x|^2.  Closed-form
mixtures sum(c_i * r^p_i * e^{-beta_i r}) are kept symbolic as long as
possible; sampling onto a grid is a last resort.  Plane-field L2 norms
relate to half-line profile norms by a factor sqrt(pi).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

SQRT_PI = math.sqrt(math.pi)


class RadialProfile:
    """Base class for half-line profiles; see the concrete representations."""

    def eval(self, r):
        raise NotImplementedError

    def l2_norm(self) -> float:
        raise NotImplementedError

    def to_json_dict(self) -> dict:
        raise NotImplementedError


def _fmt(x: float) -> str:
    """Shortest round-trip decimal string."""
    return repr(float(x))


@dataclass(frozen=True)
class ExpMixture(RadialProfile):
    """sum(c_i * e^{-beta_i r}) with all beta_i > 0; terms are (coefficient, rate)."""

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((float(c), float(b)) for c, b in self.terms))
        if any(b <= 0 for _, b in self.terms):
            raise ValueError("all rates must be positive")

    def eval(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for c, b in self.terms:
            out += c * np.exp(-b * r)
        return out if out.ndim else float(out)

    def to_polyexp(self) -> "PolyExpMixture":
        return PolyExpMixture(tuple((c, 0, b) for c, b in self.terms))

    def l2_norm(self) -> float:
        return self.to_polyexp().l2_norm()

    def to_json_dict(self) -> dict:
        return {
            "kind": "exp_mixture",
            "terms": [{"coefficient": _fmt(c), "rate": _fmt(b)} for c, b in self.terms],
        }


@dataclass(frozen=True)
class PolyExpMixture(RadialProfile):
    """sum(c_i * r^p_i * e^{-beta_i r}); terms are (coefficient, power, rate)."""

    terms: tuple[tuple[float, int, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "terms", tuple((float(c), int(p), float(b)) for c, p, b in self.terms)
        )
        if any(b <= 0 for _, _, b in self.terms):
            raise ValueError("all rates must be positive")
        if any(p < 0 for _, p, _ in self.terms):
            raise ValueError("powers must be nonnegative")

    def eval(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for c, p, b in self.terms:
            out += c * r**p * np.exp(-b * r)
        return out if out.ndim else float(out)

    def to_polyexp(self) -> "PolyExpMixture":
        return self

    def l2_norm(self) -> float:
        # int_0^inf r^m e^{-a r} dr = m!/a^{m+1}, applied term-pair-wise
        acc = 0.0
        for ci, pi_, bi in self.terms:
            for cj, pj, bj in self.terms:
                acc += ci * cj * math.factorial(pi_ + pj) / (bi + bj) ** (pi_ + pj + 1)
        return math.sqrt(max(acc, 0.0))

    def to_json_dict(self) -> dict:
        return {
            "kind": "polyexp_mixture",
            "terms": [
                {"coefficient": _fmt(c), "power": p, "rate": _fmt(b)} for c, p, b in self.terms
            ],
        }


@dataclass(frozen=True)
class Sampled(RadialProfile):
    """Values on a strictly increasing grid in r > 0, with a single-exponential tail."""

    grid: tuple[float, ...]
    values: tuple[float, ...]
    tail_rate: float

    def __post_init__(self):
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "tail_rate", float(self.tail_rate))
        if len(self.grid) < 2 or self.grid[0] <= 0:
            raise ValueError("grid needs >= 2 points starting at r > 0")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if len(self.values) != len(self.grid):
            raise ValueError("values and grid lengths differ")
        if self.tail_rate <= 0:
            raise ValueError("tail_rate must be positive")

    def _interp(self) -> PchipInterpolator:
        cached = self.__dict__.get("_interp_cache")
        if cached is None:
            cached = PchipInterpolator(np.array(self.grid), np.array(self.values), extrapolate=True)
            object.__setattr__(self, "_interp_cache", cached)
        return cached

    def eval(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        out = np.empty_like(r)
        inside = r <= self.grid[-1]
        if inside.any():
            out[inside] = self._interp()(r[inside])
        if (~inside).any():
            # exponential tail matched to the last sample
            c = self.values[-1] * math.exp(self.tail_rate * self.grid[-1])
            out[~inside] = c * np.exp(-self.tail_rate * r[~inside])
        return float(out[0]) if scalar else out

    def l2_norm(self) -> float:
        g = np.array(self.grid)
        v = np.array(self.values)
        core = np.trapezoid(v**2, g)
        head = v[0] ** 2 * g[0]
        c = self.values[-1] * math.exp(self.tail_rate * self.grid[-1])
        tail = c**2 * math.exp(-2 * self.tail_rate * self.grid[-1]) / (2 * self.tail_rate)
        return math.sqrt(max(core + head + tail, 0.0))

    def to_json_dict(self) -> dict:
        return {
            "kind": "sampled",
            "grid": [_fmt(g) for g in self.grid],
            "values": [_fmt(v) for v in self.values],
            "tail_rate": _fmt(self.tail_rate),
        }


@dataclass(frozen=True)
class PlaneFieldRadial:
    """Plane field f(x) = g(|x|^2) represented by its half-line profile g."""

    profile: RadialProfile


def psi_forward(f: PlaneFieldRadial) -> RadialProfile:
    """Radial reduction of a plane field.

    On this representation the reduction is the identity: the data model
    already stores the half-line profile g with f(x) = g(|x|^2).
    """
    return f.profile


def psi_inverse(g: RadialProfile) -> PlaneFieldRadial:
    """Inverse reduction: wrap a half-line profile as the plane field g(|x|^2)."""
    return PlaneFieldRadial(g)


def l2_norm_halfline(g: RadialProfile) -> float:
    """||g||_{L2(R+)}; the plane field norm is sqrt(pi) times this."""
    return g.l2_norm()


def eval_profile(g: RadialProfile, r: float) -> float:
    return g.eval(r)


def scale(g: RadialProfile, a: float) -> RadialProfile:
    if isinstance(g, ExpMixture):
        return ExpMixture(tuple((a * c, b) for c, b in g.terms))
    if isinstance(g, PolyExpMixture):
        return PolyExpMixture(tuple((a * c, p, b) for c, p, b in g.terms))
    if isinstance(g, Sampled):
        return Sampled(g.grid, tuple(a * v for v in g.values), g.tail_rate)
    raise TypeError(type(g))


def add(g: RadialProfile, h: RadialProfile) -> RadialProfile:
    """Sum of two closed-form mixtures (kept symbolic)."""
    if isinstance(g, ExpMixture) and isinstance(h, ExpMixture):
        return ExpMixture(g.terms + h.terms)
    if isinstance(g, (ExpMixture, PolyExpMixture)) and isinstance(h, (ExpMixture, PolyExpMixture)):
        return PolyExpMixture(g.to_polyexp().terms + h.to_polyexp().terms)
    raise TypeError("add is defined for closed-form mixtures only")


def estimate_tail_rate(grid, values) -> float:
    """Slowest decay observed over the last decade of the grid (log-linear fit)."""
    g = np.asarray(grid, dtype=float)
    v = np.abs(np.asarray(values, dtype=float))
    mask = (g >= g[-1] / 10.0) & (v > 0)
    if mask.sum() < 2:
        return 1.0
    slope = np.polyfit(g[mask], np.log(v[mask]), 1)[0]
    return max(-float(slope), 1e-12)


def sample_profile(g: RadialProfile, grid, tail_rate: float | None = None) -> Sampled:
    """Sample a profile onto a strictly increasing grid in r."""
    grid = np.asarray(grid, dtype=float)
    values = np.array([g.eval(r) for r in grid])
    if tail_rate is None:
        if isinstance(g, Sampled):
            tail_rate = g.tail_rate
        elif isinstance(g, (ExpMixture, PolyExpMixture)):
            tail_rate = min(b for *_, b in g.to_polyexp().terms)
        else:
            tail_rate = estimate_tail_rate(grid, values)
    return Sampled(tuple(grid), tuple(values), tail_rate)


def profile_to_json(g: RadialProfile) -> str:
    return json.dumps(g.to_json_dict(), indent=2, sort_keys=False) + "\n"


def profile_from_json_dict(d: dict) -> RadialProfile:
    kind = d["kind"]
    if kind == "exp_mixture":
        return ExpMixture(tuple((float(t["coefficient"]), float(t["rate"])) for t in d["terms"]))
    if kind == "polyexp_mixture":
        return PolyExpMixture(
            tuple((float(t["coefficient"]), int(t["power"]), float(t["rate"])) for t in d["terms"])
        )
    if kind == "sampled":
        return Sampled(
            tuple(float(x) for x in d["grid"]),
            tuple(float(x) for x in d["values"]),
            float(d["tail_rate"]),
        )
    raise ValueError(f"unknown profile kind: {kind!r}")


def profile_from_json(text: str) -> RadialProfile:
    return profile_from_json_dict(json.loads(text))
