"""Closed-form estimates for invariant distances.

Everything here is elementary arithmetic on distances, scales and planar
coordinates; the oracles these estimates are checked against live in
``kobayashi_balls.oracles``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import ConvexityClass
from .linalg import as_cvector

ARTANH_GUARD = 1.0 - 1e-15


def artanh(x):
    """``0.5 * log((1 + x) / (1 - x))`` with ``x`` capped below 1."""
    x = np.minimum(np.asarray(x, dtype=float), ARTANH_GUARD)
    return 0.5 * np.log((1 + x) / (1 - x))


def artanh_stable(x, one_minus_x2):
    """artanh(x) when ``1 - x**2`` is available without cancellation."""
    return np.log1p(x) - 0.5 * np.log(one_minus_x2)


def _kappa(cls) -> float:
    cls = ConvexityClass(cls)
    if cls is ConvexityClass.CONVEX:
        return 0.5
    if cls is ConvexityClass.C_CONVEX:
        return 0.25
    raise ValueError("lower bounds need a convex or C-convex domain")


@dataclass(frozen=True)
class SandwichBox:
    radius: float
    convexity: ConvexityClass
    n: int
    inner_coeff: float
    outer_coeff: float | None

    def inner_radii(self, scales) -> np.ndarray:
        return self.inner_coeff * np.asarray(scales, dtype=float)

    def outer_radii(self, scales) -> np.ndarray:
        if self.outer_coeff is None:
            raise ValueError("no outer polydisc for weakly linearly convex domains")
        return self.outer_coeff * np.asarray(scales, dtype=float)


def sandwich_box(r: float, n: int, convexity=ConvexityClass.CONVEX) -> SandwichBox:
    if not r > 0:
        raise ValueError("radius must be positive")
    convexity = ConvexityClass(convexity)
    inner = float(np.expm1(2 * r) / (n * (np.exp(2 * r) + 1)))
    outer = None
    if convexity is not ConvexityClass.WEAKLY_LINEARLY_CONVEX:
        outer = theorem1_outer_radius(r, convexity)
    return SandwichBox(float(r), convexity, int(n), inner, outer)


@dataclass(frozen=True)
class HullGauge:
    center: np.ndarray
    scales: np.ndarray

    def __post_init__(self):
        c = as_cvector(self.center)
        s = np.asarray(self.scales, dtype=float).reshape(-1)
        if s.size != c.size or np.any(s <= 0):
            raise ValueError("gauge scales must be positive, one per coordinate")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "scales", s)

    @classmethod
    def from_basis(cls, mb) -> "HullGauge":
        """Gauge in the coordinates of a standard-position minimal basis."""
        return cls(mb.base_point, mb.scales)

    def ratios(self, z) -> np.ndarray:
        return np.abs(np.asarray(z, dtype=complex) - self.center) / self.scales


def gauge(h: HullGauge, z):
    """``sum_j |z_j - q_j| / tau_j``; vectorized over rows."""
    return np.sum(h.ratios(z), axis=-1)


@dataclass(frozen=True)
class Theorem1Chain:
    max_ratio_ok: bool
    gauge_ok: bool
    lempert_bound: float | None
    max_ratio: float
    gauge: float


def theorem1_inner(h: HullGauge, z, r: float) -> Theorem1Chain:
    """Evaluate the implication chain for the inner polydisc.

    ``max_ratio_ok``: every ``|z_j - q_j| / tau_j < tanh(r) / n``.
    ``gauge_ok``: the weighted sum is ``< tanh(r)``.
    ``lempert_bound``: ``artanh`` of the gauge, the Lempert-function bound
    coming from the hull of coordinate discs (``None`` outside that hull).
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    ratios = h.ratios(as_cvector(z))
    n = ratios.size
    t = float(np.tanh(r))
    g = float(ratios.sum())
    return Theorem1Chain(
        max_ratio_ok=bool(ratios.max() < t / n),
        gauge_ok=bool(g < t),
        lempert_bound=float(artanh(g)) if g < 1 else None,
        max_ratio=float(ratios.max()),
        gauge=g,
    )


def theorem1_outer_radius(r: float, convexity) -> float:
    """Outer polydisc coefficient: ``e^{2r} - 1`` (convex), ``e^{4r} - 1`` (C-convex)."""
    convexity = ConvexityClass(convexity)
    if convexity is ConvexityClass.CONVEX:
        return float(np.expm1(2 * r))
    if convexity is ConvexityClass.C_CONVEX:
        return float(np.expm1(4 * r))
    raise ValueError("no outer bound for weakly linearly convex domains")


def prop2_quotient_lower(dz, dw, convexity):
    """``max(0, kappa * log(dz / dw))`` with ``kappa`` 1/2 (convex) or 1/4 (C-convex)."""
    dz = np.asarray(dz, dtype=float)
    dw = np.asarray(dw, dtype=float)
    if np.any(dz <= 0) or np.any(dw <= 0):
        raise ValueError("boundary distances must be positive")
    out = np.maximum(0.0, _kappa(convexity) * np.log(dz / dw))
    return float(out) if out.ndim == 0 else out


def prop2_planar_lower(z, w, dw, convexity):
    """``kappa * log(1 + |z - w| / dw)`` for planar convex or simply connected domains."""
    dw = np.asarray(dw, dtype=float)
    if np.any(dw <= 0):
        raise ValueError("boundary distance must be positive")
    out = _kappa(convexity) * np.log1p(np.abs(np.asarray(z) - np.asarray(w)) / dw)
    return float(out) if out.ndim == 0 else out


def halfplane_distance(z, w):
    """Distance in the right half-plane: ``artanh |z - w| / |z + conj(w)|``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(z.real <= 0) or np.any(w.real <= 0):
        raise ValueError("arguments must lie in the open right half-plane")
    den = np.abs(z + np.conj(w))
    x = np.abs(z - w) / den
    out = artanh_stable(x, 4 * z.real * w.real / den ** 2)
    return float(out) if out.ndim == 0 else out


def cstar_metric(a, b):
    """``log max(1 + |1 - a/b|, 1 + |1 - b/a|)`` on the punctured plane."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if np.any(a == 0) or np.any(b == 0):
        raise ValueError("arguments must be nonzero")
    # |1 - a/b| = |a - b| / |b|: exact zero on the diagonal and exactly symmetric
    out = np.log1p(np.abs(a - b) / np.minimum(np.abs(a), np.abs(b)))
    return float(out) if out.ndim == 0 else out


def cstar_metric_derivative_check(a: complex, step: float) -> float:
    """Largest deviation of ``d(a, a + lam) / |lam|`` from ``1/|a|`` over 8 directions."""
    a = complex(a)
    if a == 0:
        raise ValueError("base point must be nonzero")
    if not 0 < step <= 1e-4 * abs(a):
        raise ValueError("step must satisfy 0 < step <= 1e-4 |a|")
    lam = step * np.exp(2j * np.pi * np.arange(8) / 8)
    ratios = cstar_metric(a, a + lam) / step
    return float(np.max(np.abs(ratios - 1 / abs(a))))
