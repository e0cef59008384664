"""Exact invariant distances for model domains and certified brackets for
general convex domains.

For convex domains the Carathéodory distance, the Kobayashi distance and the
Lempert function coincide, so a lower bound on the first and an upper bound on
the last bracket one common value.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import HullGauge, artanh, artanh_stable, gauge, halfplane_distance
from .domains import (
    AffineImage,
    ConvexityClass,
    Disc,
    Domain,
    DomainError,
    EuclideanBall,
    PlanarFactor,
    Product,
    RightHalfPlane,
    SlitPlane,
    boundary_distance,
)
from .linalg import as_cvector, cnorm, hermitian_inner


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def poincare_disc(a, b):
    """``artanh |(a - b) / (1 - conj(b) a)|`` on the unit disc; vectorized."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    aa, ab = np.abs(a), np.abs(b)
    if np.any(aa >= 1) or np.any(ab >= 1):
        raise ValueError("arguments must lie in the unit disc")
    den = np.abs(1 - np.conj(b) * a)
    x = np.abs(a - b) / den
    one_minus_x2 = (1 - aa) * (1 + aa) * (1 - ab) * (1 + ab) / den ** 2
    return _scalar(artanh_stable(x, one_minus_x2))


def product_distance(planar_values) -> float:
    """Distance in a product domain from the factor distances (their maximum)."""
    vals = np.asarray(planar_values, dtype=float).ravel()
    if vals.size == 0:
        raise ValueError("need at least one factor distance")
    return float(vals.max())


def ball_distance(center, radius: float, z, w) -> float:
    """Invariant distance in the Euclidean ball ``B(center, radius)``.

    After normalizing to the unit ball this is
    ``artanh sqrt(1 - (1 - |z|^2)(1 - |w|^2) / |1 - <z, w>|^2)``.
    """
    c = as_cvector(center)
    z = (as_cvector(z) - c) / radius
    w = (as_cvector(w) - c) / radius
    nz2 = float(np.real(np.vdot(z, z)))
    nw2 = float(np.real(np.vdot(w, w)))
    if nz2 >= 1 or nw2 >= 1:
        raise ValueError("points must lie inside the ball")
    zw = complex(hermitian_inner(z, w))
    den2 = abs(1 - zw) ** 2
    # |1 - <z,w>|^2 - (1-|z|^2)(1-|w|^2) = |z-w|^2 - (|z|^2|w|^2 - |<z,w>|^2)
    gap = max(nz2 * nw2 - abs(zw) ** 2, 0.0)
    x2 = max(float(np.real(np.vdot(z - w, z - w))) - gap, 0.0) / den2
    one_minus_x2 = (1 - nz2) * (1 - nw2) / den2
    return float(artanh_stable(np.sqrt(x2), one_minus_x2))


def hull_lempert(h: HullGauge, z) -> float | None:
    """Lempert function of the hull of coordinate discs from its centre; ``None`` outside."""
    g = float(gauge(h, as_cvector(z)))
    return float(artanh(g)) if g < 1 else None


def slit_sqrt(z):
    """Square root with argument taken in (0, 2pi): maps the slit plane onto the upper half-plane."""
    z = np.asarray(z, dtype=complex)
    arg = np.mod(np.angle(z), 2 * np.pi)
    return np.sqrt(np.abs(z)) * np.exp(0.5j * arg)


def slit_plane_distance(z, w):
    """Invariant distance in the plane minus ``[0, inf)`` via ``z -> sqrt(z)``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(SlitPlane.slit_distance(z) == 0) or np.any(SlitPlane.slit_distance(w) == 0):
        raise ValueError("points on the slit")
    s, t = slit_sqrt(z), slit_sqrt(w)
    den = np.abs(s - np.conj(t))
    x = np.abs(s - t) / den
    return _scalar(artanh_stable(x, 4 * s.imag * t.imag / den ** 2))


def _planar_exact(f: PlanarFactor, a, b) -> float:
    if isinstance(f, Disc):
        return poincare_disc((a - f.center) / f.radius, (b - f.center) / f.radius)
    if isinstance(f, RightHalfPlane):
        return halfplane_distance(a, b)
    if isinstance(f, SlitPlane):
        return slit_plane_distance(a, b)
    raise DomainError(f"no exact distance for {f!r}")


def exact_distance(d: Domain, z, w) -> float | None:
    """Closed-form invariant distance when ``d`` is a model domain, else ``None``."""
    z, w = as_cvector(z), as_cvector(w)
    if isinstance(d, PlanarFactor):
        return float(_planar_exact(d, z[0], w[0]))
    if isinstance(d, Product):
        return product_distance([_planar_exact(f, z[j], w[j]) for j, f in enumerate(d.factors)])
    if isinstance(d, EuclideanBall):
        return ball_distance(d.center, d.radius, z, w)
    if isinstance(d, AffineImage):
        # invertible affine maps are biholomorphisms
        return exact_distance(d.inner, d.pullback(z), d.pullback(w))
    return None


def _ball_batch(center, radius, z, W):
    c = as_cvector(center)
    z = (as_cvector(z) - c) / radius
    W = (np.asarray(W, dtype=complex) - c) / radius
    nz2 = float(np.real(np.vdot(z, z)))
    nw2 = np.sum(np.abs(W) ** 2, axis=1)
    if nz2 >= 1 or np.any(nw2 >= 1):
        raise ValueError("points must lie inside the ball")
    zw = W.conj() @ z
    den2 = np.abs(1 - zw) ** 2
    gap = np.maximum(nz2 * nw2 - np.abs(zw) ** 2, 0.0)
    x2 = np.maximum(np.sum(np.abs(W - z) ** 2, axis=1) - gap, 0.0) / den2
    return artanh_stable(np.sqrt(x2), (1 - nz2) * (1 - nw2) / den2)


def exact_distance_batch(d: Domain, z, W) -> np.ndarray | None:
    """``exact_distance(d, z, w)`` for every row ``w`` of ``W``; ``None`` without a closed form."""
    z = as_cvector(z)
    W = np.atleast_2d(np.asarray(W, dtype=complex))
    if isinstance(d, PlanarFactor):
        return np.atleast_1d(_planar_exact(d, z[0], W[:, 0])).astype(float)
    if isinstance(d, Product):
        cols = [np.atleast_1d(_planar_exact(f, z[j], W[:, j])) for j, f in enumerate(d.factors)]
        return np.max(np.vstack(cols), axis=0).astype(float)
    if isinstance(d, EuclideanBall):
        return _ball_batch(d.center, d.radius, z, W)
    if isinstance(d, AffineImage):
        return exact_distance_batch(d.inner, d.pullback(z), d.pullback(W))
    return None


@dataclass(frozen=True)
class DistanceBracket:
    lower: float
    upper: float
    lower_method: str
    upper_method: str

    def __post_init__(self):
        if self.lower > self.upper + 1e-9:
            raise ValueError(f"inconsistent bracket [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = 1e-9) -> bool:
        return self.lower - slack <= value <= self.upper + slack


def _support_directions(n: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(20240601)
    U = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    return U / cnorm(U)[:, None]


def _line_radius(d: Domain, z, u, lam: complex) -> float:
    """Radius of the largest disc centred at ``z + lam u`` inside the slice ``d ∩ (z + C u)``."""
    c = z + lam * u
    if not d.contains(c):
        return 0.0
    _, dist = d._nearest(c, u[:, None])
    return float(dist)


def _lower_bound(d: Domain, z, w, n_support: int):
    L = w - z
    u = L / cnorm(L)
    dirs = np.vstack([_support_directions(d.n, n_support), u, -u])
    points = [z + d.ray_exit(z, dirs)[:, None] * dirs,
              w + d.ray_exit(w, np.vstack([u, -u]))[:, None] * np.vstack([u, -u])]
    near = []
    for x in (z, w):
        p, _ = d._nearest(x, np.eye(d.n, dtype=complex))
        near.append(p)
    P = np.vstack(points + [np.array(near)])
    P = P[np.all(np.isfinite(P), axis=1)]
    N = np.asarray(d.normal(P))
    lz = np.sum((P - z) * np.conj(N), axis=1)
    lw = np.sum((P - w) * np.conj(N), axis=1)
    ok = (lz.real > 0) & (lw.real > 0)
    best, method = 0.0, "trivial"
    if np.any(ok):
        vals = np.atleast_1d(halfplane_distance(lz[ok], lw[ok]))
        best, method = float(vals.max()), "support_half_plane"

    candidates = [u] + list(np.eye(d.n, dtype=complex)) + list(N[-2:])
    for nu in candidates:
        disc = d.projection_disc(nu)
        if disc is None or disc[1] <= 0:
            continue
        c, R = disc
        a = (complex(hermitian_inner(z, nu)) - c) / R
        b = (complex(hermitian_inner(w, nu)) - c) / R
        if abs(a) < 1 and abs(b) < 1:
            v = poincare_disc(a, b)
            if v > best:
                best, method = float(v), "projection_disc"
    return best, method


def _upper_bound(d: Domain, z, w, max_doublings: int = 14):
    L = float(cnorm(w - z))
    u = (w - z) / L
    tp = float(d.ray_exit(z, u))
    tm = float(d.ray_exit(z, -u))
    best, method = np.inf, "none"
    for m in ((tp - tm) / 2, L / 2):
        rho = _line_radius(d, z, u, m)
        if rho > 0 and abs(m) < rho and abs(L - m) < rho:
            v = poincare_disc(-m / rho, (L - m) / rho)
            if v < best:
                best, method = float(v), "inscribed_disc"
    if np.isfinite(best):
        return best, method
    # chain of inscribed discs; valid because the common distance is a distance
    for k in range(1, max_doublings + 1):
        N = 2 ** k
        h = L / (2 * N)
        total = 0.0
        for i in range(N):
            rho = _line_radius(d, z, u, (2 * i + 1) * h)
            if rho <= h:
                break
            total += 2 * float(artanh_stable(h / rho, (1 - h / rho) * (1 + h / rho)))
        else:
            return total, f"disc_chain_{N}"
    return np.inf, "none"


def convex_bracket(d: Domain, z, w, n_support: int = 64) -> DistanceBracket:
    """Two-sided bound on the common invariant distance of a convex domain.

    Parameters
    ----------
    d : Domain
        Convex domain with ray, normal and slice oracles.
    z, w : array_like
        Points of ``d``.
    n_support : int
        Number of ray-shot supporting hyperplanes (deterministic directions)
        used for the lower side, on top of the nearest-boundary normals.

    Returns
    -------
    DistanceBracket
        ``lower`` from holomorphic maps of ``d`` into half-planes and
        discs, ``upper`` from discs inscribed in the complex line through
        ``z`` and ``w``.
    """
    if d.convexity is not ConvexityClass.CONVEX:
        raise DomainError("convex_bracket needs a convex domain")
    z, w = as_cvector(z), as_cvector(w)
    if not (d.contains(z) and d.contains(w)):
        raise DomainError("both points must lie in the domain")
    if cnorm(w - z) <= 1e-15 * (1 + cnorm(z)):
        return DistanceBracket(0.0, 0.0, "coincident", "coincident")
    lower, lm = _lower_bound(d, z, w, n_support)
    upper, um = _upper_bound(d, z, w)
    return DistanceBracket(lower, upper, lm, um)


def distance_or_bracket(d: Domain, z, w) -> DistanceBracket:
    """Exact value as a zero-width bracket when available, else ``convex_bracket``."""
    v = exact_distance(d, z, w)
    if v is not None:
        return DistanceBracket(v, v, "exact", "exact")
    return convex_bracket(d, z, w)


__all__ = [
    "DistanceBracket", "ball_distance", "boundary_distance", "convex_bracket", "distance_or_bracket",
    "exact_distance", "exact_distance_batch", "hull_lempert", "poincare_disc", "product_distance", "slit_plane_distance",
    "slit_sqrt",
]
