"""Domain oracles: membership, nearest boundary points in slices, supporting normals."""
from __future__ import annotations

import numpy as np

from ..linalg import AffineSubspace, as_cvector, cnorm
from .affine import AffineImage
from .base import (
    BoundaryContact,
    ConvexityClass,
    Domain,
    DomainError,
    SolverError,
    UnboundedDomainError,
    UnsupportedRepresentation,
    snap_outside,
)
from .planar import Disc, PlanarFactor, Polydisc, Product, RightHalfPlane, SlitPlane, unit_disc
from .polytope import HalfSpacePolytope
from .smooth import ComplexEllipsoid, CoordinateDiscHull, EuclideanBall


def _check_dim(d: Domain, z: np.ndarray) -> None:
    if z.shape[-1] != d.n:
        raise DomainError(f"point of dimension {z.shape[-1]} for a domain in C^{d.n}")


def contains(d: Domain, z) -> bool:
    z = as_cvector(z)
    _check_dim(d, z)
    return bool(d.contains(z))


def nearest_boundary_in_slice(d: Domain, slice: AffineSubspace, q) -> BoundaryContact:
    """Nearest point of ``boundary(d ∩ slice)`` to the interior point ``q``.

    Parameters
    ----------
    d : Domain
    slice : AffineSubspace
        Complex-affine slice through ``q``.
    q : array_like
        Query point inside ``d`` and on ``slice``.

    Returns
    -------
    BoundaryContact
        The contact point (never in the open domain) and its distance from ``q``.

    Raises
    ------
    DomainError
        If ``q`` is outside the domain or off the slice.
    UnboundedDomainError
        If the slice has no boundary in some direction the oracle can resolve.
    """
    q = as_cvector(q)
    _check_dim(d, q)
    if not d.contains(q):
        raise DomainError("query point is not in the domain")
    if not slice.contains_point(q):
        raise DomainError("query point is not on the slice")
    if slice.dim == 0:
        raise DomainError("zero-dimensional slice has no boundary")
    raw, dist = d._nearest(q, slice.directions)
    raw = np.asarray(raw, dtype=complex)
    point = snap_outside(d, q, raw)
    # keep the solver's distance unless snapping moved the point noticeably
    if not np.isfinite(dist) or abs(cnorm(point - q) - dist) > 1e-12 * (1 + dist):
        dist = cnorm(point - q)
    return BoundaryContact(point=point, distance=float(dist), slice=slice)


def boundary_distance(d: Domain, q) -> float:
    q = as_cvector(q)
    return nearest_boundary_in_slice(d, AffineSubspace.full(q), q).distance


def supporting_normal(d: Domain, p) -> np.ndarray:
    """Unit outward covector ``nu`` with ``Re <z - p, nu> < 0`` on ``d``."""
    p = as_cvector(p)
    _check_dim(d, p)
    nu = np.asarray(d.normal(p), dtype=complex)
    return nu / cnorm(nu)


def sample_interior(d: Domain, count: int, rng: np.random.Generator) -> np.ndarray:
    """Points of a bounded domain: radial fractions of random rays from an interior point."""
    if not d.bounded:
        raise UnboundedDomainError("interior sampling needs a bounded domain")
    c = d.interior_point()
    U = rng.normal(size=(count, d.n)) + 1j * rng.normal(size=(count, d.n))
    U /= cnorm(U)[:, None]
    R = np.asarray(d.ray_exit(c, U), dtype=float)
    f = rng.uniform(size=count) ** (1.0 / (2 * d.n))
    Z = c + (f * R)[:, None] * U
    return Z[d.contains(Z)]


def spot_check_convexity(d: Domain, rng: np.random.Generator, pairs: int = 1000) -> None:
    """Midpoints of random interior pairs must be interior; raises on a counterexample."""
    if not d.convexity.implies(ConvexityClass.CONVEX):
        return
    Z = sample_interior(d, 2 * pairs, rng)
    half = Z.shape[0] // 2
    mid = 0.5 * (Z[:half] + Z[half:2 * half])
    bad = ~d.contains(mid)
    if np.any(bad):
        raise DomainError(f"declared convex but midpoint {mid[np.argmax(bad)]} lies outside")


__all__ = [
    "AffineImage", "BoundaryContact", "ComplexEllipsoid", "ConvexityClass", "CoordinateDiscHull",
    "Disc", "Domain", "DomainError", "EuclideanBall", "HalfSpacePolytope", "PlanarFactor",
    "Polydisc", "Product", "RightHalfPlane", "SlitPlane", "SolverError", "UnboundedDomainError",
    "UnsupportedRepresentation", "boundary_distance", "contains", "nearest_boundary_in_slice",
    "sample_interior", "spot_check_convexity", "supporting_normal", "unit_disc",
]
