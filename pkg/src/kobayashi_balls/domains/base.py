from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..linalg import GEOM_TOL, AffineSubspace, cnorm


class DomainError(ValueError):
    """Invalid domain description or a query that violates a precondition."""


class UnboundedDomainError(DomainError):
    pass


class UnsupportedRepresentation(NotImplementedError):
    pass


class SolverError(RuntimeError):
    def __init__(self, message: str, slice_index: int | None = None):
        if slice_index is not None:
            message = f"{message} (slice index {slice_index})"
        super().__init__(message)
        self.slice_index = slice_index


class ConvexityClass(str, enum.Enum):
    CONVEX = "convex"
    C_CONVEX = "c_convex"
    WEAKLY_LINEARLY_CONVEX = "weakly_linearly_convex"

    @property
    def rank(self) -> int:
        return _RANK[self]

    def implies(self, other: "ConvexityClass") -> bool:
        """convex => c_convex => weakly_linearly_convex."""
        return self.rank <= ConvexityClass(other).rank

    @staticmethod
    def weakest(classes) -> "ConvexityClass":
        return max((ConvexityClass(c) for c in classes), key=lambda c: c.rank)


_RANK = {
    ConvexityClass.CONVEX: 0,
    ConvexityClass.C_CONVEX: 1,
    ConvexityClass.WEAKLY_LINEARLY_CONVEX: 2,
}


@dataclass(frozen=True)
class BoundaryContact:
    point: np.ndarray
    distance: float
    slice: AffineSubspace


class Domain:
    """Oracle interface for an open domain in C^n.

    Subclasses implement ``level`` (negative exactly on the open domain, zero
    on the boundary), ``ray_exit``, ``_nearest`` and ``normal``; ``support``
    and ``projection_disc`` are optional.
    """

    n: int
    convexity: ConvexityClass = ConvexityClass.CONVEX
    bounded: bool = True

    def level(self, z) -> np.ndarray:
        raise NotImplementedError

    def contains(self, z):
        out = np.asarray(self.level(np.asarray(z, dtype=complex))) < 0
        return bool(out) if out.ndim == 0 else out

    def interior_point(self) -> np.ndarray:
        raise NotImplementedError

    def extent_bound(self) -> float:
        """Upper bound on the Euclidean diameter (``inf`` if unbounded)."""
        return np.inf

    def ray_exit(self, z0, U):
        """Exit parameter ``t > 0`` of the rays ``z0 + t u`` for the rows ``u`` of ``U``."""
        z0 = np.asarray(z0, dtype=complex)
        U = np.asarray(U, dtype=complex)
        single = U.ndim == 1
        U2 = np.atleast_2d(U)
        tmax = (self.extent_bound() + 1.0) / np.maximum(cnorm(U2), 1e-300)
        if not np.all(np.isfinite(tmax)):
            raise UnsupportedRepresentation(f"{type(self).__name__} has no ray oracle for unbounded rays")
        t = bisect_exit(self.level, z0, U2, tmax)
        return t[0] if single else t

    def _nearest(self, q: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, float]:
        return ray_min_nearest(self, q, V)

    def normal(self, p) -> np.ndarray:
        raise NotImplementedError

    def support(self, u) -> float:
        raise UnsupportedRepresentation(f"no support function for {type(self).__name__}")

    def projection_disc(self, nu) -> tuple[complex, float] | None:
        """A disc containing ``{<z, nu> : z in D}`` when one is known in closed form."""
        return None

    def _check_on_boundary(self, p, tol: float = GEOM_TOL) -> None:
        lv = np.atleast_1d(self.level(p))
        scale = 1.0 + np.atleast_1d(cnorm(p))
        if np.any(np.abs(lv) > tol * scale):
            raise DomainError(f"point is not on the boundary (level {lv.max():.3e})")


def bisect_exit(level, z0: np.ndarray, U: np.ndarray, tmax, iters: int = 64) -> np.ndarray:
    """Vectorized bisection for the boundary crossing of convex (star-shaped) rays.

    Returns the upper bracket, so ``z0 + t u`` is never in the open domain.
    """
    m = U.shape[0]
    lo = np.zeros(m)
    hi = np.broadcast_to(np.asarray(tmax, dtype=float), (m,)).copy()
    # grow hi until outside
    for _ in range(60):
        inside = level(z0 + hi[:, None] * U) < 0
        if not inside.any():
            break
        hi = np.where(inside, 2 * hi, hi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        inside = level(z0 + mid[:, None] * U) < 0
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
        if np.all(hi - lo <= 4e-16 * hi):
            break
    return hi


def slice_directions(k: int, n_random: int = 256, seed: int = 0) -> np.ndarray:
    """Deterministic unit directions in R^{2k}: signed axes then Gaussian samples."""
    eye = np.eye(2 * k)
    rng = np.random.default_rng(seed)
    Y = rng.normal(size=(n_random, 2 * k))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return np.vstack([eye, -eye, Y])


def snap_outside(domain: Domain, q: np.ndarray, point: np.ndarray) -> np.ndarray:
    """Push ``point`` outward along ``point - q`` until it leaves the open domain."""
    if not domain.contains(point):
        return point
    d = point - q
    f = 1.0
    for _ in range(60):
        if not domain.contains(q + f * d):
            return q + f * d
        f *= 1.0 + 2.0 ** -48
    return q + f * d


def ray_min_nearest(domain: Domain, q: np.ndarray, V: np.ndarray, *,
                    newton=None, n_random: int = 256, n_starts: int = 4) -> tuple[np.ndarray, float]:
    """Nearest boundary point of ``domain`` within ``q + span(V)`` by minimizing the exit distance.

    Parameters
    ----------
    domain : Domain
    q : ndarray
        Interior query point.
    V : ndarray, shape (n, k)
        Orthonormal slice directions.
    newton : callable, optional
        ``newton(x0) -> x or None`` polishing a slice-coordinate start point;
        tried before the gradient-based fallback.

    Returns
    -------
    point, distance
    """
    from scipy.optimize import minimize

    from ..linalg import realify_matrix, to_complex, to_real

    k = V.shape[1]
    M = realify_matrix(V)
    Y = slice_directions(k, n_random)
    U = to_complex(Y @ M.T)
    R = np.asarray(domain.ray_exit(q, U), dtype=float)
    if not np.all(np.isfinite(R)):
        raise UnboundedDomainError("slice is unbounded")
    order = np.argsort(R, kind="stable")
    starts = []
    for i in order:
        if all(np.dot(Y[i], Y[j]) < 0.9 for j in starts):
            starts.append(i)
        if len(starts) == n_starts:
            break
    best_r = float(R[order[0]])

    def exit_and_grad(y):
        ny = np.linalg.norm(y)
        u = y / ny
        uc = to_complex(M @ u)
        t = float(domain.ray_exit(q, uc[None, :])[0])
        nu = domain.normal(q + t * uc)
        g = M.T @ to_real(nu)
        gu = float(g @ u)
        if gu <= 0:
            return t, np.zeros_like(y)
        dt_du = -t * g / gu
        return t, (dt_du - u * (u @ dt_du)) / ny

    results = []
    for i in starts:
        y0 = Y[i]
        x = newton(R[i] * y0) if newton is not None else None
        if x is not None and np.isfinite(x).all():
            results.append(x)
            continue
        res = minimize(exit_and_grad, y0, jac=True, method="BFGS",
                       options={"gtol": 1e-13, "maxiter": 400})
        u = res.x / np.linalg.norm(res.x)
        t = float(domain.ray_exit(q, to_complex(M @ u)[None, :])[0])
        results.append(t * u)
    dists = [np.linalg.norm(x) for x in results]
    j = int(np.argmin(dists))
    if dists[j] > best_r * (1 + 1e-6) + 1e-12:
        raise SolverError("local refinement ended above the sampled minimum")
    x = results[j]
    u = x / np.linalg.norm(x)
    uc = to_complex(M @ u)
    # final exit along the refined direction, bracketed tightly
    t = float(bisect_exit(domain.level, q, uc[None, :], np.array([dists[j] * (1 + 1e-9) + 1e-15]))[0])
    return q + t * uc, t
