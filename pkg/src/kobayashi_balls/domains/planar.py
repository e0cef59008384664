"""Planar domains and products of planar domains.

A planar factor works on complex scalars (or arrays of them). Every factor is
also a one-dimensional ``Domain`` by way of the one-factor product.
"""
from __future__ import annotations

import numpy as np

from ..linalg import as_cvector, cnorm
from .base import ConvexityClass, Domain, DomainError, UnboundedDomainError


def _phase(w):
    w = np.asarray(w, dtype=complex)
    a = np.abs(w)
    return np.where(a > 0, w / np.where(a > 0, a, 1.0), 1.0 + 0j)


class PlanarFactor(Domain):
    n = 1

    # -- scalar oracles, vectorized over complex arrays --------------------
    def flevel(self, w):
        raise NotImplementedError

    def fnearest(self, w):
        """Nearest boundary point and boundary distance of ``w``."""
        raise NotImplementedError

    def fexit(self, w0, v):
        """First ``t > 0`` with ``w0 + t v`` on the boundary."""
        raise NotImplementedError

    def fnormal(self, w):
        raise DomainError(f"{type(self).__name__} has no supporting normals (not convex)")

    def fsupport(self, u):
        raise NotImplementedError

    def fdisc(self):
        return None

    def finterior(self) -> complex:
        raise NotImplementedError

    # -- Domain interface through the one-factor product -------------------
    @property
    def _product(self) -> "Product":
        return Product([self], convexity=self.convexity)

    def level(self, z):
        return self._product.level(z)

    def ray_exit(self, z0, U):
        return self._product.ray_exit(z0, U)

    def _nearest(self, q, V):
        return self._product._nearest(q, V)

    def normal(self, p):
        return self._product.normal(p)

    def support(self, u):
        return self._product.support(u)

    def projection_disc(self, nu):
        return self._product.projection_disc(nu)

    def interior_point(self):
        return np.array([self.finterior()], dtype=complex)

    def extent_bound(self):
        return self._product.extent_bound()


class Disc(PlanarFactor):
    def __init__(self, center: complex = 0.0, radius: float = 1.0):
        self.center = complex(center)
        self.radius = float(radius)
        if not self.radius > 0:
            raise DomainError("disc radius must be positive")
        self.convexity = ConvexityClass.CONVEX
        self.bounded = True

    def __repr__(self):
        return f"Disc({self.center}, {self.radius})"

    def flevel(self, w):
        return np.abs(np.asarray(w) - self.center) - self.radius

    def fnearest(self, w):
        d = np.asarray(w, dtype=complex) - self.center
        return self.center + self.radius * _phase(d), self.radius - np.abs(d)

    def fexit(self, w0, v):
        v = np.asarray(v, dtype=complex)
        p = complex(w0) - self.center
        a = np.abs(v) ** 2
        beta = np.real(v * np.conj(p))
        c = abs(p) ** 2 - self.radius ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (-beta + np.sqrt(np.maximum(beta ** 2 - a * c, 0.0))) / a
        return np.where(a > 0, t, np.inf)

    def fnormal(self, w):
        return _phase(np.asarray(w) - self.center)

    def fsupport(self, u):
        u = np.asarray(u, dtype=complex)
        return np.real(self.center * np.conj(u)) + self.radius * np.abs(u)

    def fdisc(self):
        return self.center, self.radius

    def finterior(self):
        return self.center


class RightHalfPlane(PlanarFactor):
    """``{Re w > 0}``."""

    def __init__(self):
        self.convexity = ConvexityClass.CONVEX
        self.bounded = False

    def __repr__(self):
        return "RightHalfPlane()"

    def flevel(self, w):
        return -np.real(w)

    def fnearest(self, w):
        w = np.asarray(w, dtype=complex)
        return 1j * w.imag, w.real

    def fexit(self, w0, v):
        v = np.asarray(v, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = -complex(w0).real / v.real
        return np.where(v.real < 0, t, np.inf)

    def fnormal(self, w):
        return -np.ones_like(np.asarray(w, dtype=complex))

    def fsupport(self, u):
        u = np.asarray(u, dtype=complex)
        ok = (u.imag == 0) & (u.real <= 0)
        return np.where(ok, 0.0, np.inf)

    def finterior(self):
        return 1.0 + 0j


class SlitPlane(PlanarFactor):
    """The plane minus the closed ray ``[0, inf)``; simply connected, not convex."""

    def __init__(self):
        self.convexity = ConvexityClass.C_CONVEX
        self.bounded = False

    def __repr__(self):
        return "SlitPlane()"

    @staticmethod
    def slit_distance(w):
        w = np.asarray(w, dtype=complex)
        return np.where(w.real >= 0, np.abs(w.imag), np.abs(w))

    def flevel(self, w):
        return -self.slit_distance(w)

    def fnearest(self, w):
        w = np.asarray(w, dtype=complex)
        beta = np.where(w.real >= 0, w.real + 0j, 0j)
        return beta, self.slit_distance(w)

    def fexit(self, w0, v):
        w0 = complex(w0)
        v = np.asarray(v, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = -w0.imag / v.imag
            hit = (v.imag != 0) & (t > 0) & (w0.real + t * v.real >= 0)
            t_axis = -w0.real / v.real
            axis_hit = (v.imag == 0) & (w0.imag == 0) & (v.real > 0) & (w0.real < 0)
        return np.where(hit, t, np.where(axis_hit, t_axis, np.inf))

    def fsupport(self, u):
        u = np.asarray(u, dtype=complex)
        return np.where(u == 0, 0.0, np.inf)

    def finterior(self):
        return -1.0 + 0j


class Product(Domain):
    """Product ``G_1 x ... x G_n`` of planar factors."""

    def __init__(self, factors, convexity=None):
        self.factors = list(factors)
        if not self.factors or not all(isinstance(f, PlanarFactor) for f in self.factors):
            raise DomainError("a product needs at least one planar factor")
        self.n = len(self.factors)
        if convexity is None:
            convexity = ConvexityClass.weakest(f.convexity for f in self.factors)
        self.convexity = ConvexityClass(convexity)
        self.bounded = all(f.bounded for f in self.factors)

    def __repr__(self):
        return f"Product({self.factors!r})"

    def interior_point(self):
        return np.array([f.finterior() for f in self.factors], dtype=complex)

    def extent_bound(self):
        if not self.bounded:
            return np.inf
        return 2 * float(np.sqrt(sum(f.radius ** 2 for f in self.factors)))

    def level(self, z):
        z = np.asarray(z, dtype=complex)
        return np.max(np.stack([f.flevel(z[..., j]) for j, f in enumerate(self.factors)], axis=-1), axis=-1)

    def factor_distances(self, z):
        z = np.asarray(z, dtype=complex)
        return np.stack([f.fnearest(z[..., j])[1] for j, f in enumerate(self.factors)], axis=-1)

    def ray_exit(self, z0, U):
        z0 = as_cvector(z0)
        U = np.asarray(U, dtype=complex)
        single = U.ndim == 1
        U2 = np.atleast_2d(U)
        t = np.min(np.stack([f.fexit(z0[j], U2[:, j]) for j, f in enumerate(self.factors)], axis=-1), axis=-1)
        return t[0] if single else t

    def _nearest(self, q, V):
        best = (np.inf, None)
        for j, f in enumerate(self.factors):
            w = V[j]
            nw = float(cnorm(w))
            if nw <= 1e-14:
                continue
            beta, delta = f.fnearest(q[j])
            dist = float(delta) / nw
            if dist < best[0]:
                s = complex(beta) - q[j]
                c = np.conj(w) * s / nw ** 2
                best = (dist, q + V @ c)
        if best[1] is None:
            raise UnboundedDomainError("slice of the product is unbounded")
        return best[1], best[0]

    def normal(self, p):
        p = np.asarray(p, dtype=complex)
        self._check_on_boundary(p)
        levels = np.stack([f.flevel(p[..., j]) for j, f in enumerate(self.factors)], axis=-1)
        jstar = np.argmax(levels, axis=-1)
        out = np.zeros(p.shape, dtype=complex)
        for j, f in enumerate(self.factors):
            sel = jstar == j
            if np.any(sel):
                out[..., j] = np.where(sel, f.fnormal(p[..., j]), 0.0)
        return out

    def support(self, u):
        u = as_cvector(u)
        return float(sum(np.real(f.fsupport(u[j])) for j, f in enumerate(self.factors)))

    def projection_disc(self, nu):
        nu = as_cvector(nu)
        center, radius = 0j, 0.0
        for j, f in enumerate(self.factors):
            if nu[j] == 0:
                continue
            disc = f.fdisc()
            if disc is None:
                return None
            center += disc[0] * np.conj(nu[j])
            radius += disc[1] * abs(nu[j])
        return complex(center), float(radius)


class Polydisc(Product):
    def __init__(self, center, radii):
        center = as_cvector(center)
        radii = np.asarray(radii, dtype=float).reshape(-1)
        if radii.size != center.size or np.any(radii <= 0):
            raise DomainError("polydisc radii must be positive, one per coordinate")
        super().__init__([Disc(c, r) for c, r in zip(center, radii)])
        self.center = center
        self.radii = radii

    def __repr__(self):
        return f"Polydisc(center={self.center.tolist()}, radii={self.radii.tolist()})"


def unit_disc() -> Disc:
    return Disc(0.0, 1.0)

