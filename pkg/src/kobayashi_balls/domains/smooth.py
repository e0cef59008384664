from __future__ import annotations

import numpy as np

from ..linalg import GEOM_TOL, as_cvector, cnorm, hermitian_inner, realify_matrix, to_complex
from .base import ConvexityClass, Domain, DomainError, ray_min_nearest


class EuclideanBall(Domain):
    def __init__(self, center, radius: float, convexity=ConvexityClass.CONVEX):
        self.center = as_cvector(center)
        self.radius = float(radius)
        if not self.radius > 0:
            raise DomainError("ball radius must be positive")
        self.n = self.center.size
        self.convexity = ConvexityClass(convexity)
        self.bounded = True

    def __repr__(self):
        return f"EuclideanBall(center={self.center.tolist()}, radius={self.radius})"

    def interior_point(self):
        return self.center.copy()

    def extent_bound(self):
        return 2 * self.radius

    def level(self, z):
        return cnorm(np.asarray(z, dtype=complex) - self.center) - self.radius

    def ray_exit(self, z0, U):
        U = np.asarray(U, dtype=complex)
        p = np.asarray(z0, dtype=complex) - self.center
        a = cnorm(U) ** 2
        beta = np.real(hermitian_inner(U, p))
        c = float(np.real(np.vdot(p, p))) - self.radius ** 2
        return (-beta + np.sqrt(np.maximum(beta ** 2 - a * c, 0.0))) / a

    def _nearest(self, q, V):
        p = q - self.center
        u = V.conj().T @ p                     # slice coordinates of the projected centre offset
        perp = p - V @ u
        rho2 = self.radius ** 2 - float(np.real(np.vdot(perp, perp)))
        if rho2 <= 0:
            raise DomainError("slice misses the ball")
        rho = np.sqrt(rho2)
        nu = float(cnorm(u))
        if nu > 1e-15 * (1 + rho):
            c = -u + rho * u / nu
            return q + V @ c, rho - nu
        return q + rho * V[:, 0], rho

    def normal(self, p):
        p = np.asarray(p, dtype=complex)
        self._check_on_boundary(p)
        d = p - self.center
        return d / np.asarray(cnorm(d))[..., None]

    def support(self, u):
        u = as_cvector(u)
        return float(np.real(np.vdot(u, self.center)) + self.radius * cnorm(u))

    def projection_disc(self, nu):
        nu = as_cvector(nu)
        return complex(hermitian_inner(self.center, nu)), self.radius * float(cnorm(nu))


class ComplexEllipsoid(Domain):
    """``{z : sum_j |z_j|^(2 m_j) < 1}`` with exponents ``m_j >= 1/2``."""

    def __init__(self, exponents, convexity=ConvexityClass.CONVEX):
        m = np.asarray(exponents, dtype=float).reshape(-1)
        if m.size == 0 or np.any(m < 0.5):
            raise DomainError("ellipsoid exponents must be >= 1/2")
        self.exponents = m
        self.n = m.size
        self.convexity = ConvexityClass(convexity)
        self.bounded = True

    def __repr__(self):
        return f"ComplexEllipsoid(exponents={self.exponents.tolist()})"

    def interior_point(self):
        return np.zeros(self.n, dtype=complex)

    def extent_bound(self):
        return 2 * np.sqrt(self.n)

    def rho(self, z):
        s = np.abs(np.asarray(z, dtype=complex)) ** 2
        return np.sum(s ** self.exponents, axis=-1)

    def level(self, z):
        return self.rho(z) - 1.0

    def _gradient(self, z):
        # complex form of the real gradient: Re <dz, g> = d rho
        z = np.asarray(z, dtype=complex)
        s = np.abs(z) ** 2
        m = self.exponents
        with np.errstate(divide="ignore", invalid="ignore"):
            coef = np.where(s > 0, 2 * m * s ** (m - 1), np.where(m == 1, 2.0, 0.0))
        return coef * z

    def _real_hessian(self, z):
        n = self.n
        s = np.abs(z) ** 2
        m = self.exponents
        H = np.zeros((2 * n, 2 * n))
        s_safe = np.maximum(s, 1e-300)
        for j in range(n):
            a, b = z[j].real, z[j].imag
            c1 = 2 * m[j] * s_safe[j] ** (m[j] - 1)
            c2 = 4 * m[j] * (m[j] - 1) * s_safe[j] ** (m[j] - 2) if s[j] > 0 else 0.0
            idx = (j, n + j)
            v = np.array([a, b])
            H[np.ix_(idx, idx)] = c1 * np.eye(2) + c2 * np.outer(v, v)
        return H

    def normal(self, p):
        p = np.asarray(p, dtype=complex)
        self._check_on_boundary(p)
        g = self._gradient(p)
        return g / np.asarray(cnorm(g))[..., None]

    def _nearest(self, q, V):
        M = realify_matrix(V)

        def newton(x0):
            return _lagrange_newton(self, q, M, x0)

        return ray_min_nearest(self, q, V, newton=newton)


def _lagrange_newton(dom: ComplexEllipsoid, q, M, x0, maxiter: int = 60):
    """Damped Newton on ``x = lam * grad f(x), f(x) = 0`` in slice coordinates.

    Returns the converged slice point or ``None``.
    """
    from ..linalg import to_real

    def pieces(x):
        z = q + to_complex(M @ x)
        f = float(dom.rho(z)) - 1.0
        g = M.T @ to_real(dom._gradient(z))
        return z, f, g

    z, f, g = pieces(x0)
    lam = float(x0 @ g) / float(g @ g)
    x = x0.copy()
    k = x.size

    def residual(x, lam, f, g):
        return np.concatenate([x - lam * g, [f]])

    F = residual(x, lam, f, g)
    for _ in range(maxiter):
        scale = 1.0 + np.linalg.norm(x)
        if np.linalg.norm(F[:-1]) <= 1e-14 * scale and abs(F[-1]) <= 1e-14:
            return x if lam > 0 else None
        H = M.T @ dom._real_hessian(z) @ M
        J = np.zeros((k + 1, k + 1))
        J[:k, :k] = np.eye(k) - lam * H
        J[:k, k] = -g
        J[k, :k] = g
        if not np.all(np.isfinite(J)):
            return None
        step = np.linalg.lstsq(J, -F, rcond=None)[0]
        nF = np.linalg.norm(F)
        alpha = 1.0
        for _ in range(30):
            xn = x + alpha * step[:k]
            ln = lam + alpha * step[k]
            zn, fn, gn = pieces(xn)
            Fn = residual(xn, ln, fn, gn)
            if np.linalg.norm(Fn) < (1 - 1e-4 * alpha) * nF or np.linalg.norm(Fn) < 1e-15:
                break
            alpha *= 0.5
        else:
            return None
        x, lam, z, f, g, F = xn, ln, zn, fn, gn, Fn
    scale = 1.0 + np.linalg.norm(x)
    if np.linalg.norm(F[:-1]) <= 1e-11 * scale and abs(F[-1]) <= 1e-12 and lam > 0:
        return x
    return None


class CoordinateDiscHull(Domain):
    """Convex hull of the coordinate discs ``D(q_j, tau_j)``: ``{sum_j |z_j - q_j| / tau_j < 1}``."""

    def __init__(self, center, scales, convexity=ConvexityClass.CONVEX):
        self.center = as_cvector(center)
        self.scales = np.asarray(scales, dtype=float).reshape(-1)
        if self.scales.size != self.center.size or np.any(self.scales <= 0):
            raise DomainError("one positive scale per coordinate is required")
        self.n = self.center.size
        self.convexity = ConvexityClass(convexity)
        self.bounded = True

    def __repr__(self):
        return f"CoordinateDiscHull(center={self.center.tolist()}, scales={self.scales.tolist()})"

    def gauge(self, z):
        return np.sum(np.abs(np.asarray(z, dtype=complex) - self.center) / self.scales, axis=-1)

    def level(self, z):
        return self.gauge(z) - 1.0

    def interior_point(self):
        return self.center.copy()

    def extent_bound(self):
        return 2 * float(self.scales.max())

    def _nearest(self, q, V):
        if V.shape[1] == self.n:
            # full space: closed form via the dual (weighted sup) norm
            d = q - self.center
            ph = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1), 1.0)
            w = ph / self.scales
            nw = float(cnorm(w))
            dist = (1.0 - float(self.gauge(q))) / nw
            return q + dist * w / nw, dist
        return ray_min_nearest(self, q, V)

    def normal(self, p):
        p = np.asarray(p, dtype=complex)
        self._check_on_boundary(p)
        d = p - self.center
        ad = np.abs(d)
        g = np.where(ad > GEOM_TOL * 1e-3, d / np.where(ad > 0, ad, 1), 0.0) / self.scales
        return g / np.asarray(cnorm(g))[..., None]

    def support(self, u):
        u = as_cvector(u)
        return float(np.real(np.vdot(u, self.center)) + np.max(self.scales * np.abs(u)))

    def projection_disc(self, nu):
        nu = as_cvector(nu)
        return complex(hermitian_inner(self.center, nu)), float(np.max(self.scales * np.abs(nu)))
