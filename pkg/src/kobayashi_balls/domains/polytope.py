from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from ..linalg import cnorm, to_complex, to_real
from .base import ConvexityClass, Domain, DomainError, UnboundedDomainError

CORNER_PERTURBATION = 1e-9


class HalfSpacePolytope(Domain):
    """Open polytope ``{z : Re <z, a_i> < b_i}`` in C^n = R^{2n}.

    Rows of ``normals`` are rescaled to unit length at construction.
    """

    def __init__(self, normals, offsets, convexity=ConvexityClass.CONVEX):
        A = np.atleast_2d(np.asarray(normals, dtype=complex))
        b = np.asarray(offsets, dtype=float).reshape(-1)
        if A.shape[0] != b.size:
            raise DomainError("one offset per inequality is required")
        norms = cnorm(A)
        if np.any(norms == 0):
            raise DomainError("zero normal vector")
        self.normals = A / norms[:, None]
        self.offsets = b / norms
        self.n = A.shape[1]
        self.convexity = ConvexityClass(convexity)
        self._Ar = to_real(self.normals)
        self._center, self._inradius = self._chebyshev()
        if self._inradius <= 1e-9:
            raise DomainError("polytope has empty interior")
        self.bounded = self._is_bounded()
        self._extent = None

    def __repr__(self):
        return f"HalfSpacePolytope(n={self.n}, faces={self.offsets.size})"

    def _chebyshev(self):
        m, d = self._Ar.shape
        c = np.zeros(d + 1)
        c[-1] = -1.0
        A_ub = np.hstack([self._Ar, np.ones((m, 1))])
        res = linprog(c, A_ub=A_ub, b_ub=self.offsets,
                      bounds=[(None, None)] * d + [(0, 1e6)], method="highs")
        if res.status != 0:
            raise DomainError("polytope inequalities are infeasible")
        return to_complex(res.x[:d]), float(res.x[-1])

    def _is_bounded(self) -> bool:
        # bounded iff the normals positively span R^{2n}
        m, d = self._Ar.shape
        if np.linalg.matrix_rank(self._Ar) < d:
            return False
        res = linprog(np.zeros(m), A_eq=self._Ar.T, b_eq=np.zeros(d),
                      bounds=[(1, None)] * m, method="highs")
        return res.status == 0

    def interior_point(self):
        return self._center.copy()

    def extent_bound(self):
        if not self.bounded:
            return np.inf
        if self._extent is None:
            eye = np.eye(self.n, dtype=complex)
            widths = [self.support(u) + self.support(-u) for u in np.vstack([eye, 1j * eye])]
            self._extent = float(np.sqrt(np.sum(np.square(widths))))
        return self._extent

    def slack(self, z):
        z = np.asarray(z, dtype=complex)
        return self.offsets - np.real(z @ self.normals.conj().T)

    def level(self, z):
        return np.max(-self.slack(z), axis=-1)

    def ray_exit(self, z0, U):
        U = np.asarray(U, dtype=complex)
        single = U.ndim == 1
        U2 = np.atleast_2d(U)
        s = self.slack(z0)
        rate = np.real(U2 @ self.normals.conj().T)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(rate > 0, s / rate, np.inf)
        t = t.min(axis=1)
        return t[0] if single else t

    def _nearest(self, q, V):
        s = self.slack(q)
        Ap = self.normals @ V.conj()          # row i: (V^H a_i)^T
        w = cnorm(Ap)
        with np.errstate(divide="ignore"):
            dist = np.where(w > 1e-14, s / w, np.inf)
        i = int(np.argmin(dist))
        if not np.isfinite(dist[i]):
            raise UnboundedDomainError("slice of the polytope is unbounded")
        c = Ap[i] * (s[i] / w[i] ** 2)
        return q + V @ c, float(dist[i])

    def normal(self, p):
        p = np.asarray(p, dtype=complex)
        self._check_on_boundary(p)
        d = p - self._center
        d = d / np.asarray(cnorm(d))[..., None]
        margin = -self.slack(p + CORNER_PERTURBATION * d)
        i = np.argmax(margin, axis=-1)
        return self.normals[i]

    def support_point(self, u):
        u = np.asarray(u, dtype=complex)
        res = linprog(-to_real(u), A_ub=self._Ar, b_ub=self.offsets,
                      bounds=[(None, None)] * (2 * self.n), method="highs")
        if res.status == 3:
            return np.inf, None
        if res.status != 0:
            raise DomainError(f"support LP failed: {res.message}")
        return -float(res.fun), to_complex(res.x)

    def support(self, u):
        return self.support_point(u)[0]
