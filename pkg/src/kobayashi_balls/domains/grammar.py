"""JSON grammar for domain descriptions.

Every description is an object with a ``type`` tag. Complex numbers may be
written as JSON numbers, ``[re, im]`` pairs, or strings such as ``"0.5+1j"``.

==============  ====================================================
type            parameters
==============  ====================================================
polytope        ``normals`` (list of complex n-vectors), ``offsets``
ball            ``center``, ``radius``
polydisc        ``center``, ``radii``
disc            ``center`` (complex, default 0), ``radius`` (default 1)
ellipsoid       ``exponents``
half_plane      none (planar right half-plane)
slit_plane      none (planar, plane minus ``[0, inf)``)
hull            ``center``, ``scales``
product         ``factors`` (list of planar descriptions)
affine_image    ``matrix``, ``anchor``, ``domain``
==============  ====================================================

Any description may carry ``class`` (``convex``, ``c_convex`` or
``weakly_linearly_convex``) to override the default convexity class.
"""
from __future__ import annotations

import numpy as np

from ..linalg import ComplexAffineMap
from .affine import AffineImage
from .base import ConvexityClass, Domain, DomainError
from .planar import Disc, PlanarFactor, Polydisc, Product, RightHalfPlane, SlitPlane
from .polytope import HalfSpacePolytope
from .smooth import ComplexEllipsoid, CoordinateDiscHull, EuclideanBall


def parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise DomainError(f"complex pair must have two entries, got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, str):
        try:
            return complex(x.replace(" ", "").replace("i", "j"))
        except ValueError as exc:
            raise DomainError(f"cannot parse complex number {x!r}") from exc
    if isinstance(x, (int, float, complex)):
        return complex(x)
    raise DomainError(f"cannot parse complex number {x!r}")


def parse_cvector(xs) -> np.ndarray:
    if not isinstance(xs, (list, tuple)) or not xs:
        raise DomainError(f"expected a nonempty list of complex numbers, got {xs!r}")
    return np.array([parse_complex(x) for x in xs], dtype=complex)


def parse_cmatrix(rows) -> np.ndarray:
    if not isinstance(rows, (list, tuple)) or not rows:
        raise DomainError("expected a nonempty list of rows")
    return np.array([parse_cvector(r) for r in rows], dtype=complex)


def encode_complex(z: complex):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def encode_cvector(v) -> list:
    return [encode_complex(x) for x in np.asarray(v).ravel()]


def _require(desc: dict, *keys):
    missing = [k for k in keys if k not in desc]
    if missing:
        raise DomainError(f"domain type {desc.get('type')!r} needs {', '.join(missing)}")


def _planar(desc: dict) -> PlanarFactor:
    t = desc.get("type")
    if t == "disc":
        return Disc(parse_complex(desc.get("center", 0.0)), float(desc.get("radius", 1.0)))
    if t == "half_plane":
        return RightHalfPlane()
    if t == "slit_plane":
        return SlitPlane()
    raise DomainError(f"{t!r} is not a planar factor type")


def parse_domain(desc: dict) -> Domain:
    if not isinstance(desc, dict) or "type" not in desc:
        raise DomainError("domain description must be an object with a 'type'")
    t = desc["type"]
    cls = desc.get("class")
    try:
        cls = ConvexityClass(cls) if cls is not None else None
    except ValueError as exc:
        raise DomainError(f"unknown convexity class {cls!r}") from exc
    kw = {} if cls is None else {"convexity": cls}

    if t == "polytope":
        _require(desc, "normals", "offsets")
        return HalfSpacePolytope(parse_cmatrix(desc["normals"]), desc["offsets"], **kw)
    if t == "ball":
        _require(desc, "center", "radius")
        return EuclideanBall(parse_cvector(desc["center"]), desc["radius"], **kw)
    if t == "polydisc":
        _require(desc, "center", "radii")
        return Polydisc(parse_cvector(desc["center"]), desc["radii"])
    if t == "ellipsoid":
        _require(desc, "exponents")
        return ComplexEllipsoid(desc["exponents"], **kw)
    if t == "hull":
        _require(desc, "center", "scales")
        return CoordinateDiscHull(parse_cvector(desc["center"]), desc["scales"], **kw)
    if t in ("disc", "half_plane", "slit_plane"):
        return _planar(desc)
    if t == "product":
        _require(desc, "factors")
        return Product([_planar(f) for f in desc["factors"]], convexity=cls)
    if t == "affine_image":
        _require(desc, "matrix", "anchor", "domain")
        amap = ComplexAffineMap(parse_cmatrix(desc["matrix"]), parse_cvector(desc["anchor"]))
        return AffineImage(amap, parse_domain(desc["domain"]))
    raise DomainError(f"unknown domain type {t!r}")


def domain_to_dict(d: Domain) -> dict:
    if isinstance(d, HalfSpacePolytope):
        return {"type": "polytope", "normals": [encode_cvector(a) for a in d.normals],
                "offsets": d.offsets.tolist(), "class": d.convexity.value}
    if isinstance(d, EuclideanBall):
        return {"type": "ball", "center": encode_cvector(d.center), "radius": d.radius}
    if isinstance(d, Polydisc):
        return {"type": "polydisc", "center": encode_cvector(d.center), "radii": d.radii.tolist()}
    if isinstance(d, ComplexEllipsoid):
        return {"type": "ellipsoid", "exponents": d.exponents.tolist()}
    if isinstance(d, CoordinateDiscHull):
        return {"type": "hull", "center": encode_cvector(d.center), "scales": d.scales.tolist()}
    if isinstance(d, Disc):
        return {"type": "disc", "center": encode_complex(d.center), "radius": d.radius}
    if isinstance(d, RightHalfPlane):
        return {"type": "half_plane"}
    if isinstance(d, SlitPlane):
        return {"type": "slit_plane"}
    if isinstance(d, Product):
        return {"type": "product", "factors": [domain_to_dict(f) for f in d.factors]}
    if isinstance(d, AffineImage):
        return {"type": "affine_image", "matrix": [encode_cvector(r) for r in d.map.matrix],
                "anchor": encode_cvector(d.map.anchor), "domain": domain_to_dict(d.inner)}
    raise DomainError(f"cannot serialize {type(d).__name__}")
