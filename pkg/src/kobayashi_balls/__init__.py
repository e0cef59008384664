"""Minimal bases, polydisc sandwiches of invariant balls, and numeric checks
of the accompanying distance estimates for convex domains in C^n."""
from .basis import (
    MinimalBasis,
    TriangularMap,
    compute_minimal_basis,
    rotate_to_standard,
    triangular_map,
    verify_hyperplane_disjoint,
)
from .bounds import (
    HullGauge,
    SandwichBox,
    cstar_metric,
    cstar_metric_derivative_check,
    gauge,
    halfplane_distance,
    prop2_planar_lower,
    prop2_quotient_lower,
    sandwich_box,
    theorem1_inner,
    theorem1_outer_radius,
)
from .oracles import (
    DistanceBracket,
    ball_distance,
    convex_bracket,
    exact_distance,
    hull_lempert,
    poincare_disc,
    product_distance,
    slit_plane_distance,
)

__version__ = "0.1.0"
