"""tubepoly: exact tube-volume polynomials of convex bodies.

Synthesizes the polynomial t -> Vol(body + t*ball) exactly over the field
Q(sqrt(pi)) for bodies built from balls, cubes, Cartesian products and
squeezed embeddings; derives the intrinsic boundary-surface polynomials of
every codimension index; classifies root locations (all-left-half-plane /
all-imaginary-simple) by exact determinant cascades; and cross-validates
everything against numeric root finding, closed-form generating functions,
and Monte-Carlo tube volumes.
"""

from .bodies import (
    Adjoint,
    Ball,
    BodySpec,
    Cube,
    Product,
    SteinerResult,
    WeylData,
    ambient_dim,
    cross_measures,
    half_tube_polys,
    intrinsic_dim,
    parse_body,
    renormalized_steiner,
    renormalized_weyl,
    steiner,
    weyl1_from_steiner,
    weyl_coeffs,
    weyl_poly,
)
from .generators import (
    SeriesFamily,
    closed_form_eval,
    integral_rep_eval,
    jensen_multiplier,
    jensen_poly,
    laguerre_multiplier,
    parse_family,
    series_coeff,
    truncated_eval,
)
from .oracle import McEstimate, body_distance, mc_tube_volume, mc_tube_volumes
from .poly import PiPoly
from .roots import RootSet, ball_weyl1_roots, classify_numeric, find_roots, polish_root
from .scalars import (
    ParseError,
    PiLaurent,
    PiScalar,
    PrecisionExhausted,
    gamma_half,
    gamma_multiplier,
    omega,
    parse_scalar,
)
from .stability import (
    ClassificationReport,
    classify_conservative,
    classify_dissipative,
    conservativeness_determinants,
    hermite_biehler_check,
    hurwitz_determinants,
    log_concavity_check,
    low_dim_implications,
    search_counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "Adjoint",
    "Ball",
    "BodySpec",
    "ClassificationReport",
    "Cube",
    "McEstimate",
    "ParseError",
    "PiLaurent",
    "PiPoly",
    "PiScalar",
    "PrecisionExhausted",
    "Product",
    "RootSet",
    "SeriesFamily",
    "SteinerResult",
    "WeylData",
    "ambient_dim",
    "ball_weyl1_roots",
    "body_distance",
    "classify_conservative",
    "classify_dissipative",
    "classify_numeric",
    "closed_form_eval",
    "conservativeness_determinants",
    "cross_measures",
    "find_roots",
    "gamma_half",
    "gamma_multiplier",
    "half_tube_polys",
    "hermite_biehler_check",
    "hurwitz_determinants",
    "integral_rep_eval",
    "intrinsic_dim",
    "jensen_multiplier",
    "jensen_poly",
    "laguerre_multiplier",
    "log_concavity_check",
    "low_dim_implications",
    "mc_tube_volume",
    "mc_tube_volumes",
    "omega",
    "parse_body",
    "parse_family",
    "parse_scalar",
    "polish_root",
    "renormalized_steiner",
    "renormalized_weyl",
    "search_counterexample",
    "series_coeff",
    "steiner",
    "truncated_eval",
    "weyl1_from_steiner",
    "weyl_coeffs",
    "weyl_poly",
]
