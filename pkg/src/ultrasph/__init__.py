"""Hyperspherical harmonics and Laplace boundary-value solving in d >= 3.

The package provides ultraspherical coordinates (:mod:`ultrasph.geometry`),
ultraspherical polynomials and associated functions
(:mod:`ultrasph.gegenbauer`), orthonormal harmonics and addition theorems
(:mod:`ultrasph.harmonics`), exact product quadrature on the sphere
(:mod:`ultrasph.quadrature`), boundary-value fitting and the separable
kernel expansion (:mod:`ultrasph.solver`), and a verification suite with a
command-line front end (:mod:`ultrasph.verify`, :mod:`ultrasph.cli`).
"""

from .geometry import (
    CartesianPoint,
    UltrasphericalPoint,
    cos_gamma,
    solid_angle,
    to_cartesian,
    to_ultraspherical,
)
from .gegenbauer import (
    PolyParams,
    alpha_factor,
    assoc,
    deriv_at_one,
    norm_factor,
    ode_residual,
    poly,
    poly_deriv,
    poly_reference,
)
from .harmonics import (
    MultiIndex,
    addition_reduced,
    addition_sum,
    count,
    enumerate_indices,
    eval_harmonic,
    eval_psi,
    harmonicity_residual,
    norm_coeff,
)
from .quadrature import SphereGrid, ThetaRule, inner_product, sphere_grid, theta_rule
from .solver import (
    BoundaryProblem,
    HarmonicExpansion,
    eval_expansion,
    fit_annulus,
    fit_exterior,
    fit_interior,
    green_expansion,
    project_boundary,
    radial_eval,
)
from .verify import VerifyReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "BoundaryProblem",
    "CartesianPoint",
    "HarmonicExpansion",
    "MultiIndex",
    "PolyParams",
    "SphereGrid",
    "ThetaRule",
    "UltrasphericalPoint",
    "VerifyReport",
    "addition_reduced",
    "addition_sum",
    "alpha_factor",
    "assoc",
    "cos_gamma",
    "count",
    "deriv_at_one",
    "enumerate_indices",
    "eval_expansion",
    "eval_harmonic",
    "eval_psi",
    "fit_annulus",
    "fit_exterior",
    "fit_interior",
    "green_expansion",
    "harmonicity_residual",
    "inner_product",
    "norm_coeff",
    "norm_factor",
    "ode_residual",
    "poly",
    "poly_deriv",
    "poly_reference",
    "project_boundary",
    "radial_eval",
    "run_verification",
    "solid_angle",
    "sphere_grid",
    "theta_rule",
    "to_cartesian",
    "to_ultraspherical",
]
