"""Exact support-variety computations for small quantum groups and Frobenius kernels."""

__version__ = "0.1.0"

from .errors import AssumptionViolation, CapacityExceeded, InvalidInput, InvariantViolation  # noqa: E402
from .roots import RootSystem, WeylElement, build, phi_lambda, validate_ell  # noqa: E402
from .affine import AffineWeylElement, AffineWeylGroup, AlcoveReduction  # noqa: E402
from .kl import KLTable  # noqa: E402
from .poly import (CyclotomicInt, LaurentPoly, cyclotomic, derivative, eval_at_zeta,  # noqa: E402
                   exact_div, psi_multiplicity)
from .gendim import (d_poly, irreducible_character, irreducible_generic_dim,  # noqa: E402
                     multiplicity_and_complexity, derivative_closed_form, verify_derivative_formula,
                     weyl_generic_dim)
from .support import (SupportVarietyDescriptor, find_J, irreducible_support,  # noqa: E402
                      weyl_module_support)
