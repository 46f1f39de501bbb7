"""Exact computations around Lefschetz properties, inverse systems and
Laplace equations of Veronese projections."""

from .errors import LefschetzLabError, ParseError, PreconditionError
from .ideal import (GorensteinIdeal, GradedIdeal, annihilator_piece, gorenstein_from_form,
                    hilbert, hilbert_vector, inverse_system_piece, is_artinian,
                    jacobian_ideal_piece, quotient_basis, reduce)
from .lefschetz import dual_basis, mult_matrix, pair_rank, slp_report, wlp_report
from .linalg import ExactMatrix, PolyMatrix, generic_rank, kernel_basis, rank
from .osculating import (LinearSystem, hessian_nonvanishing, jacobian, laplace_report,
                         minimal_laplace_order, mixed_hessian, relevant_jacobian,
                         verify_main_theorem)
from .parse import parse_ideal_text, parse_polynomial
from .poly import LinearForm, Polynomial, contract, format_polynomial, monomial_basis
from .togliatti import (conjecture_probe, family_2n_plus_1, is_minimal_monomial_togliatti,
                        is_togliatti, lattice_points, minimal_order_via_polytope,
                        vanishing_space_dim)

__version__ = "0.1.0"
