"""Error sums of continued fraction expansions.

Exact arithmetic in real quadratic fields, periodic continued fractions,
weighted error sums and their units, Euler-type continued fractions for
pi and ln 2, ball arithmetic, and an experimental Jacobi-Perron module.
"""

from .cfrac import CFExpansion, convergents, expand, parse_word, surd_from_word, value_of
from .errors import DegenerateInputError, DomainError, LengthError, PrecisionExhausted
from .errsum import error_terms, f_partial, f_weighted, period_matrix, rho, tail_bound, verify_geometric
from .eulercf import GeneralizedCF, ln2_identity_sum, pi_identity_sum, telescoping_partial
from .exactnum import QuadraticSurd, parse_surd
from .jpa import jpa_expand, jpa_step, verify_eigen_theta
from .numeric import HPReal, const_gamma, const_ln2, const_pi, digamma, eval_surd
from .units import fundamental_unit, pell_solutions, product_complete_quotients, unit_periodicity_equivalence

__version__ = "0.1.0"

__all__ = [
    "CFExpansion",
    "DegenerateInputError",
    "DomainError",
    "GeneralizedCF",
    "HPReal",
    "LengthError",
    "PrecisionExhausted",
    "QuadraticSurd",
    "const_gamma",
    "const_ln2",
    "const_pi",
    "convergents",
    "digamma",
    "error_terms",
    "eval_surd",
    "expand",
    "f_partial",
    "f_weighted",
    "fundamental_unit",
    "jpa_expand",
    "jpa_step",
    "ln2_identity_sum",
    "parse_surd",
    "parse_word",
    "pell_solutions",
    "period_matrix",
    "pi_identity_sum",
    "product_complete_quotients",
    "rho",
    "surd_from_word",
    "tail_bound",
    "telescoping_partial",
    "unit_periodicity_equivalence",
    "value_of",
    "verify_eigen_theta",
    "verify_geometric",
]
