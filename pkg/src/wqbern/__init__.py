"""Weighted q-Bernoulli numbers and polynomials in exact arithmetic.

Submodules: ``exactq`` (Q(q) arithmetic), ``qbern`` (numbers and polynomials),
``identities`` (executable identity checks), ``padic`` (q-Riemann sums in Q_p),
``analytic`` (floating-point series checks), ``cli``.
"""

__version__ = "0.1.0"

from .exactq import ONE, ZERO, Poly, Q, RatFunc, eval_at, poly_gcd, ratfunc_normalize, subst_power
from .kernels import BACKEND
from .qbern import (
    classical_bernoulli,
    q_bracket,
    weighted_number,
    weighted_number_closed,
    weighted_number_recurrence,
    weighted_polynomial,
)

__all__ = [
    "BACKEND",
    "ONE",
    "ZERO",
    "Q",
    "Poly",
    "RatFunc",
    "eval_at",
    "poly_gcd",
    "ratfunc_normalize",
    "subst_power",
    "classical_bernoulli",
    "q_bracket",
    "weighted_number",
    "weighted_number_closed",
    "weighted_number_recurrence",
    "weighted_polynomial",
]
