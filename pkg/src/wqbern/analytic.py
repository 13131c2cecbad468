"""Floating-point checks of the series and generating-function forms (|q| < 1).

The exact coefficients come from the canonical rational functions; only the
infinite sums over m are truncated here, with geometric tail bounds in |q|.

The series form of the polynomials carries a factor q^(alpha*x) in its first
sum: expanding (1 - q^(alpha (x+y)))^n under the integral gives

    B_n(x) = -n (a/[a]_q) sum_m q^(m a + m + a x) [m+x]^(n-1) + (1-q) sum_m q^m [m+x]^n.

The variant without q^(alpha*x) is available as ``form="printed"``; it agrees
only at x = 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ToleranceNotMet
from .exactq import RatFunc
from .qbern import polynomial_value_at_integer, weighted_number

__all__ = [
    "SeriesCheckResult",
    "series_number_check",
    "generating_function_check",
    "generating_function_series",
    "generating_function_exact",
    "terms_needed",
]


@dataclass(frozen=True)
class SeriesCheckResult:
    statement: str
    q: complex | float
    t: float
    x: int
    alpha: int
    n: int | None
    M_terms: int
    N_terms: int
    lhs: complex | float
    rhs: complex | float
    abs_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.abs_error < self.tolerance

    def to_record(self) -> dict:
        def num(z):
            return [z.real, z.imag] if isinstance(z, complex) else z

        return {
            "statement": self.statement,
            "q": num(self.q),
            "t": self.t,
            "x": self.x,
            "alpha": self.alpha,
            "n": self.n,
            "M_terms": self.M_terms,
            "N_terms": self.N_terms,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "abs_error": self.abs_error,
            "passed": self.passed,
        }


def _value(f: RatFunc, q):
    """Evaluate exactly at real rational points, in floating point otherwise."""
    if isinstance(q, float):
        return float(f.eval_at(Fraction(q)))
    return f(q)


def _qint(m: int, base):
    # [m]_base for any integer m in floating point; base may be complex
    return (1 - base**m) / (1 - base)


def terms_needed(q, tol: float, scale: float = 1.0) -> int:
    """Smallest M with scale * |q|^M / (1 - |q|) below tol / 10."""
    r = abs(q)
    if not 0 < r < 1:
        raise ValueError("series checks need 0 < |q| < 1")
    bound = tol / 10 * (1 - r) / max(scale, 1e-300)
    return max(8, math.ceil(math.log(bound) / math.log(r)))


def series_number_check(n: int, alpha: int, q, M_terms: int | None = None, tol: float = 1e-12,
                        raise_on_fail: bool = False) -> SeriesCheckResult:
    """B_n against -n (a/[a]_q) sum q^(m a + m) [m]^(n-1) + (1-q) sum q^m [m]^n.

    The statement is usually written for -B_n/n; multiplying through by -n
    makes lhs the number itself.
    """
    if n < 1:
        raise ValueError("series form needs n >= 1")
    qa = q**alpha
    # [m]_{q^a} <= 1/(1-|q|^a): bound the summands to size the truncation
    scale = n * (1 / (1 - abs(qa))) ** n * max(alpha / abs(_qint(alpha, q)), 1.0)
    M = M_terms if M_terms is not None else terms_needed(q, tol, scale)
    lhs = _value(weighted_number(n, alpha), q)
    jump = alpha / _qint(alpha, q)
    s1 = sum(q ** (m * alpha + m) * _qint(m, qa) ** (n - 1) for m in range(M))
    s2 = sum(q**m * _qint(m, qa) ** n for m in range(M))
    rhs = -n * jump * s1 + (1 - q) * s2
    res = SeriesCheckResult("T2", q, 0.0, 0, alpha, n, M, 0, lhs, rhs, abs(lhs - rhs), tol)
    if raise_on_fail and not res.passed:
        raise ToleranceNotMet(f"T2 check n={n} alpha={alpha} q={q}: error {res.abs_error:.3e}")
    return res


def generating_function_series(alpha: int, q, t: float, x: int, M_terms: int, form: str = "corrected"):
    """Truncated double-series side of the generating function.

    -t (a/[a]_q) sum_m q^(m a + m) w(x) e^([m+x] t) + (1-q) sum_m q^m e^([m+x] t),
    with w(x) = q^(a x) for the corrected form and 1 for the printed form.
    """
    if form not in ("corrected", "printed"):
        raise ValueError("form must be 'corrected' or 'printed'")
    exp = cmath.exp if isinstance(q, complex) else math.exp
    qa = q**alpha
    jump = alpha / _qint(alpha, q)
    weight = qa**x if form == "corrected" else 1.0
    s1 = 0.0
    s2 = 0.0
    for m in range(M_terms):
        e = exp(_qint(m + x, qa) * t)
        s1 += q ** (m * alpha + m) * e
        s2 += q**m * e
    return -t * jump * weight * s1 + (1 - q) * s2


def generating_function_exact(alpha: int, q, t: float, x: int, N_terms: int):
    """sum_{n <= N_terms} B_n(x) t^n / n! from the exact coefficients."""
    total = 0.0
    fact = 1.0
    for n in range(N_terms + 1):
        if n:
            fact *= n
        coef = _value(polynomial_value_at_integer(n, alpha, x), q)
        total += coef * t**n / fact
    return total


def generating_function_check(alpha: int, q, t: float, x: int = 0, M_terms: int | None = None,
                              N_terms: int = 14, tol: float = 1e-10, form: str = "corrected",
                              raise_on_fail: bool = False) -> SeriesCheckResult:
    """Generating function: truncated double series (lhs) against exact coefficients (rhs).

    x = 0 is the number generating function.
    """
    if abs(t) > 0.5:
        raise ValueError("keep |t| <= 0.5 so the exponential factors stay bounded")
    qa = q**alpha
    growth = math.exp(abs(t) / (1 - abs(qa))) * (1 + abs(t) * alpha / abs(_qint(alpha, q)))
    growth *= max(1.0, abs(qa) ** x if x < 0 else 1.0)
    M = M_terms if M_terms is not None else terms_needed(q, tol, growth)
    lhs = generating_function_series(alpha, q, t, x, M, form)
    rhs = generating_function_exact(alpha, q, t, x, N_terms)
    res = SeriesCheckResult("C3" if x == 0 else "GF-poly", q, t, x, alpha, None, M, N_terms, lhs, rhs,
                            abs(lhs - rhs), tol)
    if raise_on_fail and not res.passed:
        raise ToleranceNotMet(f"generating function alpha={alpha} q={q} t={t} x={x}: error {res.abs_error:.3e}")
    return res
