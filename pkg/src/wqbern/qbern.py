"""Weighted q-Bernoulli numbers and polynomials as exact elements of Q(q).

Two independent constructions of the numbers are provided: the closed
binomial sum (``weighted_number_closed``) and the umbral recurrence solved one
index at a time (``weighted_number_recurrence``). Polynomials are stored in the
basis ``Y = [x]_{q^alpha}``; the exponential ``q^(alpha*x)`` is rewritten as
``1 + (q^alpha - 1) * Y`` so every coefficient is a rational function of q.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from . import _zpoly as Z
from .errors import InvalidIndex
from .exactq import ONE, ZERO, Q, RatFunc, _lin, rsum

__all__ = [
    "WqBernNumber",
    "WqBernPoly",
    "ClassicalBernoulli",
    "binomial",
    "q_power",
    "q_bracket",
    "alpha_factor",
    "weighted_number",
    "weighted_number_closed",
    "weighted_number_recurrence",
    "carlitz_numbers",
    "weighted_polynomial",
    "polynomial_value_at_integer",
    "classical_bernoulli",
]


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k > n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def q_power(k: int) -> RatFunc:
    """q**k for any integer k."""
    if k >= 0:
        return RatFunc._make(Fraction(1), (0,) * k + (1,), (1,))
    return RatFunc._make(Fraction(1), (1,), (0,) * (-k) + (1,))


def q_bracket(m: int, w: int = 1) -> RatFunc:
    """The q-integer [m]_{q^w} = (1 - q^(w m)) / (1 - q^w).

    >>> str(q_bracket(3, 2))
    '1 + q^2 + q^4'
    >>> str(q_bracket(-1, 1))
    '(-1) / q'
    """
    if w < 1:
        raise ValueError("base exponent w must be positive")
    if m >= 0:
        coeffs = [0] * (w * (m - 1) + 1) if m else []
        coeffs[::w] = [1] * m
        return RatFunc._make(Fraction(1) if m else Fraction(0), tuple(coeffs) or (), (1,))
    # [-k]_Q = -Q^(-k) [k]_Q
    k = -m
    coeffs = [0] * (w * (k - 1) + 1)
    coeffs[::w] = [1] * k
    return RatFunc._make(Fraction(-1), tuple(coeffs), (0,) * (w * k) + (1,))


def alpha_factor(alpha: int) -> RatFunc:
    """alpha / [alpha]_q, the value of the n = 1 jump in the recurrence."""
    return q_bracket(alpha, 1).inverse() * alpha


def _one_minus_qpow(k: int) -> RatFunc:
    # 1 - q^k for k >= 1
    return RatFunc._make(Fraction(1), (1,) + (0,) * (k - 1) + (-1,), (1,)) if k else ZERO


@dataclass(frozen=True)
class WqBernNumber:
    n: int
    alpha: int
    value: RatFunc

    def value_at_1(self) -> Fraction:
        return self.value.eval_at(1)

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "alpha": self.alpha,
            "num": str(self.value.num),
            "den": str(self.value.den),
            "value_at_1": str(self.value_at_1()),
        }


@lru_cache(maxsize=None)
def _closed(n: int, alpha: int) -> RatFunc:
    terms = []
    for l in range(n + 1):
        c = binomial(n, l) * (-1) ** l * (alpha * l + 1)
        terms.append(_one_minus_qpow(alpha * l + 1).inverse() * c)
    pref = _one_minus_qpow(1) / _one_minus_qpow(alpha) ** n if n else _one_minus_qpow(1)
    return pref * rsum(terms)


def weighted_number_closed(n: int, alpha: int) -> WqBernNumber:
    """Weighted q-Bernoulli number from the closed binomial sum.

    (1-q)/(1-q^a)^n * sum_l C(n,l) (-1)^l (a l + 1) / (1 - q^(a l + 1)); the
    pole of the l = 0 term at q = 1 cancels against the prefactor.
    """
    _check(n, alpha)
    return WqBernNumber(n, alpha, _closed(n, alpha))


class _RecurrenceTable:
    """Per-alpha memo of the triangular recurrence; guarded for concurrent use."""

    def __init__(self):
        self._lock = threading.Lock()
        self._tables: dict[int, list[RatFunc]] = {}

    def get(self, n: int, alpha: int) -> RatFunc:
        with self._lock:
            table = self._tables.setdefault(alpha, [ONE])
            jump = alpha_factor(alpha)
            qa = [q_power(alpha * l) for l in range(n + 1)]
            while len(table) <= n:
                k = len(table)
                acc = rsum(qa[l] * table[l] * binomial(k, l) for l in range(k))
                rhs = jump if k == 1 else ZERO
                table.append((Q * acc - rhs) / _one_minus_qpow(alpha * k + 1))
            return table[n]


_RECURRENCE = _RecurrenceTable()


def weighted_number_recurrence(n: int, alpha: int) -> WqBernNumber:
    """Weighted q-Bernoulli number from q (q^a B + 1)^n - B_n = [n = 1] a/[a]_q.

    After umbral expansion the coefficient of B_n is q^(a n + 1) - 1, so each
    step is a single field division.
    """
    _check(n, alpha)
    return WqBernNumber(n, alpha, _RECURRENCE.get(n, alpha))


def weighted_number(n: int, alpha: int) -> RatFunc:
    """Canonical value of the number (closed form, memoized)."""
    _check(n, alpha)
    return _closed(n, alpha)


def carlitz_numbers(kmax: int) -> list[RatFunc]:
    """Carlitz q-Bernoulli numbers beta_0..beta_kmax.

    Solves beta_0 = 1, q (q beta + 1)^k - beta_k = [k = 1] directly with
    integer-polynomial numerators over the running denominator, independent
    of the weighted routines.
    """
    # beta_k = num_k / den_k kept unreduced; reduced only when returned
    nums: list[tuple] = [(1,)]
    dens: list[tuple] = [(1,)]
    scales: list[Fraction] = [Fraction(1)]
    out = [ONE]
    for k in range(1, kmax + 1):
        # common denominator of beta_0..beta_{k-1} is den_{k-1} (dens are nested)
        den = dens[-1]
        acc_c, acc = Fraction(0), ()
        for j in range(k):
            lift = Z.divmod_exact(den, dens[j])
            term = Z.shift(Z.mul(nums[j], lift), j + 1)
            acc_c, acc = _lin(acc_c, acc, scales[j] * comb(k, j), term) if acc else (scales[j] * comb(k, j), term)
        if k == 1:
            acc_c, acc = _lin(acc_c, acc, Fraction(-1), den)
        # beta_k (1 - q^(k+1)) = acc / den
        new_den = Z.mul(den, (1,) + (0,) * k + (-1,))
        nums.append(acc)
        dens.append(new_den)
        scales.append(acc_c)
        out.append(RatFunc._from_parts(acc_c, acc, new_den))
    return out


@dataclass(frozen=True)
class ClassicalBernoulli:
    table: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.table[n]

    def __len__(self):
        return len(self.table)


def classical_bernoulli(N: int) -> ClassicalBernoulli:
    """B_0..B_N with B_1 = -1/2, from sum_{k<n} C(n,k) B_k = 0 for n >= 2."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    B = [Fraction(1)]
    for n in range(2, N + 2):
        s = sum(comb(n, k) * B[k] for k in range(n - 1))
        B.append(-s / n)
    return ClassicalBernoulli(tuple(B[: N + 1]))


@dataclass(frozen=True)
class WqBernPoly:
    """Weighted q-Bernoulli polynomial as sum_j coeffs[j] * Y**j, Y = [x]_{q^alpha}.

    ``base`` records a substitution q -> q**base applied to the coefficients,
    in which case Y stands for [x]_{q^(alpha*base)}.
    """

    n: int
    alpha: int
    coeffs: tuple[RatFunc, ...]
    base: int = 1

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d >= 0 and self.coeffs[d].is_zero():
            d -= 1
        return d

    def substituted(self, d: int) -> WqBernPoly:
        """Coefficients with q -> q**d (d may be negative)."""
        return WqBernPoly(self.n, self.alpha, tuple(c.subst_power(d) for c in self.coeffs), self.base * d)

    def evaluate(self, y: RatFunc) -> RatFunc:
        """P(y) with one final reduction (coefficients over a cached common denominator)."""
        lcd, numer = _common_form(self)
        yc, u, v = y._c, y._n, y._d
        if not u:
            return self.coeffs[0]
        vpow = [(1,)]
        for _ in range(len(numer)):
            vpow.append(Z.mul(vpow[-1], v))
        k = len(numer) - 1
        acc_c, acc = numer[k]
        for j in range(k - 1, -1, -1):
            acc_c, acc = acc_c * yc, Z.mul(acc, u)
            cj, aj = numer[j]
            if aj:
                acc_c, acc = _lin(acc_c, acc, cj, Z.mul(aj, vpow[k - j])) if acc else (cj, Z.mul(aj, vpow[k - j]))
        return RatFunc._from_parts(acc_c, acc, Z.mul(lcd, vpow[k]))

    def at_integer(self, x: int) -> RatFunc:
        """Value at an integer argument x: Y = [x]_{q^(alpha*base)}."""
        return self.evaluate(_bracket_any(x, self.alpha * self.base))

    def __call__(self, y: RatFunc) -> RatFunc:
        return self.evaluate(y)


_COMMON: dict[WqBernPoly, tuple] = {}


def _common_form(p: WqBernPoly):
    hit = _COMMON.get(p)
    if hit is not None:
        return hit
    lcd: tuple = (1,)
    for c in p.coeffs:
        if c.is_zero() or c._d == lcd:
            continue
        g, a, b = Z.gcd_cofactors(lcd, c._d)
        lcd = Z.mul(lcd, b)
    numer = []
    for c in p.coeffs:
        if c.is_zero():
            numer.append((Fraction(0), ()))
        else:
            numer.append((c._c, Z.mul(c._n, Z.divmod_exact(lcd, c._d))))
    while len(numer) > 1 and not numer[-1][1]:
        numer.pop()
    _COMMON[p] = (lcd, numer)
    return lcd, numer


def _bracket_any(x: int, w: int) -> RatFunc:
    """[x]_{q^w} for integer x and any nonzero integer w."""
    if w > 0:
        return q_bracket(x, w)
    return q_bracket(x, -w).subst_power(-1)


@lru_cache(maxsize=None)
def _poly_coeffs(n: int, alpha: int) -> tuple[RatFunc, ...]:
    s = q_power(alpha) - 1
    spow = [ONE]
    for _ in range(n):
        spow.append(spow[-1] * s)
    betas = [weighted_number(l, alpha) for l in range(n + 1)]
    coeffs = []
    for k in range(n + 1):
        # Y^k collects C(n,l) C(l,j) s^j beta_l with (n - l) + j = k
        terms = []
        for l in range(n - k, n + 1):
            j = k - n + l
            terms.append(spow[j] * betas[l] * (binomial(n, l) * binomial(l, j)))
        coeffs.append(rsum(terms))
    return tuple(coeffs)


def weighted_polynomial(n: int, alpha: int) -> WqBernPoly:
    """sum_l C(n,l) Y^(n-l) (1 + (q^a - 1) Y)^l beta_l, expanded in powers of Y."""
    _check(n, alpha)
    return WqBernPoly(n, alpha, _poly_coeffs(n, alpha))


@lru_cache(maxsize=None)
def _value_at_integer(n: int, alpha: int, x: int) -> RatFunc:
    terms = []
    for l in range(n + 1):
        c = binomial(n, l) * (-1) ** l * (alpha * l + 1)
        terms.append(q_power(alpha * l * x) * _one_minus_qpow(alpha * l + 1).inverse() * c)
    pref = _one_minus_qpow(1) / _one_minus_qpow(alpha) ** n if n else _one_minus_qpow(1)
    return pref * rsum(terms)


def polynomial_value_at_integer(n: int, alpha: int, x: int) -> RatFunc:
    """Closed binomial form of the polynomial at an integer point.

    (1-q)/(1-q^a)^n * sum_l C(n,l) (-1)^l q^(a l x) (a l + 1)/(1 - q^(a l + 1)).
    """
    _check(n, alpha)
    return _value_at_integer(n, alpha, x)


def _check(n: int, alpha: int) -> None:
    if n < 0:
        raise InvalidIndex(f"index n must be nonnegative, got {n}")
    if alpha < 1:
        raise InvalidIndex(f"weight alpha must be a positive integer, got {alpha}")
