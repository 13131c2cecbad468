"""Finite-precision p-adic numbers and the q-deformed Riemann sums they evaluate.

A ``PadicNumber`` is ``p**valuation * unit`` with the unit known modulo
``p**prec``. A zero flag (``unit == 0``, ``prec == 0``) means "zero to absolute
precision ``valuation``", i.e. an element of ``p**valuation * Z_p``.

The Riemann sum at level N is

    S_N(f) = (1 / [p^N]_q) * sum_{0 <= x < p^N} q^x f(x),   f(x) = [x]_{q^alpha}^n,

and its defect against the exact number evaluated at q measures convergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

from . import kernels
from .errors import DivisionByZero, DomainError, PrecisionExhausted
from .exactq import RatFunc
from .qbern import weighted_number

__all__ = [
    "PadicNumber",
    "embed_rational",
    "padic_log",
    "RiemannSumResult",
    "IntegralEquationResult",
    "riemann_sum",
    "convergence_table",
    "defect_growth_ok",
    "check_integral_equation",
    "ALLOWED_PRIMES",
]

ALLOWED_PRIMES = (3, 5, 7)


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PadicNumber:
    p: int
    valuation: int
    unit: int
    prec: int

    def __post_init__(self):
        if self.unit == 0:
            if self.prec != 0:
                raise ValueError("zero flag carries prec = 0")
        elif self.unit % self.p == 0:
            raise ValueError("unit must be coprime to p")
        elif not 0 < self.unit < self.p**self.prec:
            raise ValueError("unit must be reduced modulo p**prec")

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> PadicNumber:
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_int(cls, k: int, p: int, prec: int) -> PadicNumber:
        return embed_rational(Fraction(k), p, prec)

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def abs_prec(self) -> int:
        """Power of p up to which the value is known."""
        return self.valuation + self.prec

    def lift(self) -> Fraction:
        """A rational representative (exact when the value came from one)."""
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def residue(self, k: int) -> int:
        """Integer representative modulo p**k; needs nonnegative valuation."""
        if self.valuation < 0:
            raise DomainError("negative valuation has no residue in Z/p^k")
        if k > self.abs_prec and not self.is_zero:
            raise PrecisionExhausted(f"only {self.abs_prec} digits known, {k} requested")
        if self.is_zero:
            if k > self.valuation:
                raise PrecisionExhausted(f"zero known only modulo p^{self.valuation}")
            return 0
        return (self.unit * self.p**self.valuation) % self.p**k

    def truncate(self, prec: int) -> PadicNumber:
        if self.is_zero or prec >= self.prec:
            return self
        return PadicNumber(self.p, self.valuation, self.unit % self.p**prec, prec)

    def _same(self, other) -> PadicNumber:
        if isinstance(other, int | Fraction):
            # exact constants: precision never limits
            return embed_rational(Fraction(other), self.p, max(self.prec, 1) + 64)
        if not isinstance(other, PadicNumber):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixing different primes")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        p = self.p
        ap = min(self.abs_prec, other.abs_prec)
        if self.is_zero and other.is_zero:
            return PadicNumber.zero(p, ap)
        if self.is_zero:
            return _with_abs(other, ap)
        if other.is_zero:
            return _with_abs(self, ap)
        v = min(self.valuation, other.valuation)
        width = ap - v
        if width <= 0:
            return PadicNumber.zero(p, ap)
        mod = p**width
        s = (self.unit * p ** (self.valuation - v) + other.unit * p ** (other.valuation - v)) % mod
        if s == 0:
            return PadicNumber.zero(p, ap)
        k = vp(s, p)
        return PadicNumber(p, v + k, s // p**k, width - k)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNumber(self.p, self.valuation, (-self.unit) % self.p**self.prec, self.prec)

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.is_zero or other.is_zero:
            # a zero flag's valuation is a lower bound, so the sum bounds the product
            return PadicNumber.zero(p, self.valuation + other.valuation)
        prec = min(self.prec, other.prec)
        return PadicNumber(p, self.valuation + other.valuation, (self.unit * other.unit) % p**prec, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise DivisionByZero("division by a p-adic zero (no significant digits)")
        p = self.p
        if self.is_zero:
            return PadicNumber.zero(p, self.valuation - other.valuation)
        prec = min(self.prec, other.prec)
        mod = p**prec
        return PadicNumber(p, self.valuation - other.valuation, self.unit * pow(other.unit, -1, mod) % mod, prec)

    def __rtruediv__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return PadicNumber.from_int(1, self.p, self.prec + 64) / self ** (-k)
        out = PadicNumber.from_int(1, self.p, max(self.prec, 1) + 64)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def agrees_with(self, other: PadicNumber) -> bool:
        """True when the difference vanishes to the available precision."""
        return (self - other).is_zero

    def __str__(self):
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        return f"{self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.abs_prec})"


def _with_abs(x: PadicNumber, ap: int) -> PadicNumber:
    # restrict a nonzero x to absolute precision ap
    width = ap - x.valuation
    if width <= 0:
        return PadicNumber.zero(x.p, ap)
    return x.truncate(width)


def embed_rational(r, p: int, M: int) -> PadicNumber:
    """p-adic expansion of a rational number to M significant digits.

    >>> embed_rational(Fraction(-1, 5), 3, 4).unit
    16
    """
    r = Fraction(r)
    if M < 1:
        raise ValueError("precision must be positive")
    if r == 0:
        return PadicNumber.zero(p, M)
    num, den = r.numerator, r.denominator
    vn, vd = vp(num, p), vp(den, p)
    num //= p**vn
    den //= p**vd
    mod = p**M
    return PadicNumber(p, vn - vd, num * pow(den, -1, mod) % mod, M)


def padic_log(q: PadicNumber, M: int) -> PadicNumber:
    """p-adic logarithm by the series sum_k (-1)^(k+1) (q-1)^k / k.

    The series is cut once k*v(q-1) - log_p(k) exceeds the target absolute
    precision, so the tail cannot touch the first M digits.
    """
    p = q.p
    x = q - 1
    if x.is_zero:
        return PadicNumber.zero(p, x.valuation)
    v = x.valuation
    if v < 1:
        raise DomainError(f"log needs v_p(q - 1) >= 1, got {v}")
    target = v + M  # for odd p and v >= 1 the first term dominates: v(log q) = v
    total = PadicNumber.zero(p, target)
    xk = PadicNumber.from_int(1, p, x.prec + 64)
    k = 0
    while True:
        k += 1
        if k * v - log(k, p) >= target + 1:
            break
        xk = xk * x
        term = xk / k
        total = total + term if k % 2 else total - term
    if total.is_zero:
        return total
    return total.truncate(M)


def _as_padic(q, p: int, M: int) -> tuple[PadicNumber, Fraction | None]:
    if isinstance(q, PadicNumber):
        return q, None
    r = Fraction(q)
    return embed_rational(r, p, M), r


def _eval_padic(f: RatFunc, q: PadicNumber, exact: Fraction | None, M: int) -> PadicNumber:
    if exact is not None:
        return embed_rational(f.eval_at(exact), q.p, M)
    num = PadicNumber.zero(q.p, M + 64)
    for c in reversed(f.num.coeffs):
        num = num * q + embed_rational(c, q.p, M + 64) if c else num * q
    den = PadicNumber.zero(q.p, M + 64)
    for c in reversed(f.den.coeffs):
        den = den * q + embed_rational(c, q.p, M + 64) if c else den * q
    return num / den


def _check_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or any(p % f == 0 for f in range(3, int(p**0.5) + 1, 2)):
        raise DomainError(f"p must be an odd prime, got {p}")


def _sum_level(n: int, alpha: int, qint: int, p: int, N: int, M: int, shift: int = 0) -> PadicNumber:
    """(1/[p^N]_q) sum_{x < p^N} q^x [x + shift]^n as a p-adic number."""
    mod = p**M
    count = p**N
    s = kernels.riemann_sum_mod(n, alpha, qint, count, mod, shift)
    g = kernels.riemann_sum_mod(0, alpha, qint, count, mod, 0)
    total = embed_rational(s, p, M) if s else PadicNumber.zero(p, M)
    total = _with_abs(total, M) if not total.is_zero else total
    denom = _with_abs(embed_rational(g, p, M), M) if g else PadicNumber.zero(p, M)
    if denom.is_zero:
        raise PrecisionExhausted(f"[p^N]_q vanishes modulo p^{M}; raise M above N = {N}")
    return total / denom


@dataclass(frozen=True)
class RiemannSumResult:
    n: int
    alpha: int
    p: int
    q: str
    level: int
    value: PadicNumber
    reference: PadicNumber
    defect_valuation: int
    defect_is_bound: bool

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "alpha": self.alpha,
            "N": self.level,
            "defect_valuation": self.defect_valuation,
            "defect_is_bound": self.defect_is_bound,
        }


def _q_residue(q: PadicNumber, M: int) -> int:
    if q.valuation != 0:
        raise DomainError("q must be a p-adic unit")
    if (q.unit - 1) % q.p:
        raise DomainError("Riemann sums need q = 1 mod p")
    return q.residue(M)


def riemann_sum(n: int, alpha: int, p: int, q, N: int, M: int | None = None) -> RiemannSumResult:
    """Level-N q-Riemann sum of [x]_{q^alpha}^n and its defect against the exact number.

    M is the working p-adic precision (default N + 8). Division by [p^N]_q
    costs N digits, so M must exceed N.
    """
    _check_prime(p)
    if N < 1:
        raise ValueError("level N must be positive")
    if n < 0 or alpha < 1:
        raise ValueError("need n >= 0 and alpha >= 1")
    M = N + 8 if M is None else M
    if M <= N:
        raise PrecisionExhausted(f"working precision M = {M} leaves no digits after dividing by [p^{N}]_q")
    qp, exact = _as_padic(q, p, M)
    qint = _q_residue(qp, M)
    value = _sum_level(n, alpha, qint, p, N, M)
    reference = _eval_padic(weighted_number(n, alpha), qp, exact, M)
    diff = value - reference
    return RiemannSumResult(
        n=n,
        alpha=alpha,
        p=p,
        q=str(exact) if exact is not None else str(qp),
        level=N,
        value=value,
        reference=reference,
        defect_valuation=diff.valuation,
        defect_is_bound=diff.is_zero,
    )


def convergence_table(n: int, alpha: int, p: int, q, levels, M: int | None = None) -> list[RiemannSumResult]:
    """One ``riemann_sum`` per level; M defaults to N + 8 at each level."""
    return [riemann_sum(n, alpha, p, q, N, M) for N in levels]


def defect_growth_ok(table: list[RiemannSumResult]) -> bool:
    """True when defects never drop and v_N >= v_first + (N - N_first) along the table.

    A bound row (difference zero to working precision) counts as infinite.
    Single steps may stall; the guarantee is cumulative growth of one digit per level.
    """
    inf = float("inf")
    vals = [inf if r.defect_is_bound else r.defect_valuation for r in table]
    if not vals:
        return True
    mono = all(b >= a for a, b in zip(vals, vals[1:]))
    first, v0 = table[0].level, vals[0]
    return mono and all(v >= v0 + (r.level - first) for r, v in zip(table, vals))


@dataclass(frozen=True)
class IntegralEquationResult:
    n: int
    alpha: int
    p: int
    q: str
    level: int
    shift: int
    lhs: PadicNumber
    rhs: PadicNumber
    rhs_log: PadicNumber
    defect_valuation: int
    defect_is_bound: bool
    routes_agree: bool

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "alpha": self.alpha,
            "N": self.level,
            "shift": self.shift,
            "defect_valuation": self.defect_valuation,
            "defect_is_bound": self.defect_is_bound,
            "routes_agree": self.routes_agree,
        }


def check_integral_equation(n: int, alpha: int, p: int, q, N: int, M: int | None = None,
                            shift: int = 1) -> IntegralEquationResult:
    """Shift equation for f(x) = [x]_{q^alpha}^n at finite level N.

    q^s I(f_s) - I(f) = (q-1) sum_{l<s} q^l f(l) + ((q-1)/log q) sum_{l<s} q^l f'(l),
    with f'(l) = -n [l]^(n-1) log(q^alpha) q^(alpha l) / (1 - q^alpha). The right side
    is computed twice: with log(q^alpha) / log q = alpha cancelled by hand, and
    with both logarithms evaluated by the p-adic series. Both must agree.
    """
    _check_prime(p)
    if shift < 1:
        raise ValueError("shift must be a positive integer")
    M = N + 8 if M is None else M
    if M <= N:
        raise PrecisionExhausted(f"working precision M = {M} leaves no digits after dividing by [p^{N}]_q")
    qp, _ = _as_padic(q, p, M)
    qint = _q_residue(qp, M)
    shifted = _sum_level(n, alpha, qint, p, N, M, shift)
    base = _sum_level(n, alpha, qint, p, N, M)
    lhs = qp**shift * shifted - base

    one = PadicNumber.from_int(1, p, M + 64)
    qa = qp**alpha
    brackets = [_bracket_padic(qp, alpha, l, M) for l in range(shift)]

    def fval(l):
        return brackets[l] ** n if n else one

    def fprime_over_log(l):
        # f'(l) / log q
        if n == 0:
            return PadicNumber.zero(p, M + 64)
        y = brackets[l] ** (n - 1) if n > 1 else one
        return -(y * n * alpha * qa**l) / (one - qa)

    def fprime(l, log_qa):
        # f'(l) with d/dx q^(alpha x) = log(q^alpha) q^(alpha x)
        if n == 0:
            return PadicNumber.zero(p, M + 64)
        y = brackets[l] ** (n - 1) if n > 1 else one
        return -(y * n * log_qa * qa**l) / (one - qa)

    values = sum((qp**l * fval(l) for l in range(shift)), PadicNumber.zero(p, M + 64))
    derivs = sum((qp**l * fprime_over_log(l) for l in range(shift)), PadicNumber.zero(p, M + 64))
    rhs = (qp - 1) * values + (qp - 1) * derivs

    L = padic_log(qp, M)
    La = padic_log(qa, M)
    derivs_log = sum((qp**l * fprime(l, La) for l in range(shift)), PadicNumber.zero(p, M + 64))
    rhs_log = (qp - 1) * values + ((qp - 1) / L) * derivs_log if n else (qp - 1) * values

    diff = lhs - rhs
    return IntegralEquationResult(
        n=n,
        alpha=alpha,
        p=p,
        q=str(Fraction(q)) if not isinstance(q, PadicNumber) else str(q),
        level=N,
        shift=shift,
        lhs=lhs,
        rhs=rhs,
        rhs_log=rhs_log,
        defect_valuation=diff.valuation,
        defect_is_bound=diff.is_zero,
        routes_agree=rhs.agrees_with(rhs_log),
    )


def _bracket_padic(q: PadicNumber, alpha: int, l: int, M: int) -> PadicNumber:
    # [l]_{q^alpha} = 1 + q^alpha + ... + q^(alpha (l-1)), l >= 0, no division
    qa = q**alpha
    acc = PadicNumber.zero(q.p, M + 64)
    term = PadicNumber.from_int(1, q.p, M + 64)
    for _ in range(l):
        acc = acc + term
        term = term * qa
    return acc
