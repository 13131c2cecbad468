"""Exact arithmetic in Q[q] and the rational function field Q(q).

``Poly`` is a dense polynomial with ``Fraction`` coefficients. ``RatFunc`` is an
element of Q(q) kept in canonical form: numerator and denominator coprime,
denominator monic. Two ``RatFunc`` values are equal as field elements exactly
when their numerators and denominators are equal, so identity checking is a
structural comparison.

Canonical string form (used by the CLI and JSON output)::

    >>> str(Poly([-1, Fraction(1, 2), 0, 1]))
    '(-1) + (1/2)q + q^3'
    >>> str(RatFunc(Poly([0, 1]), Poly([1, 1])))
    'q / 1 + q'
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

from . import _zpoly as Z
from .errors import BothZero, DivisionByZero, PoleAtPoint, ZeroDenominator, ZeroExponent

__all__ = [
    "Poly",
    "RatFunc",
    "ratfunc_normalize",
    "poly_gcd",
    "subst_power",
    "eval_at",
    "rsum",
    "Q",
    "ONE",
    "ZERO",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def _to_z(coeffs: Sequence[Fraction]) -> tuple[Fraction, tuple]:
    """Write a rational coefficient list as scale * integer polynomial."""
    if not coeffs:
        return Fraction(0), ()
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    ints = tuple(c.numerator * (den // c.denominator) for c in coeffs)
    cont, prim = Z.primitive(ints)
    return Fraction(cont, den), prim


# -- rendering ------------------------------------------------------------------


def _coef_str(c: Fraction, bare_one: bool) -> str:
    if c == 1 and bare_one:
        return ""
    if c.denominator == 1 and c > 0:
        return str(c.numerator)
    return f"({c})"


def _render(coeffs: Sequence[Fraction]) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(_coef_str(c, bare_one=False))
        else:
            mono = "q" if i == 1 else f"q^{i}"
            terms.append(_coef_str(c, bare_one=True) + mono)
    return " + ".join(terms)


_TERM = re.compile(r"^(?:\((-?\d+(?:/\d+)?)\)|(\d+))?(q(?:\^(\d+))?)?$")


def _parse(text: str) -> list[Fraction]:
    text = text.strip()
    if text == "0":
        return []
    coeffs: dict[int, Fraction] = {}
    for raw in text.split(" + "):
        m = _TERM.match(raw.strip())
        if not m or not raw.strip():
            raise ValueError(f"malformed polynomial term {raw!r}")
        paren, plain, mono, exp = m.groups()
        if paren is None and plain is None and mono is None:
            raise ValueError(f"malformed polynomial term {raw!r}")
        c = Fraction(paren) if paren is not None else Fraction(plain) if plain is not None else Fraction(1)
        k = 0 if mono is None else 1 if exp is None else int(exp)
        coeffs[k] = coeffs.get(k, Fraction(0)) + c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return out


# -- polynomials ----------------------------------------------------------------


class Poly:
    """Immutable dense polynomial in q over the rationals, lowest degree first.

    The coefficient tuple has no trailing zeros; the zero polynomial is ``()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str) -> Poly:
        return cls(_parse(text))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return Poly(c / lc for c in self.coeffs)

    def _z(self) -> tuple[Fraction, tuple]:
        return _to_z(self.coeffs)

    @classmethod
    def _from_z(cls, scale: Fraction, ints: tuple) -> Poly:
        return cls(scale * c for c in ints)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return _render(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        sa, za = self._z()
        sb, zb = other._z()
        return Poly._from_z(sa * sb, Z.mul(za, zb))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        s, z = self._z()
        return Poly._from_z(s**k, Z.power(z, k))

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        nb = len(b)
        quo = [Fraction(0)] * max(len(r) - nb + 1, 0)
        for k in range(len(r) - nb, -1, -1):
            c = r[k + nb - 1] / b[-1]
            quo[k] = c
            if c:
                for j in range(nb):
                    r[k + j] -= c * b[j]
        return Poly(quo), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        exact = isinstance(x, (int, Fraction))
        acc = Fraction(0) if exact else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if exact else float(c))
        return acc

    def subst_power(self, d: int) -> Poly:
        if d < 1:
            raise ZeroExponent("polynomial substitution needs a positive exponent")
        if d == 1 or len(self.coeffs) <= 1:
            return self
        out = [Fraction(0)] * ((len(self.coeffs) - 1) * d + 1)
        out[::d] = self.coeffs
        return Poly(out)


def _as_poly(x) -> Poly | None:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals.

    >>> str(poly_gcd(Poly([-1, 0, 1]), Poly([1, -2, 1])))
    '(-1) + q'
    """
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    _, za = a._z()
    _, zb = b._z()
    g = Z.gcd_poly(za, zb)
    return Poly(g).monic()


# -- rational functions ---------------------------------------------------------


class RatFunc:
    """Canonical element of Q(q).

    Stored as ``scale * num / den`` with ``num`` and ``den`` coprime primitive
    integer polynomials with positive leading coefficients (``num`` is ``()``
    for zero). The public ``num``/``den`` views follow the monic-denominator
    convention.
    """

    __slots__ = ("_c", "_n", "_d")

    def __init__(self, num=0, den=1):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        den = _as_poly(den) if not isinstance(den, Poly) else den
        if num is None or den is None:
            raise TypeError("RatFunc expects polynomials or rationals")
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        sn, zn = num._z()
        sd, zd = den._z()
        c, n, d = _canon(sn / sd, zn, zd)
        self._set(c, n, d)

    def _set(self, c, n, d):
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_d", d)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def __reduce__(self):
        return (RatFunc._make, (self._c, self._n, self._d))

    @classmethod
    def _make(cls, c: Fraction, n: tuple, d: tuple) -> RatFunc:
        obj = object.__new__(cls)
        if not n or c == 0:
            obj._set(Fraction(0), (), (1,))
        else:
            obj._set(c, n, d)
        return obj

    @classmethod
    def _from_parts(cls, c: Fraction, n: tuple, d: tuple, coprime: bool = False) -> RatFunc:
        if not d:
            raise ZeroDenominator("denominator is the zero polynomial")
        return cls._make(*_canon(c, n, d, coprime))

    @classmethod
    def parse(cls, text: str) -> RatFunc:
        if " / " in text:
            num, den = text.split(" / ", 1)
            return cls(Poly.parse(num), Poly.parse(den))
        return cls(Poly.parse(text))

    # views

    @property
    def num(self) -> Poly:
        return Poly._from_z(self._c / self._d[-1], self._n) if self._n else Poly()

    @property
    def den(self) -> Poly:
        return Poly._from_z(Fraction(1, self._d[-1]), self._d)

    def is_zero(self) -> bool:
        return not self._n

    def is_polynomial(self) -> bool:
        return len(self._d) == 1

    @property
    def degrees(self) -> tuple[int, int]:
        return len(self._n) - 1, len(self._d) - 1

    def __str__(self):
        num = _render(self.num.coeffs)
        if self.is_polynomial():
            return num
        return f"{num} / {_render(self.den.coeffs)}"

    def __repr__(self):
        return f"RatFunc({self})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self._c == other._c and self._n == other._n and self._d == other._d

    def __hash__(self):
        return hash((self._c, self._n, self._d))

    # field operations

    def __neg__(self):
        return RatFunc._make(-self._c, self._n, self._d)

    def __add__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self._d == other._d:
            n = _lin(self._c, self._n, other._c, other._n)
            return RatFunc._from_parts(n[0], n[1], self._d)
        g, b1, d1 = Z.gcd_cofactors(self._d, other._d)
        # a/b + c/d with b = g*b1, d = g*d1 (up to the sign-free primitive scaling)
        c, n = _lin(self._c, Z.mul(self._n, d1), other._c, Z.mul(other._n, b1))
        return RatFunc._from_parts(c, n, Z.mul(Z.mul(b1, d1), g))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        c = self._c * other._c
        if len(other._n) == 1 and len(other._d) == 1:
            return RatFunc._make(c, self._n, self._d)
        if len(self._n) == 1 and len(self._d) == 1:
            return RatFunc._make(c, other._n, other._d)
        c1, a, d = _cancel(self._n, other._d)
        c2, cc, b = _cancel(other._n, self._d)
        return RatFunc._from_parts(c * c1 * c2, Z.mul(a, cc), Z.mul(b, d), coprime=True)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc._from_parts(1 / self._c, self._d, self._n, coprime=True)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        # coprime numerator and denominator stay coprime under powers
        return RatFunc._make(self._c**k, Z.power(self._n, k), Z.power(self._d, k))

    # substitutions and evaluation

    def subst_power(self, d: int) -> RatFunc:
        return subst_power(self, d)

    def eval_at(self, q0) -> Fraction:
        return eval_at(self, q0)

    def __call__(self, x):
        """Numeric evaluation at a float or complex point."""
        if isinstance(x, (int, Fraction)):
            return eval_at(self, x)
        den = Z.evaluate(self._d, x)
        if den == 0:
            raise PoleAtPoint(f"pole at q = {x}")
        return float(self._c) * Z.evaluate(self._n, x) / den


def _as_rf(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        c = Fraction(x)
        return RatFunc._make(c, (1,), (1,))
    if isinstance(x, Poly):
        return RatFunc(x)
    return None


def _lin(c1: Fraction, n1: tuple, c2: Fraction, n2: tuple) -> tuple[Fraction, tuple]:
    """c1*n1 + c2*n2 as scale * integer polynomial."""
    den = lcm(c1.denominator, c2.denominator)
    a = c1.numerator * (den // c1.denominator)
    b = c2.numerator * (den // c2.denominator)
    return Fraction(1, den), Z.add(Z.scale(n1, a), Z.scale(n2, b))


def _cancel(n: tuple, d: tuple) -> tuple[Fraction, tuple, tuple]:
    """Remove the common factor of n and d; returns (ratio scale, n', d')."""
    if len(n) == 1 or len(d) == 1:
        return Fraction(1), n, d
    _, n1, d1 = Z.gcd_cofactors(n, d)
    return Fraction(n[-1] * d1[-1], d[-1] * n1[-1]), n1, d1


def _canon(c: Fraction, n: tuple, d: tuple, coprime: bool = False):
    if not n or c == 0:
        return Fraction(0), (), (1,)
    cn, n = Z.primitive(n)
    cd, d = Z.primitive(d)
    c = c * Fraction(cn, cd)
    if not coprime and len(n) > 1 and len(d) > 1:
        _, n1, d1 = Z.gcd_cofactors(n, d)
        c *= Fraction(n[-1] * d1[-1], d[-1] * n1[-1])
        n, d = n1, d1
    return c, n, d


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonical (gcd-reduced, monic-denominator) form of num/den.

    >>> str(ratfunc_normalize(Poly([-1, 0, 1]), Poly([-1, 1])))
    '1 + q'
    """
    return RatFunc(num, den)


def subst_power(f: RatFunc, d: int) -> RatFunc:
    """f(q**d) for a nonzero integer d, in canonical form.

    Positive d keeps numerator and denominator coprime, so no gcd is needed.
    For negative d the reversal q -> 1/q is applied and the stray powers of q
    are moved to whichever side they belong; that also preserves coprimality.
    """
    if d == 0:
        raise ZeroExponent("substitution q -> q**0")
    k = abs(d)
    n, den = Z.subst_power(f._n, k), Z.subst_power(f._d, k)
    if d > 0 or f.is_zero():
        return RatFunc._make(f._c, n, den)
    rn, _ = Z.reverse(n)
    rd, _ = Z.reverse(den)
    e = (len(den) - 1) - (len(n) - 1)
    if e >= 0:
        rn = Z.shift(rn, e)
    else:
        rd = Z.shift(rd, -e)
    sn, rn = Z.primitive(rn)
    sd, rd = Z.primitive(rd)
    return RatFunc._make(f._c * Fraction(sn, sd), rn, rd)


def eval_at(f: RatFunc, q0) -> Fraction:
    """Exact value f(q0) at a rational point; PoleAtPoint if the denominator vanishes."""
    q0 = _frac(q0)
    den = Z.evaluate(f._d, q0)
    if den == 0:
        raise PoleAtPoint(f"pole at q = {q0}")
    return f._c * Z.evaluate(f._n, q0) / den


def rsum(terms: Iterable[RatFunc]) -> RatFunc:
    """Sum many rational functions with a single final reduction.

    Terms are grouped by denominator; groups are combined over the product of
    their denominators. Cheaper than pairwise canonical addition when there are
    many terms with few distinct denominators.
    """
    groups: dict[tuple, tuple[Fraction, tuple]] = {}
    for t in terms:
        t = _as_rf(t)
        if t.is_zero():
            continue
        if t._d in groups:
            c, n = groups[t._d]
            groups[t._d] = _lin(c, n, t._c, t._n)
        else:
            groups[t._d] = (t._c, t._n)
    if not groups:
        return ZERO
    items = list(groups.items())
    if len(items) == 1:
        d, (c, n) = items[0]
        return RatFunc._from_parts(c, n, d)
    den = reduce(Z.mul, (d for d, _ in items))
    total_c, total_n = Fraction(0), ()
    for i, (_, (c, n)) in enumerate(items):
        others = reduce(Z.mul, (d for j, (d, _) in enumerate(items) if j != i), (1,))
        total_c, total_n = _lin(total_c, total_n, c, Z.mul(n, others)) if total_n else (c, Z.mul(n, others))
    return RatFunc._from_parts(total_c, total_n, den)


ZERO = RatFunc._make(Fraction(0), (), (1,))
ONE = RatFunc._make(Fraction(1), (1,), (1,))
Q = RatFunc._make(Fraction(1), (0, 1), (1,))
