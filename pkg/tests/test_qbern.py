from fractions import Fraction
from math import comb

import pytest
import sympy
from sympy.polys.fields import field

from wqbern.errors import InvalidIndex
from wqbern.exactq import ONE, Poly, RatFunc, eval_at
from wqbern.qbern import (
    binomial,
    carlitz_numbers,
    classical_bernoulli,
    polynomial_value_at_integer,
    q_bracket,
    weighted_number,
    weighted_number_closed,
    weighted_number_recurrence,
    weighted_polynomial,
)

K, qf = field("q", sympy.QQ)


def rf(num, den=(1,)):
    return RatFunc(Poly(num), Poly(den))


def from_sympy(elem) -> RatFunc:
    def coeffs(poly):
        return [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(poly.to_dense())]
    return RatFunc(Poly(coeffs(elem.numer)), Poly(coeffs(elem.denom)))


def sympy_umbral(nmax, alpha):
    """q (q^a b + 1)^n - b_n = a/[a]_q at n = 1 and 0 for n > 1, b_0 = 1, solved in sympy's Q(q)."""
    qa = qf**alpha
    jump = alpha * (1 - qf) / (1 - qa)
    b = [K.one]
    for n in range(1, nmax + 1):
        rest = qf * sum((comb(n, l) * qa**l * b[l] for l in range(n)), K.zero)
        rhs = jump if n == 1 else K.zero
        b.append((rhs - rest) / (qf * qa**n - 1))
    return b


def sympy_carlitz(kmax):
    """Carlitz: q (q b + 1)^k - b_k = [k = 1], b_0 = 1."""
    return sympy_umbral(kmax, 1)


# --- examples -----------------------------------------------------------------

def test_bracket_examples():
    assert q_bracket(0, 1) == RatFunc(0)
    assert q_bracket(3, 2) == rf((1, 0, 1, 0, 1))
    assert q_bracket(-1, 1) == rf((-1,), (0, 1))


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(5, 0) == 1
    assert binomial(3, 5) == 0


@pytest.mark.parametrize("build", [weighted_number_closed, weighted_number_recurrence])
def test_number_examples(build):
    assert build(0, 3).value == ONE
    assert build(0, 5).value == ONE
    assert build(1, 1).value == rf((-1,), (1, 1))
    assert build(2, 1).value == rf((0, 1), (1, 2, 2, 1))
    assert build(1, 2).value == rf((-2, -1), (1, 2, 2, 1))


def test_negative_index_rejected():
    with pytest.raises(InvalidIndex):
        weighted_number_closed(-1, 1)
    with pytest.raises(InvalidIndex):
        weighted_number_recurrence(2, 0)


def test_classical_values():
    B = classical_bernoulli(10)
    assert B[0] == 1 and B[1] == Fraction(-1, 2) and B[2] == Fraction(1, 6) and B[4] == Fraction(-1, 30)
    assert all(B[k] == 0 for k in (3, 5, 7, 9))
    assert [sympy.bernoulli(k) for k in range(2, 11)] == [sympy.Rational(v.numerator, v.denominator)
                                                         for v in B[2:11]]


def test_polynomial_examples():
    p0 = weighted_polynomial(0, 2)
    assert [str(c) for c in p0.coeffs] == ["1"]
    p1 = weighted_polynomial(1, 1)
    assert p1.coeffs == (rf((-1,), (1, 1)), rf((2,), (1, 1)))
    # q -> 1 with Y -> x gives x - 1/2
    assert [eval_at(c, 1) for c in p1.coeffs] == [Fraction(-1, 2), Fraction(1)]


def test_value_examples():
    assert polynomial_value_at_integer(1, 1, 1) == rf((1,), (1, 1))
    assert eval_at(polynomial_value_at_integer(2, 1, 2), 2) == Fraction(53, 21)
    for n in range(5):
        for a in (1, 2):
            assert polynomial_value_at_integer(n, a, 0) == weighted_number(n, a)


def test_record_format():
    rec = weighted_number_closed(2, 1).to_record()
    assert rec == {"n": 2, "alpha": 1, "num": "q", "den": "1 + 2q + 2q^2 + q^3", "value_at_1": "1/6"}


# --- oracles --------------------------------------------------------------------

@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_closed_equals_recurrence(alpha):
    for n in range(11):
        assert weighted_number_closed(n, alpha).value == weighted_number_recurrence(n, alpha).value


@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_matches_sympy_umbral_solve(alpha):
    ref = sympy_umbral(10, alpha)
    for n, expr in enumerate(ref):
        assert weighted_number_closed(n, alpha).value == from_sympy(expr)


def test_carlitz_specialization():
    ref = sympy_carlitz(10)
    internal = carlitz_numbers(10)
    for k in range(11):
        assert weighted_number_closed(k, 1).value == from_sympy(ref[k])
        assert internal[k] == weighted_number_closed(k, 1).value


@pytest.mark.parametrize("alpha", [1, 2, 3, 4])
def test_classical_limit(alpha):
    B = classical_bernoulli(10)
    for n in range(11):
        v = weighted_number(n, alpha)
        assert v.den(Fraction(1)) != 0
        assert eval_at(v, 1) == B[n]


def test_classical_polynomial_limit():
    # coefficient of Y^k at q = 1 is C(n, k) B_{n-k}
    B = classical_bernoulli(8)
    for n in range(8):
        for a in (1, 3):
            coeffs = weighted_polynomial(n, a).coeffs
            assert [eval_at(c, 1) for c in coeffs] == [comb(n, k) * B[n - k] for k in range(n + 1)]


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_constant_term_law(alpha):
    for n in range(9):
        p = weighted_polynomial(n, alpha)
        assert p.degree <= n
        assert p.coeffs[0] == weighted_number(n, alpha)


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_two_formula_consistency(alpha):
    for n in range(9):
        p = weighted_polynomial(n, alpha)
        for x in range(-2, 4):
            assert p.at_integer(x) == polynomial_value_at_integer(n, alpha, x)


def test_polynomial_numeric_evaluation():
    p = weighted_polynomial(3, 2)
    for x in (-2, 1, 3):
        v = p.at_integer(x)
        assert float(eval_at(v, Fraction(1, 3))) == pytest.approx(v(1 / 3), rel=1e-12)
        assert p(q_bracket(x, 2)) == v
