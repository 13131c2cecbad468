import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wqbern import _pykernels, kernels
from wqbern import _zpoly as Z

try:
    from wqbern import _ckernels
except ImportError:  # extension not built in this environment
    _ckernels = None

BACKENDS = [_pykernels] + ([_ckernels] if _ckernels is not None else [])
P = 2147483647  # 2**31 - 1
x = sympy.Symbol("x")

int_polys = st.lists(st.integers(-50, 50), min_size=1, max_size=8).map(Z.trim).filter(bool)


def naive_mul(a, b, p=None):
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return [c % p for c in out] if p else out


def naive_riemann(n, alpha, q, count, modulus, shift=0):
    qa = q**alpha
    total = 0
    for t in range(count):
        bracket = sum(qa**i for i in range(t + shift))
        total += q**t * bracket**n
    return total % modulus


def test_dispatch_reports_backend():
    assert kernels.BACKEND in ("cython", "numpy")


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@settings(max_examples=50, deadline=None)
@given(a=int_polys, b=int_polys)
def test_mul_mod_matches_schoolbook(impl, a, b):
    got = impl.poly_mul_mod([c % P for c in a], [c % P for c in b], P)
    assert Z.trim(got) == Z.trim(tuple(naive_mul(a, b, P)))


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
def test_gcd_mod_cofactors(impl):
    p = 1000003
    rng = random.Random(7)
    for _ in range(30):
        g = [rng.randrange(p) for _ in range(rng.randint(1, 5))] + [1]
        u = [rng.randrange(p) for _ in range(rng.randint(1, 6))] + [1]
        v = [rng.randrange(p) for _ in range(rng.randint(1, 6))] + [1]
        a = naive_mul(g, u, p)
        b = naive_mul(g, v, p)
        h, ca, cb = impl.poly_gcd_mod(a, b, p)
        h, ca, cb = Z.trim(h), Z.trim(ca), Z.trim(cb)
        assert h[-1] == 1
        assert len(h) >= len(g)
        assert Z.trim(tuple(naive_mul(h, ca, p))) == Z.trim(tuple(a))
        assert Z.trim(tuple(naive_mul(h, cb, p))) == Z.trim(tuple(b))


@pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")
def test_backends_agree():
    rng = random.Random(11)
    for _ in range(40):
        a = [rng.randrange(P) for _ in range(rng.randint(1, 30))]
        b = [rng.randrange(P) for _ in range(rng.randint(1, 30))]
        assert Z.trim(_ckernels.poly_mul_mod(a, b, P)) == Z.trim(_pykernels.poly_mul_mod(a, b, P))
        ga = [Z.trim(t) for t in _ckernels.poly_gcd_mod(a, b, P)]
        gb = [Z.trim(t) for t in _pykernels.poly_gcd_mod(a, b, P)]
        assert ga == gb
    for n, alpha, q, count, mod in [(1, 1, 4, 27, 3**9), (3, 2, 6, 125, 5**7), (2, 3, 8, 343, 7**8)]:
        for shift in (0, 1):
            assert _ckernels.riemann_sum_mod(n, alpha, q, count, mod, shift) == \
                _pykernels.riemann_sum_mod(n, alpha, q, count, mod, shift)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@pytest.mark.parametrize("n,alpha,q,count,mod,shift", [
    (0, 1, 4, 9, 3**6, 0), (1, 1, 4, 27, 3**8, 0), (2, 2, 6, 25, 5**5, 1), (3, 1, 8, 49, 7**4, 0),
])
def test_riemann_sum_matches_naive(impl, n, alpha, q, count, mod, shift):
    assert impl.riemann_sum_mod(n, alpha, q, count, mod, shift) == naive_riemann(n, alpha, q, count, mod, shift)


def test_wide_modulus_falls_back():
    mod = 3**40
    assert kernels.riemann_sum_mod(2, 1, 4, 27, mod) == naive_riemann(2, 1, 4, 27, mod)


@settings(max_examples=60, deadline=None)
@given(int_polys, int_polys)
def test_integer_mul_matches_schoolbook(a, b):
    assert Z.mul(a, b) == Z.trim(tuple(naive_mul(a, b)))


@settings(max_examples=60, deadline=None)
@given(int_polys, int_polys, int_polys)
def test_integer_gcd_matches_sympy(g, u, v):
    a, b = Z.mul(g, u), Z.mul(g, v)
    h, ca, cb = Z.gcd_cofactors(a, b)
    expected = sympy.Poly(list(reversed(a)), x).gcd(sympy.Poly(list(reversed(b)), x))
    _, prim = expected.primitive()
    exp_coeffs = [int(c) for c in reversed(prim.all_coeffs())]
    if exp_coeffs[-1] < 0:
        exp_coeffs = [-c for c in exp_coeffs]
    assert h == tuple(exp_coeffs)
    # a = s * h * ca for a rational scalar s
    assert Z.primitive(Z.mul(h, ca))[1] == Z.primitive(a)[1]
    assert Z.primitive(Z.mul(h, cb))[1] == Z.primitive(b)[1]


def test_large_coefficient_gcd():
    # coefficients well beyond one machine word force several CRT primes
    g = (3**70, -(5**40), 1, 7**33)
    u = (2**90 + 1, 17, -(3**50))
    v = (11, 0, 13**30, 1)
    h, ca, cb = Z.gcd_cofactors(Z.mul(g, u), Z.mul(g, v))
    assert h == Z.primitive(g)[1]


def test_divmod_exact():
    a = Z.mul((1, 2, 3), (4, 5))
    assert Z.divmod_exact(a, (4, 5)) == (1, 2, 3)
    with pytest.raises(ValueError):
        Z.divmod_exact((1, 0, 1), (1, 1))


def test_pure_flag_selects_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, WQBERN_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import wqbern; print(wqbern.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
