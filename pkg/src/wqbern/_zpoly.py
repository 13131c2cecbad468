"""Dense polynomials over Z as tuples of ints, lowest degree first.

Multiplication packs coefficients into one big integer (Kronecker substitution).
The gcd is computed from images modulo word-size primes, lifted by CRT, and
accepted only after an exact product check over Z.
"""

from __future__ import annotations

from math import gcd, isqrt

from . import kernels

ZPoly = tuple  # tuple[int, ...]; () is the zero polynomial


def trim(a) -> ZPoly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def content(a: ZPoly) -> int:
    """Gcd of the coefficients, signed like the leading coefficient."""
    if not a:
        return 0
    c = gcd(*a)
    return -c if a[-1] < 0 else c


def primitive(a: ZPoly) -> tuple[int, ZPoly]:
    """Split a into (content, primitive part with positive leading coefficient)."""
    c = content(a)
    if c in (0, 1):
        return c, a
    return c, tuple(x // c for x in a)


def add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def scale(a: ZPoly, c: int) -> ZPoly:
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def shift(a: ZPoly, k: int) -> ZPoly:
    """Multiply by q**k (k >= 0)."""
    return (0,) * k + a if a else ()


def _pack(a: ZPoly, width: int) -> int:
    nbytes = width // 8
    pos = b"".join(x.to_bytes(nbytes, "little") if x > 0 else bytes(nbytes) for x in a)
    neg = b"".join((-x).to_bytes(nbytes, "little") if x < 0 else bytes(nbytes) for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(v: int, width: int, n: int) -> ZPoly:
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    out = []
    for _ in range(n):
        d = v & mask
        v >>= width
        if d >= half:
            d -= 1 << width
            v += 1
        out.append(d)
    return trim(out)


def mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    bound = min(len(a), len(b)) * max(abs(x) for x in a) * max(abs(x) for x in b)
    width = (bound.bit_length() + 2 + 7) // 8 * 8
    return _unpack(_pack(a, width) * _pack(b, width), width, len(a) + len(b) - 1)


def power(a: ZPoly, k: int) -> ZPoly:
    out: ZPoly = (1,)
    base = a
    while k:
        if k & 1:
            out = mul(out, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return out


def subst_power(a: ZPoly, d: int) -> ZPoly:
    """a(q**d) for d >= 1."""
    if d == 1 or len(a) <= 1:
        return a
    out = [0] * ((len(a) - 1) * d + 1)
    out[::d] = a
    return tuple(out)


def reverse(a: ZPoly) -> tuple[ZPoly, int]:
    """Strip the q**v factor from a and reverse the rest; returns (reversed, v)."""
    lo = 0
    while lo < len(a) and a[lo] == 0:
        lo += 1
    return tuple(reversed(a[lo:])), lo


# -- modular gcd ----------------------------------------------------------------

_PRIMES: list[int] = []


def _is_prime(n: int) -> bool:
    if n < 2 or n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def _prime(i: int) -> int:
    while len(_PRIMES) <= i:
        c = _PRIMES[-1] - 2 if _PRIMES else (1 << 31) - 1
        while not _is_prime(c):
            c -= 2
        _PRIMES.append(c)
    return _PRIMES[i]


def _crt(prev: list[int], m: int, new: list[int], p: int, minv: int) -> list[int]:
    # minv = m^-1 mod p; result residues mod m*p in [0, m*p)
    return [r + m * (((s - r) * minv) % p) for r, s in zip(prev, new)]


def _sym(v: list[int], m: int) -> ZPoly:
    half = m >> 1
    return trim([x - m if x > half else x for x in v])


def gcd_cofactors(a: ZPoly, b: ZPoly) -> tuple[ZPoly, ZPoly, ZPoly]:
    """Return (g, a', b') with g the primitive gcd of a, b and a = s*g*a', b = t*g*b'.

    a' and b' are integer polynomials proportional to a/g and b/g; the rational
    scalars s, t are not reported since callers only need a'/b'. Not both zero.
    """
    if not a and not b:
        raise ZeroDivisionError("gcd of two zero polynomials")
    if not a:
        _, bp = primitive(b)
        return bp, (), (1,)
    if not b:
        _, ap = primitive(a)
        return ap, (1,), ()
    _, ap = primitive(a)
    _, bp = primitive(b)
    if len(ap) == 1 or len(bp) == 1:
        return (1,), ap, bp
    if ap == bp:
        return ap, (1,), (1,)
    return _modular_gcd(ap, bp)


def _modular_gcd(a: ZPoly, b: ZPoly) -> tuple[ZPoly, ZPoly, ZPoly]:
    lc = gcd(a[-1], b[-1])
    la, lb = list(a), list(b)
    deg = None
    m = 1
    res: list[list[int]] | None = None
    last: tuple | None = None
    i = 0
    while True:
        p = _prime(i)
        i += 1
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        g, qa, qb = kernels.poly_gcd_mod(la, lb, p)
        dg = len(g) - 1
        if dg == 0:
            return (1,), a, b
        if deg is not None and dg > deg:
            continue  # unlucky prime
        g = [(lc * x) % p for x in g]
        parts = [g, qa, qb]
        if deg is None or dg < deg:
            deg, m, res, last = dg, p, parts, None
        else:
            minv = pow(m, -1, p)
            res = [_crt(r, m, s, p, minv) for r, s in zip(res, parts)]
            m *= p
        cand = tuple(_sym(r, m) for r in res)
        if cand == last or _small(cand, m):
            h, ca, cb = cand
            if mul(h, ca) == scale(a, lc) and mul(h, cb) == scale(b, lc):
                _, h = primitive(h)
                _, ca = primitive(ca)
                _, cb = primitive(cb)
                return h, ca, cb
        last = cand


def _small(cand, m: int) -> bool:
    # coefficients well inside the CRT range: the lift is very likely already final
    top = max(abs(x).bit_length() for part in cand for x in part)
    return top < m.bit_length() - 20


def gcd_poly(a: ZPoly, b: ZPoly) -> ZPoly:
    return gcd_cofactors(a, b)[0]


def divmod_exact(a: ZPoly, b: ZPoly) -> ZPoly:
    """Quotient a / b over Z when b divides a exactly; ValueError otherwise."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    nb = len(b)
    lb = b[-1]
    q = [0] * max(len(a) - nb + 1, 0)
    for k in range(len(a) - nb, -1, -1):
        c, rem = divmod(r[k + nb - 1], lb)
        if rem:
            raise ValueError("inexact division")
        q[k] = c
        if c:
            for j in range(nb):
                r[k + j] -= c * b[j]
    if any(r):
        raise ValueError("inexact division")
    return trim(q)


def evaluate(a: ZPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc
