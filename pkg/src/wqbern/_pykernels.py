"""Fallback kernels in numpy, used when the compiled extension is unavailable.

Same call signatures and results as ``_ckernels``. Moduli must be below 2**31 so
products of two residues fit in int64.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_LIMIT = 1 << 31


def _arr(a: list[int], p: int) -> np.ndarray:
    out = np.array([c % p for c in a], dtype=np.int64)
    nz = np.flatnonzero(out)
    return out[: nz[-1] + 1] if nz.size else out[:0]


def _rem(r: np.ndarray, b: np.ndarray, p: int, quo: np.ndarray | None = None) -> np.ndarray:
    nb = b.size
    inv = pow(int(b[-1]), -1, p)
    r = r.copy()
    n = r.size
    while n >= nb:
        c = (int(r[n - 1]) * inv) % p
        k = n - nb
        if quo is not None:
            quo[k] = c
        if c:
            r[k:n] = (r[k:n] - c * b) % p
        n -= 1
        while n > 0 and r[n - 1] == 0:
            n -= 1
    return r[:n]


def poly_gcd_mod(a: list[int], b: list[int], p: int):
    """Monic gcd of a and b over GF(p) plus the cofactors a/g and b/g."""
    if p >= _LIMIT:
        raise OverflowError("modulus must be below 2**31")
    A = _arr(a, p)
    B = _arr(b, p)
    if A.size == 0 and B.size == 0:
        raise ZeroDivisionError("gcd of two zero polynomials")
    r0, r1 = A, B
    while r1.size:
        r0, r1 = r1, _rem(r0, r1, p)
    g = (r0 * pow(int(r0[-1]), -1, p)) % p
    return g.tolist(), _quotient(A, g, p), _quotient(B, g, p)


def _quotient(a: np.ndarray, g: np.ndarray, p: int) -> list[int]:
    if a.size == 0:
        return []
    quo = np.zeros(a.size - g.size + 1, dtype=np.int64)
    _rem(a, g, p, quo)
    return quo.tolist()


def poly_mul_mod(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    A = _arr(a, p)
    B = _arr(b, p)
    if A.size == 0 or B.size == 0:
        return []
    out = np.zeros(A.size + B.size - 1, dtype=np.int64)
    for i, c in enumerate(A.tolist()):
        if c:
            out[i : i + B.size] = (out[i : i + B.size] + c * B) % p
    return out.tolist()


def riemann_sum_mod(n: int, alpha: int, q: int, count: int, modulus: int, shift: int = 0) -> int:
    """Sum of q**x * [x + shift]_{q**alpha}**n over 0 <= x < count, mod `modulus`.

    Plain Python integers, so any modulus size works.
    """
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    m = modulus
    q %= m
    qa = pow(q, alpha, m)
    y = 0
    for _ in range(shift):
        y = (1 + qa * y) % m
    total = 0
    qx = 1
    for _ in range(count):
        total = (total + qx * pow(y, n, m)) % m
        qx = qx * q % m
        y = (1 + qa * y) % m
    return total
