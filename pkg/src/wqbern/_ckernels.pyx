# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: dense polynomial arithmetic over GF(p) and p-adic residue sums.

All moduli must be below 2**31 so that products fit in an unsigned 64-bit word.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

ctypedef uint64_t u64

BACKEND = "cython"


cdef inline u64 _inv(u64 a, u64 p) nogil:
    cdef int64_t t = 0, newt = 1, tmp
    cdef int64_t r = <int64_t>p, newr = <int64_t>a, qq
    while newr != 0:
        qq = r // newr
        tmp = t - qq * newt
        t = newt
        newt = tmp
        tmp = r - qq * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <int64_t>p
    return <u64>t


cdef inline Py_ssize_t _trim(u64 *a, Py_ssize_t n) nogil:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef Py_ssize_t _rem_inplace(u64 *r, Py_ssize_t nr, const u64 *b, Py_ssize_t nb, u64 p,
                             u64 *quo) nogil:
    """Reduce r modulo b in place (b nonzero); optionally store the quotient."""
    cdef u64 inv_lb = _inv(b[nb - 1], p)
    cdef u64 c
    cdef Py_ssize_t k, i
    nr = _trim(r, nr)
    while nr >= nb:
        c = (r[nr - 1] * inv_lb) % p
        k = nr - nb
        if quo != NULL:
            quo[k] = c
        if c != 0:
            for i in range(nb):
                r[k + i] = (r[k + i] + (p - c) * b[i]) % p
        nr -= 1
        nr = _trim(r, nr)
    return nr


cdef list _tolist(const u64 *a, Py_ssize_t n):
    cdef Py_ssize_t i
    return [<object>a[i] for i in range(n)]


cdef u64 *_fromlist(list a, u64 p) except NULL:
    cdef Py_ssize_t n = len(a), i
    cdef u64 *out = <u64 *>malloc((n + 1) * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = <u64>(a[i] % p)
    return out


def poly_gcd_mod(list a, list b, u64 p):
    """Monic gcd of a and b over GF(p) together with the cofactors a/g and b/g.

    Polynomials are coefficient lists, lowest degree first. Both inputs may not be zero.
    """
    cdef Py_ssize_t na = len(a), nb = len(b), nr0, nr1, ng, i, nq
    cdef u64 *A = _fromlist(a, p)
    cdef u64 *B = _fromlist(b, p)
    cdef u64 *r0 = NULL
    cdef u64 *r1 = NULL
    cdef u64 *tmp
    cdef u64 *quo = NULL
    cdef u64 inv
    cdef list g, qa, qb
    try:
        na = _trim(A, na)
        nb = _trim(B, nb)
        if na == 0 and nb == 0:
            raise ZeroDivisionError("gcd of two zero polynomials")
        r0 = <u64 *>malloc((na + nb + 1) * sizeof(u64))
        r1 = <u64 *>malloc((na + nb + 1) * sizeof(u64))
        quo = <u64 *>malloc((na + nb + 1) * sizeof(u64))
        if r0 == NULL or r1 == NULL or quo == NULL:
            raise MemoryError()
        with nogil:
            memcpy(r0, A, na * sizeof(u64))
            memcpy(r1, B, nb * sizeof(u64))
            nr0 = na
            nr1 = nb
            while nr1 > 0:
                nr0 = _rem_inplace(r0, nr0, r1, nr1, p, NULL)
                tmp = r0
                r0 = r1
                r1 = tmp
                i = nr0
                nr0 = nr1
                nr1 = i
            ng = nr0
            inv = _inv(r0[ng - 1], p)
            for i in range(ng):
                r0[i] = (r0[i] * inv) % p
        g = _tolist(r0, ng)
        qa = _exact_quotient(A, na, r0, ng, p, quo)
        qb = _exact_quotient(B, nb, r0, ng, p, quo)
        return g, qa, qb
    finally:
        free(A)
        free(B)
        free(r0)
        free(r1)
        free(quo)


cdef list _exact_quotient(u64 *a, Py_ssize_t na, const u64 *g, Py_ssize_t ng, u64 p, u64 *quo):
    cdef Py_ssize_t nq, i
    if na == 0:
        return []
    nq = na - ng + 1
    for i in range(nq):
        quo[i] = 0
    with nogil:
        _rem_inplace(a, na, g, ng, p, quo)
    return _tolist(quo, nq)


def poly_mul_mod(list a, list b, u64 p):
    """Schoolbook product over GF(p)."""
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    cdef u64 *A = _fromlist(a, p)
    cdef u64 *B = _fromlist(b, p)
    cdef u64 *C = <u64 *>malloc((na + nb) * sizeof(u64))
    try:
        if C == NULL:
            raise MemoryError()
        with nogil:
            for i in range(na + nb - 1):
                C[i] = 0
            for i in range(na):
                if A[i] == 0:
                    continue
                for j in range(nb):
                    C[i + j] = (C[i + j] + A[i] * B[j]) % p
        return _tolist(C, _trim(C, na + nb - 1))
    finally:
        free(A)
        free(B)
        free(C)


def riemann_sum_mod(long n, long alpha, u64 q, long long count, u64 modulus, long shift=0):
    """Sum of q**x * [x + shift]_{q**alpha}**n for 0 <= x < count, reduced mod `modulus`.

    The q-integer is advanced by the recurrence [y + 1] = 1 + q**alpha * [y], so no
    division is ever needed; `shift` must be nonnegative.
    """
    if modulus >= (<u64>1 << 31):
        raise OverflowError("modulus must be below 2**31")
    if shift < 0:
        raise ValueError("shift must be nonnegative")
    cdef u64 m = modulus
    cdef u64 qa = 1, qx = 1, y = 0, term, total = 0, ypow
    cdef long long x
    cdef long k
    q %= m
    with nogil:
        for k in range(alpha):
            qa = (qa * q) % m
        for k in range(shift):
            y = (1 + qa * y) % m
        for x in range(count):
            ypow = 1 % m
            for k in range(n):
                ypow = (ypow * y) % m
            term = (qx * ypow) % m
            total = (total + term) % m
            qx = (qx * q) % m
            y = (1 + qa * y) % m
    return total
