"""Kernel dispatch: the compiled extension when importable, the numpy fallback otherwise.

Set ``WQBERN_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("WQBERN_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _pykernels

_WORD = 1 << 31

BACKEND: str = _impl.BACKEND
poly_gcd_mod = _impl.poly_gcd_mod
poly_mul_mod = _impl.poly_mul_mod
_riemann_sum_mod = _impl.riemann_sum_mod


def riemann_sum_mod(n: int, alpha: int, q: int, count: int, modulus: int, shift: int = 0) -> int:
    """Sum of q**x * [x + shift]_{q**alpha}**n for 0 <= x < count, reduced mod `modulus`."""
    if modulus >= _WORD:
        return _pykernels.riemann_sum_mod(n, alpha, q, count, modulus, shift)
    return _riemann_sum_mod(n, alpha, q, count, modulus, shift)


__all__ = ["BACKEND", "poly_gcd_mod", "poly_mul_mod", "riemann_sum_mod"]
