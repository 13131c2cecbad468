"""Executable identities for the weighted q-Bernoulli numbers and polynomials.

Every check builds both sides as canonical elements of Q(q) and compares them
structurally. Numeric spot values at a few rational q are attached to each
report as redundant evidence. Arguments x are integers throughout: for
non-integer x the factor q^(alpha*x) is not a rational function of q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidIndex, PoleAtPoint
from .exactq import ONE, ZERO, Q, RatFunc, rsum
from .qbern import (
    _bracket_any,
    alpha_factor,
    binomial,
    polynomial_value_at_integer,
    q_bracket,
    q_power,
    weighted_number,
    weighted_polynomial,
)

__all__ = [
    "IDENTITY_IDS",
    "IdentityReport",
    "GridSpec",
    "check_value_forms",
    "check_shift_sum",
    "check_recurrence",
    "check_umbral",
    "check_distribution",
    "check_reflection",
    "check_alternating_sum",
    "check_reflection_kernel",
    "check_double_shift",
    "run_grid",
    "summarize",
]

IDENTITY_IDS = ("C10", "C10-kernel", "C7", "T11", "T4-consistency", "T5", "T6", "T8", "T9")

SPOT_POINTS = (Fraction(2), Fraction(1, 2), Fraction(-1, 3))


def _spot(f: RatFunc, q0: Fraction) -> str:
    try:
        return str(f.eval_at(q0))
    except PoleAtPoint:
        return "pole"


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    params: dict
    lhs: RatFunc
    rhs: RatFunc
    passed: bool
    extra: tuple[RatFunc, ...] = ()
    spot: dict = field(default_factory=dict)

    def sort_key(self):
        return (self.identity_id, tuple(sorted(self.params.items())))

    def to_record(self) -> dict:
        rec = {
            "identity_id": self.identity_id,
            "params": dict(sorted(self.params.items())),
            "passed": self.passed,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "spot": self.spot,
        }
        if self.extra:
            rec["extra"] = [str(e) for e in self.extra]
        return rec


def _report(identity_id: str, params: dict, lhs: RatFunc, rhs: RatFunc,
            extra: Sequence[RatFunc] = ()) -> IdentityReport:
    passed = lhs == rhs and all(e == lhs for e in extra)
    spot = {str(q0): {"lhs": _spot(lhs, q0), "rhs": _spot(rhs, q0)} for q0 in SPOT_POINTS}
    return IdentityReport(identity_id, params, lhs, rhs, passed, tuple(extra), spot)


def _bracket_pow(l: int, w: int, k: int) -> RatFunc:
    # [l]_{q^w}^k with 0^0 = 1
    if k == 0:
        return ONE
    return q_bracket(l, w) ** k


def check_value_forms(n: int, alpha: int, x: int) -> IdentityReport:
    """Closed form at integer x against the Y-basis polynomial and the binomial shift sum."""
    closed = polynomial_value_at_integer(n, alpha, x)
    ybasis = weighted_polynomial(n, alpha).at_integer(x)
    yx = _bracket_any(x, alpha)
    shift_sum = rsum(
        _pow(yx, n - l) * q_power(alpha * l * x) * weighted_number(l, alpha) * binomial(n, l) for l in range(n + 1)
    )
    return _report("T4-consistency", {"n": n, "alpha": alpha, "x": x}, closed, ybasis, [shift_sum])


def _pow(f: RatFunc, k: int) -> RatFunc:
    return ONE if k == 0 else f**k


def check_shift_sum(m: int, n: int, alpha: int) -> IdentityReport:
    """q^n B_m(n) - B_m = (q-1) sum_{l<n} q^l [l]^m + (m a/[a]_q) sum_{l<n} q^(a l + l) [l]^(m-1)."""
    if m < 0 or n < 1:
        raise InvalidIndex("need m >= 0 and n >= 1")
    lhs = q_power(n) * polynomial_value_at_integer(m, alpha, n) - weighted_number(m, alpha)
    first = rsum(q_power(l) * _bracket_pow(l, alpha, m) for l in range(n)) * (Q - 1)
    if m == 0:
        rhs = first
    else:
        second = rsum(q_power(alpha * l + l) * _bracket_pow(l, alpha, m - 1) for l in range(n))
        rhs = first + alpha_factor(alpha) * m * second
    return _report("T5", {"m": m, "n": n, "alpha": alpha}, lhs, rhs)


def check_recurrence(n: int, alpha: int) -> IdentityReport:
    """B_0 = 1 and q B_n(1) - B_n = [n = 1] a/[a]_q."""
    if n < 0:
        raise InvalidIndex("n must be nonnegative")
    if n == 0:
        return _report("T6", {"n": 0, "alpha": alpha}, weighted_number(0, alpha), ONE)
    lhs = Q * polynomial_value_at_integer(n, alpha, 1) - weighted_number(n, alpha)
    rhs = alpha_factor(alpha) if n == 1 else ZERO
    return _report("T6", {"n": n, "alpha": alpha}, lhs, rhs)


def check_umbral(n: int, alpha: int) -> IdentityReport:
    """Umbral form q (q^a B + 1)^n - B_n = [n = 1] a/[a]_q on closed-form values."""
    if n < 0:
        raise InvalidIndex("n must be nonnegative")
    if n == 0:
        return _report("C7", {"n": 0, "alpha": alpha}, weighted_number(0, alpha), ONE)
    umbral = rsum(q_power(alpha * l) * weighted_number(l, alpha) * binomial(n, l) for l in range(n + 1))
    lhs = Q * umbral - weighted_number(n, alpha)
    rhs = alpha_factor(alpha) if n == 1 else ZERO
    return _report("C7", {"n": n, "alpha": alpha}, lhs, rhs)


def check_distribution(n: int, alpha: int, d: int, x: int) -> IdentityReport:
    """B_n(x) = [d]_{q^a}^n / [d]_q * sum_{a<d} q^a B_{n,q^d}((x + a)/d).

    The base-q^d polynomial is the Y-basis polynomial with q -> q^d in its
    coefficients, evaluated at Y = (1 - q^(a (x+a'))) / (1 - q^(a d)).
    """
    if d < 1:
        raise InvalidIndex("d must be a positive integer")
    lhs = polynomial_value_at_integer(n, alpha, x)
    poly_d = weighted_polynomial(n, alpha).substituted(d)
    denom = (1 - q_power(alpha * d)).inverse()
    terms = []
    for a in range(d):
        y = (1 - q_power(alpha * (x + a))) * denom
        terms.append(q_power(a) * poly_d.evaluate(y))
    rhs = _pow(q_bracket(d, alpha), n) / q_bracket(d, 1) * rsum(terms)
    return _report("T8", {"n": n, "alpha": alpha, "d": d, "x": x}, lhs, rhs)


def check_reflection(n: int, alpha: int, x: int) -> IdentityReport:
    """B_{n,1/q}(1 - x) = (-1)^n q^(a n) B_{n,q}(x)."""
    inverted = weighted_polynomial(n, alpha).substituted(-1)
    lhs = inverted.evaluate(_bracket_any(1 - x, -alpha))
    rhs = q_power(alpha * n) * polynomial_value_at_integer(n, alpha, x) * (-1) ** n
    return _report("T9", {"n": n, "alpha": alpha, "x": x}, lhs, rhs)


def check_alternating_sum(n: int, alpha: int) -> IdentityReport:
    """sum_l C(n,l) (-1)^l B_l = (-1)^n q^(a n) B_n(-1) = B_{n,1/q}(2)."""
    alt = rsum(weighted_number(l, alpha) * (binomial(n, l) * (-1) ** l) for l in range(n + 1))
    middle = q_power(alpha * n) * polynomial_value_at_integer(n, alpha, -1) * (-1) ** n
    inverted = weighted_polynomial(n, alpha).substituted(-1)
    last = inverted.evaluate(_bracket_any(2, -alpha))
    return _report("C10", {"n": n, "alpha": alpha}, alt, last, [middle])


def check_reflection_kernel(x: int, alpha: int) -> IdentityReport:
    """[1 - x]_{q^-a} = 1 - [x]_{q^a} = -q^a [x - 1]_{q^a}."""
    lhs = _bracket_any(1 - x, -alpha)
    rhs = 1 - q_bracket(x, alpha)
    shifted = -(q_power(alpha) * q_bracket(x - 1, alpha))
    return _report("C10-kernel", {"x": x, "alpha": alpha}, lhs, rhs, [shifted])


def check_double_shift(n: int, alpha: int) -> IdentityReport:
    """q^2 B_n(2) = n q^(1+a) a/[a]_q + q^2 - q + B_n for n >= 2."""
    if n < 2:
        raise InvalidIndex(f"identity holds for n >= 2, got n = {n}")
    lhs = q_power(2) * polynomial_value_at_integer(n, alpha, 2)
    rhs = q_power(1 + alpha) * alpha_factor(alpha) * n + q_power(2) - Q + weighted_number(n, alpha)
    return _report("T11", {"n": n, "alpha": alpha}, lhs, rhs)


@dataclass(frozen=True)
class GridSpec:
    """Parameter ranges for ``run_grid``; each identity uses the axes it needs."""

    n: tuple[int, ...] = tuple(range(0, 9))
    m: tuple[int, ...] = tuple(range(0, 7))
    alpha: tuple[int, ...] = (1, 2, 3, 4)
    d: tuple[int, ...] = (1, 2, 3, 4)
    x: tuple[int, ...] = tuple(range(-2, 4))
    only: tuple[str, ...] = IDENTITY_IDS

    def points(self):
        """Yield (identity_id, check, kwargs) for every grid point."""
        only = set(self.only)
        P = itertools.product
        if "C10" in only:
            for n, a in P(self.n, self.alpha):
                yield "C10", check_alternating_sum, {"n": n, "alpha": a}
        if "C10-kernel" in only:
            for x, a in P(self.x, self.alpha):
                yield "C10-kernel", check_reflection_kernel, {"x": x, "alpha": a}
        if "C7" in only:
            for n, a in P(self.n, self.alpha):
                yield "C7", check_umbral, {"n": n, "alpha": a}
        if "T11" in only:
            for n, a in P(self.n, self.alpha):
                if n >= 2:
                    yield "T11", check_double_shift, {"n": n, "alpha": a}
        if "T4-consistency" in only:
            for n, a, x in P(self.n, self.alpha, self.x):
                yield "T4-consistency", check_value_forms, {"n": n, "alpha": a, "x": x}
        if "T5" in only:
            for m, n, a in P(self.m, self.n, self.alpha):
                if n >= 1:
                    yield "T5", check_shift_sum, {"m": m, "n": n, "alpha": a}
        if "T6" in only:
            for n, a in P(self.n, self.alpha):
                yield "T6", check_recurrence, {"n": n, "alpha": a}
        if "T8" in only:
            for n, a, d, x in P(self.n, self.alpha, self.d, self.x):
                yield "T8", check_distribution, {"n": n, "alpha": a, "d": d, "x": x}
        if "T9" in only:
            for n, a, x in P(self.n, self.alpha, self.x):
                yield "T9", check_reflection, {"n": n, "alpha": a, "x": x}


def _run_point(point) -> IdentityReport:
    _, check, kwargs = point
    return check(**kwargs)


def run_grid(grid: GridSpec | None = None, workers: int = 1) -> list[IdentityReport]:
    """Run every identity on the grid; reports sorted by identity id then params."""
    grid = grid or GridSpec()
    unknown = set(grid.only) - set(IDENTITY_IDS)
    if unknown:
        raise ValueError(f"unknown identity ids: {sorted(unknown)}")
    points = list(grid.points())
    if workers > 1 and len(points) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_point, points, chunksize=8))
    else:
        reports = [_run_point(p) for p in points]
    return sorted(reports, key=IdentityReport.sort_key)


def summarize(reports: Iterable[IdentityReport]) -> dict:
    counts: dict[str, dict[str, int]] = {}
    for r in reports:
        c = counts.setdefault(r.identity_id, {"passed": 0, "failed": 0})
        c["passed" if r.passed else "failed"] += 1
    total_failed = sum(c["failed"] for c in counts.values())
    return {"by_identity": dict(sorted(counts.items())), "failed": total_failed,
            "total": sum(c["passed"] + c["failed"] for c in counts.values())}
