"""Acceptance criteria 1-7. Each test records one PASS/FAIL line, printed at the end of the run.

Run alone with:  python3 -m pytest tests/test_acceptance.py -v
"""

import json
import os
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest
import sympy
from sympy.polys.fields import field

from wqbern.analytic import generating_function_check, series_number_check
from wqbern.exactq import Poly, RatFunc, eval_at
from wqbern.padic import check_integral_equation, convergence_table, defect_growth_ok
from wqbern.qbern import (
    carlitz_numbers,
    classical_bernoulli,
    weighted_number_closed,
    weighted_number_recurrence,
)

GRID_SECONDS = 120
GF_TOL = 1e-10


def _cli(*args):
    env = dict(os.environ, WQBERN_FORMAT="json")
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "wqbern.cli", *args], capture_output=True, env=env)
    return proc, time.perf_counter() - t0


@pytest.fixture(scope="module")
def verify_runs():
    """The default identity grid, run twice through the CLI."""
    return [_cli("verify") for _ in range(2)]


@pytest.fixture(scope="module")
def padic_runs():
    args = ("padic", "--p", "3", "--n", "0..3", "--alpha", "1..2", "--levels", "1..5", "--integral")
    return [_cli(*args) for _ in range(2)]


def test_criterion_1_dual_construction(acceptance):
    mismatches = [(n, a) for a in range(1, 5) for n in range(11)
                  if weighted_number_closed(n, a).value != weighted_number_recurrence(n, a).value]
    acceptance(1, not mismatches, f"closed == recurrence for n<=10, alpha<=4; mismatches: {mismatches or 'none'}")
    assert not mismatches


def test_criterion_2_classical_limit(acceptance):
    B = classical_bernoulli(10)
    bad = [(n, a) for a in range(1, 5) for n in range(11) if eval_at(weighted_number_closed(n, a).value, 1) != B[n]]
    spots = (B[1], B[2], B[4]) == (Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30))
    # independent oracle for the classical values
    spots &= all(sympy.bernoulli(k) == sympy.Rational(B[k].numerator, B[k].denominator) for k in range(2, 11))
    ok = not bad and spots
    acceptance(2, ok, f"value at q=1 equals B_n for n<=10, alpha<=4; B_1=-1/2, B_2=1/6, B_4=-1/30: {spots}")
    assert ok


def test_criterion_3_carlitz(acceptance):
    K, q = field("q", sympy.QQ)
    beta = [K.one]
    for k in range(1, 11):
        rest = q * sum((comb(k, l) * q**l * beta[l] for l in range(k)), K.zero)
        beta.append(((1 if k == 1 else 0) - rest) / (q ** (k + 1) - 1))

    def conv(e):
        def cs(p):
            return [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(p.to_dense())]
        return RatFunc(Poly(cs(e.numer)), Poly(cs(e.denom)))

    internal = carlitz_numbers(10)
    bad = [k for k in range(11)
           if not (weighted_number_closed(k, 1).value == conv(beta[k]) == internal[k])]
    b1 = weighted_number_closed(1, 1).value == RatFunc(Poly([-1]), Poly([1, 1]))
    b2 = weighted_number_closed(2, 1).value == RatFunc(Poly([0, 1]), Poly([1, 1]) * Poly([1, 1, 1]))
    ok = not bad and b1 and b2
    acceptance(3, ok, f"alpha=1 equals Carlitz recurrence for k<=10 (two oracles); spot beta_1, beta_2: {b1 and b2}")
    assert ok


def test_criterion_4_identity_grid(acceptance, verify_runs):
    proc, seconds = verify_runs[0]
    reports = json.loads(proc.stdout)
    failed = [r for r in reports if not r["passed"]]
    ids = sorted({r["identity_id"] for r in reports})
    ok = proc.returncode == 0 and not failed and seconds < GRID_SECONDS and len(reports) > 0
    acceptance(4, ok, f"{len(reports)} checks over {', '.join(ids)}; {len(failed)} failed; "
                      f"{seconds:.1f}s (target < {GRID_SECONDS}s)")
    assert ok, failed[:3]


def test_criterion_5_padic(acceptance):
    notes = []
    ok = True
    for p, q, top in ((3, 4, 5), (5, 6, 3)):
        levels = range(1, top + 1)
        for n in range(4):
            for a in (1, 2):
                table = convergence_table(n, a, p, q, levels)
                vals = [r.defect_valuation for r in table]
                if not defect_growth_ok(table):
                    ok = False
                    notes.append(f"growth p={p} n={n} a={a}: {vals}")
                stalls = [r.level for r, prev in zip(table[1:], table) if
                          not r.defect_is_bound and r.defect_valuation == prev.defect_valuation]
                if stalls:
                    notes.append(f"p={p} n={n} a={a} single-step stall at N={stalls} (defects {vals})")
                for N in levels:
                    ie = check_integral_equation(n, a, p, q, N)
                    if not (ie.routes_agree and ie.defect_valuation >= N - 1):
                        ok = False
                        notes.append(f"shift equation p={p} n={n} a={a} N={N}")
    detail = "defects nondecreasing with v_N >= v_1 + (N-1); shift equation defect >= N-1, log routes agree"
    if notes:
        detail += "; " + "; ".join(notes)
    acceptance(5, ok, detail)
    assert ok


def test_criterion_6_series(acceptance):
    worst = 0.0
    count = 0
    failures = []
    for alpha in (1, 2, 3):
        for q in (0.25, 0.5):
            for n in range(1, 11):
                r = series_number_check(n, alpha, q, tol=GF_TOL)
                worst, count = max(worst, r.abs_error), count + 1
                if not r.passed:
                    failures.append(r.to_record())
            for t in (0.0, 0.1, 0.2):
                for x in (0, 1):
                    r = generating_function_check(alpha, q, t, x, tol=GF_TOL)
                    worst, count = max(worst, r.abs_error), count + 1
                    if not r.passed:
                        failures.append(r.to_record())
    ok = not failures
    acceptance(6, ok, f"{count} series/generating-function checks, max abs error {worst:.2e} (tol {GF_TOL:g})")
    assert ok, failures[:3]


def test_criterion_7_determinism(acceptance, verify_runs, padic_runs):
    same_verify = verify_runs[0][0].stdout == verify_runs[1][0].stdout
    same_padic = padic_runs[0][0].stdout == padic_runs[1][0].stdout
    codes = [r[0].returncode for r in verify_runs + padic_runs]
    ok = same_verify and same_padic and codes == [0, 0, 0, 0]
    acceptance(7, ok, f"verify identical: {same_verify}; padic identical: {same_padic}; exit codes {codes}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
