"""Acceptance criteria 1-8.

Each test records a PASS/FAIL line; ``conftest.py`` prints them at the end of
the run.  ``python tests/test_acceptance.py`` runs the same checks directly.
"""

import itertools
import random
import time
from math import comb

import pytest

from kottrace.exactpoly import AffineExp
from kottrace.heckefun import compositions, constant_term, gu_weyl_action, satake_f_gu, satake_phi
from kottrace.traceeval import GlobalInput, SteinbergProductRep, parity_relation_check, steinberg_shortcut, twisted_compact_trace
from kottrace.weylcomb import _g_theta_pq, brute_force_G_PQ, brute_force_G_theta_PQ, enumerate_G_PQ, enumerate_G_theta_PQ
from kottrace.zelring import is_fully_steinberg, is_theta_stable, poset_below, rho_multisegment, speh_multisegment

RESULTS: dict[int, str] = {}

TITLES = {
    1: "double-coset enumeration matches brute force, n <= 6",
    2: "constant terms recombine to the Satake polynomial, n <= 6",
    3: "Steinberg trace equals the Borel shortcut, n <= 5",
    4: "parity relation on random inputs, n = 2s in {2,4}, k in {1,3}",
    5: "trace independent of characters when alpha*s is even, n <= 4",
    6: "rho(x,y) below Speh(x,y), unique stable fully self-dual, xy <= 10",
    7: "Weyl invariance, monomial count and degree, n <= 6",
    8: "theta cosets for n = 12, blocks (2,2,2,2,2,2), under 5 s",
}


def _record(idx, ok, elapsed, detail=""):
    line = f"criterion {idx}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {TITLES[idx]}"
    if detail:
        line += f" [{detail}]"
    RESULTS[idx] = line
    return line


def _parts(n):
    return [c.parts for c in compositions(n)]


def _stable_reps(n):
    for c in compositions(n):
        if not c.is_palindromic():
            continue
        k = len(c)
        for half in itertools.product(("trivial", "quadratic"), repeat=(k + 1) // 2):
            yield SteinbergProductRep(c, half + tuple(reversed(half[: k // 2])))


def check_1():
    bad = []
    for n in range(1, 7):
        for lam in _parts(n):
            for mu in _parts(n):
                if set(enumerate_G_PQ(lam, mu)) != brute_force_G_PQ(lam, mu):
                    bad.append(("PQ", lam, mu))
                if lam == lam[::-1] and mu == mu[::-1]:
                    if set(enumerate_G_theta_PQ(lam, mu)) != brute_force_G_theta_PQ(lam, mu):
                        bad.append(("theta", lam, mu))
    return not bad, f"{len(bad)} mismatches"


def check_2():
    bad = 0
    for n in range(1, 7):
        for blocks in _parts(n):
            for s in range(n + 1):
                bad += constant_term(n, s, blocks).to_poly() != satake_phi(n, s)
    return bad == 0, f"{bad} mismatches"


def check_3():
    bad = 0
    for n in range(1, 6):
        for s in range(n + 1):
            st = SteinbergProductRep.steinberg(n)
            bad += twisted_compact_trace(n, s, st).poly != steinberg_shortcut(n, s).poly
    closed = (
        twisted_compact_trace(2, 1, SteinbergProductRep.steinberg(2)).poly.terms()
        == [(((), AffineExp(0, 3), False), 1)]
        and twisted_compact_trace(3, 1, SteinbergProductRep.steinberg(3)).poly.terms()
        == [(((), AffineExp(0, 6), False), 1)]
    )
    return bad == 0 and closed, f"{bad} mismatches, closed forms {'ok' if closed else 'wrong'}"


def check_4(trials=40, seed=20261016):
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        n = rng.choice([2, 4])
        reps = list(_stable_reps(n))
        terms = tuple(
            (rng.choice(reps), f"{rng.randint(-5, 5)}/{rng.randint(1, 4)}") for _ in range(rng.randint(1, 3))
        )
        g = GlobalInput(n, n // 2, rng.choice([2, 3, 5, 7, 11]), 1, rng.randint(1, 3), terms)
        bad += not parity_relation_check(g, rng.choice([1, 3]))
    return bad == 0, f"{bad}/{trials} failures"


def check_5():
    bad = checked = 0
    for n in range(1, 5):
        reps = list(_stable_reps(n))
        for alpha in range(1, 5):
            for s in range(n + 1):
                if alpha * s % 2:
                    continue
                by_blocks = {}
                for r in reps:
                    by_blocks.setdefault(r.blocks, set()).add(
                        twisted_compact_trace(n, s, r, p=3, alpha=alpha).value
                    )
                for vals in by_blocks.values():
                    checked += 1
                    bad += len(vals) != 1
    return bad == 0, f"{bad}/{checked} block shapes vary"


def check_6():
    bad = []
    for x in range(1, 11):
        for y in range(1, 11):
            if x * y > 10:
                continue
            rho = rho_multisegment(x, y)
            below = poset_below(speh_multisegment(x, y))
            if rho not in below:
                bad.append((x, y, "missing"))
            full = [m for m in below if is_theta_stable(m) and is_fully_steinberg(m)]
            if full != [rho]:
                bad.append((x, y, "not unique"))
    return not bad, f"{len(bad)} failures"


def _gu_group(k):
    for signs in itertools.product((1, -1), repeat=k):
        for perm in itertools.permutations(range(k)):
            yield signs, perm


def check_7():
    bad = 0
    for n in range(1, 7):
        for s in range(n + 1):
            p = satake_phi(n, s)
            bad += len(p) != comb(n, s)
            bad += set(p.monomial_degrees()) != {AffineExp.alpha(s)}
            for perm in itertools.permutations(range(n)):
                bad += p.permute_vars(perm) != p
            g = satake_f_gu(n, s)
            for signs, perm in _gu_group(n // 2):
                bad += gu_weyl_action(g, signs, perm) != g
    return bad == 0, f"{bad} failures"


def check_8():
    _g_theta_pq.cache_clear()
    t0 = time.perf_counter()
    reps = enumerate_G_theta_PQ((2,) * 6, (2,) * 6)
    dt = time.perf_counter() - t0
    return dt < 5 and len(reps) > 0, f"{len(reps)} representatives in {dt:.3f}s"


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8}
LIMITS = {1: 60.0, 6: 30.0, 8: 5.0}


def run_criterion(idx):
    t0 = time.perf_counter()
    ok, detail = CHECKS[idx]()
    elapsed = time.perf_counter() - t0
    if idx in LIMITS and elapsed >= LIMITS[idx]:
        ok = False
        detail += f"; over the {LIMITS[idx]:.0f}s limit"
    return ok, _record(idx, ok, elapsed, detail)


@pytest.mark.parametrize("idx", sorted(CHECKS))
def test_criterion(idx):
    ok, line = run_criterion(idx)
    print(line)
    assert ok, line


if __name__ == "__main__":
    import sys

    failed = 0
    for i in sorted(CHECKS):
        ok, line = run_criterion(i)
        print(line, flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
