"""The twelve acceptance criteria, each at its stated bound and tolerance.

Every criterion prints one ``PASS``/``FAIL`` line.  Under pytest the lines are
also collected into the terminal summary; run this file directly with
``python tests/test_acceptance.py`` to get just the lines.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from jimm.cf import L, R, ROOT, continuant, star, star_rational, tuples_up_to_norm
from jimm.measures import (
    J_LEBESGUE,
    K_LEBESGUE,
    KJ_LEBESGUE,
    LEBESGUE,
    MINKOWSKI,
    STANDARD,
    cdf,
    cdf_grid,
    cdf_many,
    interval_measure,
    monte_carlo_walk,
    pi_lambda,
    validate_transition,
)
from jimm.transforms import (
    farey_map_tuple,
    flip_tuple,
    jimm_extended,
    jimm_matrix,
    jimm_rational,
    jimm_tuple,
    k_tuple,
    parent_map,
    twisted_calkin_wilf,
)
from jimm.tree import TreeRenderSpec, render_tree

sys.path.insert(0, str(Path(__file__).parent))
from oracles import reduced_fractions  # noqa: E402

F = Fraction
GOLDEN = Path(__file__).parent / "golden"
KS_THRESHOLD = 0.02
MC_SAMPLES = 100_000
MC_DEPTH = 30
MC_SEED = 20240917

TWISTED_30 = [
    F(1, 1), F(1, 2), F(2, 1), F(2, 3), F(3, 1), F(1, 3), F(3, 2), F(3, 5), F(5, 2), F(1, 4), F(4, 3),
    F(3, 4), F(4, 1), F(2, 5), F(5, 3), F(5, 8), F(8, 3), F(2, 7), F(7, 5), F(4, 5), F(5, 1), F(3, 7),
    F(7, 4), F(4, 7), F(7, 3), F(1, 5), F(5, 4), F(5, 7), F(7, 2), F(3, 8),
]


def _first_failure(cases):
    """Count cases; return (count, first failing case or None)."""
    n = 0
    for ok, what in cases:
        n += 1
        if not ok:
            return n, what
    return n, None


def _summary(n, failure, unit="cases"):
    return (failure is None, f"{n} {unit}" + ("" if failure is None else f"; first failure: {failure}"))


def criterion_1():
    examples = [
        (jimm_tuple((1, 1, 1, 1)), (4,)),
        (jimm_tuple((2, 2, 2, 2)), (1, 2, 2, 2, 1)),
        (jimm_tuple((1, 2, 2, 2, 1)), (2, 2, 2, 2)),
        (jimm_rational(F(1, 3)), F(2, 3)),
        (jimm_rational(F(2, 3)), F(1, 3)),
        (jimm_rational(F(1, 2)), F(1, 2)),
    ]
    n, failure = _first_failure((got == want, f"{got} != {want}") for got, want in examples)
    return _summary(n, failure, "worked examples")


def criterion_2():
    rs = reduced_fractions(500)
    n, failure = _first_failure((jimm_rational(r) == jimm_matrix(r), r) for r in rs)
    return _summary(n, failure, "rationals with q <= 500")


def criterion_3():
    cases = (
        (pi_lambda(jimm_tuple(x)) == jimm_extended(pi_lambda(x)), x) for x in tuples_up_to_norm(14)
    )
    n, failure = _first_failure(cases)
    return _summary(n, failure, "vertices of norm <= 14")


def criterion_4():
    rs = reduced_fractions(200)
    n1, f1 = _first_failure((v == r, r) for r, v in zip(rs, cdf_many(LEBESGUE, rs)))
    n2, f2 = _first_failure(
        (interval_measure(LEBESGUE, x) == F(1, continuant(x[:-1]) * continuant(x)), x) for x in tuples_up_to_norm(14)
    )
    ok = f1 is None and f2 is None
    return ok, f"c.d.f. identity on {n1} rationals (q <= 200), interval masses on {n2} vertices" + (
        "" if ok else f"; failures: {f1}, {f2}"
    )


def criterion_5():
    n1, f1 = _first_failure(
        (interval_measure(MINKOWSKI, x) == F(2) ** (1 - sum(x)), x) for x in tuples_up_to_norm(14)
    )
    rs = reduced_fractions(200)
    values = dict(zip(rs, cdf_many(MINKOWSKI, rs)))
    n2, f2 = _first_failure((values[1 - r] == 1 - values[r], r) for r in rs)
    third = cdf(MINKOWSKI, F(1, 3))
    ok = f1 is None and f2 is None and third == F(1, 4)
    return ok, f"closed form on {n1} vertices, ?(1/3) = {third}, symmetry on {n2} rationals" + (
        "" if ok else f"; failures: {f1}, {f2}"
    )


def criterion_6():
    got = twisted_calkin_wilf(30)
    n, failure = _first_failure((a == b, f"term {i + 1}: {a} != {b}") for i, (a, b) in enumerate(zip(got, TWISTED_30)))
    return _summary(n, failure, "terms")


def criterion_7():
    reports = [(str(tf), validate_transition(tf, 12)) for tf in STANDARD]
    bad = [f"{name}: {r.violation}" for name, r in reports if not r.ok]
    return not bad, f"{len(reports)} kinds, {sum(r.checked for _, r in reports)} vertices to depth 12" + (
        f"; {bad[0]}" if bad else ""
    )


def criterion_8():
    def cases():
        for x in tuples_up_to_norm(12):
            jx = jimm_tuple(x)
            yield k_tuple(k_tuple(x)) == x, f"K^2 at {x}"
            yield flip_tuple(flip_tuple(x)) == x, f"flip^2 at {x}"
            yield jimm_tuple(jx) == x, f"J^2 at {x}"
            yield jx.norm == x.norm, f"norm at {x}"
            yield jimm_tuple(k_tuple(x)) == k_tuple(jx), f"JK at {x}"
            yield jimm_tuple(flip_tuple(x)) == flip_tuple(jx), f"J flip at {x}"
            if x != ROOT:
                yield jimm_tuple(farey_map_tuple(x)) == farey_map_tuple(jx), f"J T_F at {x}"
                yield k_tuple(parent_map(x)) == parent_map(k_tuple(x)), f"K parent at {x}"
                yield jimm_tuple(parent_map(x)) == parent_map(jx), f"J parent at {x}"

    n, failure = _first_failure(cases())
    return _summary(n, failure, "identities checked to norm 12")


def criterion_9():
    def cases():
        small = tuples_up_to_norm(10)
        for x in small:
            for y in small:
                yield star(x, y).norm == x.norm + y.norm, f"norm of {x} * {y}"
        rr, ll, a, b = ROOT, ROOT, F(1, 2), F(1, 2)
        for n in range(1, 21):
            rr, ll = star(rr, R), star(ll, L)
            a, b = star_rational(a, F(2, 3)), star_rational(b, F(1, 3))
            yield rr == (1, n) and ll == (n + 1,), f"tuple powers at n={n}"
            yield a == F(n + 1, n + 2) and b == F(1, n + 2), f"rational powers at n={n}"
        six = tuples_up_to_norm(6)
        for x in six:
            for y in six:
                xy = star(x, y)
                for z in six:
                    yield star(xy, z) == star(x, star(y, z)), f"associativity at {x}, {y}, {z}"

    n, failure = _first_failure(cases())
    return _summary(n, failure, "monoid identities")


def criterion_10():
    parts = []
    ok = True
    for tf in (LEBESGUE, MINKOWSKI):
        start = time.perf_counter()
        summary = monte_carlo_walk(tf, MC_SAMPLES, MC_DEPTH, MC_SEED)
        again = monte_carlo_walk(tf, 2000, MC_DEPTH, MC_SEED)
        repeat = monte_carlo_walk(tf, 2000, MC_DEPTH, MC_SEED)
        seconds = time.perf_counter() - start
        deterministic = again.landings == repeat.landings
        ok &= summary.ks_statistic < KS_THRESHOLD and deterministic
        parts.append(f"{tf} KS={summary.ks_statistic:.5f} (median-point KS={summary.ks_median:.5f}, {seconds:.0f}s)")
    return ok, f"{MC_SAMPLES} walks, depth {MC_DEPTH}, seed {MC_SEED}, threshold {KS_THRESHOLD}: " + "; ".join(parts)


def criterion_11():
    grids = {tf: [s.F for s in cdf_grid(tf, 1024)] for tf in (K_LEBESGUE, J_LEBESGUE, KJ_LEBESGUE)}
    bad = []
    for tf, values in grids.items():
        if values[0] != 0 or values[-1] != 1:
            bad.append(f"{tf} endpoints")
        if any(a > b for a, b in zip(values, values[1:])):
            bad.append(f"{tf} not monotone")
    lebesgue = [F(j, 1024) for j in range(1025)]
    differ = sum(a != b for a, b in zip(grids[J_LEBESGUE], lebesgue))
    if differ == 0:
        bad.append("j-lebesgue equals lebesgue on the grid")
    return not bad, f"3 grids of 1025 points; j-lebesgue differs from lebesgue at {differ} points" + (
        f"; {', '.join(bad)}" if bad else ""
    )


def criterion_12():
    variants = ("farey", "monoid", "flipped", "jimm", "lebesgue", "jimm-lebesgue")
    bad = [v for v in variants if render_tree(TreeRenderSpec(v, depth=5)) != (GOLDEN / f"{v}.txt").read_text()]
    return not bad, f"{len(variants)} trees of 5 levels against golden files" + (f"; mismatched: {bad}" if bad else "")


CRITERIA = {
    1: ("Jimm worked examples", criterion_1),
    2: ("rewriting Jimm equals matrix Jimm", criterion_2),
    3: ("central symmetry of pi_lambda", criterion_3),
    4: ("Lebesgue reproduction", criterion_4),
    5: ("Minkowski closed form and symmetry", criterion_5),
    6: ("twisted Calkin-Wilf terms", criterion_6),
    7: ("sibling-sum law for six kinds", criterion_7),
    8: ("involution and commutation suite", criterion_8),
    9: ("monoid suite", criterion_9),
    10: ("Monte-Carlo KS cross-check", criterion_10),
    11: ("deformed c.d.f. grids", criterion_11),
    12: ("tree renderings against golden files", criterion_12),
}


def evaluate(n: int) -> tuple[bool, str]:
    title, fn = CRITERIA[n]
    start = time.perf_counter()
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}  {title}: {detail} [{time.perf_counter() - start:.1f}s]"
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, acceptance_lines):
    ok, line = evaluate(n)
    acceptance_lines[n] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line, flush=True)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
