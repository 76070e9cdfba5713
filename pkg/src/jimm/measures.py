"""Transition functions on the Farey tree and the boundary measures they induce.

A transition function assigns to each vertex the probability of arriving there
from its parent.  The measure of a Farey interval is the product of those
probabilities along the lineage of the interval's index vertex, and the
c.d.f. at a rational is a finite alternating sum of such products.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, TextIO

import numpy as np

from .cf import ROOT, CFTuple, DomainError, cf_expand, cf_value, format_rational, normalize_zeros, theta
from .transforms import (
    AUTOMORPHISMS,
    farey_map_rational,
    flip_rational,
    jimm_rational,
    k_rational,
)
from .tree import children, interval_of, lineage, planar_children

KINDS = ("minkowski", "denjoy", "lebesgue", "k-lebesgue", "j-lebesgue", "kj-lebesgue", "precomposed")
HALF = Fraction(1, 2)
ONE = Fraction(1)


@dataclass(frozen=True)
class TransitionFunction:
    """A named rule for the arrival probability of every vertex.

    ``param`` is the left-child probability of a Denjoy measure; ``base`` and
    ``automorphism`` describe ``base`` pre-composed with one of K, J, KJ.
    """

    kind: str
    param: Optional[Fraction] = None
    base: Optional["TransitionFunction"] = None
    automorphism: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown transition function kind {self.kind!r}")
        if self.kind == "denjoy":
            if self.param is None or not 0 < self.param < 1:
                raise DomainError("Denjoy parameter must lie strictly between 0 and 1")
        if self.kind == "precomposed":
            if self.base is None or self.automorphism not in AUTOMORPHISMS:
                raise ValueError("precomposed needs a base and an automorphism in K, J, KJ")

    def __call__(self, x: Sequence[int]) -> Fraction:
        return pi_eval(self, x)

    def evaluator(self) -> Callable[[CFTuple], Fraction]:
        """A callable equal to ``self`` on normalized tuples, skipping the cache for cheap kinds."""
        if self.kind == "minkowski":
            return lambda x: HALF if x != ROOT else ONE
        if self.kind == "lebesgue":
            return pi_lambda
        if self.kind == "k-lebesgue":
            return lambda x: 1 - pi_lambda(x) if x != ROOT else ONE
        return self

    def __str__(self) -> str:
        if self.kind == "denjoy":
            return f"denjoy:{format_rational(self.param)}"
        if self.kind == "precomposed":
            return f"{self.base}@{self.automorphism}"
        return self.kind


MINKOWSKI = TransitionFunction("minkowski")
LEBESGUE = TransitionFunction("lebesgue")
K_LEBESGUE = TransitionFunction("k-lebesgue")
J_LEBESGUE = TransitionFunction("j-lebesgue")
KJ_LEBESGUE = TransitionFunction("kj-lebesgue")

# the six kinds that ship as named measures
STANDARD = (MINKOWSKI, TransitionFunction("denjoy", Fraction(1, 3)), LEBESGUE, K_LEBESGUE, J_LEBESGUE, KJ_LEBESGUE)


def denjoy(a: Fraction) -> TransitionFunction:
    return TransitionFunction("denjoy", Fraction(a))


def precomposed(base: TransitionFunction, automorphism: str) -> TransitionFunction:
    return TransitionFunction("precomposed", base=base, automorphism=automorphism)


def parse_measure(text: str) -> TransitionFunction:
    """``minkowski``, ``denjoy:a``, ``lebesgue``, ``k-lebesgue``, ``j-lebesgue``,
    ``kj-lebesgue``, or ``<measure>@<K|J|KJ>`` for a pre-composition."""
    from .cf import parse_rational

    text = text.strip()
    if "@" in text:
        base, _, alpha = text.rpartition("@")
        return precomposed(parse_measure(base), alpha.strip())
    if text.startswith("denjoy:"):
        return denjoy(parse_rational(text[len("denjoy:") :]))
    if text in ("minkowski", "lebesgue", "k-lebesgue", "j-lebesgue", "kj-lebesgue"):
        return TransitionFunction(text)
    raise ValueError(f"unknown measure {text!r}")


# -- evaluation -------------------------------------------------------------------------

def pi_lambda(x: Sequence[int]) -> Fraction:
    """Lebesgue's transition function, ``1 - [0; n_k, ..., n_1]``."""
    if len(x) == 1 and x[0] == 1:
        return ONE
    # 1 - <n_{k-1}..n_1>/<n_k..n_1>; reversal leaves continuants unchanged
    prev, cur = 0, 1
    for n in x:
        prev, cur = cur, n * cur + prev
    return Fraction(cur - prev, cur)


def _jimm_unit(r: Fraction) -> Fraction:
    # J(1) = 1 keeps the root law for the Jimm-deformed kinds
    return r if r == 1 else jimm_rational(r)


@lru_cache(maxsize=1 << 16)
def pi_eval(tf: TransitionFunction, x: Sequence[int]) -> Fraction:
    if not isinstance(x, CFTuple):
        x = CFTuple(x)
    if x == ROOT:
        return Fraction(1)
    kind = tf.kind
    if kind == "minkowski":
        return HALF
    if kind == "denjoy":
        return tf.param if x.is_left_child else 1 - tf.param
    if kind == "lebesgue":
        return pi_lambda(x)
    if kind == "k-lebesgue":
        return 1 - pi_lambda(x)
    if kind == "j-lebesgue":
        return _jimm_unit(pi_lambda(x))
    if kind == "kj-lebesgue":
        return 1 - _jimm_unit(pi_lambda(x))
    return pi_eval(tf.base, AUTOMORPHISMS[tf.automorphism](x))


def interval_measure(tf: Callable[[CFTuple], Fraction], x: Sequence[int]) -> Fraction:
    """Mass of the Farey interval indexed by ``x``: the product of ``tf`` along its lineage."""
    mass = Fraction(1)
    for y in lineage(x):
        mass *= tf(y)
    return mass


def _prefix_masses(tf: Callable[[CFTuple], Fraction], digits: Sequence[int]) -> list[Fraction]:
    """Masses of ``I(n_1)``, ``I(n_1, n_2)``, ..., sharing the lineage products."""
    masses = []
    mass = Fraction(1)
    prefix: tuple[int, ...] = ()
    for n in digits:
        # the lineage of prefix+(n,) is prefix+(j,) for j = n..1, then prefix's own lineage
        for j in range(1, n + 1):
            mass *= tf(CFTuple(prefix + (j,)))
        prefix += (n,)
        masses.append(mass)
    return masses


def cdf(tf: Callable[[CFTuple], Fraction], x: Fraction) -> Fraction:
    """Exact c.d.f. of the boundary measure at a rational ``x`` in [0,1]."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{format_rational(x)} is not in [0,1]")
    if x == 0:
        return Fraction(0)
    if x == 1:
        return Fraction(1)
    total = Fraction(0)
    for k, mass in enumerate(_prefix_masses(tf, cf_expand(x)), start=1):
        total += mass if k % 2 else -mass
    return total


def cdf_many(tf: Callable[[CFTuple], Fraction], xs: Iterable[Fraction]) -> list[Fraction]:
    """``[cdf(tf, x) for x in xs]``, reusing work across shared digit prefixes.

    Sorted input is fastest: neighbouring rationals share long prefixes.
    """
    if isinstance(tf, TransitionFunction):
        tf = tf.evaluator()
    out = []
    prev_digits: list[int] = []
    masses: list[Fraction] = []  # masses[k] is the mass of I(prev_digits[:k+1])
    sums: list[Fraction] = []  # sums[k] is the alternating sum through term k+1
    for x in xs:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise DomainError(f"{format_rational(x)} is not in [0,1]")
        if x == 0 or x == 1:
            out.append(x)
            continue
        digits = cf_expand(x)
        common = 0
        limit = min(len(digits), len(prev_digits))
        while common < limit and digits[common] == prev_digits[common]:
            common += 1
        del masses[common:], sums[common:]
        mass = masses[-1] if masses else Fraction(1)
        total = sums[-1] if sums else Fraction(0)
        prefix = tuple(digits[:common])
        for k in range(common, len(digits)):
            for j in range(1, digits[k] + 1):
                mass *= tf(CFTuple.trusted(prefix + (j,)))
            prefix += (digits[k],)
            total += -mass if k % 2 else mass
            masses.append(mass)
            sums.append(total)
        prev_digits = digits
        out.append(total)
    return out


# -- c.d.f. grids and CSV --------------------------------------------------------------

@dataclass(frozen=True)
class CdfSample:
    x: Fraction
    F: Fraction

    def decimals(self, digits: int = 18) -> tuple[str, str]:
        return to_decimal(self.x, digits), to_decimal(self.F, digits)


def to_decimal(r: Fraction, digits: int = 18) -> str:
    """Fixed-point rendering with ``digits`` places, rounding half to even."""
    scaled = round(Fraction(r) * 10**digits)  # Fraction.__round__ is half-even
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _cdf_chunk(tf: TransitionFunction, xs: list[Fraction]) -> list[Fraction]:
    return cdf_many(tf, xs)


def cdf_grid(tf: TransitionFunction, denominator: int, workers: int = 1) -> list[CdfSample]:
    """Samples ``(j/n, F(j/n))`` for ``j = 0..n``."""
    if denominator < 1:
        raise ValueError("denominator must be positive")
    xs = [Fraction(j, denominator) for j in range(denominator + 1)]
    if workers <= 1:
        values = _cdf_chunk(tf, xs)
    else:
        size = -(-len(xs) // workers)
        chunks = [xs[i : i + size] for i in range(0, len(xs), size)]
        with ProcessPoolExecutor(workers) as pool:
            values = [v for part in pool.map(_cdf_chunk, [tf] * len(chunks), chunks) for v in part]
    return [CdfSample(x, v) for x, v in zip(xs, values)]


CSV_HEADER = ("x_num", "x_den", "F_num", "F_den", "x_decimal", "F_decimal")


def write_cdf_csv(samples: Iterable[CdfSample], out: TextIO, digits: int = 18) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in samples:
        xd, fd = s.decimals(digits)
        writer.writerow((s.x.numerator, s.x.denominator, s.F.numerator, s.F.denominator, xd, fd))


def cdf_csv(samples: Iterable[CdfSample], digits: int = 18) -> str:
    buf = io.StringIO()
    write_cdf_csv(samples, buf, digits)
    return buf.getvalue()


# -- checks ------------------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    checked: int
    violation: Optional[str] = None

    def __str__(self) -> str:
        if self.ok:
            return f"pass ({self.checked} vertices)"
        return f"FAIL after {self.checked} vertices: {self.violation}"


def validate_transition(tf: Callable[[CFTuple], Fraction], depth: int) -> ValidationReport:
    """Check the root law, ``0 <= pi <= 1`` and the sibling-sum law down to ``depth``."""
    if tf(ROOT) != 1:
        return ValidationReport(False, 0, f"pi(root) = {tf(ROOT)}, expected 1")
    checked = 1
    level = [ROOT]
    for d in range(1, depth + 1):
        nxt = []
        for x in level:
            a, b = children(x)
            pa, pb = tf(a), tf(b)
            for y, p in ((a, pa), (b, pb)):
                if not 0 <= p <= 1:
                    return ValidationReport(False, checked, f"pi{y} = {p} outside [0,1] at depth {d}")
            if pa + pb != 1:
                return ValidationReport(False, checked, f"pi{a} + pi{b} = {pa + pb} at depth {d}")
            checked += 2
            nxt += (a, b)
        level = nxt
    return ValidationReport(True, checked)


@dataclass(frozen=True)
class PiLambdaForms:
    digit_formula: Fraction
    composition: Fraction
    tuple_form: Fraction

    @property
    def agree(self) -> bool:
        return self.digit_formula == self.composition == self.tuple_form


def pi_lambda_forms(x: Sequence[int]) -> PiLambdaForms:
    """Lebesgue's transition function computed three independent ways."""
    x = CFTuple(x)
    if x == ROOT:
        raise DomainError("the three forms are stated for non-root vertices")
    rev = x[::-1]
    digits = (1, rev[0] - 1) + rev[1:]
    by_digits = cf_value(digits)
    by_composition = k_rational(flip_rational(farey_map_rational(theta(x))))
    by_tuple = theta(normalize_zeros(digits[:-1] + (digits[-1] - 1,)))
    return PiLambdaForms(by_digits, by_composition, by_tuple)


# -- Monte-Carlo walker ---------------------------------------------------------------------

WALK_TASK_SIZE = 5000


@dataclass
class WalkSummary:
    """Outcome of a batch of random walks.

    ``ks_statistic`` compares the empirical and exact c.d.f.s at the endpoints
    of the occupied landing intervals, the finest resolution a walk of this
    depth carries.  ``ks_median`` instead treats each landing-interval median
    as an exact sample point and is reported for reference only.
    """

    tf: str
    samples: int
    depth: int
    seed: int
    landings: list[CFTuple] = field(repr=False)
    ks_statistic: float
    ks_median: float

    @property
    def points(self) -> list[Fraction]:
        return [theta(x) for x in self.landings]

    @property
    def empirical_cdf(self) -> list[Fraction]:
        return sorted(self.points)

    def __str__(self) -> str:
        return (
            f"measure       {self.tf}\n"
            f"samples       {self.samples}\n"
            f"depth         {self.depth}\n"
            f"seed          {self.seed}\n"
            f"distinct      {len(set(self.landings))}\n"
            f"ks-statistic  {self.ks_statistic:.6f}\n"
            f"ks-median     {self.ks_median:.6f}"
        )


def _walk_task(tf: TransitionFunction, count: int, depth: int, seed_seq: np.random.SeedSequence) -> list[CFTuple]:
    tf = tf.evaluator()
    rng = np.random.default_rng(seed_seq)
    draws = rng.random((count, depth)).tolist()
    landings = []
    for row in draws:
        x = ROOT
        for u in row:
            a, b = planar_children(x)
            p = tf(a)
            x = a if u * p.denominator < p.numerator else b
        landings.append(x)
    return landings


def ks_statistic(points: Sequence[Fraction], F: Callable[[Sequence[Fraction]], Sequence[Fraction]]) -> float:
    """KS distance between the empirical c.d.f. of ``points`` and the c.d.f. ``F``.

    ``F`` maps a sorted list of points to their c.d.f. values.
    """
    n = len(points)
    ordered = sorted(points)
    distinct, counts = [], []
    for v in ordered:
        if distinct and distinct[-1] == v:
            counts[-1] += 1
        else:
            distinct.append(v)
            counts.append(1)
    worst = Fraction(0)
    below = 0
    for v, fv, c in zip(distinct, F(distinct), counts):
        worst = max(worst, abs(fv - Fraction(below, n)), abs(Fraction(below + c, n) - fv))
        below += c
    return float(worst)


def ks_interval(landings: Sequence[CFTuple], F: Callable[[Sequence[Fraction]], Sequence[Fraction]]) -> float:
    """KS distance evaluated at the endpoints of the occupied landing intervals.

    Landing intervals of one depth are disjoint, so the empirical c.d.f. is
    known exactly at each endpoint: the share of walks landing to its left.
    """
    n = len(landings)
    counts: dict[CFTuple, int] = {}
    for x in landings:
        counts[x] = counts.get(x, 0) + 1
    intervals = sorted(((interval_of(x), c) for x, c in counts.items()), key=lambda item: item[0].left)
    ends = sorted({e for iv, _ in intervals for e in (iv.left, iv.right)})
    F_at = dict(zip(ends, F(ends)))
    worst = Fraction(0)
    below = 0
    for iv, c in intervals:
        worst = max(worst, abs(F_at[iv.left] - Fraction(below, n)))
        below += c
        worst = max(worst, abs(F_at[iv.right] - Fraction(below, n)))
    return float(worst)


def monte_carlo_walk(
    tf: TransitionFunction, samples: int, depth: int = 30, seed: int = 0, workers: int = 1
) -> WalkSummary:
    """Sample ``samples`` walks of ``depth`` steps and compare with the exact c.d.f.

    Walks are split into fixed-size tasks, each with its own random stream
    spawned from ``seed``, so the result does not depend on ``workers``.
    """
    if samples < 1 or depth < 1:
        raise ValueError("samples and depth must be positive")
    sizes = [WALK_TASK_SIZE] * (samples // WALK_TASK_SIZE)
    if samples % WALK_TASK_SIZE:
        sizes.append(samples % WALK_TASK_SIZE)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    args = ([tf] * len(sizes), sizes, [depth] * len(sizes), streams)
    if workers <= 1:
        parts = list(map(_walk_task, *args))
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_walk_task, *args))
    landings = [x for part in parts for x in part]
    exact = lambda xs: cdf_many(tf, xs)  # noqa: E731
    return WalkSummary(
        str(tf),
        samples,
        depth,
        seed,
        landings,
        ks_interval(landings, exact),
        ks_statistic([theta(x) for x in landings], exact),
    )
