"""Exhaustive property checks for every module, shared by the CLI and the tests.

Each property carries its own exhaustive bound (a tree depth, a denominator,
or both).  A run at depth ``d`` caps depth bounds at ``d`` and denominator
bounds at ``2**d``, so a shallow run stays fast; from depth 9 on every
registered denominator bound is reached.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Union

from . import cf, measures, transforms, tree
from .cf import ROOT, CFTuple, rationals_up_to, theta, theta_inverse, tuples_up_to_norm
from .measures import (
    J_LEBESGUE,
    KJ_LEBESGUE,
    LEBESGUE,
    MINKOWSKI,
    STANDARD,
    cdf,
    cdf_grid,
    cdf_many,
    interval_measure,
    pi_eval,
    pi_lambda_forms,
    precomposed,
    validate_transition,
)
from .transforms import AUTOMORPHISMS, flip_tuple, jimm_extended, jimm_matrix, jimm_rational, jimm_tuple, k_tuple


@dataclass
class CheckResult:
    count: int
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failure is None


@dataclass(frozen=True)
class Property:
    module: str
    name: str
    check: Callable[[int, int], CheckResult]
    depth: int = 0
    max_den: int = 0

    def bounds(self, depth: Optional[int] = None) -> tuple[int, int]:
        if depth is None:
            return self.depth, self.max_den
        return min(self.depth, depth), min(self.max_den, 2**depth)

    def run(self, depth: Optional[int] = None) -> CheckResult:
        return self.check(*self.bounds(depth))


PROPERTIES: list[Property] = []


def prop(module: str, name: str, depth: int = 0, max_den: int = 0):
    # a check yields True per passing case, or a failure message (built only on failure)
    def register(fn: Callable[[int, int], Iterator[Union[bool, str]]]):
        def check(d: int, q: int) -> CheckResult:
            count = 0
            for outcome in fn(d, q):
                count += 1
                if outcome is not True:
                    return CheckResult(count, str(outcome))
            return CheckResult(count)

        PROPERTIES.append(Property(module, name, check, depth, max_den))
        return fn

    return register


def _nonroot(depth: int) -> list[CFTuple]:
    return tuples_up_to_norm(depth)[1:]


# -- cf-core ---------------------------------------------------------------------------

@prop("cf-core", "theta(theta_inverse(r)) = r", max_den=500)
def _(d, q):
    for r in rationals_up_to(q):
        yield (theta(theta_inverse(r)) == r) or f"round trip fails at {r}"


@prop("cf-core", "theta_inverse(theta(x)) = x", depth=16)
def _(d, q):
    for x in tuples_up_to_norm(d):
        yield (theta_inverse(theta(x)) == x) or f"round trip fails at {x}"


@prop("cf-core", "norm(x * y) = norm(x) + norm(y)", depth=10)
def _(d, q):
    xs = tuples_up_to_norm(d)
    for x in xs:
        for y in xs:
            yield (cf.star(x, y).norm == x.norm + y.norm) or f"norm not additive for {x} * {y}"


@prop("cf-core", "star is associative", depth=6)
def _(d, q):
    xs = tuples_up_to_norm(d)
    for x in xs:
        for y in xs:
            xy = cf.star(x, y)
            for z in xs:
                yield (cf.star(xy, z) == cf.star(x, cf.star(y, z))) or f"({x}*{y})*{z} != {x}*({y}*{z})"


@prop("cf-core", "star agrees with L/R word concatenation", depth=8)
def _(d, q):
    xs = tuples_up_to_norm(d)
    words = {x: cf.lr_word(x) for x in xs}
    for x in xs:
        yield (cf.from_word(words[x]) == x) or f"word {words[x]} does not re-encode to {x}"
        yield (len(words[x]) == x.norm) or f"word length of {x} differs from its norm"
        yield (words[x].endswith("R") == x.is_right_child) or f"child kind of {x} disagrees with its word"
        for y in xs:
            yield (cf.lr_word(cf.star(x, y)) == words[x] + words[y]) or f"{x} * {y} is not concatenation"


@prop("cf-core", "denominator of [0;n_1..n_k] = <n_1..n_k>", depth=16)
def _(d, q):
    for x in tuples_up_to_norm(d):
        yield (cf.cf_value(x).denominator == cf.continuant(x)) or f"continuant mismatch at {x}"


# -- transforms -------------------------------------------------------------------------

@prop("transforms", "K, flip, Jimm are involutions on tuples", depth=14)
def _(d, q):
    for x in tuples_up_to_norm(d):
        for name, f in (("K", k_tuple), ("flip", flip_tuple), ("J", jimm_tuple)):
            yield (f(f(x)) == x) or f"{name}^2 {x} != {x}"


@prop("transforms", "extended Jimm is an involution", max_den=500)
def _(d, q):
    for r in rationals_up_to(q):
        for s in (r, 1 / r, -r, -1 / r):
            yield (jimm_extended(jimm_extended(s)) == s) or f"J(J({s})) != {s}"
    yield (jimm_extended(Fraction(1)) == 1) or "J(1) != 1"


@prop("transforms", "Jimm preserves the norm", depth=14)
def _(d, q):
    for x in tuples_up_to_norm(d):
        yield (jimm_tuple(x).norm == x.norm) or f"norm changes under J at {x}"


@prop("transforms", "J commutes with K, flip and the Farey map", depth=12)
def _(d, q):
    for x in tuples_up_to_norm(d):
        jx = jimm_tuple(x)
        yield (jimm_tuple(k_tuple(x)) == k_tuple(jx)) or f"JK != KJ at {x}"
        yield (jimm_tuple(flip_tuple(x)) == flip_tuple(jx)) or f"J flip != flip J at {x}"
        if x != ROOT:
            yield (jimm_tuple(transforms.farey_map_tuple(x)) == transforms.farey_map_tuple(jx)) or f"J T_F != T_F J at {x}"


@prop("transforms", "rewriting Jimm = matrix Jimm", max_den=500)
def _(d, q):
    for r in rationals_up_to(q):
        yield (jimm_rational(r) == jimm_matrix(r)) or f"rewriting and matrix Jimm differ at {r}"
    for r in rationals_up_to(q // 5):
        yield (jimm_extended(1 / r) == jimm_matrix(1 / r)) or f"extended and matrix Jimm differ at {1 / r}"


@prop("transforms", "Jimm functional equations", max_den=200)
def _(d, q):
    for x in rationals_up_to(q):
        jx = jimm_rational(x)
        yield (jimm_extended(1 / (1 + x)) == jx / (1 + jx)) or f"J(1/(1+x)) fails at {x}"
        yield (jimm_extended(x / (1 + x)) == 1 / (1 + jx)) or f"J(x/(1+x)) fails at {x}"


@prop("transforms", "Jimm preserves siblings", depth=12)
def _(d, q):
    for x in tuples_up_to_norm(d - 1):
        images = {jimm_tuple(c) for c in tree.children(x)}
        yield (images == set(tree.children(jimm_tuple(x)))) or f"children of {x} not sent to children"


@prop("transforms", "K, J, KJ commute with the parent map", depth=12)
def _(d, q):
    for x in _nonroot(d):
        for name, alpha in AUTOMORPHISMS.items():
            yield (alpha(transforms.parent_map(x)) == transforms.parent_map(alpha(x))) or f"{name} and parent fail at {x}"


@prop("transforms", "tuple maps agree with rational maps under theta", depth=12)
def _(d, q):
    for x in _nonroot(d):
        r = theta(x)
        yield (theta(k_tuple(x)) == 1 - r) or f"theta(K x) != 1 - theta(x) at {x}"
        yield (theta(transforms.farey_map_tuple(x)) == transforms.farey_map_rational(r)) or f"T_F mismatch at {x}"
        digits = cf.cf_expand(r)
        flipped = [0, digits[-1] - 1] + digits[-2:0:-1] + [digits[0] + 1] if len(digits) > 1 else None
        if flipped is not None:
            yield (transforms.flip_rational(r) == cf.cf_value(flipped[1:])) or f"flip digit formula fails at {r}"


# -- farey-tree ----------------------------------------------------------------------------

@prop("farey-tree", "child intervals partition the parent interval", depth=12)
def _(d, q):
    for x in tuples_up_to_norm(d - 1):
        iv = tree.interval_of(x)
        a, b = (tree.interval_of(c) for c in tree.planar_children(x))
        yield (a.left == iv.left and a.right == b.left == iv.median and b.right == iv.right) or f"children of {x} do not split {iv} at its median"


@prop("farey-tree", "intervals are Farey-adjacent with length 1/(qs)", depth=12)
def _(d, q):
    for x in tuples_up_to_norm(d):
        iv = tree.interval_of(x)
        p_, q_, r_, s_ = iv.left.numerator, iv.left.denominator, iv.right.numerator, iv.right.denominator
        yield (q_ * r_ - p_ * s_ == 1) or f"{iv} not adjacent"
        yield (iv.right - iv.left == iv.length == tree.interval_length(x)) or f"length of {iv} is wrong"
        yield (iv.median == theta(x)) or f"median of I{x} is not theta{x}"


@prop("farey-tree", "theta(y) in I(x) iff x is an ancestor of y", depth=10)
def _(d, q):
    xs = tuples_up_to_norm(d)
    # integer cross-multiplication: a/b < u/v < c/e
    ends = []
    for x in xs:
        iv = tree.interval_of(x)
        ends.append((iv.left.numerator, iv.left.denominator, iv.right.numerator, iv.right.denominator))
    for y in xs:
        v = theta(y)
        u, w = v.numerator, v.denominator
        ancestors = set(tree.lineage(y))
        for x, (a, b, c, e) in zip(xs, ends):
            inside = a * w < u * b and u * e < c * w
            yield (inside == (x in ancestors)) or f"membership of theta{y} in I{x} is wrong"


@prop("farey-tree", "flipped tree: children of p/q are p/(p+q), q/(p+q)", depth=8)
def _(d, q):
    for x in tuples_up_to_norm(d - 1):
        r = theta(flip_tuple(x))
        p_, q_ = r.numerator, r.denominator
        kids = {theta(flip_tuple(c)) for c in tree.children(x)}
        yield (kids == {Fraction(p_, p_ + q_), Fraction(q_, p_ + q_)}) or f"flipped children of {r} wrong"


@prop("farey-tree", "children, parent, sibling and lineage agree", depth=12)
def _(d, q):
    for x in tuples_up_to_norm(d - 1):
        a, b = tree.planar_children(x)
        yield (set(tree.children(x)) == {a, b}) or f"planar children of {x} are not its children"
        yield (theta(a) < theta(x) < theta(b)) or f"children of {x} not in planar order"
        yield (transforms.parent_map(a) == x == transforms.parent_map(b)) or f"children of {x} have another parent"
        yield (tree.sibling(a) == b and tree.sibling(b) == a) or f"siblings under {x} wrong"
        yield (len(tree.lineage(x)) == x.norm + 1) or f"lineage of {x} has wrong length"


# -- measures ----------------------------------------------------------------------------------

@prop("measures", "central symmetry pi_lambda(J x) = J(pi_lambda x)", depth=14)
def _(d, q):
    for x in tuples_up_to_norm(d):
        lhs = pi_eval(LEBESGUE, jimm_tuple(x))
        rhs = measures._jimm_unit(pi_eval(LEBESGUE, x))
        yield (lhs == rhs) or f"pi_lambda(J{x}) = {lhs} but J(pi_lambda{x}) = {rhs}"


@prop("measures", "K-invariance pi_lambda(K x) = pi_lambda(x)", depth=14)
def _(d, q):
    for x in tuples_up_to_norm(d):
        yield (pi_eval(LEBESGUE, k_tuple(x)) == pi_eval(LEBESGUE, x)) or f"K-invariance fails at {x}"


@prop("measures", "Lebesgue interval measure = interval length", depth=14)
def _(d, q):
    for x in tuples_up_to_norm(d):
        yield (interval_measure(LEBESGUE, x) == tree.interval_of(x).length) or f"lambda(I{x}) wrong"


@prop("measures", "Lebesgue c.d.f. is the identity", max_den=200)
def _(d, q):
    xs = sorted(rationals_up_to(q))
    for x, v in zip(xs, cdf_many(LEBESGUE, xs)):
        yield (v == x) or f"F_lambda({x}) = {v}"


@prop("measures", "Minkowski interval measure = 2^(1 - sum n_i)", depth=14)
def _(d, q):
    for x in tuples_up_to_norm(d):
        yield (interval_measure(MINKOWSKI, x) == Fraction(2) ** (1 - sum(x))) or f"mu(I{x}) wrong"


@prop("measures", "Minkowski symmetry ?(1 - x) = 1 - ?(x)", max_den=200)
def _(d, q):
    for x in rationals_up_to(q):
        yield (cdf(MINKOWSKI, 1 - x) == 1 - cdf(MINKOWSKI, x)) or f"?-symmetry fails at {x}"
    yield (cdf(MINKOWSKI, Fraction(1, 3)) == Fraction(1, 4)) or "?(1/3) != 1/4"


@prop("measures", "Minkowski measure is K, J, KJ invariant", depth=12)
def _(d, q):
    for x in tuples_up_to_norm(d):
        m = interval_measure(MINKOWSKI, x)
        for name, alpha in AUTOMORPHISMS.items():
            yield (interval_measure(MINKOWSKI, alpha(x)) == m) or f"Minkowski not {name}-invariant at {x}"


@prop("measures", "pre-composition: mu_{pi o a}(x) = mu_pi(a x)", depth=10)
def _(d, q):
    for tf in STANDARD:
        for name, alpha in AUTOMORPHISMS.items():
            pre = precomposed(tf, name)
            for x in tuples_up_to_norm(d):
                yield (interval_measure(pre, x) == interval_measure(tf, alpha(x))) or f"{tf}@{name} fails at {x}"


@prop("measures", "interval measure is additive over children", depth=12)
def _(d, q):
    for tf in STANDARD:
        masses = {x: interval_measure(tf, x) for x in tuples_up_to_norm(d)}
        for x in tuples_up_to_norm(d - 1):
            a, b = tree.children(x)
            yield (masses[a] + masses[b] == masses[x]) or f"{tf}: mu(I{x}) != sum over its children"


@prop("measures", "sibling-sum law for all six kinds", depth=12)
def _(d, q):
    for tf in STANDARD:
        report = validate_transition(tf, d)
        yield report.ok or f"{tf}: {report.violation}"


@prop("measures", "lineage products are reciprocal integers", depth=14)
def _(d, q):
    for tf in (LEBESGUE, J_LEBESGUE):
        for x in tuples_up_to_norm(d):
            yield (interval_measure(tf, x).numerator == 1) or f"{tf}: mu(I{x}) is not 1/n"


@prop("measures", "c.d.f. grids are monotone", max_den=256)
def _(d, q):
    for tf in STANDARD:
        grid = cdf_grid(tf, q)
        ok = all(a.F <= b.F for a, b in zip(grid, grid[1:])) and grid[0].F == 0 and grid[-1].F == 1
        yield ok or f"{tf}: c.d.f. grid not monotone"


@prop("measures", "three forms of pi_lambda agree", depth=14)
def _(d, q):
    for x in _nonroot(d):
        forms = pi_lambda_forms(x)
        yield (forms.agree and forms.digit_formula == pi_eval(LEBESGUE, x)) or f"pi_lambda forms differ at {x}"


@prop("measures", "deformed kinds: KJ pi_lambda = JK pi_lambda, J pi_lambda = pi_lambda J", depth=12)
def _(d, q):
    for x in _nonroot(d):
        p = pi_eval(LEBESGUE, x)
        yield (pi_eval(KJ_LEBESGUE, x) == jimm_rational(1 - p)) or f"KJ != JK at {x}"
        yield (pi_eval(J_LEBESGUE, x) == pi_eval(precomposed(LEBESGUE, "J"), x)) or f"J pi != pi J at {x}"


# -- running -----------------------------------------------------------------------------------------

@dataclass
class PropertyOutcome:
    prop: Property
    depth: int
    max_den: int
    result: CheckResult
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.result.ok else "FAIL"
        bound = []
        if self.prop.depth:
            bound.append(f"depth<={self.depth}")
        if self.prop.max_den:
            bound.append(f"q<={self.max_den}")
        text = f"{status}  [{self.prop.module}] {self.prop.name} ({', '.join(bound)}; {self.result.count} checks, {self.seconds:.2f}s)"
        if not self.result.ok:
            text += f"\n      {self.result.failure}"
        return text


def run_all(depth: int, properties: Iterable[Property] = PROPERTIES) -> list[PropertyOutcome]:
    outcomes = []
    for p in properties:
        d, q = p.bounds(depth)
        start = time.perf_counter()
        result = p.check(d, q)
        outcomes.append(PropertyOutcome(p, d, q, result, time.perf_counter() - start))
    return outcomes
