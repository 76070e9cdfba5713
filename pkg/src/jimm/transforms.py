"""Tree automorphisms K and Jimm, the flip, and the Farey/parent maps.

Every map exists on tuples and, via ``theta``, on rationals in (0,1).  Jimm has
two independent implementations: :func:`jimm_tuple` rewrites the symbolic tuple
``(1_{n_1-1}, 2, 1_{n_2-2}, 2, ..., 2, 1_{n_k-1})``, while :func:`jimm_matrix`
folds ``T^d U`` over the continued-fraction digits.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .cf import (
    ROOT,
    CFTuple,
    DomainError,
    format_rational,
    normalize_zeros,
    theta,
    theta_inverse,
)


class RootAbsorbed(DomainError):
    """The Farey map sends the root (1) outside the tree."""


class NoParent(DomainError):
    """The root (1) has no parent."""


# -- K and the flip ---------------------------------------------------------------

def k_tuple(x: Sequence[int]) -> CFTuple:
    x = CFTuple(x)
    return normalize_zeros((1, x[0] - 1) + x[1:])


def k_rational(r: Fraction) -> Fraction:
    r = Fraction(r)
    if not 0 < r < 1:
        raise DomainError(f"{format_rational(r)} is not in (0,1)")
    return 1 - r


def flip_tuple(x: Sequence[int]) -> CFTuple:
    return CFTuple(reversed(CFTuple(x)))


def flip_rational(r: Fraction) -> Fraction:
    return theta(flip_tuple(theta_inverse(r)))


# -- Jimm by rewriting --------------------------------------------------------------

class Ones(NamedTuple):
    """Placeholder ``1_m`` for ``m`` in {-1, 0}, kept until eliminated."""

    count: int

    def __str__(self) -> str:
        return f"1_{{{self.count}}}" if self.count < 0 else f"1_{self.count}"


Entry = Union[int, Ones]


@dataclass(frozen=True)
class RewriteTrace:
    steps: tuple[tuple[tuple[Entry, ...], str], ...] = field(default_factory=tuple)

    @property
    def result(self) -> CFTuple:
        return CFTuple(self.steps[-1][0])

    def render(self) -> str:
        lines = []
        for entries, rule in self.steps:
            text = "(" + ",".join(str(e) for e in entries) + ")"
            lines.append(f"{text:<40} {rule}" if rule else text)
        return "\n".join(lines)


def _ones(m: int) -> list[Entry]:
    if m >= 1:
        return [1] * m
    if m in (-1, 0):
        return [Ones(m)]
    raise AssertionError(f"1_{m} cannot occur")


def jimm_raw(x: Sequence[int]) -> list[Entry]:
    """The symbolic tuple before any elimination rule is applied."""
    x = CFTuple(x)
    k = len(x)
    if k == 1:
        return [1] * x[0]
    raw = _ones(x[0] - 1)
    for n in x[1:-1]:
        raw += [2] + _ones(n - 2)
    raw += [2] + _ones(x[-1] - 1)
    return raw


def _rewrite_once(entries: list[Entry]) -> tuple[list[Entry], str] | None:
    for i, e in enumerate(entries):
        if not isinstance(e, Ones):
            continue
        last = len(entries) - 1
        if e.count == -1:
            if i == 0 or i == last:
                raise AssertionError(f"1_{{-1}} at the boundary of {entries!r}")
            m, n = entries[i - 1], entries[i + 1]
            if isinstance(m, Ones) or isinstance(n, Ones):
                raise AssertionError(f"adjacent placeholders in {entries!r}")
            return entries[: i - 1] + [m + n - 1] + entries[i + 2 :], f"[m,1_{{-1}},n] -> [m+n-1] at {i}"
        if i == 0:
            return entries[1:], "[1_0,m,...] -> [m,...]"
        if i == last:
            return entries[:-1], "[...,m,1_0] -> [...,m]"
        return entries[:i] + entries[i + 1 :], f"[m,1_0,n] -> [m,n] at {i}"
    return None


def jimm_trace(x: Sequence[int]) -> RewriteTrace:
    """Normalize the raw Jimm tuple, leftmost placeholder first, recording each step."""
    entries = jimm_raw(x)
    steps = [(tuple(entries), "")]
    while True:
        out = _rewrite_once(entries)
        if out is None:
            break
        entries, rule = out
        steps.append((tuple(entries), rule))
    return RewriteTrace(tuple(steps))


def jimm_tuple(x: Sequence[int]) -> CFTuple:
    """Jimm on tuples; same normal form as :func:`jimm_trace` in a single pass.

    Eliminating placeholders leftmost-first never touches anything to the right
    of the current one, so a left-to-right stack sees the same neighbours.
    """
    out: list[int] = []
    glue = False
    for e in jimm_raw(x):
        if isinstance(e, Ones):
            # 1_{-1} merges its neighbours; 1_0 just disappears
            glue = e.count == -1
            continue
        if glue:
            out[-1] += e - 1
            glue = False
        else:
            out.append(e)
    return CFTuple.trusted(out)


def jimm_rational(r: Fraction) -> Fraction:
    return theta(jimm_tuple(theta_inverse(r)))


# -- Jimm by 2x2 matrices -------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = IDENTITY, self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


IDENTITY = Mat2(1, 0, 0, 1)
T = Mat2(1, 1, 1, 0)
U = Mat2(0, 1, 1, 0)


def _all_digits(r: Fraction) -> list[int]:
    p, q = r.numerator, r.denominator
    digits = []
    while q:
        a, b = divmod(p, q)
        digits.append(a)
        p, q = q, b
    return digits


def jimm_matrix(r: Fraction) -> Fraction:
    """Jimm of a positive rational from the product of ``T**d @ U`` over its digits."""
    r = Fraction(r)
    if r <= 0:
        raise DomainError(f"jimm_matrix needs r > 0, got {format_rational(r)}")
    digits = _all_digits(r)
    if digits[0] == 0:
        digits = digits[1:]
    m = IDENTITY
    for d in digits:
        m = m @ T**d @ U
    if r < 1:
        return Fraction(m.d, m.b)
    return Fraction(m.b, m.d)


def jimm_extended(r: Fraction) -> Fraction:
    """Jimm on all nonzero rationals: ``J(1/x) = 1/J(x)``, ``J(-x) = -1/J(x)``."""
    r = Fraction(r)
    if r == 0:
        raise DomainError("Jimm is not defined at 0")
    if r < 0:
        return -1 / jimm_extended(-r)
    if r == 1:
        return r
    if r > 1:
        return 1 / jimm_rational(1 / r)
    return jimm_rational(r)


def calkin_wilf(count: int) -> list[Fraction]:
    """The first ``count`` terms of the Calkin-Wilf sequence, breadth first."""
    if count < 1:
        raise ValueError("count must be positive")
    out: list[Fraction] = []
    queue = deque([(1, 1)])
    while len(out) < count:
        a, b = queue.popleft()
        out.append(Fraction(a, b))
        queue.append((a, a + b))
        queue.append((a + b, b))
    return out


def twisted_calkin_wilf(count: int) -> list[Fraction]:
    return [jimm_extended(r) for r in calkin_wilf(count)]


# -- Farey map and parent map -------------------------------------------------------------

def farey_map_tuple(x: Sequence[int]) -> CFTuple:
    x = CFTuple(x)
    if x == ROOT:
        raise RootAbsorbed("the Farey map sends the root (1) to the empty word")
    return normalize_zeros((x[0] - 1,) + x[1:])


def farey_map_rational(r: Fraction) -> Fraction:
    r = Fraction(r)
    if not 0 < r < 1:
        raise DomainError(f"{format_rational(r)} is not in (0,1)")
    if r < Fraction(1, 2):
        return r / (1 - r)
    return (1 - r) / r


def parent_map(x: Sequence[int]) -> CFTuple:
    x = CFTuple(x)
    if x == ROOT:
        raise NoParent("the root (1) has no parent")
    if x[-1] == 1:
        return CFTuple.trusted(x[:-1])
    return CFTuple.trusted(x[:-1] + (x[-1] - 1,))


# name -> tuple automorphism, for pre-composition
AUTOMORPHISMS = {
    "K": k_tuple,
    "J": jimm_tuple,
    "KJ": lambda x: k_tuple(jimm_tuple(x)),
}
