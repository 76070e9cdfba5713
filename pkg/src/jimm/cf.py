"""Continued-fraction tuples, the theta bijection and the star monoid.

Rationals are plain :class:`fractions.Fraction` values throughout.  A vertex of
the Farey tree is a :class:`CFTuple` ``(n_1, ..., n_k)`` of positive integers;
``theta`` sends it to ``[0; n_1, ..., n_k + 1]``.
"""

from __future__ import annotations

import re
from math import gcd
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class CFTuple(tuple):
    """An element of the monoid X: a nonempty tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int] = ()):
        self = super().__new__(cls, entries)
        if not self:
            raise ValueError("CFTuple must be nonempty; the neutral element is (1)")
        for n in self:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"CFTuple entries must be positive integers, got {tuple(self)!r}")
        return self

    @classmethod
    def trusted(cls, entries: Iterable[int]) -> "CFTuple":
        """Build without validation; for hot paths whose entries are known positive."""
        return tuple.__new__(cls, entries)

    @property
    def norm(self) -> int:
        """Depth in the tree, ``n_1 + ... + n_k - 1``."""
        return sum(self) - 1

    @property
    def length(self) -> int:
        return len(self)

    @property
    def is_right_child(self) -> bool:
        return len(self) % 2 == 0

    @property
    def is_left_child(self) -> bool:
        return len(self) % 2 == 1

    def __str__(self) -> str:
        return "(" + ",".join(str(n) for n in self) + ")"

    def __repr__(self) -> str:
        return f"CFTuple({str(self)})"


ROOT = CFTuple((1,))
L = CFTuple((2,))
R = CFTuple((1, 1))


def normalize_zeros(entries: Sequence[int]) -> CFTuple:
    """Remove zero entries: ``(..., m, 0, n, ...) -> (..., m + n, ...)``.

    Leading and trailing zeros are dropped.  An all-zero input collapses to
    the neutral element ``(1)``.
    """
    out = list(entries)
    if any(n < 0 for n in out):
        raise ValueError(f"negative entry in {tuple(entries)!r}")
    while 0 in out:
        i = out.index(0)
        if i == 0 or i == len(out) - 1:
            del out[i]
        else:
            out[i - 1 : i + 2] = [out[i - 1] + out[i + 1]]
    return CFTuple(out) if out else ROOT


# -- continued fractions -----------------------------------------------------

def continuant(seq: Sequence[int]) -> int:
    """Continuant via ``q_k = n_k q_{k-1} + q_{k-2}``; the empty continuant is 1."""
    prev, cur = 0, 1
    for n in seq:
        prev, cur = cur, n * cur + prev
    return cur


def cf_value(digits: Sequence[int]) -> Fraction:
    """Evaluate ``[0; d_1, ..., d_m]`` exactly.  Zero digits are allowed."""
    p_prev, p = 1, 0
    q_prev, q = 0, 1
    for d in digits:
        p_prev, p = p, d * p + p_prev
        q_prev, q = q, d * q + q_prev
    return Fraction(p, q)


def _check_unit_open(r: Fraction) -> None:
    if not 0 < r < 1:
        raise DomainError(f"{format_rational(r)} is not in (0,1)")


def cf_expand(r: Fraction) -> list[int]:
    """Canonical digits ``[m_1, ..., m_j]`` of ``r = [0; m_1, ..., m_j]``, last digit >= 2."""
    r = Fraction(r)
    _check_unit_open(r)
    p, q = r.numerator, r.denominator
    digits = []
    while q:
        a, b = divmod(p, q)
        digits.append(a)
        p, q = q, b
    return digits[1:]


def theta(x: Sequence[int]) -> Fraction:
    x = CFTuple(x)
    return cf_value(x[:-1] + (x[-1] + 1,))


def theta_inverse(r: Fraction) -> CFTuple:
    digits = cf_expand(r)
    digits[-1] -= 1
    return CFTuple(digits)


# -- the monoid ----------------------------------------------------------------

def star(x: Sequence[int], y: Sequence[int]) -> CFTuple:
    if not isinstance(x, CFTuple):
        x = CFTuple(x)
    if not isinstance(y, CFTuple):
        y = CFTuple(y)
    if len(x) % 2:
        # left child: n_k absorbs m_1 - 1, which is >= 0
        return CFTuple.trusted(x[:-1] + (x[-1] + y[0] - 1,) + y[1:])
    if y[0] > 1:
        return CFTuple.trusted(x + (y[0] - 1,) + y[1:])
    # right child with m_1 = 1: the zero glues n_k to m_2, or vanishes at the end
    if len(y) == 1:
        return x
    return CFTuple.trusted(x[:-1] + (x[-1] + y[1],) + y[2:])


def star_rational(a: Fraction, b: Fraction) -> Fraction:
    return theta(star(theta_inverse(a), theta_inverse(b)))


def lr_word(x: Sequence[int]) -> str:
    """The word in the free generators ``L = (2)``, ``R = (1,1)`` equal to ``x``."""
    x = CFTuple(x)
    parts = ["L" * (x[0] - 1)]
    for i, n in enumerate(x[1:], start=1):
        parts.append(("R" if i % 2 else "L") * n)
    return "".join(parts)


def from_word(word: str) -> CFTuple:
    """Fold a word over ``{L, R}`` back into a tuple with ``star``."""
    x = ROOT
    for ch in word:
        if ch == "L":
            x = star(x, L)
        elif ch == "R":
            x = star(x, R)
        else:
            raise ValueError(f"bad letter {ch!r} in word {word!r}")
    return x


# -- text formats ----------------------------------------------------------------

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer.  Errors carry the offending character position."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        pos = _first_bad_position(text)
        raise ValueError(f"cannot parse rational {text!r}: unexpected character at position {pos}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"cannot parse rational {text!r}: zero denominator at position {m.start(2)}")
    return Fraction(num, den)


def _first_bad_position(text: str) -> int:
    seen_slash = False
    seen_digit = False
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch.isdigit():
            seen_digit = True
        elif ch in "+-" and not seen_digit and not seen_slash:
            continue
        elif ch == "/" and seen_digit and not seen_slash:
            seen_slash = True
            seen_digit = False
        else:
            return i
    return len(text)


def format_rational(r: Fraction) -> str:
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def parse_tuple(text: str) -> CFTuple:
    """Parse ``(n1,n2,...,nk)``; the parentheses are optional."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    try:
        return CFTuple(int(part) for part in body.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse tuple {text!r}: {exc}") from None


def compositions(total: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def tuples_of_norm(n: int) -> list[CFTuple]:
    """All ``2**n`` tuples at depth ``n`` (not in planar order)."""
    return [CFTuple(c) for c in compositions(n + 1)]


def tuples_up_to_norm(n: int) -> list[CFTuple]:
    return [x for d in range(n + 1) for x in tuples_of_norm(d)]


def rationals_up_to(max_den: int) -> list[Fraction]:
    """All reduced ``p/q`` in (0,1) with ``q <= max_den``."""
    return [Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q) if gcd(p, q) == 1]
