"""Farey tree navigation, Farey intervals and text/DOT tree renderers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cf import ROOT, CFTuple, cf_value, continuant, format_rational, theta
from .transforms import flip_tuple, jimm_rational, jimm_tuple, parent_map

MAX_RENDER_DEPTH = 12
VARIANTS = ("farey", "flipped", "jimm", "monoid", "lebesgue", "jimm-lebesgue")
FORMATS = ("text", "dot")


@dataclass(frozen=True)
class FareyInterval:
    """An edge ``[p/q, r/s]`` of the tree with ``qr - ps = 1``."""

    left: Fraction
    right: Fraction

    def __post_init__(self):
        p, q = self.left.numerator, self.left.denominator
        r, s = self.right.numerator, self.right.denominator
        if q * r - p * s != 1:
            raise ValueError(f"[{self.left}, {self.right}] is not a Farey interval")

    @property
    def length(self) -> Fraction:
        return Fraction(1, self.left.denominator * self.right.denominator)

    @property
    def median(self) -> Fraction:
        return Fraction(
            self.left.numerator + self.right.numerator,
            self.left.denominator + self.right.denominator,
        )

    def __contains__(self, r: Fraction) -> bool:
        # open interval: the endpoints belong to ancestors, not descendants
        return self.left < r < self.right

    def __str__(self) -> str:
        return f"[{format_rational(self.left)}, {format_rational(self.right)}]"


def children(x: Sequence[int]) -> tuple[CFTuple, CFTuple]:
    """The two children ``(n_1, ..., n_k + 1)`` and ``(n_1, ..., n_k, 1)``, in that order."""
    if not isinstance(x, CFTuple):
        x = CFTuple(x)
    return CFTuple.trusted(x[:-1] + (x[-1] + 1,)), CFTuple.trusted(x + (1,))


def planar_children(x: Sequence[int]) -> tuple[CFTuple, CFTuple]:
    """The two children as drawn, left to right, i.e. in increasing order of value.

    Growing the last entry moves towards 0 when ``k`` is odd and towards 1
    when ``k`` is even.
    """
    extend, append = children(x)
    if len(x) % 2:
        return extend, append
    return append, extend


def sibling(x: Sequence[int]) -> CFTuple:
    x = CFTuple(x)
    a, b = children(parent_map(x))
    return b if x == a else a


def interval_of(x: Sequence[int]) -> FareyInterval:
    x = CFTuple(x)
    a = cf_value(x[:-1])
    b = cf_value(x)
    return FareyInterval(min(a, b), max(a, b))


def interval_length(x: Sequence[int]) -> Fraction:
    """``1/(<n_1..n_{k-1}> <n_1..n_k>)``, straight from the continuants."""
    x = CFTuple(x)
    return Fraction(1, continuant(x[:-1]) * continuant(x))


def lineage(x: Sequence[int]) -> list[CFTuple]:
    """``x``, its parent, ..., up to the root; ``norm(x) + 1`` entries."""
    out = [CFTuple(x)]
    while out[-1] != ROOT:
        out.append(parent_map(out[-1]))
    return out


def is_ancestor(x: Sequence[int], y: Sequence[int]) -> bool:
    """True if ``x`` lies on the lineage of ``y`` (``x == y`` included)."""
    return CFTuple(x) in lineage(y)


def level_order(depth: int) -> list[list[CFTuple]]:
    """Levels 0..depth-1 of the tree, each in planar order."""
    levels = [[ROOT]]
    for _ in range(depth - 1):
        levels.append([c for x in levels[-1] for c in planar_children(x)])
    return levels


# -- rendering ---------------------------------------------------------------------

@dataclass(frozen=True)
class TreeRenderSpec:
    variant: str
    depth: int = 5
    format: str = "text"
    max_depth: int = MAX_RENDER_DEPTH

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown tree variant {self.variant!r}; choose from {', '.join(VARIANTS)}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; choose from {', '.join(FORMATS)}")
        if not 1 <= self.depth <= self.max_depth:
            raise ValueError(f"depth must be between 1 and {self.max_depth}, got {self.depth}")


def _probability_label(r: Fraction) -> str:
    # the certain arrival at the root is printed as a bare 1
    return "1" if r == 1 else format_rational(r)


def node_labeller(variant: str, tf: Optional[Callable[[CFTuple], Fraction]] = None) -> Callable[[CFTuple], str]:
    if variant == "farey":
        return lambda x: format_rational(theta(x))
    if variant == "flipped":
        return lambda x: format_rational(theta(flip_tuple(x)))
    if variant == "jimm":
        return lambda x: format_rational(theta(jimm_tuple(x)))
    if variant == "monoid":
        return str
    if tf is None:
        from .measures import LEBESGUE

        tf = LEBESGUE
    if variant == "lebesgue":
        return lambda x: _probability_label(tf(x))
    if variant == "jimm-lebesgue":
        return lambda x: _probability_label(_jimm_probability(tf(x)))
    raise ValueError(f"unknown tree variant {variant!r}")


def _jimm_probability(r: Fraction) -> Fraction:
    return r if r == 1 else jimm_rational(r)


def render_tree(spec: TreeRenderSpec, tf: Optional[Callable[[CFTuple], Fraction]] = None) -> str:
    label = node_labeller(spec.variant, tf)
    if spec.format == "text":
        lines: list[str] = []

        def walk(x: CFTuple, level: int) -> None:
            lines.append(f"{'  ' * level}{label(x)}  [{x}]")
            if level + 1 < spec.depth:
                for c in planar_children(x):
                    walk(c, level + 1)

        walk(ROOT, 0)
        return "\n".join(lines) + "\n"

    lines = [f'digraph "{spec.variant}" {{', "  node [shape=plaintext];"]
    for level in level_order(spec.depth):
        for x in level:
            lines.append(f'  "{x}" [label="{label(x)}", tooltip="{x}"];')
            if x != ROOT:
                lines.append(f'  "{parent_map(x)}" -> "{x}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


