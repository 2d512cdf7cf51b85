"""Piecewise-linear self-maps of [0, 1] and their Zadeh extensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from .core import (
    IntervalUnion,
    RationalLike,
    StepFuzzySet,
    as_rational,
    canonicalize,
)
from .metrics import level_metric_dinf, skorokhod_d0
from .piecewise import Knot, evaluate, parse_knots, slopes

__all__ = [
    "ContractionReport",
    "PLMap",
    "contraction_ratio_report",
    "lipschitz_constant",
    "pl_image",
    "preimage",
    "union_extension",
    "zadeh_extend",
    "zadeh_pointwise",
]


@dataclass(frozen=True)
class PLMap:
    """Continuous piecewise-linear map ``[0, 1] -> [0, 1]`` given by its knots."""

    knots: Tuple[Knot, ...]

    def __post_init__(self) -> None:
        knots = parse_knots(self.knots)
        object.__setattr__(self, "knots", knots)
        if knots[0][0] != 0 or knots[-1][0] != 1:
            raise ValueError("knot abscissae must start at 0 and end at 1")
        for x, y in knots:
            if not 0 <= y <= 1:
                raise ValueError(f"value {y} at {x} leaves [0, 1]")

    @classmethod
    def from_knots(cls, knots: Sequence[Tuple[RationalLike, RationalLike]]) -> "PLMap":
        return cls(tuple(knots))  # type: ignore[arg-type]

    @classmethod
    def linear(cls, slope: RationalLike, intercept: RationalLike = 0) -> "PLMap":
        """``x -> slope * x + intercept``."""
        s, c = as_rational(slope), as_rational(intercept)
        return cls(((Fraction(0), c), (Fraction(1), s + c)))

    @classmethod
    def identity(cls) -> "PLMap":
        return cls.linear(1)

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self.knots, as_rational(x))


def lipschitz_constant(f: PLMap) -> Fraction:
    return max(abs(s) for s in slopes(f.knots))


def pl_image(f: PLMap, A: IntervalUnion) -> IntervalUnion:
    """Exact image ``f(A)``.

    Each interval is split at the knots of ``f``; on every piece ``f`` is
    monotone, so the piece maps onto the interval between its end values.
    """
    if A.is_empty():
        raise ValueError("image of an empty set")
    if A.lo < 0 or A.hi > 1:
        raise ValueError(f"{A} is not inside [0, 1]")
    xs = [x for x, _ in f.knots]
    pieces = []
    for lo, hi in A:
        cuts = [lo] + [x for x in xs if lo < x < hi] + [hi]
        for a, b in zip(cuts, cuts[1:]):
            fa, fb = f(a), f(b)
            pieces.append((min(fa, fb), max(fa, fb)))
    return canonicalize(pieces)


def zadeh_extend(f: PLMap, u: StepFuzzySet) -> StepFuzzySet:
    """Zadeh extension computed cut by cut: ``[f~(u)]_a = f([u]_a)``."""
    return StepFuzzySet(
        tuple((alpha, pl_image(f, cut)) for alpha, cut in u.levels),
        pl_image(f, u.support),
    )


def union_extension(fs: Sequence[PLMap], u: StepFuzzySet) -> StepFuzzySet:
    """Fuzzy set whose alpha-cuts are the unions of the maps' image cuts."""
    if not fs:
        raise ValueError("union_extension needs at least one map")
    images = [zadeh_extend(f, u) for f in fs]
    levels = []
    for k, alpha in enumerate(u.alphas):
        cut = images[0].levels[k][1]
        for img in images[1:]:
            cut = cut.union(img.levels[k][1])
        levels.append((alpha, cut))
    support = images[0].support
    for img in images[1:]:
        support = support.union(img.support)
    return StepFuzzySet(tuple(levels), support)


def preimage(f: PLMap, y: RationalLike) -> Optional[IntervalUnion]:
    """``f^{-1}(y)`` as an interval union, or ``None`` when empty."""
    y = as_rational(y)
    pieces = []
    for (x0, y0), (x1, y1) in zip(f.knots, f.knots[1:]):
        if y0 == y1:
            if y0 == y:
                pieces.append((x0, x1))
        elif min(y0, y1) <= y <= max(y0, y1):
            x = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            pieces.append((x, x))
    return canonicalize(pieces) if pieces else None


def zadeh_pointwise(f: PLMap, u: StepFuzzySet, x: RationalLike) -> Fraction:
    """Zadeh extension from its definition: ``sup{u(z) : f(z) = x}``.

    Slow path used to spot-check :func:`zadeh_extend`. On a step fuzzy set
    the supremum is the largest level whose cut meets the preimage.
    """
    pre = preimage(f, x)
    if pre is None:
        return Fraction(0)
    for alpha, cut in reversed(u.levels):
        if _meets(pre, cut):
            return alpha
    return Fraction(0)


def _meets(A: IntervalUnion, B: IntervalUnion) -> bool:
    return any(a_lo <= b_hi and b_lo <= a_hi for a_lo, a_hi in A for b_lo, b_hi in B)


@dataclass
class ContractionReport:
    metric: str
    ratios: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    max_ratio: Optional[Fraction] = None
    witness_index: Optional[int] = None
    lipschitz: Optional[Fraction] = None

    @property
    def violated(self) -> bool:
        """True when some pair is not brought strictly closer: ratio >= 1."""
        return self.max_ratio is not None and self.max_ratio >= 1


def _extend(fs: Union[PLMap, Sequence[PLMap]], u: StepFuzzySet) -> StepFuzzySet:
    if isinstance(fs, PLMap):
        return zadeh_extend(fs, u)
    if len(fs) == 1:
        return zadeh_extend(fs[0], u)
    return union_extension(fs, u)


def contraction_ratio_report(
    fs: Union[PLMap, Sequence[PLMap]],
    pairs: Iterable[Tuple[StepFuzzySet, StepFuzzySet]],
    metric: str = "d0",
) -> ContractionReport:
    """Ratios ``dist(F(u), F(v)) / dist(u, v)`` over the given pairs.

    ``fs`` is a single map (Zadeh extension) or a list of maps (union
    extension). A maximum ratio of at least 1 shows that the extension is
    not a contraction for any factor below 1. Pairs at distance 0 are
    skipped and listed in ``skipped``.
    """
    if metric == "d0":
        dist = lambda a, b: skorokhod_d0(a, b).value  # noqa: E731
    elif metric == "dinf":
        dist = level_metric_dinf
    else:
        raise ValueError(f"unknown metric {metric!r}; expected 'd0' or 'dinf'")
    maps = [fs] if isinstance(fs, PLMap) else list(fs)
    lips = [lipschitz_constant(f) for f in maps]
    if any(c >= 1 for c in lips):
        raise ValueError(f"every map must be a contraction; Lipschitz constants {lips}")
    report = ContractionReport(metric=metric, lipschitz=max(lips))
    for k, (u, v) in enumerate(pairs):
        base = dist(u, v)
        if base == 0:
            report.skipped.append(k)
            continue
        ratio = dist(_extend(maps, u), _extend(maps, v)) / base
        report.ratios.append((k, ratio))
        if report.max_ratio is None or ratio > report.max_ratio:
            report.max_ratio = ratio
            report.witness_index = k
    return report
