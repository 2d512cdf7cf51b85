"""Exact interval unions and step fuzzy sets on the real line.

Every coordinate and membership level is a :class:`fractions.Fraction`.
Binary floats are refused at the boundary so that equality tests stay exact.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

RationalLike = Union[int, Fraction, str]
Interval = Tuple[Fraction, Fraction]

__all__ = [
    "Diagnostic",
    "IntervalUnion",
    "StepFuzzySet",
    "alpha_cut",
    "as_rational",
    "canonicalize",
    "membership",
    "validate",
]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts ints, Fractions and strings such as ``"3/8"`` or ``"0.375"``.
    Floats and bools are rejected.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational from {value!r}") from exc
    raise TypeError(
        f"expected an exact rational (int, Fraction or str), got {type(value).__name__}"
    )


@dataclass(frozen=True)
class IntervalUnion:
    """A finite union of closed intervals ``[lo, hi]``, in canonical form.

    Use :func:`canonicalize` (or :meth:`of`) to build one from arbitrary
    pairs; the bare constructor trusts its input. Degenerate intervals
    ``[x, x]`` represent single points.
    """

    intervals: Tuple[Interval, ...] = ()

    @classmethod
    def of(cls, *pairs: Tuple[RationalLike, RationalLike]) -> "IntervalUnion":
        return canonicalize(pairs)

    @classmethod
    def point(cls, x: RationalLike) -> "IntervalUnion":
        x = as_rational(x)
        return cls(((x, x),))

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        parts = []
        for lo, hi in self.intervals:
            parts.append(f"{{{lo}}}" if lo == hi else f"[{lo}, {hi}]")
        return " U ".join(parts)

    @property
    def lo(self) -> Fraction:
        return self.intervals[0][0]

    @property
    def hi(self) -> Fraction:
        return self.intervals[-1][1]

    def is_empty(self) -> bool:
        return not self.intervals

    def is_canonical(self) -> bool:
        prev_hi = None
        for lo, hi in self.intervals:
            if not (isinstance(lo, Fraction) and isinstance(hi, Fraction)):
                return False
            if lo > hi:
                return False
            if prev_hi is not None and lo <= prev_hi:
                return False
            prev_hi = hi
        return True

    def endpoints(self) -> list[Fraction]:
        out: list[Fraction] = []
        for lo, hi in self.intervals:
            out.append(lo)
            if hi != lo:
                out.append(hi)
        return out

    def gaps(self) -> list[Interval]:
        """Open gaps ``(hi_k, lo_{k+1})`` between consecutive intervals."""
        return [
            (self.intervals[k][1], self.intervals[k + 1][0])
            for k in range(len(self.intervals) - 1)
        ]

    def contains(self, x: RationalLike) -> bool:
        x = as_rational(x)
        k = bisect_right(self.intervals, (x, _INF)) - 1
        return k >= 0 and self.intervals[k][0] <= x <= self.intervals[k][1]

    __contains__ = contains

    def distance_to(self, x: Fraction) -> Fraction:
        """Distance from the point ``x`` to the nearest point of the union."""
        if not self.intervals:
            raise ValueError("distance to an empty union is undefined")
        k = bisect_right(self.intervals, (x, _INF)) - 1
        best: Optional[Fraction] = None
        if k >= 0:
            lo, hi = self.intervals[k]
            if x <= hi:
                return Fraction(0)
            best = x - hi
        if k + 1 < len(self.intervals):
            d = self.intervals[k + 1][0] - x
            best = d if best is None else min(best, d)
        return best  # type: ignore[return-value]

    def issubset(self, other: "IntervalUnion") -> bool:
        for lo, hi in self.intervals:
            k = bisect_right(other.intervals, (lo, _INF)) - 1
            if k < 0 or not (other.intervals[k][0] <= lo and hi <= other.intervals[k][1]):
                return False
        return True

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return canonicalize(self.intervals + other.intervals)

    def map_affine(self, scale: Fraction, shift: Fraction = Fraction(0)) -> "IntervalUnion":
        pairs = []
        for lo, hi in self.intervals:
            a, b = scale * lo + shift, scale * hi + shift
            pairs.append((min(a, b), max(a, b)))
        return canonicalize(pairs)


class _Infinity:
    # sorts after every Fraction so that bisect on (x, _INF) lands right of (x, hi)
    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return True

    def __le__(self, other):
        return self is other

    def __ge__(self, other):
        return True


_INF = _Infinity()


def canonicalize(intervals: Iterable[Tuple[RationalLike, RationalLike]]) -> IntervalUnion:
    """Sort and merge closed intervals into canonical form.

    Overlapping or touching intervals are merged. Raises ``ValueError`` on
    an empty input or on a pair with ``lo > hi``.
    """
    pairs: list[Interval] = []
    for item in intervals:
        try:
            lo_raw, hi_raw = item
        except (TypeError, ValueError) as exc:
            raise ValueError(f"interval must be a (lo, hi) pair, got {item!r}") from exc
        lo, hi = as_rational(lo_raw), as_rational(hi_raw)
        if lo > hi:
            raise ValueError(f"interval has lo > hi: [{lo}, {hi}]")
        pairs.append((lo, hi))
    if not pairs:
        raise ValueError("an interval union needs at least one interval")
    pairs.sort()
    merged = [pairs[0]]
    for lo, hi in pairs[1:]:
        cur_lo, cur_hi = merged[-1]
        if lo <= cur_hi:
            if hi > cur_hi:
                merged[-1] = (cur_lo, hi)
        else:
            merged.append((lo, hi))
    return IntervalUnion(tuple(merged))


@dataclass(frozen=True)
class Diagnostic:
    code: str
    index: Optional[int]
    message: str

    def __str__(self) -> str:
        where = "" if self.index is None else f" (k={self.index})"
        return f"{self.code}{where}: {self.message}"


@dataclass(frozen=True)
class StepFuzzySet:
    """Upper semicontinuous fuzzy set with finitely many membership values.

    ``levels`` is a tuple of ``(alpha_k, cut_k)`` with ``0 < alpha_1 < ... <
    alpha_m = 1``. The alpha-cut for ``alpha`` in ``(alpha_{k-1}, alpha_k]``
    is ``cut_k`` (with ``alpha_0 = 0``); the 0-cut is ``support``.

    Build instances through :meth:`from_levels`, which canonicalizes and
    validates. The raw constructor does neither, so that :func:`validate`
    can report on malformed data.
    """

    levels: Tuple[Tuple[Fraction, IntervalUnion], ...]
    support: IntervalUnion
    _alphas: Tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_alphas", tuple(a for a, _ in self.levels))

    @classmethod
    def from_levels(
        cls,
        levels: Sequence[Tuple[RationalLike, object]],
        support: object = None,
    ) -> "StepFuzzySet":
        """Build and validate a step fuzzy set.

        Each cut may be an :class:`IntervalUnion` or an iterable of
        ``(lo, hi)`` pairs. ``support`` defaults to the first cut, which is
        the closure of the union of all cuts.
        """
        built = []
        for alpha, cut in levels:
            built.append((as_rational(alpha), _as_union(cut)))
        if support is None:
            if not built:
                raise ValueError("a step fuzzy set needs at least one level")
            supp = built[0][1]
        else:
            supp = _as_union(support)
        u = cls(tuple(built), supp)
        problems = validate(u)
        if problems:
            raise ValueError(
                "invalid step fuzzy set: " + "; ".join(str(p) for p in problems)
            )
        return u

    @property
    def alphas(self) -> Tuple[Fraction, ...]:
        return self._alphas

    @property
    def cuts(self) -> Tuple[IntervalUnion, ...]:
        return tuple(c for _, c in self.levels)

    def __len__(self) -> int:
        return len(self.levels)

    def band(self, k: int) -> Tuple[Fraction, Fraction]:
        """Level band ``(alpha_{k-1}, alpha_k]`` of the 0-based level ``k``."""
        lo = self.levels[k - 1][0] if k > 0 else Fraction(0)
        return lo, self.levels[k][0]


def _as_union(cut: object) -> IntervalUnion:
    if isinstance(cut, IntervalUnion):
        if not cut.is_canonical():
            return canonicalize(cut.intervals)
        return cut
    return canonicalize(cut)  # type: ignore[arg-type]


def validate(u: StepFuzzySet) -> list[Diagnostic]:
    """List every violated invariant of ``u``; empty means valid."""
    out: list[Diagnostic] = []
    if not u.levels:
        out.append(Diagnostic("empty", None, "no levels"))
        return out
    prev_alpha = Fraction(0)
    for k, (alpha, cut) in enumerate(u.levels):
        if not isinstance(alpha, Fraction):
            out.append(Diagnostic("non-rational", k, f"level {alpha!r} is not a Fraction"))
            continue
        if alpha <= prev_alpha:
            out.append(
                Diagnostic("order", k, f"level {alpha} does not exceed previous {prev_alpha}")
            )
        prev_alpha = max(prev_alpha, alpha)
        if alpha > 1:
            out.append(Diagnostic("range", k, f"level {alpha} exceeds 1"))
        if cut.is_empty():
            out.append(Diagnostic("empty-cut", k, "cut is empty"))
        elif not cut.is_canonical():
            out.append(Diagnostic("non-canonical", k, f"cut {cut} is not canonical"))
    if u.levels[-1][0] != 1:
        out.append(
            Diagnostic("top-level", len(u.levels) - 1, "last level must be alpha = 1")
        )
    for k in range(1, len(u.levels)):
        inner, outer = u.levels[k][1], u.levels[k - 1][1]
        if inner and outer and inner.is_canonical() and outer.is_canonical():
            if not inner.issubset(outer):
                out.append(
                    Diagnostic("nestedness", k, f"cut {inner} is not inside cut {outer}")
                )
    supp = u.support
    if supp.is_empty():
        out.append(Diagnostic("support", None, "support is empty"))
    elif not supp.is_canonical():
        out.append(Diagnostic("support", None, f"support {supp} is not canonical"))
    else:
        first = u.levels[0][1]
        if first and first.is_canonical() and not first.issubset(supp):
            out.append(
                Diagnostic("support", 0, f"first cut {first} is not inside support {supp}")
            )
    return out


def alpha_cut(u: StepFuzzySet, alpha: RationalLike) -> IntervalUnion:
    alpha = as_rational(alpha)
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if alpha == 0:
        return u.support
    return u.levels[bisect_left(u.alphas, alpha)][1]


def membership(u: StepFuzzySet, x: RationalLike) -> Fraction:
    """Largest level whose cut contains ``x``, or 0."""
    x = as_rational(x)
    for alpha, cut in reversed(u.levels):
        if x in cut:
            return alpha
    return Fraction(0)
