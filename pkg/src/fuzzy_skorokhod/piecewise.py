"""Piecewise-linear interpolation over exact knots."""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Sequence, Tuple

from .core import RationalLike, as_rational

Knot = Tuple[Fraction, Fraction]


def parse_knots(knots: Sequence[Tuple[RationalLike, RationalLike]]) -> Tuple[Knot, ...]:
    out = []
    for item in knots:
        try:
            x, y = item
        except (TypeError, ValueError) as exc:
            raise ValueError(f"knot must be an (x, y) pair, got {item!r}") from exc
        out.append((as_rational(x), as_rational(y)))
    if len(out) < 2:
        raise ValueError("a piecewise-linear function needs at least two knots")
    for (x0, _), (x1, _) in zip(out, out[1:]):
        if x1 <= x0:
            raise ValueError(f"knot abscissae must be strictly increasing ({x0} then {x1})")
    return tuple(out)


def evaluate(knots: Sequence[Knot], x: Fraction) -> Fraction:
    if x < knots[0][0] or x > knots[-1][0]:
        raise ValueError(f"{x} lies outside [{knots[0][0]}, {knots[-1][0]}]")
    xs = [k[0] for k in knots]
    i = bisect_right(xs, x) - 1
    if i >= len(knots) - 1:
        return knots[-1][1]
    (x0, y0), (x1, y1) = knots[i], knots[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def slopes(knots: Sequence[Knot]) -> list[Fraction]:
    return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(knots, knots[1:])]
