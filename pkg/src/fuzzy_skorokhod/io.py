"""JSON (de)serialization with exact rationals.

Rationals are written as ``"p/q"`` strings (``"1"`` for integers). On input,
``"p/q"`` strings, decimal strings and JSON numbers are all accepted; JSON
numbers are parsed from their literal text, never through a binary float.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .core import IntervalUnion, StepFuzzySet, as_rational, canonicalize
from .dynamics import PLMap
from .metrics import DistanceReport, LowerBoundCertificate, Reparam

PathLike = Union[str, Path]


def fmt(x: Fraction) -> str:
    return str(x)


def decimal(x: Fraction) -> str:
    """Shortest decimal that round-trips the nearest double."""
    return repr(float(x))


def loads(text: str) -> Any:
    return json.loads(text, parse_float=Fraction, parse_int=Fraction)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _rational(raw: Any) -> Fraction:
    if isinstance(raw, Fraction):
        return raw
    return as_rational(raw)


def union_to_json(A: IntervalUnion) -> list:
    return [[fmt(lo), fmt(hi)] for lo, hi in A]


def union_from_json(data: Any) -> IntervalUnion:
    if isinstance(data, dict):
        data = data.get("intervals")
    if not isinstance(data, list):
        raise ValueError("an interval union is a list of [lo, hi] pairs")
    return canonicalize([(_rational(lo), _rational(hi)) for lo, hi in data])


def fuzzy_set_to_json(u: StepFuzzySet) -> dict:
    return {
        "support": union_to_json(u.support),
        "levels": [{"alpha": fmt(a), "cut": union_to_json(c)} for a, c in u.levels],
    }


def fuzzy_set_from_json(data: Any) -> StepFuzzySet:
    if not isinstance(data, dict) or "levels" not in data:
        raise ValueError('a fuzzy set needs a "levels" list')
    levels = [(_rational(lvl["alpha"]), union_from_json(lvl["cut"])) for lvl in data["levels"]]
    support = data.get("support")
    return StepFuzzySet.from_levels(
        levels, None if support is None else union_from_json(support)
    )


def plmap_to_json(f: PLMap) -> dict:
    return {"knots": [[fmt(x), fmt(y)] for x, y in f.knots]}


def plmap_from_json(data: Any) -> PLMap:
    if not isinstance(data, dict) or "knots" not in data:
        raise ValueError('a map needs a "knots" list')
    return PLMap(tuple((_rational(x), _rational(y)) for x, y in data["knots"]))


def reparam_to_json(t: Reparam) -> dict:
    return {"knots": [[fmt(x), fmt(y)] for x, y in t.knots]}


def certificate_to_json(c: LowerBoundCertificate) -> dict:
    return {
        "probe_level": fmt(c.probe_level),
        "epsilon": fmt(c.epsilon),
        "window": [fmt(c.window[0]), fmt(c.window[1])],
        "probe_cut": union_to_json(c.probe_cut),
        "bands": [
            {
                "level_index": b.level_index,
                "band": [fmt(b.band[0]), fmt(b.band[1])],
                "cut": union_to_json(b.cut),
                "hausdorff": fmt(b.distance),
            }
            for b in c.bands
        ],
        "bound": fmt(c.bound),
    }


def report_to_json(r: DistanceReport) -> dict:
    out: dict = {"method": r.method}
    if r.value is not None:
        out["value"] = fmt(r.value)
    out["lower"] = fmt(r.lower)
    out["upper"] = fmt(r.upper)
    out["witness"] = None if r.witness is None else reparam_to_json(r.witness)
    out["certificate"] = None if r.certificate is None else certificate_to_json(r.certificate)
    return out


def read_json(path: PathLike) -> Any:
    return loads(Path(path).read_text())


def write_json(path: PathLike, obj: Any) -> None:
    Path(path).write_text(dumps(obj))


def verification_to_json(r) -> dict:
    """Serialize a :class:`~fuzzy_skorokhod.counterexample.VerificationReport`."""
    out: dict = {"claim": r.claim, "depth": r.depth}
    if r.lam is not None:
        out["lambda"] = fmt(r.lam)
    out["value"] = fmt(r.value)
    out["expected"] = fmt(r.expected)
    out["pass"] = r.passed
    if r.witness is not None:
        out["witness"] = reparam_to_json(r.witness)
    if r.certificate is not None:
        out["certificate"] = certificate_to_json(r.certificate)
    out["checks"] = dict(r.details.get("checks", {}))
    return out
