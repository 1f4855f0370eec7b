"""JSON forms of point sets and patterns."""

from __future__ import annotations

import json
from typing import Any

from .grid import PointSet
from .patterns import Pattern

__all__ = ["pointset_to_dict", "pointset_from_dict", "load_pointset", "pattern_from_json", "dumps"]


def pointset_to_dict(points: PointSet, b: int | None = None, m: int | None = None) -> dict[str, Any]:
    """``{"d", "b", "m", "points", ["exact"]}``; ``exact`` holds integer numerators over ``base**exponent``."""
    out: dict[str, Any] = {"d": points.d}
    if b is not None:
        out["b"] = b
    if m is not None:
        out["m"] = m
    out["points"] = points.coords.tolist()
    if points.exact is not None:
        out["exact"] = {
            "base": points.exact_base,
            "exponent": points.exact_exponent,
            "numerators": [[int(n) for n in row] for row in points.exact],
        }
    return out


def pointset_from_dict(data: dict[str, Any]) -> PointSet:
    d = int(data["d"])
    pts = data.get("points", [])
    exact = data.get("exact")
    if exact is not None:
        if not pts:
            return PointSet([], d)
        return PointSet(pts, d, exact=exact["numerators"], exact_base=int(exact["base"]),
                        exact_exponent=int(exact["exponent"]))
    return PointSet(pts, d)


def load_pointset(path: str) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return pointset_from_dict(json.load(fh))


def pattern_from_json(text: str) -> Pattern:
    return Pattern.from_dict(json.loads(text))


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"
