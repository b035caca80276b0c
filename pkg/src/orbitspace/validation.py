"""Input validation helpers shared by the estimators and the CLI."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .exactalg import ParseError, RatMatrix, as_point
from .groups import FiniteGroup, group_closure, load_group
from .oracle import SamplePoint


def check_group(group) -> FiniteGroup:
    """Accept a FiniteGroup, a built-in name or JSON path, or a list of generator matrices."""
    if isinstance(group, FiniteGroup):
        return group
    if isinstance(group, (str, Path)):
        return load_group(group)
    try:
        gens = [m if isinstance(m, RatMatrix) else RatMatrix(m) for m in group]
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot interpret {type(group).__name__} as a group: {exc}") from None
    return group_closure(gens)


def check_point(x, n: int | None = None) -> SamplePoint:
    if isinstance(x, SamplePoint):
        pt = x
    else:
        coords = getattr(x, "coords", x)
        if isinstance(coords, str):
            raise ParseError("pass a point as a sequence of coordinates, not a single string")
        pt = SamplePoint(as_point(coords), getattr(x, "conjugator", None))
    if n is not None and pt.n != n:
        raise ValueError(f"point has {pt.n} coordinates, expected {n}")
    return pt


def check_points(X: Iterable, n: int | None = None) -> list[SamplePoint]:
    """Validate a batch of points; every point must have ``n`` coordinates."""
    pts = [check_point(x, n) for x in X]
    if n is None and pts and len({p.n for p in pts}) > 1:
        raise ValueError("points have different dimensions")
    return pts

