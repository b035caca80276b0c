"""Brute-force orbit-reality oracle, sample points, and verification reports.

A complex point x lies over the real orbit space exactly when some group
element maps it to a real vector; for a finite group this is decided by
enumeration. Sample points are drawn as ``x = r + i v`` with ``s r = r`` and
``s v = -v`` for a group element ``s``, so ``s x = conj(x)`` and every
invariant is real at x.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .descriptions import Description, NonRealValueError, SymPolyMatrix
from .exactalg import (
    GaussianRational,
    ParseError,
    RatMatrix,
    as_point,
    format_gaussian,
    format_rational,
    nullspace,
    parse_gaussian,
    psd_check,
)
from .groups import FiniteGroup, GroupError
from .reynolds import find_conjugator

MAX_WITNESSES = 20


@dataclass(frozen=True)
class SamplePoint:
    """A point of Q(i)^n together with an element s such that s x = conj(x)."""

    coords: tuple[GaussianRational, ...]
    conjugator: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "coords", as_point(self.coords))

    @property
    def is_real(self) -> bool:
        return all(v.im == 0 for v in self.coords)

    @property
    def n(self) -> int:
        return len(self.coords)

    def conjugator_ok(self, group: FiniteGroup) -> bool:
        if self.conjugator is None:
            return False
        image = group.elements[self.conjugator].apply(self.coords)
        return image == tuple(v.conjugate() for v in self.coords)

    def to_json(self) -> dict:
        out: dict = {"coords": [format_gaussian(v) for v in self.coords]}
        if self.conjugator is not None:
            out["conjugator_index"] = self.conjugator
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SamplePoint":
        try:
            coords = tuple(parse_gaussian(str(c)) for c in data["coords"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad sample entry: {exc}") from None
        idx = data.get("conjugator_index")
        return cls(coords, None if idx is None else int(idx))


def with_conjugator(group: FiniteGroup, x) -> SamplePoint:
    """Attach a conjugating element found by search; raise if there is none."""
    if isinstance(x, SamplePoint) and x.conjugator is not None:
        if not x.conjugator_ok(group):
            raise ValueError(f"conjugator {x.conjugator} does not map the point to its conjugate")
        return x
    coords = as_point(getattr(x, "coords", x))
    if len(coords) != group.n:
        raise ValueError(f"point has {len(coords)} coordinates, group acts on {group.n}")
    idx = find_conjugator(group, coords)
    if idx is None:
        raise NonRealValueError("no group element maps the point to its conjugate; invariants are not real there")
    return SamplePoint(coords, idx)


def load_samples(source) -> list[SamplePoint]:
    if isinstance(source, (str, Path)):
        try:
            data = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read sample file {source}: {exc}") from None
    else:
        data = source
    if not isinstance(data, list):
        raise ParseError("sample file must hold a JSON list")
    return [SamplePoint.from_json(d) for d in data]


def dump_samples(points: Iterable[SamplePoint]) -> str:
    return json.dumps([p.to_json() for p in points], indent=1) + "\n"


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------

def orbit_contains_real_point(group: FiniteGroup, x) -> bool:
    """True iff some s in G maps x into R^n."""
    pt = as_point(getattr(x, "coords", x))
    if len(pt) != group.n:
        raise ValueError(f"point has {len(pt)} coordinates, group acts on {group.n}")
    if all(v.im == 0 for v in pt):
        return True
    imag = [v.im for v in pt]
    for m in group.elements:
        if all(v == 0 for v in m.apply(imag)):
            return True
    return False


def evaluate_invariants_real(x, polys) -> list[Fraction]:
    """Exact real values of invariant polynomials at a point with a conjugator."""
    if getattr(x, "conjugator", None) is None:
        raise ValueError("point carries no conjugator; invariant values are not certified real")
    pt = x.coords
    out = []
    for p in polys:
        v = p.evaluate(pt)
        if v.im != 0:
            raise NonRealValueError(f"{p} is not real at {[str(c) for c in pt]}")
        out.append(v.re)
    return out


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

_NUMERATORS = [k for k in range(-5, 6) if k]
_DENOMINATORS = (1, 2, 3)


def _small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice(_NUMERATORS), rng.choice(_DENOMINATORS))


def _combine(rng: random.Random, basis: list[tuple[Fraction, ...]], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for b in basis:
        c = _small_rational(rng)
        out = [a + c * v for a, v in zip(out, b)]
    return out


def sample_conjugation_points(group: FiniteGroup, sigma: int, count: int, seed: int = 0,
                              require_nonreal: bool = False) -> list[SamplePoint]:
    """``count`` points x = r + i v with s r = r and s v = -v for s = elements[sigma]."""
    m = group.elements[sigma]
    order = group.element_order(sigma)
    if order != 1 and order % 2:
        raise GroupError(f"element {sigma} has odd order {order}; it cannot conjugate a non-real point")
    n = group.n
    ident = RatMatrix.identity(n)
    fix = nullspace(m - ident)
    anti = nullspace(m + ident)
    if require_nonreal and not anti:
        raise GroupError(f"element {sigma} has no -1 eigenvectors; every sample would be real")
    rng = random.Random(f"{seed}:{sigma}")
    points = []
    for _ in range(count):
        r = _combine(rng, fix, n)
        v = _combine(rng, anti, n)
        points.append(SamplePoint(tuple(GaussianRational(a, b) for a, b in zip(r, v)), sigma))
    return points


def conjugator_classes(group: FiniteGroup) -> list[int]:
    """Representatives of the identity class and of even-order classes with a -1 eigenvector.

    Elements without a -1 eigenvector only conjugate real points, which the
    identity class already covers.
    """
    ident = RatMatrix.identity(group.n)
    reps = []
    for cls in group.conjugacy_classes():
        a = cls[0]
        o = group.element_order(a)
        if o == 1 or (o % 2 == 0 and nullspace(group.elements[a] + ident)):
            reps.append(a)
    return reps


def sample_points(group: FiniteGroup, per_class: int, seed: int = 0) -> list[SamplePoint]:
    """``per_class`` points for every conjugator class (identity gives real points)."""
    pts = []
    for rep in conjugator_classes(group):
        pts.extend(sample_conjugation_points(group, rep, per_class, seed))
    return pts


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Per-sample classification; the four counts partition ``samples_total``."""

    samples_total: int = 0
    agree_count: int = 0
    sound_violations: int = 0
    completeness_violations: int = 0
    boundary_count: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sound_violations == 0 and self.completeness_violations == 0

    def record(self, kind: str, point: SamplePoint, oracle: bool, values) -> None:
        self.samples_total += 1
        if kind == "agree":
            self.agree_count += 1
            return
        if kind == "boundary":
            self.boundary_count += 1
        elif kind == "sound":
            self.sound_violations += 1
        elif kind == "completeness":
            self.completeness_violations += 1
        else:
            raise ValueError(kind)
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append({
                "kind": kind,
                "coords": [format_gaussian(c) for c in point.coords],
                "conjugator_index": point.conjugator,
                "oracle": oracle,
                "values": [format_rational(v) for v in values],
            })

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        w = (self.witnesses + other.witnesses)[:MAX_WITNESSES]
        return VerificationReport(
            self.samples_total + other.samples_total,
            self.agree_count + other.agree_count,
            self.sound_violations + other.sound_violations,
            self.completeness_violations + other.completeness_violations,
            self.boundary_count + other.boundary_count,
            w,
        )

    def to_json(self) -> dict:
        return {
            "samples_total": self.samples_total,
            "agree_count": self.agree_count,
            "sound_violations": self.sound_violations,
            "completeness_violations": self.completeness_violations,
            "boundary_count": self.boundary_count,
            "ok": self.ok,
            "witnesses": self.witnesses,
        }


def classify(mode: str, values: Sequence[Fraction], oracle: bool) -> str:
    """Classify one sample against a description.

    generic: ``sound`` if all > 0 but the point is outside; ``completeness`` if
    inside but some < 0; ``boundary`` if some value is 0.
    full: as generic, except that an outside point with all values >= 0 and
    some = 0 is a ``completeness`` failure (the closed description admits it).
    """
    all_pos = all(v > 0 for v in values)
    any_neg = any(v < 0 for v in values)
    any_zero = any(v == 0 for v in values)
    if all_pos and not oracle:
        return "sound"
    if oracle and any_neg:
        return "completeness"
    if any_zero:
        if mode == "full" and not oracle and not any_neg:
            return "completeness"
        return "boundary"
    return "agree"


def _checked_samples(group: FiniteGroup, samples: Iterable) -> list[SamplePoint]:
    out = []
    for s in samples:
        sp = s if isinstance(s, SamplePoint) else SamplePoint(as_point(s))
        if sp.n != group.n:
            raise ValueError(f"sample has {sp.n} coordinates, group acts on {group.n}")
        out.append(with_conjugator(group, sp))
    return out


def verify_description(group: FiniteGroup, description: Description, samples: Iterable,
                       mode: str | None = None) -> VerificationReport:
    """Compare a description with the oracle on every sample."""
    if description.group.n != group.n:
        raise ValueError("description and group act on different dimensions")
    mode = mode or description.mode
    report = VerificationReport()
    for sp in _checked_samples(group, samples):
        values = evaluate_invariants_real(sp, description.inequalities)
        oracle = orbit_contains_real_point(group, sp)
        report.record(classify(mode, values, oracle), sp, oracle, values)
    return report


def verify_matrix_description(group: FiniteGroup, matrix: SymPolyMatrix, samples: Iterable) -> VerificationReport:
    """PSD-ness of the evaluated matrix against the oracle (exact equivalence expected)."""
    if matrix.n != group.n:
        raise ValueError("matrix and group act on different dimensions")
    report = VerificationReport()
    for sp in _checked_samples(group, samples):
        m = matrix.evaluate(sp)
        psd = psd_check(m)
        oracle = orbit_contains_real_point(group, sp)
        values = [m.determinant()]
        if psd and not oracle:
            kind = "sound"
        elif oracle and not psd:
            kind = "completeness"
        elif psd and values[0] == 0:
            kind = "boundary"
        else:
            kind = "agree"
        report.record(kind, sp, oracle, values)
    return report
