"""Reynolds operator, polynomial orbits and negative certificates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import GaussianRational, Polynomial, as_point, elementary_symmetric
from .groups import FiniteGroup, GroupError, Subgroup, act_on_poly


class CertificateError(ValueError):
    """No negative certificate exists at the requested point."""


def _matrices(group) -> list:
    if isinstance(group, Subgroup):
        return group.elements
    if isinstance(group, FiniteGroup):
        return group.elements
    return list(group)


def _generator_matrices(group) -> list:
    if isinstance(group, FiniteGroup):
        return group.generator_matrices
    if isinstance(group, Subgroup):
        return group.elements
    return list(group)


def reynolds(group, h: Polynomial) -> Polynomial:
    """Average of ``h`` over the group: (1/|G|) sum_s h^s."""
    mats = _matrices(group)
    total = Polynomial.zero(h.n)
    for m in mats:
        total = total + act_on_poly(m, h)
    return total.scale(Fraction(1, len(mats)))


def is_invariant(group, h: Polynomial) -> bool:
    return all(act_on_poly(m, h) == h for m in _generator_matrices(group))


def poly_orbit(group, h: Polynomial) -> list[Polynomial]:
    """Distinct images h^s, in group element order."""
    seen = set()
    orbit = []
    for m in _matrices(group):
        img = act_on_poly(m, h)
        if img not in seen:
            seen.add(img)
            orbit.append(img)
    return orbit


def char_poly_of_element(group, f: Polynomial) -> list[Polynomial]:
    """Coefficients of prod_s (T - f^s), leading coefficient first.

    Every coefficient is an invariant polynomial; this is checked.
    """
    images = [act_on_poly(m, f) for m in _matrices(group)]
    e = [Polynomial.constant(f.n, 1)] + [Polynomial.zero(f.n)] * len(images)
    for v in images:
        for j in range(len(images), 0, -1):
            e[j] = e[j] + e[j - 1] * v
    coeffs = [c if k % 2 == 0 else -c for k, c in enumerate(e)]
    for c in coeffs:
        if not is_invariant(group, c):
            raise AssertionError("characteristic polynomial coefficient is not invariant")
    return coeffs


def find_conjugator(group: FiniteGroup, x: Sequence) -> int | None:
    """Index of the first element s with s x = conj(x), or None."""
    pt = as_point(x)
    target = tuple(v.conjugate() for v in pt)
    for i, m in enumerate(group.elements):
        if m.apply(pt) == target:
            return i
    return None


@dataclass(frozen=True)
class NegativeCertificate:
    polynomial: Polynomial
    value: Fraction
    k: int
    seed: Polynomial
    orbit_size: int


def negative_certificate(group: FiniteGroup, x) -> NegativeCertificate:
    """An invariant sum of squares that is negative at a non-real point.

    ``x`` is a sequence of coordinates or any object with ``coords`` (and
    optionally ``conjugator``). With ``h = (X_i - Re x_i)^2`` for the first
    non-real coordinate, the result is the first elementary symmetric function
    e_k of the orbit of ``h`` whose value at ``x`` is negative.
    """
    coords = as_point(getattr(x, "coords", x))
    if len(coords) != group.n:
        raise ValueError(f"point has {len(coords)} coordinates, group acts on {group.n}")
    i = next((j for j, v in enumerate(coords) if v.im != 0), None)
    if i is None:
        raise CertificateError("point is real; no negative certificate exists")
    conj = getattr(x, "conjugator", None)
    if conj is None:
        conj = find_conjugator(group, coords)
    if conj is None or group.elements[conj].apply(coords) != tuple(v.conjugate() for v in coords):
        raise CertificateError("invariants are not real at this point (no conjugating element)")

    n = group.n
    seed = (Polynomial.variable(n, i) - Polynomial.constant(n, coords[i].re)) ** 2
    orbit = poly_orbit(group, seed)
    values = [p.evaluate(coords) for p in orbit]
    e = [GaussianRational(1)] + [GaussianRational(0)] * len(orbit)
    for v in values:
        for j in range(len(orbit), 0, -1):
            e[j] = e[j] + e[j - 1] * v
    for k in range(1, len(orbit) + 1):
        if e[k].im != 0:
            raise GroupError("orbit symmetric function is not real; conjugator is inconsistent")
        if e[k].re < 0:
            f = elementary_symmetric(orbit, k)
            value = f.evaluate(coords)
            assert value == e[k]
            return NegativeCertificate(f, value.re, k, seed, len(orbit))
    raise CertificateError("the orbit of this point contains a real point; no certificate exists")
