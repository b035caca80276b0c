"""Hermite matrices of univariate polynomials and the R^4/S4 two-inequality test.

A monic polynomial is given through its signed coefficients ``e``:
``T^n - e_1 T^{n-1} + e_2 T^{n-2} - ... + (-1)^n e_n``, i.e. ``e_k`` is the
k-th elementary symmetric function of the roots.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import RatMatrix, inertia, psd_check, to_rational


class BoundaryWarning(UserWarning):
    """The generic two-inequality test hit a vanishing leading minor."""


def newton_power_sums(e: Sequence, upto: int) -> list[Fraction]:
    """Power sums s_0..s_upto of the roots, from elementary symmetric values."""
    e = [to_rational(v) for v in e]
    n = len(e)
    s = [Fraction(n)]
    for k in range(1, upto + 1):
        total = Fraction(0)
        for j in range(1, min(k, n) + 1):
            sign = 1 if j % 2 else -1
            if j == k:
                total += sign * k * e[j - 1]
            else:
                total += sign * e[j - 1] * s[k - j]
        s.append(total)
    return s


@dataclass(frozen=True)
class HermiteData:
    n: int
    e: tuple[Fraction, ...]
    s: tuple[Fraction, ...]
    H: RatMatrix
    p: tuple[Fraction, ...]


def hermite_matrix(e: Sequence) -> HermiteData:
    """Hankel matrix (s_{i+j}) of power sums and its leading principal minors."""
    e = tuple(to_rational(v) for v in e)
    n = len(e)
    if n < 1:
        raise ValueError("need a polynomial of degree at least 1")
    s = newton_power_sums(e, 2 * n - 2)
    h = RatMatrix([[s[i + j] for j in range(n)] for i in range(n)])
    p = tuple(h.principal_submatrix(range(k)).determinant() for k in range(1, n + 1))
    return HermiteData(n, e, tuple(s), h, p)


def real_root_count(e: Sequence) -> int:
    """Number of distinct real roots, as the signature of the Hermite matrix."""
    pos, neg, _ = inertia(hermite_matrix(e).H)
    return pos - neg


def distinct_root_count(e: Sequence) -> int:
    """Number of distinct complex roots, as the rank of the Hermite matrix."""
    return hermite_matrix(e).H.rank()


def is_hyperbolic(e: Sequence) -> bool:
    """All roots real, decided exactly (Hermite matrix positive semi-definite)."""
    return psd_check(hermite_matrix(e).H)


def s4_generic_membership(z: Sequence) -> bool:
    """Generic test for z in E(R^4): p_2 p_4 > 0 and p_3 > 0.

    When some leading minor vanishes the strict test is inconclusive; a
    :class:`BoundaryWarning` is issued and callers should use
    :func:`is_hyperbolic` instead.
    """
    if len(z) != 4:
        raise ValueError("the two-inequality description is for quartics (S4 on R^4)")
    data = hermite_matrix(z)
    p1, p2, p3, p4 = data.p
    if 0 in (p2, p3, p4):
        warnings.warn("a leading principal minor vanishes; generic test undecided", BoundaryWarning,
                      stacklevel=2)
    return p2 * p4 > 0 and p3 > 0


@dataclass(frozen=True)
class QuarticReport:
    generic: bool
    boundary: bool
    hyperbolic: bool
    real_roots: int
    distinct_roots: int
    minors: tuple[Fraction, ...]


def s4_membership(z: Sequence) -> QuarticReport:
    """Generic verdict plus the exact fallback used on the boundary."""
    data = hermite_matrix(z)
    _, p2, p3, p4 = data.p
    boundary = 0 in (p2, p3, p4)
    pos, neg, zero = inertia(data.H)
    return QuarticReport(
        generic=p2 * p4 > 0 and p3 > 0,
        boundary=boundary,
        hyperbolic=neg == 0,
        real_roots=pos - neg,
        distinct_roots=pos + neg,
        minors=data.p,
    )
