import random
import warnings
from fractions import Fraction

import pytest
from conftest import small_rationals
from hypothesis import given
from hypothesis import strategies as st
from oracles import power_sums_from_roots, quartic_from_e, sturm_distinct_real_roots

from orbitspace.exactalg import elementary_symmetric
from orbitspace.hermite import (
    BoundaryWarning,
    distinct_root_count,
    hermite_matrix,
    is_hyperbolic,
    newton_power_sums,
    real_root_count,
    s4_generic_membership,
    s4_membership,
)

ROOTS_REAL = [(1, 0), (2, 0), (3, 0), (4, 0)]
ROOTS_MIXED = [(1, 0), (2, 0), (0, 1), (0, -1)]


def test_power_sums_match_direct_sums():
    assert newton_power_sums((10, 35, 50, 24), 6) == power_sums_from_roots(ROOTS_REAL, 6)
    assert newton_power_sums((3, 3, 3, 2), 6) == power_sums_from_roots(ROOTS_MIXED, 6)
    assert newton_power_sums((0, 0, 0, 0), 6) == [4, 0, 0, 0, 0, 0, 0]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_power_sums_from_integer_roots(roots):
    e = [elementary_symmetric([Fraction(r) for r in roots], k) for k in range(1, len(roots) + 1)]
    s = newton_power_sums(e, 2 * len(roots))
    assert s == [sum(Fraction(r) ** k for r in roots) for k in range(2 * len(roots) + 1)]


def test_hermite_matrix_is_hankel():
    d = hermite_matrix((10, 35, 50, 24))
    for i in range(4):
        for j in range(4):
            assert d.H[i, j] == d.s[i + j]
    assert d.p[0] == 4


@given(st.lists(small_rationals, min_size=4, max_size=4))
def test_first_minor_is_degree(e):
    assert hermite_matrix(e).p[0] == 4


def test_root_counts():
    assert real_root_count((10, 35, 50, 24)) == 4
    assert real_root_count((3, 3, 3, 2)) == 2
    assert real_root_count((0, 0, 0, 0)) == 1
    assert distinct_root_count((0, 0, 0, 0)) == 1
    assert distinct_root_count((7, 17, 17, 6)) == 3  # roots 1,1,2,3


def test_generic_membership():
    assert s4_generic_membership((10, 35, 50, 24)) is True
    assert s4_generic_membership((3, 3, 3, 2)) is False


def test_generic_membership_boundary_warns_and_fallback_decides():
    with pytest.warns(BoundaryWarning):
        s4_generic_membership((7, 17, 17, 6))
    rep = s4_membership((7, 17, 17, 6))
    assert rep.boundary and rep.hyperbolic and not rep.generic
    assert is_hyperbolic((7, 17, 17, 6))


def test_quartic_only():
    with pytest.raises(ValueError):
        s4_generic_membership((1, 2, 3))


def test_real_root_count_against_sturm_on_random_quartics():
    rng = random.Random(2024)
    for _ in range(500):
        e = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(4)]
        assert real_root_count(e) == sturm_distinct_real_roots(quartic_from_e(e))


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4, unique=True))
def test_distinct_real_roots_are_generic_members(roots):
    e = [elementary_symmetric([Fraction(r) for r in roots], k) for k in range(1, 5)]
    d = hermite_matrix(e)
    assert all(p > 0 for p in d.p)
    with warnings.catch_warnings():
        warnings.simplefilter("error", BoundaryWarning)
        assert s4_generic_membership(e)


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2, unique=True), st.integers(-5, 5), st.integers(1, 5))
def test_nonreal_pair_is_rejected(real_roots, a, b):
    # roots r1, r2, a +- b i
    r1, r2 = real_roots
    quad = [Fraction(a * a + b * b), Fraction(-2 * a), Fraction(1)]   # T^2 - 2aT + a^2+b^2
    lin = [Fraction(r1 * r2), Fraction(-(r1 + r2)), Fraction(1)]
    prod = [Fraction(0)] * 5
    for i, u in enumerate(quad):
        for j, v in enumerate(lin):
            prod[i + j] += u * v
    e = (-prod[3], prod[2], -prod[1], prod[0])
    assert not s4_generic_membership(e)
    assert real_root_count(e) == 2
