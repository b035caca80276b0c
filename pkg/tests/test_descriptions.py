import random
from fractions import Fraction

import pytest

from orbitspace.descriptions import (
    Description,
    PreconditionError,
    SymPolyMatrix,
    abelian_inequalities,
    cyclic_inequalities,
    descent_basis,
    direct_product_combine,
    gram_matrix_B,
    invariant_generators,
    known_fundamental_invariants,
    order2_inequality,
    predicted_inequality_count,
    procesi_schwarz_matrix,
    single_inequality_k1,
)
from orbitspace.exactalg import GaussianRational, Polynomial, RatMatrix, psd_check
from orbitspace.groups import group_closure, load_group
from orbitspace.reynolds import is_invariant, reynolds

I = GaussianRational(0, 1)


def X(n):
    return [Polynomial.variable(n, i) for i in range(n)]


def cyclic_perm(n):
    return group_closure([RatMatrix.permutation([(i + 1) % n for i in range(n)])], name=f"C{n}")


def random_real_points(n, count, seed):
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(count)]


# --- matrix descriptions ---------------------------------------------------------

def test_gram_examples():
    (z,) = X(1)
    minus = group_closure([RatMatrix([[-1]])])
    b = gram_matrix_B(minus, [Polynomial.constant(1, 1), z])
    assert b.entries == ((1, 0), (0, z * z))
    assert gram_matrix_B(minus, [Polynomial.constant(1, 1)]).entries == ((1,),)
    x1, x2 = X(2)
    swap = group_closure([RatMatrix.permutation([1, 0])])
    b = gram_matrix_B(swap, [Polynomial.constant(2, 1), x1])
    half = Fraction(1, 2)
    assert b.entries == ((1, half * (x1 + x2)), (half * (x1 + x2), half * (x1 ** 2 + x2 ** 2)))


def test_gram_at_i_on_the_line():
    (z,) = X(1)
    minus = group_closure([RatMatrix([[-1]])])
    b = gram_matrix_B(minus, [Polynomial.constant(1, 1), z])
    m = b.evaluate([I])
    assert m == RatMatrix([[1, 0], [0, -1]]) and not psd_check(m)


def test_gram_default_cap():
    with pytest.raises(PreconditionError):
        gram_matrix_B(load_group("S4"))
    b = gram_matrix_B(load_group("C2"))
    assert b.size == 4


def test_gram_dimension_mismatch():
    with pytest.raises(ValueError):
        gram_matrix_B(load_group("C2"), X(3))


def test_ps_examples():
    y1, y2 = X(2)
    p1, p2 = known_fundamental_invariants("D4")
    m = procesi_schwarz_matrix(load_group("D4"), [p1, p2])
    assert m.entries == ((4 * p1, 8 * p2), (8 * p2, 16 * (y1 ** 6 + y2 ** 6)))
    assert m.evaluate([1, I]) == RatMatrix([[0, 16], [16, 0]])
    triv = group_closure([RatMatrix.identity(1)])
    assert procesi_schwarz_matrix(triv, X(1)).entries == ((1,),)
    swap = group_closure([RatMatrix.permutation([1, 0])])
    e1, e2 = y1 + y2, y1 * y2
    m = procesi_schwarz_matrix(swap, [e1, e2])
    assert m.entries == ((2, e1), (e1, e1 * e1 - 2 * e2))


def test_ps_rejects_noninvariant():
    with pytest.raises(PreconditionError):
        procesi_schwarz_matrix(load_group("D4"), X(2))


def test_sympolymatrix_checks_symmetry():
    x1, x2 = X(2)
    with pytest.raises(ValueError):
        SymPolyMatrix(((x1, x2), (x1, x1)), (x1, x2))


@pytest.mark.parametrize("name,gens", [
    ("C2", None), ("S3", "descent"), ("D4", None),
])
def test_trace_identity(name, gens):
    # R_G((sum a_i b_i)^2) == a^T B a for random constant vectors a
    g = load_group(name)
    basis = descent_basis(g.n) if gens == "descent" else None
    b = gram_matrix_B(g, basis)
    labels = b.basis_labels
    rng = random.Random(11)
    for _ in range(100):
        a = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in labels]
        lin = Polynomial.zero(g.n)
        for ai, bi in zip(a, labels):
            lin = lin + bi.scale(ai)
        assert reynolds(g, lin * lin) == b.quadratic_form(a)


@pytest.mark.parametrize("name", ["C2", "S3", "D4"])
def test_matrices_psd_at_real_points(name):
    g = load_group(name)
    b = gram_matrix_B(g, descent_basis(g.n) if name == "S3" else None)
    fund = known_fundamental_invariants(name)
    ps = procesi_schwarz_matrix(g, fund)
    assert b.is_invariant(g) and ps.is_invariant(g)
    for x in random_real_points(g.n, 100, 5):
        assert psd_check(b.evaluate(x))
        assert psd_check(ps.evaluate(x))


def test_matrix_json_roundtrip():
    g = load_group("D4")
    m = procesi_schwarz_matrix(g, known_fundamental_invariants("D4"))
    data = m.to_json("D4", "ps")
    assert data["mode"] == "matrix"
    assert SymPolyMatrix.from_json(data).entries == m.entries


# --- order two and rank one ------------------------------------------------------

def test_order2_examples():
    x = X(4)
    d = order2_inequality(group_closure([RatMatrix.identity(4).scale(-1)]))
    assert d.inequalities == (sum((v * v for v in x), Polynomial.zero(4)),)
    y1, y2, y3 = X(3)
    d = order2_inequality(group_closure([RatMatrix.permutation([1, 0, 2])]))
    assert d.inequalities == (((y1 - y2) ** 2).normalized(),)
    d = order2_inequality(group_closure([RatMatrix([[1, 0], [0, -1]])]))
    assert d.inequalities == (X(2)[1] ** 2,)
    assert d.mode == "full"


def test_order2_wrong_order():
    with pytest.raises(PreconditionError):
        order2_inequality(load_group("C4"))


def test_k1_s3_is_discriminant():
    x1, x2, x3 = X(3)
    disc = (x1 - x2) ** 2 * (x1 - x3) ** 2 * (x2 - x3) ** 2
    d = single_inequality_k1(load_group("S3"))
    assert d.mode == "generic"
    assert d.inequalities == (disc.normalized(),)


def test_k1_q8():
    x = X(4)
    d = single_inequality_k1(load_group("Q8"))
    assert d.inequalities == (sum((v * v for v in x), Polynomial.zero(4)),)


def test_k1_d5_product():
    x1, x2, x3, x4, x5 = X(5)
    want = (((x1 - x5) ** 2 + (x2 - x4) ** 2) * ((x2 - x1) ** 2 + (x3 - x5) ** 2)
            * ((x3 - x2) ** 2 + (x4 - x1) ** 2) * ((x4 - x3) ** 2 + (x5 - x2) ** 2)
            * ((x5 - x4) ** 2 + (x1 - x3) ** 2))
    d = single_inequality_k1(load_group("D5"))
    assert d.inequalities == (want.normalized(),)


def test_k1_rank_two_refused_with_reason():
    with pytest.raises(PreconditionError, match="2-rank is 2, method k1 requires 1"):
        single_inequality_k1(load_group("D4"))


def test_k1_odd_order_is_empty_full():
    d = single_inequality_k1(cyclic_perm(3))
    assert d.inequalities == () and d.mode == "full"


# --- cyclic ------------------------------------------------------------------------

def test_cyclic_c2():
    full, generic = cyclic_inequalities(load_group("C2"))
    x1, x2 = X(2)
    assert full.inequalities == (x1 ** 2 + x2 ** 2,)
    assert generic.inequalities == full.inequalities


def test_cyclic_c4_values():
    full, generic = cyclic_inequalities(load_group("C4"))
    x1, x2, x3, x4 = X(4)
    assert len(full) == 2 and full.mode == "full"
    assert generic.inequalities == (((x1 - x3) ** 2 + (x2 - x4) ** 2).normalized(),)
    pt = [I, -I, I, -I]
    f1, f2 = full.evaluate(pt)
    assert f1 == 0 and f2 < 0


def test_cyclic_odd_and_noncyclic():
    full, generic = cyclic_inequalities(cyclic_perm(5))
    assert full.inequalities == () and full.mode == "full"
    with pytest.raises(PreconditionError):
        cyclic_inequalities(load_group("C4xC2"))


def test_cyclic_c8_has_three_inequalities():
    full, _ = cyclic_inequalities(cyclic_perm(8))
    assert len(full) == 3


# --- direct products and abelian groups ------------------------------------------

def _expected_g():
    x1, x2, x3, x4 = X(4)
    return (x1 ** 2 - x3 ** 2) ** 2 + (x2 ** 2 - x4 ** 2) ** 2 + (x1 * x2 - x3 * x4) ** 2 + (x1 * x4 - x2 * x3) ** 2


def test_direct_product_combine():
    g = load_group("C4xC2")
    h_sub = g.generated([2])  # the -I factor
    x = X(4)
    h = sum((v * v for v in x), Polynomial.zero(4))
    d = direct_product_combine(g, h_sub, [_expected_g()], h)
    assert d.inequalities == (h, _expected_g().normalized())
    d = direct_product_combine(g, h_sub, [], h)
    assert d.inequalities == (h,)


def test_direct_product_requires_normal():
    s3 = load_group("S3")
    with pytest.raises(PreconditionError):
        direct_product_combine(s3, s3.generated([1]), [], Polynomial.constant(3, 1))


def test_abelian_canonical_order():
    g = load_group("C4xC2")
    d = abelian_inequalities(g)
    x = X(4)
    h = sum((v * v for v in x), Polynomial.zero(4))
    assert d.inequalities == (h, _expected_g().normalized())
    assert d.mode == "generic"


def test_abelian_alternative_order():
    g = load_group("C4xC2")
    x1, x2, x3, x4 = X(4)
    h2 = (x1 - x3) ** 2 + (x2 - x4) ** 2
    g2 = ((x1 + x2 + x3 + x4) ** 2 + (x1 ** 3 + x2 ** 3 + x3 ** 3 + x4 ** 3) ** 2
          + (x1 * x2 ** 2 + x2 * x3 ** 2 + x3 * x4 ** 2 + x4 * x1 ** 2) ** 2)
    d = abelian_inequalities(g, [2, 1])
    assert d.inequalities == (h2.normalized(), g2.normalized())


def test_abelian_c2_and_nonabelian():
    d = abelian_inequalities(load_group("C2"))
    x1, x2 = X(2)
    assert d.inequalities == (x1 ** 2 + x2 ** 2,)
    with pytest.raises(PreconditionError):
        abelian_inequalities(load_group("D4"))


def test_invariant_generators_d4():
    gens = invariant_generators(load_group("D4"))
    assert sorted(p.degree() for p in gens) == [2, 4]
    assert all(is_invariant(load_group("D4"), p) for p in gens)


@pytest.mark.parametrize("name,count", [("C4", 1), ("Q8", 1), ("S3", 1), ("D4", 2), ("S4", 2), ("C4xC2", 2)])
def test_predicted_counts(name, count):
    assert predicted_inequality_count(load_group(name)) == count


@pytest.mark.parametrize("n", [3, 5])
def test_predicted_counts_odd(n):
    assert predicted_inequality_count(cyclic_perm(n)) == 0


# --- global properties -------------------------------------------------------------

def _all_descriptions():
    out = [
        order2_inequality(load_group("C2")),
        single_inequality_k1(load_group("S3")),
        single_inequality_k1(load_group("Q8")),
        single_inequality_k1(load_group("D5")),
        single_inequality_k1(load_group("C4")),
        single_inequality_k1(load_group("C6")),
        abelian_inequalities(load_group("C4xC2")),
        abelian_inequalities(load_group("C4xC2"), [2, 1]),
    ]
    out += list(cyclic_inequalities(load_group("C4")))
    out += list(cyclic_inequalities(load_group("C6")))
    return out


@pytest.mark.parametrize("d", _all_descriptions(), ids=lambda d: f"{d.group.name}-{d.method}-{d.mode}")
def test_inequalities_invariant_and_nonnegative_on_real_points(d):
    for f in d.inequalities:
        for gen in d.group.generator_matrices:
            assert is_invariant([gen], f)
    for x in random_real_points(d.group.n, 1000, 17):
        assert all(v >= 0 for v in d.evaluate(x))


def test_description_rejects_noninvariant():
    with pytest.raises(ValueError):
        Description(load_group("C4"), "full", (X(4)[0],), "manual")


def test_description_json_roundtrip():
    g = load_group("C4")
    full, _ = cyclic_inequalities(g)
    again = Description.from_json(full.to_json(), g)
    assert again.inequalities == full.inequalities and again.mode == "full"
    assert full.dumps() == again.dumps()
