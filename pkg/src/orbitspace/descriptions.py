"""Builders for semi-algebraic descriptions of real orbit spaces.

Two families live here:

* matrix descriptions -- the Gram matrix of Reynolds images ``R(b_i b_j)``
  and the gradient Gram matrix of fundamental invariants; a point is in the
  orbit space iff the evaluated matrix is positive semi-definite;
* few-inequality descriptions -- order-two groups, groups of 2-rank one,
  cyclic groups and abelian groups, with the number of inequalities equal to
  the 2-rank.

Every emitted inequality is checked for invariance and divided by the absolute
value of its graded-lex leading coefficient.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Sequence

from .exactalg import (
    GaussianRational,
    Polynomial,
    RatMatrix,
    as_point,
    format_polynomial,
    grlex_key,
    parse_polynomial,
)
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_cyclic_factorization,
    act_on_poly,
    elementary_abelian_2_rank,
    sylow2_chain,
    two_adic_valuation,
)
from .reynolds import is_invariant, reynolds

MODES = ("full", "generic")
DEFAULT_GRAM_LIMIT = 4096


class PreconditionError(ValueError):
    """A construction was asked for on a group that violates its hypothesis."""


class NonRealValueError(ValueError):
    """An invariant evaluated to a non-real number (missing conjugator or non-invariant input)."""


def _real(z: GaussianRational) -> Fraction:
    if z.im != 0:
        raise NonRealValueError(f"expected a real value, got {z}")
    return z.re


def coordinates(n: int) -> list[Polynomial]:
    return [Polynomial.variable(n, i) for i in range(n)]


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymPolyMatrix:
    """Symmetric matrix of invariant polynomials."""

    entries: tuple[tuple[Polynomial, ...], ...]
    basis_labels: tuple[Polynomial, ...]
    kind: str = "gram"

    def __post_init__(self):
        k = len(self.entries)
        if any(len(r) != k for r in self.entries):
            raise ValueError("matrix is not square")
        for i in range(k):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return self.entries[0][0].n

    def evaluate(self, x) -> RatMatrix:
        """Evaluate at a point where every entry is real."""
        pt = as_point(getattr(x, "coords", x))
        cache: dict = {}
        rows = []
        for i in range(self.size):
            row = []
            for j in range(self.size):
                if j < i:
                    row.append(rows[j][i])
                    continue
                p = self.entries[i][j]
                if p not in cache:
                    cache[p] = _real(p.evaluate(pt))
                row.append(cache[p])
            rows.append(row)
        return RatMatrix(rows)

    def is_invariant(self, group) -> bool:
        return all(is_invariant(group, self.entries[i][j])
                   for i in range(self.size) for j in range(i, self.size))

    def quadratic_form(self, a: Sequence) -> Polynomial:
        """a^T M a for a constant vector a."""
        a = [Fraction(v) for v in a]
        acc: dict = {}
        for i, ai in enumerate(a):
            for j, aj in enumerate(a):
                w = ai * aj
                if not w:
                    continue
                for e, c in self.entries[i][j].terms.items():
                    acc[e] = acc.get(e, 0) + w * c
        return Polynomial(self.n, acc)

    def to_json(self, group_name: str | None, method: str, notes: str = "") -> dict:
        return {
            "group": group_name,
            "mode": "matrix",
            "method": method,
            "n": self.n,
            "basis": [format_polynomial(b) for b in self.basis_labels],
            "entries": [[format_polynomial(p) for p in row] for row in self.entries],
            "notes": notes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SymPolyMatrix":
        n = int(data["n"])
        entries = tuple(tuple(parse_polynomial(s, n) for s in row) for row in data["entries"])
        basis = tuple(parse_polynomial(s, n) for s in data.get("basis", []))
        return cls(entries, basis, data.get("method", "gram"))


@dataclass(frozen=True)
class Description:
    """Invariant inequalities describing (fully or generically) an orbit space.

    ``mode == "full"``: the orbit space is the set where all are >= 0.
    ``mode == "generic"``: it is the set where all are > 0, up to a set of
    lower dimension.
    """

    group: FiniteGroup
    mode: str
    inequalities: tuple[Polynomial, ...]
    method: str
    notes: str = ""
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        for f in self.inequalities:
            if f.n != self.group.n:
                raise ValueError("inequality dimension does not match the group")
            if self.check and not is_invariant(self.group, f):
                raise ValueError(f"inequality {f} is not invariant under the group")

    def __len__(self):
        return len(self.inequalities)

    def evaluate(self, x) -> list[Fraction]:
        pt = as_point(getattr(x, "coords", x))
        return [_real(f.evaluate(pt)) for f in self.inequalities]

    def with_mode(self, mode: str) -> "Description":
        return Description(self.group, mode, self.inequalities, self.method, self.notes, check=False)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "mode": self.mode,
            "method": self.method,
            "n": self.group.n,
            "inequalities": [format_polynomial(f) for f in self.inequalities],
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, data: dict, group: FiniteGroup) -> "Description":
        ineqs = [parse_polynomial(s, group.n) for s in data.get("inequalities", [])]
        return cls(group, data.get("mode", "full"), tuple(ineqs), data.get("method", "unknown"),
                   data.get("notes", ""))


def _canon(polys) -> tuple[Polynomial, ...]:
    return tuple(p.normalized() for p in polys)


def _as_group(g) -> FiniteGroup:
    if isinstance(g, Subgroup):
        return g.as_group()
    return g


# ---------------------------------------------------------------------------
# Matrix descriptions
# ---------------------------------------------------------------------------

def box_monomials(n: int, bound: int) -> list[Polynomial]:
    """X^a for a in {0..bound-1}^n, ascending graded-lex."""
    exps = sorted(product(range(bound), repeat=n), key=grlex_key)
    return [Polynomial.monomial(e) for e in exps]


def descent_basis(n: int) -> list[Polynomial]:
    """X^a with a_i <= n - i: a module basis of Q[X] over the symmetric polynomials.

    Valid for the full symmetric group permuting coordinates (and hence for
    any of its subgroups as a generating set).
    """
    exps = sorted(product(*[range(n - i) for i in range(n)]), key=grlex_key)
    return [Polynomial.monomial(e) for e in exps]


def gram_matrix_B(group: FiniteGroup, module_generators: Sequence[Polynomial] | None = None,
                  limit: int | None = DEFAULT_GRAM_LIMIT) -> SymPolyMatrix:
    """B_ij = R_G(b_i b_j).

    With no ``module_generators`` the monomials with exponents in
    {0..|G|-1}^n are used; that default is refused when it has more than
    ``limit`` elements. User-supplied generators give an exact membership test
    only if they generate Q[X] as a module over the invariant ring.
    """
    g = _as_group(group)
    if module_generators is None:
        size = g.order ** g.n
        if limit is not None and size > limit:
            raise PreconditionError(
                f"default module generators would give {size} > {limit} rows; pass an explicit generator set")
        module_generators = box_monomials(g.n, g.order)
    gens = list(module_generators)
    if not gens:
        raise ValueError("need at least one module generator")
    for b in gens:
        if b.n != g.n:
            raise ValueError(f"generator in {b.n} variables, group acts on {g.n}")
    cache: dict = {}
    k = len(gens)
    rows: list[list[Polynomial]] = [[None] * k for _ in range(k)]  # type: ignore[list-item]
    for i in range(k):
        for j in range(i, k):
            prod_ij = gens[i] * gens[j]
            if prod_ij not in cache:
                cache[prod_ij] = reynolds(g, prod_ij)
            rows[i][j] = rows[j][i] = cache[prod_ij]
    return SymPolyMatrix(tuple(tuple(r) for r in rows), tuple(gens), "gram")


def procesi_schwarz_matrix(group: FiniteGroup, fundamentals: Sequence[Polynomial]) -> SymPolyMatrix:
    """Gradient Gram matrix (<d p_i, d p_j>) of invariant polynomials, kept in X."""
    g = _as_group(group)
    for p in fundamentals:
        if p.n != g.n:
            raise ValueError(f"invariant in {p.n} variables, group acts on {g.n}")
        if not is_invariant(g, p):
            raise PreconditionError(f"{p} is not invariant under the group")
    grads = [p.gradient() for p in fundamentals]
    k = len(grads)
    rows = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            s = Polynomial.zero(g.n)
            for a, b in zip(grads[i], grads[j]):
                s = s + a * b
            rows[i][j] = rows[j][i] = s
    return SymPolyMatrix(tuple(tuple(r) for r in rows), tuple(fundamentals), "ps")


# ---------------------------------------------------------------------------
# Few-inequality descriptions
# ---------------------------------------------------------------------------

def _order2_sos(h_group, coords: Sequence[Polynomial]) -> Polynomial:
    """sum_j (y_j - R_H(y_j))^2."""
    total = Polynomial.zero(coords[0].n)
    for y in coords:
        d = y - reynolds(h_group, y)
        total = total + d * d
    return total


def order2_inequality(group) -> Description:
    """One sum of squares describing R^n / H for a group H of order two."""
    g = _as_group(group)
    if g.order != 2:
        raise PreconditionError(f"order2_inequality needs a group of order 2, got order {g.order}")
    f = _order2_sos(g, coordinates(g.n))
    return Description(g, "full", _canon([f]), "order2")


def single_inequality_k1(group: FiniteGroup) -> Description:
    """One inequality generically describing R^n / G when G has 2-rank one.

    Takes a chain H_1 < ... < H_l of 2-subgroups, symmetrises the order-two
    sum of squares of H_1 over H_l, and multiplies its images over the cosets
    of H_l. Odd order gives the empty (full) description.
    """
    g = _as_group(group)
    if g.order % 2:
        return Description(g, "full", (), "k1", "odd order: the Hilbert map is surjective")
    rank = elementary_abelian_2_rank(g)
    if rank != 1:
        raise PreconditionError(f"2-rank is {rank}, method k1 requires 1")
    chain = sylow2_chain(g)
    h1, hl = chain[0], chain[-1]
    f1 = _order2_sos(h1, coordinates(g.n))
    fl = reynolds(hl, f1)
    result = Polynomial.constant(g.n, 1)
    for s in hl.left_coset_representatives():
        result = result * act_on_poly(g.elements[s], fl)
    return Description(g, "generic", _canon([result]), "k1")


def _cyclic_generator(g: FiniteGroup) -> int:
    for a in range(g.order):
        if g.element_order(a) == g.order:
            return a
    raise PreconditionError("group is not cyclic")


def _cyclic_term(g: FiniteGroup, sigma: int, coords: Sequence[Polynomial], i: int) -> Polynomial:
    """sum_j (R_{C_{2^(i-1)}}(y_j) - R_{C_{2^i}}(y_j))^2 inside <sigma>."""
    m = g.element_order(sigma)
    lower = g.cyclic(g.power(sigma, m // 2 ** (i - 1)))
    upper = g.cyclic(g.power(sigma, m // 2 ** i))
    total = Polynomial.zero(g.n)
    for y in coords:
        d = reynolds(lower, y) - reynolds(upper, y)
        total = total + d * d
    return total


def cyclic_inequalities(group: FiniteGroup) -> tuple[Description, Description]:
    """(full description by f_1..f_k, generic description by f_1) for cyclic G.

    k is the 2-adic valuation of |G|; f_i averages the squared differences of
    coordinate Reynolds images over the subgroups of order 2^(i-1) and 2^i.
    """
    g = _as_group(group)
    sigma = _cyclic_generator(g)
    k = two_adic_valuation(g.order)
    if k == 0:
        note = "odd order: the Hilbert map is surjective"
        return (Description(g, "full", (), "cyclic", note),
                Description(g, "full", (), "cyclic", note))
    coords = coordinates(g.n)
    fs = [reynolds(g, _cyclic_term(g, sigma, coords, i)) for i in range(1, k + 1)]
    fs = _canon(fs)
    return (Description(g, "full", fs, "cyclic"),
            Description(g, "generic", fs[:1], "cyclic"))


def direct_product_combine(group: FiniteGroup, normal: Subgroup, g_list: Sequence[Polynomial],
                           h: Polynomial, mode: str = "full", method: str = "direct-product") -> Description:
    """Combine G-invariant g_1..g_k (extension G -> H) with H-invariant h.

    Returns R_G(h), g_1, ..., g_k.
    """
    if normal.parent is not group:
        raise ValueError("normal subgroup must belong to the group")
    if not normal.is_normal():
        raise PreconditionError("subgroup is not normal")
    if not is_invariant(normal, h):
        raise PreconditionError("h is not invariant under the normal subgroup")
    rh = reynolds(group, h)
    return Description(group, mode, _canon([rh, *g_list]), method)


def invariant_generators(group, max_degree: int | None = None) -> list[Polynomial]:
    """Homogeneous algebra generators of the invariant ring.

    Candidates are Reynolds images of monomials of degree 1..|N| (enough by
    Noether's bound), made primitive. Within each degree they are scanned in
    ascending graded-lex order of the monomial, and a candidate is kept only
    if it is not in the span of products of generators already kept and of
    earlier candidates.
    """
    mats = group.elements if isinstance(group, (FiniteGroup, Subgroup)) else list(group)
    n = mats[0].shape[0]
    top = max_degree if max_degree is not None else len(mats)
    kept: list[Polynomial] = []
    for d in range(1, top + 1):
        basis = _SpanBasis()
        for combo in _products_of_degree(kept, d):
            basis.add(combo)
        seen = set()
        for e in sorted(_exponents_of_degree(n, d), key=grlex_key):
            cand = reynolds(mats, Polynomial.monomial(e))
            if cand.is_zero():
                continue
            cand = cand.primitive()
            if cand in seen:
                continue
            seen.add(cand)
            if basis.add(cand):
                kept.append(cand)
    return kept


def _exponents_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in _exponents_of_degree(n - 1, d - a):
            yield (a,) + rest


def _products_of_degree(gens: list[Polynomial], d: int):
    """Products of at least two generators with total degree d."""
    degs = [p.degree() for p in gens]
    for size in range(2, d + 1):
        for combo in combinations_with_replacement(range(len(gens)), size):
            if sum(degs[i] for i in combo) == d:
                p = gens[combo[0]]
                for i in combo[1:]:
                    p = p * gens[i]
                yield p


class _SpanBasis:
    """Incremental row-echelon basis of polynomials viewed as coefficient vectors."""

    def __init__(self):
        self.rows: list[tuple[tuple, dict]] = []  # (pivot monomial, terms)

    def reduce(self, p: Polynomial) -> dict:
        terms = dict(p.terms)
        for piv, row in self.rows:
            c = terms.get(piv)
            if c:
                for e, v in row.items():
                    nv = terms.get(e, 0) - c * v
                    if nv:
                        terms[e] = nv
                    else:
                        terms.pop(e, None)
        return terms

    def add(self, p: Polynomial) -> bool:
        terms = self.reduce(p)
        if not terms:
            return False
        piv = max(terms, key=grlex_key)
        lead = terms[piv]
        row = {e: v / lead for e, v in terms.items()}
        # keep existing rows reduced with respect to the new pivot
        new_rows = []
        for q, r in self.rows:
            c = r.get(piv)
            if c:
                r = dict(r)
                for e, v in row.items():
                    nv = r.get(e, 0) - c * v
                    if nv:
                        r[e] = nv
                    else:
                        r.pop(e, None)
            new_rows.append((q, r))
        new_rows.append((piv, row))
        self.rows = new_rows
        return True


def abelian_inequalities(group: FiniteGroup, factor_generators: Sequence[int] | None = None) -> Description:
    """2-rank many inequalities generically describing R^n / G for abelian G.

    G is split into cyclic factors (even orders first, decreasing). For the
    i-th even factor <s>, with N the product of the later factors, the cyclic
    f_1 formula is applied to generators of the N-invariants and the result
    averaged over G. Inequalities are listed innermost step first. Pass
    ``factor_generators`` (element indices) to choose the factors and their
    processing order.
    """
    g = _as_group(group)
    if not g.is_abelian():
        raise PreconditionError("group is not abelian")
    fac = abelian_cyclic_factorization(g, factor_generators)
    gens = list(fac.generators)
    steps = []
    for pos, s in enumerate(gens):
        if g.element_order(s) % 2:
            continue
        inner = g.generated(gens[pos + 1:])
        coords = coordinates(g.n) if inner.order == 1 else invariant_generators(inner)
        steps.append(reynolds(g, _cyclic_term(g, s, coords, 1)))
    if not steps:
        return Description(g, "full", (), "abelian", "odd order: the Hilbert map is surjective")
    orders = "x".join(str(g.element_order(s)) for s in gens)
    return Description(g, "generic", _canon(reversed(steps)), "abelian", f"factor orders {orders}")


def predicted_inequality_count(group: FiniteGroup) -> int:
    """Number of inequalities needed generically: the 2-rank of G."""
    return elementary_abelian_2_rank(_as_group(group))


# Fundamental invariants for the built-in groups where they are classical.
def known_fundamental_invariants(name: str) -> list[Polynomial] | None:
    table = {
        "D4": (2, ["x1^2 + x2^2", "x1^4 + x2^4"]),
        "C2": (2, ["x1^2", "x1*x2", "x2^2"]),
        "S3": (3, ["x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3", "x1*x2*x3"]),
        "S4": (4, ["x1 + x2 + x3 + x4",
                   "x1*x2 + x1*x3 + x1*x4 + x2*x3 + x2*x4 + x3*x4",
                   "x1*x2*x3 + x1*x2*x4 + x1*x3*x4 + x2*x3*x4",
                   "x1*x2*x3*x4"]),
    }
    if name not in table:
        return None
    n, polys = table[name]
    return [parse_polynomial(p, n) for p in polys]
