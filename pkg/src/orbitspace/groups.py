"""Finite matrix groups over Q and the subgroup machinery built on them.

Elements are stored once, in BFS order from the generators (identity first,
then generators, then new products). Subgroups are index sets into that
list, so every search below is deterministic.

Action convention: a matrix ``s`` acts on polynomials by
``h^s(x) = h(s^{-1} x)``. This is a left action,
``act(s, act(t, h)) == act(s @ t, h)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .exactalg import (
    ParseError,
    Polynomial,
    RatMatrix,
    as_point,
    format_rational,
)

DEFAULT_CAP = 10_000

BUILTIN_GROUPS = ("C2", "C4", "C6", "S3", "S4", "D4", "D5", "Q8", "C4xC2")


class GroupError(ValueError):
    """Invalid group input or a violated group-theoretic precondition."""


class Subgroup:
    """A subgroup of a :class:`FiniteGroup`, stored as sorted element indices."""

    __slots__ = ("parent", "members", "_set")

    def __init__(self, parent: "FiniteGroup", members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self._set = frozenset(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, idx: int) -> bool:
        return idx in self._set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other._set == self._set)

    def __hash__(self):
        return hash((id(self.parent), self._set))

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    @property
    def elements(self) -> list[RatMatrix]:
        return [self.parent.elements[i] for i in self.members]

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def is_normal(self) -> bool:
        g = self.parent
        return all(g.conjugate(x, h) in self._set for x in range(g.order) for h in self.members)

    def is_abelian(self) -> bool:
        g = self.parent
        return all(g.mul(a, b) == g.mul(b, a) for a in self.members for b in self.members)

    def is_elementary_abelian_2(self) -> bool:
        g = self.parent
        return self.is_abelian() and all(g.mul(a, a) == 0 for a in self.members)

    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(i) == self.order for i in self.members)

    def as_group(self, name: str | None = None) -> "FiniteGroup":
        """The subgroup as a standalone FiniteGroup (same matrices)."""
        return FiniteGroup(self.elements, range(1, self.order) if self.order > 1 else [0], name)

    def left_coset_representatives(self) -> list[int]:
        """One representative per coset sH, smallest index first."""
        g = self.parent
        seen: set[int] = set()
        reps = []
        for s in range(g.order):
            if s in seen:
                continue
            reps.append(s)
            seen.update(g.mul(s, h) for h in self.members)
        return reps


class FiniteGroup:
    """A finite subgroup of GL_n(Q) given by its full element list.

    Build instances with :func:`group_closure` or :func:`load_group`.
    """

    def __init__(self, elements: Sequence[RatMatrix], generators: Sequence[int], name: str | None = None):
        self.elements = list(elements)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.generators = list(generators)
        self.name = name
        self.n = self.elements[0].shape[0]
        self._mul: dict[tuple[int, int], int] = {}
        self._inv: dict[int, int] = {}
        self._orders: dict[int, int] = {}
        if self.elements[0] != RatMatrix.identity(self.n):
            raise GroupError("element 0 must be the identity")

    def __repr__(self):
        label = self.name or "group"
        return f"FiniteGroup({label}, n={self.n}, order={self.order})"

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generator_matrices(self) -> list[RatMatrix]:
        return [self.elements[i] for i in self.generators]

    # -- multiplication table ---------------------------------------------
    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        r = self._mul.get(key)
        if r is None:
            r = self.index[self.elements[a] @ self.elements[b]]
            self._mul[key] = r
        return r

    def inv(self, a: int) -> int:
        r = self._inv.get(a)
        if r is None:
            r = next(b for b in range(self.order) if self.mul(a, b) == 0)
            self._inv[a] = r
            self._inv[r] = a
        return r

    def conjugate(self, g: int, h: int) -> int:
        """g h g^{-1}."""
        return self.mul(self.mul(g, h), self.inv(g))

    def power(self, a: int, k: int) -> int:
        r = 0
        for _ in range(k % self.element_order(a)):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        o = self._orders.get(a)
        if o is None:
            x, o = a, 1
            while x != 0:
                x = self.mul(x, a)
                o += 1
            self._orders[a] = o
        return o

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.generators for b in self.generators)

    def element_index(self, m: RatMatrix) -> int:
        try:
            return self.index[m]
        except KeyError:
            raise GroupError(f"{m!r} is not an element of {self!r}") from None

    # -- subgroups ------------------------------------------------------------
    def whole(self) -> Subgroup:
        return Subgroup(self, range(self.order))

    def trivial(self) -> Subgroup:
        return Subgroup(self, [0])

    def generated(self, gens: Iterable[int]) -> Subgroup:
        members = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(self, members)

    def cyclic(self, a: int) -> Subgroup:
        return self.generated([a])

    def conjugacy_classes(self) -> list[list[int]]:
        seen: set[int] = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conjugate(g, x) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "generators": [[[format_rational(v) for v in row] for row in m.rows]
                           for m in self.generator_matrices],
        }


# ---------------------------------------------------------------------------
# Construction and I/O
# ---------------------------------------------------------------------------

def group_closure(generators: Sequence, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    """Enumerate the group generated by invertible rational matrices.

    Raises :class:`GroupError` for singular or mis-shaped generators and when
    more than ``cap`` elements appear (the group is probably infinite).
    """
    gens = [g if isinstance(g, RatMatrix) else RatMatrix(g) for g in generators]
    if not gens:
        raise GroupError("at least one generator is required")
    n = gens[0].shape[0]
    for g in gens:
        if g.shape != (n, n):
            raise GroupError(f"generator of shape {g.shape}, expected ({n}, {n})")
        if g.determinant() == 0:
            raise GroupError(f"generator {g!r} is not invertible")
    ident = RatMatrix.identity(n)
    elements = [ident]
    index = {ident: 0}
    gen_idx = []
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
        gen_idx.append(index[g])
    frontier = list(range(len(elements)))
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens:
                m = elements[i] @ g
                if m not in index:
                    if len(elements) >= cap:
                        raise GroupError(
                            f"closure exceeds cap of {cap} elements; the group is infinite or the cap is too small")
                    index[m] = len(elements)
                    elements.append(m)
                    nxt.append(index[m])
        frontier = nxt
    return FiniteGroup(elements, gen_idx, name)


def group_from_json(data: dict) -> FiniteGroup:
    try:
        n = int(data["n"])
        raw = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"group file needs 'n' and 'generators': {exc}") from None
    gens = []
    for g in raw:
        try:
            m = RatMatrix(g)
        except ValueError as exc:
            raise ParseError(f"bad generator matrix: {exc}") from None
        if m.shape != (n, n):
            raise ParseError(f"generator of shape {m.shape} in a group with n={n}")
        gens.append(m)
    cap = int(data.get("cap", DEFAULT_CAP))
    return group_closure(gens, cap=cap, name=data.get("name"))


def load_group(source: str | Path) -> FiniteGroup:
    """Load a group from a JSON file path or a built-in name such as ``"D4"``."""
    name = str(source)
    if name in BUILTIN_GROUPS:
        text = resources.files("orbitspace").joinpath("data", f"{name}.json").read_text()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read group file {source}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"group file is not valid JSON: {exc}") from None
    return group_from_json(data)


# ---------------------------------------------------------------------------
# Action on polynomials
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _inverse(m: RatMatrix) -> RatMatrix:
    return m.inverse()


@lru_cache(maxsize=4096)
def _signed_perm(m: RatMatrix):
    """For a monomial matrix return (target, scale) with (m x)_i = scale_i x_{target_i}."""
    if not m.is_monomial():
        return None
    out = []
    for row in m.rows:
        j = next(k for k, v in enumerate(row) if v)
        out.append((j, row[j]))
    return tuple(out)


def act_on_poly(sigma: RatMatrix, h: Polynomial) -> Polynomial:
    """h^sigma = h(sigma^{-1} x)."""
    if sigma.shape != (h.n, h.n):
        raise ValueError(f"matrix of shape {sigma.shape} cannot act on {h.n} variables")
    inv = _inverse(sigma)
    sp = _signed_perm(inv)
    if sp is not None:
        # X_i -> s_i X_{t_i}
        out = {}
        for e, c in h.terms.items():
            f = [0] * h.n
            for i, k in enumerate(e):
                if k:
                    t, s = sp[i]
                    f[t] += k
                    if s != 1:
                        c = c * s ** k
            out[tuple(f)] = c
        return Polynomial(h.n, out)
    images = [Polynomial.linear_form(row) for row in inv.rows]
    return h.substitute(images)


def apply_to_point(sigma: RatMatrix, x: Sequence) -> tuple:
    return sigma.apply(as_point(x))


# ---------------------------------------------------------------------------
# Involutions and elementary abelian 2-subgroups
# ---------------------------------------------------------------------------

def involutions(g: FiniteGroup) -> list[int]:
    """Indices of the elements of order exactly 2."""
    return [i for i in range(g.order) if g.element_order(i) == 2]


def elementary_abelian_2_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """All elementary abelian 2-subgroups (trivial one included), by order then index."""
    invs = involutions(g)
    found = {frozenset([0])}
    layer = [frozenset([0])]
    while layer:
        nxt = []
        for k in layer:
            for t in invs:
                if t in k or any(g.mul(t, x) != g.mul(x, t) for x in k):
                    continue
                bigger = k | {g.mul(t, x) for x in k}
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        layer = nxt
    subs = [Subgroup(g, s) for s in found]
    subs.sort(key=lambda s: (s.order, s.members))
    return subs


def elementary_abelian_2_rank(g: FiniteGroup) -> int:
    """Largest k such that G contains an elementary abelian subgroup of order 2^k."""
    best = max(s.order for s in elementary_abelian_2_subgroups(g))
    return best.bit_length() - 1


def maximal_elementary_abelian_2_subgroups(g: FiniteGroup) -> list[Subgroup]:
    subs = elementary_abelian_2_subgroups(g)
    return [s for s in subs if not any(s is not t and s.is_subgroup_of(t) and t.order > s.order for t in subs)]


def is_broad(g: FiniteGroup, h: Subgroup) -> bool:
    """Every involution of G is conjugate to an element of the elementary abelian H."""
    if not h.is_elementary_abelian_2():
        return False
    for cls in g.conjugacy_classes():
        if g.element_order(cls[0]) == 2 and not any(x in h for x in cls):
            return False
    return True


def broad_subgroup(g: FiniteGroup) -> Subgroup | None:
    """Smallest broad subgroup in the deterministic search order, or None.

    For groups of odd order the trivial subgroup is (vacuously) broad.
    """
    for h in elementary_abelian_2_subgroups(g):
        if is_broad(g, h):
            return h
    return None


# ---------------------------------------------------------------------------
# Sylow 2-chains and abelian factorizations
# ---------------------------------------------------------------------------

def two_adic_valuation(m: int) -> int:
    v = 0
    while m % 2 == 0:
        m //= 2
        v += 1
    return v


@dataclass(frozen=True)
class SubgroupChain:
    """H_1 < H_2 < ... < H_l with |H_i| = 2^i, each of index 2 in the next."""

    links: tuple[Subgroup, ...]

    def __post_init__(self):
        for i, h in enumerate(self.links, start=1):
            if h.order != 2 ** i:
                raise GroupError(f"chain link {i} has order {h.order}, expected {2 ** i}")
        for a, b in zip(self.links, self.links[1:]):
            if not a.is_subgroup_of(b):
                raise GroupError("chain links are not nested")

    def __len__(self):
        return len(self.links)

    def __getitem__(self, i):
        return self.links[i]


def sylow2_chain(g: FiniteGroup) -> SubgroupChain:
    """Nested 2-subgroups up to a Sylow 2-subgroup, grown greedily.

    Starts from the lowest-index involution and repeatedly adjoins the
    lowest-index g outside K with g^2 in K normalising K. Sylow theory
    guarantees such a g exists while K is not yet Sylow.
    """
    l = two_adic_valuation(g.order)
    if l == 0:
        raise GroupError("group of odd order has no 2-subgroup chain")
    first = involutions(g)[0]
    k = {0, first}
    links = [Subgroup(g, k)]
    while len(k) < 2 ** l:
        for x in range(g.order):
            if x in k or g.mul(x, x) not in k:
                continue
            if all(g.conjugate(x, y) in k for y in k):
                k = k | {g.mul(x, y) for y in k}
                links.append(Subgroup(g, k))
                break
        else:  # pragma: no cover - excluded by Sylow theory
            raise GroupError("failed to extend 2-subgroup chain")
    return SubgroupChain(tuple(links))


@dataclass(frozen=True)
class CyclicFactorization:
    """Internal direct product decomposition of an abelian group into cyclic factors."""

    group: FiniteGroup
    generators: tuple[int, ...]
    factors: tuple[Subgroup, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.group.cyclic(a) for a in self.generators))
        prod = 1
        for f in self.factors:
            prod *= f.order
        if prod != self.group.order or len(_product_set(self.group, self.generators)) != self.group.order:
            raise GroupError("factors do not form an internal direct product")

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(f.order for f in self.factors)


def _product_set(g: FiniteGroup, gens: Sequence[int]) -> set[int]:
    s = {0}
    for a in gens:
        cyc = g.cyclic(a).members
        s = {g.mul(x, c) for x in s for c in cyc}
    return s


def _even_first(g: FiniteGroup, gens: Sequence[int]) -> tuple[int, ...]:
    even = sorted((a for a in gens if g.element_order(a) % 2 == 0), key=lambda a: -g.element_order(a))
    odd = [a for a in gens if g.element_order(a) % 2 == 1]
    return tuple(even + odd)


def abelian_cyclic_factorization(g: FiniteGroup, generators: Sequence[int] | None = None) -> CyclicFactorization:
    """Split an abelian group into cyclic factors, even orders first (decreasing).

    Exhaustive backtracking over elements ordered by decreasing order; fine at
    desk scale, exponential in general. Pass ``generators`` (element indices)
    to fix the factors yourself; their order is then kept as given.
    """
    if not g.is_abelian():
        raise GroupError("group is not abelian")
    if generators is not None:
        return CyclicFactorization(g, tuple(generators))
    if g.order == 1:
        return CyclicFactorization(g, ())
    cands = sorted((a for a in range(1, g.order)), key=lambda a: (-g.element_order(a), a))

    def search(chosen: list[int], current: set[int]):
        if len(current) == g.order:
            return list(chosen)
        for a in cands:
            cyc = g.cyclic(a).members
            if len(current) * len(cyc) > g.order or g.order % (len(current) * len(cyc)):
                continue
            nxt = {g.mul(x, c) for x in current for c in cyc}
            if len(nxt) != len(current) * len(cyc):
                continue
            res = search(chosen + [a], nxt)
            if res is not None:
                return res
        return None

    found = search([], {0})
    if found is None:  # pragma: no cover
        raise GroupError("no cyclic factorization found")
    return CyclicFactorization(g, _even_first(g, found))


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------

def stabilizer(g: FiniteGroup, x: Sequence) -> Subgroup:
    pt = as_point(x)
    if len(pt) != g.n:
        raise ValueError(f"point has {len(pt)} coordinates, group acts on {g.n}")
    return Subgroup(g, [i for i, m in enumerate(g.elements) if m.apply(pt) == pt])


def has_principal_orbit_type(g: FiniteGroup, x: Sequence) -> bool:
    return stabilizer(g, x).order == 1
