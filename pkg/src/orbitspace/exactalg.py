"""Exact arithmetic: Gaussian rationals, sparse polynomials, rational matrices.

Rationals are :class:`fractions.Fraction`. Everything here is immutable and
exact, so there are no tolerances anywhere downstream.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed rational, Gaussian rational or polynomial literal."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they are almost never the exact value the caller
    meant, and silently rounding would defeat the point of exact arithmetic.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ParseError(f"not a rational literal: {value!r}")
        q = Fraction(s)
        return q
    raise ParseError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussianRational:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse_gaussian(value)
        if isinstance(value, complex):
            raise ParseError(f"floating complex values are not exact: {value!r}")
        return cls(value, 0)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|^2."""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __add__(self, other):
        o = _gauss(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = _gauss(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _gauss(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _gauss(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _gauss(other)
        if o is None:
            return NotImplemented
        d = o.norm()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = _gauss(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({format_gaussian(self)!r})"

    def __str__(self):
        return format_gaussian(self)


def _gauss(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return GaussianRational(value, 0)
    return None


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``a/b``, ``a/b+c/d*i``, ``c/d*i``, ``i``, ``-i``, ``1-2i`` ..."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty Gaussian rational literal")
    if not s.endswith("i"):
        return GaussianRational(to_rational(s), 0)
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    if split > 0:
        re_str, im_str = body[:split], body[split:]
    else:
        re_str, im_str = "0", body
    if im_str in ("", "+", "-"):
        im_str += "1"
    try:
        return GaussianRational(to_rational(re_str), to_rational(im_str))
    except ParseError:
        raise ParseError(f"not a Gaussian rational literal: {text!r}") from None


def format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return format_rational(z.re)
    im = "i" if abs(z.im) == 1 else format_rational(abs(z.im)) + "*i"
    if z.re == 0:
        return ("-" if z.im < 0 else "") + im
    return format_rational(z.re) + ("-" if z.im < 0 else "+") + im


def as_point(coords: Iterable) -> tuple[GaussianRational, ...]:
    return tuple(GaussianRational.coerce(c) for c in coords)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _gauss_int_pow(z: tuple[int, int], k: int) -> tuple[int, int]:
    a, b = z
    ra, rb = 1, 0
    while k:
        if k & 1:
            ra, rb = ra * a - rb * b, ra * b + rb * a
        a, b = a * a - b * b, 2 * a * b
        k >>= 1
    return ra, rb


def grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Polynomial:
    """Sparse polynomial in ``n`` variables with rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions. Instances are treated
    as immutable; equality is equality of normal forms.
    """

    __slots__ = ("n", "terms", "_hash", "_int_form")

    def __init__(self, n: int, terms: dict | None = None):
        self.n = n
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"monomial {e} does not have {n} exponents")
                c = to_rational(c)
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None
        self._int_form = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        p._int_form = None
        return p

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        c = to_rational(c)
        return cls._raw(n, {(0,) * n: c} if c else {})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        """The coordinate function X_{i+1} (``i`` is 0-based)."""
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # -- basic queries -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.n, Fraction(0))

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- arithmetic --------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.n, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if c == 0:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.n, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / to_rational(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == Polynomial.constant(self.n, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / substitution ------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        """Partial derivative with respect to X_{i+1}."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.n, out)

    def gradient(self) -> list["Polynomial"]:
        return [self.diff(i) for i in range(self.n)]

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace X_{i+1} by ``images[i]`` (all in the same ring)."""
        if len(images) != self.n:
            raise ValueError("need one image per variable")
        m = images[0].n if images else self.n
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        total = Polynomial.zero(m)
        for e, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def __call__(self, point):
        return self.evaluate(point)

    def _integer_form(self):
        """(L, {e: L*c}) with L the lcm of coefficient denominators."""
        if self._int_form is None:
            lcm = 1
            for c in self.terms.values():
                lcm = lcm * c.denominator // gcd(lcm, c.denominator)
            self._int_form = (lcm, {e: int(c * lcm) for e, c in self.terms.items()})
        return self._int_form

    def evaluate(self, point: Sequence) -> GaussianRational:
        """Exact value at a point of Q(i)^n.

        Works over the integers: coordinates are brought to a common
        denominator d, so each term of degree k contributes an integral
        Gaussian value over d^k.
        """
        if len(point) != self.n:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.n} variables")
        pts = [GaussianRational.coerce(v) for v in point]
        if not self.terms:
            return GaussianRational(0)
        d = 1
        for z in pts:
            for q in (z.re, z.im):
                d = d * q.denominator // gcd(d, q.denominator)
        num = [(int(z.re * d), int(z.im * d)) for z in pts]
        real = all(b == 0 for _, b in num)
        lcm, coeffs = self._integer_form()
        top = self.degree()
        dpow = [1]
        for _ in range(top):
            dpow.append(dpow[-1] * d)
        powers: list[dict] = [{} for _ in range(self.n)]
        re_total = im_total = 0
        for e, c in coeffs.items():
            scale = c * dpow[top - sum(e)]
            if real:
                val = scale
                for i, k in enumerate(e):
                    if k:
                        pw = powers[i].get(k)
                        if pw is None:
                            pw = powers[i][k] = num[i][0] ** k
                        val *= pw
                re_total += val
                continue
            vr, vi = scale, 0
            for i, k in enumerate(e):
                if not k:
                    continue
                pw = powers[i].get(k)
                if pw is None:
                    pw = powers[i][k] = _gauss_int_pow(num[i], k)
                vr, vi = vr * pw[0] - vi * pw[1], vr * pw[1] + vi * pw[0]
            re_total += vr
            im_total += vi
        den = lcm * dpow[top]
        return GaussianRational(Fraction(re_total, den), Fraction(im_total, den))

    # -- normalization -----------------------------------------------------
    def normalized(self) -> "Polynomial":
        """Divide by the absolute value of the grlex leading coefficient."""
        if not self.terms:
            return self
        return self.scale(1 / abs(self.leading_coefficient()))

    def primitive(self) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for v in nums:
            g = gcd(g, v)
        scale = Fraction(den, g)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self.scale(scale)

    def __repr__(self):
        return f"Polynomial({self.n}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
        )
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(r"([+-])?([^+-]+)")
_FACTOR_VAR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse the textual grammar produced by :func:`format_polynomial`."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial literal")
    if s == "0":
        return Polynomial.zero(n)
    pos = 0
    terms: dict = {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial at {s[pos:]!r}")
        if pos > 0 and m.group(1) is None:
            raise ParseError(f"missing operator in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        exps = [0] * n
        for factor in m.group(2).split("*"):
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            vm = _FACTOR_VAR.match(factor)
            if vm:
                i = int(vm.group(1))
                if not 1 <= i <= n:
                    raise ParseError(f"variable x{i} outside x1..x{n}")
                exps[i - 1] += int(vm.group(2)) if vm.group(2) else 1
            elif re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
            else:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
        pos = m.end()
    return Polynomial(n, terms)


def elementary_symmetric(values: Sequence, k: int):
    """e_k of a sequence of ring elements (polynomials or numbers)."""
    # e[j] after processing a prefix; only degrees up to k are kept
    e = [1] + [0] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


# ---------------------------------------------------------------------------
# Rational matrices
# ---------------------------------------------------------------------------

class RatMatrix:
    """Dense matrix of Fractions, row-major, hashable."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_rational(v) for v in row) for row in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, rows):
        m = cls.__new__(cls)
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "RatMatrix":
        return cls._raw(tuple((Fraction(0),) * c for _ in range(r)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "RatMatrix":
        """Matrix sending e_i to e_{perm[i]} (0-based)."""
        n = len(perm)
        rows = [[0] * n for _ in range(n)]
        for i, j in enumerate(perm):
            rows[j][i] = 1
        return cls(rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(v) for v in r) + "]" for r in self.rows)
        return f"RatMatrix([{body}])"

    def transpose(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(zip(*self.rows)))

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix._raw(tuple(tuple(v * c for v in r) for r in self.rows))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return RatMatrix._raw(tuple(
            tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
            for r in self.rows))

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product; entries may be Fractions or Gaussian rationals."""
        if len(vec) != self.shape[1]:
            raise ValueError("vector length does not match matrix")
        if any(isinstance(v, GaussianRational) for v in vec):
            g = [GaussianRational.coerce(v) for v in vec]
            out = []
            for r in self.rows:
                re = im = Fraction(0)
                for a, v in zip(r, g):
                    if a:
                        re += a * v.re
                        im += a * v.im
                out.append(GaussianRational(re, im))
            return tuple(out)
        return tuple(sum((a * to_rational(v) for a, v in zip(r, vec)), Fraction(0))
                     for r in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def is_symmetric(self) -> bool:
        return self.is_square and self.rows == tuple(zip(*self.rows))

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row and column."""
        if not self.is_square:
            return False
        cols_seen = set()
        for r in self.rows:
            nz = [j for j, v in enumerate(r) if v]
            if len(nz) != 1 or nz[0] in cols_seen:
                return False
            cols_seen.add(nz[0])
        return True

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        a = [list(r) for r in self.rows]
        nr, nc = self.shape
        pivots = []
        row = 0
        for col in range(nc):
            piv = next((i for i in range(row, nr) if a[i][col] != 0), None)
            if piv is None:
                continue
            a[row], a[piv] = a[piv], a[row]
            inv = 1 / a[row][col]
            a[row] = [v * inv for v in a[row]]
            for i in range(nr):
                if i != row and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[row])]
            pivots.append(col)
            row += 1
            if row == nr:
                break
        return a, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def determinant(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.rows]
        n = len(a)
        det = Fraction(1)
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            inv = 1 / a[col][col]
            for i in range(col + 1, n):
                if a[i][col]:
                    f = a[i][col] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return det

    def inverse(self) -> "RatMatrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.shape[0]
        aug = RatMatrix._raw(tuple(r + RatMatrix.identity(n).rows[i] for i, r in enumerate(self.rows)))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RatMatrix._raw(tuple(tuple(r[n:]) for r in red[:n]))

    def principal_submatrix(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))


def char_poly_coeffs(m: RatMatrix) -> list[Fraction]:
    """Coefficients of det(t*I - M), leading coefficient first.

    Faddeev-LeVerrier recursion; exact over Q.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.shape[0]
    coeffs = [Fraction(1)]
    mk = RatMatrix.zeros(n, n)
    ident = RatMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        coeffs.append(-(m @ mk).trace() / k)
    return coeffs


def principal_minor_sums(m: RatMatrix) -> list[Fraction]:
    """E_1..E_n, E_k being the sum of all k x k principal minors."""
    c = char_poly_coeffs(m)
    return [c[k] * (-1) ** k for k in range(1, len(c))]


def principal_minor_sums_bruteforce(m: RatMatrix) -> list[Fraction]:
    """Same quantity by enumerating minors; exponential, for cross-checks."""
    n = m.shape[0]
    return [sum((m.principal_submatrix(idx).determinant() for idx in combinations(range(n), k)),
                Fraction(0)) for k in range(1, n + 1)]


PSD_MINOR_LIMIT = 16


def psd_by_elimination(m: RatMatrix) -> bool:
    """Exact PSD test by symmetric elimination with diagonal pivoting, O(n^3).

    A negative diagonal entry refutes PSD; a zero diagonal entry forces its
    row to vanish; otherwise pivot on a positive diagonal entry and recurse
    on the Schur complement.
    """
    if not m.is_symmetric():
        raise ValueError("psd check needs a symmetric matrix")
    a = [list(r) for r in m.rows]
    while a:
        k = len(a)
        if any(a[i][i] < 0 for i in range(k)):
            return False
        piv = next((i for i in range(k) if a[i][i] > 0), None)
        if piv is None:
            return all(v == 0 for row in a for v in row)
        zero_rows = [i for i in range(k) if a[i][i] == 0]
        if any(a[i][j] != 0 for i in zero_rows for j in range(k)):
            return False
        d = a[piv][piv]
        row = a[piv]
        keep = [i for i in range(k) if i != piv and i not in zero_rows]
        a = [[a[i][j] - row[i] * row[j] / d for j in keep] for i in keep]
    return True


def psd_check(m: RatMatrix, method: str = "auto") -> bool:
    """Exact positive semi-definiteness of a symmetric rational matrix.

    ``method="minors"`` requires every principal-minor sum E_k >= 0 (read off
    the characteristic polynomial); ``"elimination"`` uses
    :func:`psd_by_elimination`. ``"auto"`` picks minors up to size
    ``PSD_MINOR_LIMIT`` and elimination above, where the O(n^4) trace
    recursion gets slow.
    """
    if not m.is_symmetric():
        raise ValueError("psd_check needs a symmetric matrix")
    if method == "auto":
        method = "minors" if m.shape[0] <= PSD_MINOR_LIMIT else "elimination"
    if method == "minors":
        return all(e >= 0 for e in principal_minor_sums(m))
    if method == "elimination":
        return psd_by_elimination(m)
    raise ValueError(f"unknown method {method!r}")


def sign_variations(seq: Iterable) -> int:
    signs = [1 if v > 0 else -1 for v in seq if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def inertia(m: RatMatrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix.

    The characteristic polynomial of a real symmetric matrix is real-rooted,
    so Descartes' rule counts its positive roots exactly.
    """
    if not m.is_symmetric():
        raise ValueError("inertia needs a symmetric matrix")
    c = char_poly_coeffs(m)
    n = len(c) - 1
    pos = sign_variations(c)
    neg = sign_variations([v * (-1) ** (n - k) for k, v in enumerate(c)])
    return pos, neg, n - pos - neg


def signature(m: RatMatrix) -> int:
    pos, neg, _ = inertia(m)
    return pos - neg


def nullspace(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of ker(M), one vector per free column."""
    red, pivots = m.rref()
    nc = m.shape[1]
    free = [j for j in range(nc) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -red[row][f]
        basis.append(tuple(v))
    return basis


linear_solve = nullspace
