"""Independent reference implementations used only by the tests.

None of these share code with the package: univariate polynomials are plain
lists of Fractions, matrices plain nested lists.
"""
from fractions import Fraction
from itertools import combinations, permutations


def _strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _rem(a, b):
    """Remainder of a by b, coefficient lists lowest degree first."""
    a = _strip(a)
    b = _strip(b)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[i + shift] -= c * v
        a = _strip(a)
    return a


def _deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _eval(p, x):
    v = Fraction(0)
    for c in reversed(p):
        v = v * x + c
    return v


def _sign_changes(vals):
    vals = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))


def _squarefree(p):
    """p / gcd(p, p')."""
    a, b = _strip(p), _strip(_deriv(p))
    while b:
        a, b = b, _rem(a, b)
    g = a
    if len(g) <= 1:
        return p
    # exact division p / g
    q = [Fraction(0)] * (len(p) - len(g) + 1)
    r = list(p)
    for k in range(len(q) - 1, -1, -1):
        q[k] = r[k + len(g) - 1] / g[-1]
        for i, v in enumerate(g):
            r[k + i] -= q[k] * v
    return q


def sturm_distinct_real_roots(coeffs_low_first):
    """Number of distinct real roots via a Sturm chain on the square-free part."""
    p = _squarefree(_strip([Fraction(c) for c in coeffs_low_first]))
    chain = [p, _deriv(p)]
    while True:
        r = _rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    bound = 1 + max(abs(c / p[-1]) for c in p[:-1]) if len(p) > 1 else Fraction(1)
    lo = [_eval(q, -bound - 1) for q in chain]
    hi = [_eval(q, bound + 1) for q in chain]
    return _sign_changes(lo) - _sign_changes(hi)


def quartic_from_e(e):
    """Coefficients (lowest first) of T^4 - e1 T^3 + e2 T^2 - e3 T + e4."""
    e1, e2, e3, e4 = e
    return [Fraction(e4), -Fraction(e3), Fraction(e2), -Fraction(e1), Fraction(1)]


def power_sums_from_roots(roots, upto):
    """s_k = sum r^k for Gaussian-integer roots given as complex ints (exact via tuples)."""
    out = []
    for k in range(upto + 1):
        re, im = Fraction(0), Fraction(0)
        for a, b in roots:
            pr, pi = Fraction(1), Fraction(0)
            for _ in range(k):
                pr, pi = pr * a - pi * b, pr * b + pi * a
            re += pr
            im += pi
        assert im == 0
        out.append(re)
    return out


def det_leibniz(m):
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= m[i][perm[i]]
        total += -prod if inv % 2 else prod
    return total


def psd_bruteforce(m):
    """All principal minors >= 0 (exact, exponential)."""
    n = len(m)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if det_leibniz([[m[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True

