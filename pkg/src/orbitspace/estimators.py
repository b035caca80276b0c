"""scikit-learn style wrappers.

``fit`` takes a group (object, built-in name, JSON path or generator list);
``transform``/``predict`` take batches of points with Gaussian-rational
coordinates. Values stay exact: ``transform`` returns object arrays of
Fractions (or RatMatrix), ``predict`` returns boolean arrays.
"""
from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import descriptions as desc
from .exactalg import psd_check, to_rational
from .groups import abelian_cyclic_factorization, elementary_abelian_2_rank
from .hermite import BoundaryWarning, hermite_matrix, is_hyperbolic
from .oracle import orbit_contains_real_point, verify_description, verify_matrix_description, with_conjugator
from .validation import check_group, check_points


def _object_array(rows) -> np.ndarray:
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out


def choose_method(group) -> str:
    """Pick a few-inequality construction whose hypotheses the group meets."""
    if group.order % 2 or group.order == 2:
        return "k1" if group.order % 2 else "order2"
    if group.is_abelian():
        fac = abelian_cyclic_factorization(group)
        return "cyclic" if len(fac.generators) == 1 else "abelian"
    if elementary_abelian_2_rank(group) == 1:
        return "k1"
    raise desc.PreconditionError("no few-inequality construction applies (non-abelian, 2-rank > 1); use a matrix describer")


class OrbitOracle(ClassifierMixin, BaseEstimator):
    """Brute-force membership of complex points in the real orbit space."""

    def fit(self, group, y=None):
        self.group_ = check_group(group)
        self.n_features_in_ = self.group_.n
        return self

    def predict(self, X):
        check_is_fitted(self, "group_")
        pts = check_points(X, self.group_.n)
        return np.array([orbit_contains_real_point(self.group_, p) for p in pts], dtype=bool)


class OrbitSpaceDescriber(TransformerMixin, BaseEstimator):
    """Few-inequality description of R^n/G.

    method: "auto", "k1", "cyclic", "abelian" or "order2".
    mode: None keeps the construction's own mode; "full"/"generic" overrides it.
    """

    def __init__(self, method="auto", mode=None, factor_generators=None):
        self.method = method
        self.mode = mode
        self.factor_generators = factor_generators

    def fit(self, group, y=None):
        g = check_group(group)
        method = choose_method(g) if self.method == "auto" else self.method
        if method == "k1":
            d = desc.single_inequality_k1(g)
        elif method == "cyclic":
            d = desc.cyclic_inequalities(g)[1 if self.mode == "generic" else 0]
        elif method == "abelian":
            d = desc.abelian_inequalities(g, self.factor_generators)
        elif method == "order2":
            d = desc.order2_inequality(g)
        else:
            raise ValueError(f"unknown method {self.method!r}")
        if self.mode is not None and self.mode != d.mode:
            d = d.with_mode(self.mode)
        self.group_ = g
        self.method_ = method
        self.description_ = d
        self.inequalities_ = d.inequalities
        self.n_features_in_ = g.n
        return self

    def transform(self, X):
        """Exact inequality values, one row per point."""
        check_is_fitted(self, "description_")
        pts = [with_conjugator(self.group_, p) for p in check_points(X, self.group_.n)]
        return _object_array([self.description_.evaluate(p) for p in pts])

    def predict(self, X):
        """Membership according to the description (all >= 0 in full mode, all > 0 in generic)."""
        vals = self.transform(X)
        if self.description_.mode == "full":
            return np.array([all(v >= 0 for v in row) for row in vals], dtype=bool)
        return np.array([all(v > 0 for v in row) for row in vals], dtype=bool)

    def verify(self, X):
        check_is_fitted(self, "description_")
        return verify_description(self.group_, self.description_, check_points(X, self.group_.n))

    def score(self, X, y=None, sample_weight=None):
        """Fraction of points where ``predict`` matches the oracle (or ``y``)."""
        pred = self.predict(X)
        if y is None:
            y = OrbitOracle().fit(self.group_).predict(X)
        return float(np.mean(pred == np.asarray(y, dtype=bool)))


class MatrixDescriber(TransformerMixin, BaseEstimator):
    """PSD-matrix description: Gram matrix ("gram") or gradient Gram matrix ("ps").

    generators: module generators for "gram" (None for the default box,
    "descent" for the descent basis); invariants: fundamental invariants for
    "ps" (None to compute generators of the invariant ring).
    """

    def __init__(self, kind="gram", generators=None, invariants=None):
        self.kind = kind
        self.generators = generators
        self.invariants = invariants

    def fit(self, group, y=None):
        g = check_group(group)
        if self.kind == "gram":
            gens = desc.descent_basis(g.n) if self.generators == "descent" else self.generators
            m = desc.gram_matrix_B(g, gens)
        elif self.kind == "ps":
            fund = self.invariants
            if fund is None:
                fund = desc.known_fundamental_invariants(g.name or "") or desc.invariant_generators(g)
            m = desc.procesi_schwarz_matrix(g, fund)
        else:
            raise ValueError(f"kind must be 'gram' or 'ps', got {self.kind!r}")
        self.group_ = g
        self.matrix_ = m
        self.n_features_in_ = g.n
        return self

    def transform(self, X):
        check_is_fitted(self, "matrix_")
        pts = [with_conjugator(self.group_, p) for p in check_points(X, self.group_.n)]
        return [self.matrix_.evaluate(p) for p in pts]

    def predict(self, X):
        return np.array([psd_check(m) for m in self.transform(X)], dtype=bool)

    def verify(self, X):
        check_is_fitted(self, "matrix_")
        return verify_matrix_description(self.group_, self.matrix_, check_points(X, self.group_.n))

    def score(self, X, y=None, sample_weight=None):
        pred = self.predict(X)
        if y is None:
            y = OrbitOracle().fit(self.group_).predict(X)
        return float(np.mean(pred == np.asarray(y, dtype=bool)))


class HermiteClassifier(ClassifierMixin, BaseEstimator):
    """Hyperbolicity of monic quartics given by rows z = (z1, z2, z3, z4).

    generic=True applies p2*p4 > 0 and p3 > 0, falling back to the exact PSD
    test when a minor vanishes (if ``fallback``); generic=False always uses
    the exact test.
    """

    def __init__(self, generic=True, fallback=True):
        self.generic = generic
        self.fallback = fallback

    def fit(self, X=None, y=None):
        self.n_features_in_ = 4
        return self

    def _rows(self, X):
        rows = [[to_rational(v) for v in row] for row in X]
        for r in rows:
            if len(r) != 4:
                raise ValueError(f"expected 4 coefficients per row, got {len(r)}")
        return rows

    def transform(self, X):
        """Leading principal minors p1..p4 of the Hermite matrix."""
        return _object_array([list(hermite_matrix(r).p) for r in self._rows(X)])

    def predict(self, X):
        out = []
        for r in self._rows(X):
            if not self.generic:
                out.append(is_hyperbolic(r))
                continue
            _, p2, p3, p4 = hermite_matrix(r).p
            if 0 in (p2, p3, p4):
                if self.fallback:
                    out.append(is_hyperbolic(r))
                    continue
                warnings.warn("vanishing Hermite minor; generic verdict undecided", BoundaryWarning, stacklevel=2)
            out.append(p2 * p4 > 0 and p3 > 0)
        return np.array(out, dtype=bool)
