from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from orbitspace import descriptions as desc
from orbitspace.estimators import HermiteClassifier, MatrixDescriber, OrbitOracle, OrbitSpaceDescriber, choose_method
from orbitspace.exactalg import GaussianRational, ParseError, RatMatrix
from orbitspace.groups import group_closure, load_group
from orbitspace.oracle import sample_points
from orbitspace.validation import check_group, check_point, check_points

I = GaussianRational(0, 1)


@pytest.mark.parametrize("name,method", [
    ("C2", "order2"), ("C4", "cyclic"), ("C6", "cyclic"), ("C4xC2", "abelian"), ("Q8", "k1"), ("S3", "k1"), ("D5", "k1"),
])
def test_choose_method(name, method):
    assert choose_method(load_group(name)) == method


def test_choose_method_refuses_rank_two_nonabelian():
    with pytest.raises(desc.PreconditionError):
        choose_method(load_group("D4"))


def test_params_and_clone():
    est = OrbitSpaceDescriber(method="k1", mode="full")
    assert est.get_params() == {"method": "k1", "mode": "full", "factor_generators": None}
    c = clone(est)
    assert c.get_params() == est.get_params() and not hasattr(c, "description_")
    assert MatrixDescriber(kind="ps").set_params(kind="gram").kind == "gram"
    assert HermiteClassifier().get_params() == {"generic": True, "fallback": True}


def test_not_fitted():
    with pytest.raises(NotFittedError):
        OrbitSpaceDescriber().transform([[1, 2, 3, 4]])
    with pytest.raises(NotFittedError):
        MatrixDescriber().predict([[1, 2]])
    with pytest.raises(NotFittedError):
        OrbitOracle().predict([[1, 2]])


@pytest.mark.parametrize("name", ["C4", "Q8", "C4xC2", "S3", "C2"])
def test_auto_describer_agrees_off_boundary(name):
    g = load_group(name)
    X = sample_points(g, 10, seed=4)
    est = OrbitSpaceDescriber().fit(name)
    assert est.n_features_in_ == g.n
    rep = est.verify(X)
    assert rep.ok
    # generic descriptions may misjudge only boundary points (some value = 0)
    assert est.score(X) >= 1 - rep.boundary_count / rep.samples_total


def test_describer_transform_is_exact():
    est = OrbitSpaceDescriber(method="k1").fit("C4")
    vals = est.transform([[I, -I, I, -I], [1, 2, 3, 4]])
    assert vals.dtype == object and vals.shape == (2, 1)
    assert vals[0, 0] == 0 and isinstance(vals[1, 0], Fraction)
    assert est.predict([[1, 2, 3, 4]]).tolist() == [True]


def test_full_mode_override_lowers_score_on_c4():
    g = load_group("C4")
    X = [[I, -I, I, -I], [1, 2, 3, 4]]
    assert OrbitSpaceDescriber(method="k1").fit(g).predict(X).tolist() == [False, True]
    assert OrbitSpaceDescriber(method="k1", mode="full").fit(g).score(X) == 0.5


def test_oracle_estimator():
    oracle = OrbitOracle().fit("D4")
    assert oracle.predict([[1, I], [1, 2], [1 + I, 1 - I]]).tolist() == [False, True, False]


def test_matrix_describer():
    X = [[1, I], [1 + I, 1 - I], [3, -2]]
    est = MatrixDescriber(kind="ps").fit("D4")
    mats = est.transform(X)
    assert all(isinstance(m, RatMatrix) and m.shape == (2, 2) for m in mats)
    assert est.predict(X).tolist() == [False, False, True]
    assert est.score(X) == 1.0
    gram = MatrixDescriber(kind="gram", generators="descent").fit("S3")
    assert gram.verify(sample_points(gram.group_, 5, seed=1)).ok


def test_matrix_describer_bad_kind():
    with pytest.raises(ValueError):
        MatrixDescriber(kind="nope").fit("C2")


def test_hermite_classifier():
    X = [["10", "35", "50", "24"], [3, 3, 3, 2], [7, 17, 17, 6]]
    clf = HermiteClassifier().fit()
    assert clf.predict(X).tolist() == [True, False, True]
    assert HermiteClassifier(generic=False).predict(X).tolist() == [True, False, True]
    minors = clf.transform(X)
    assert minors.shape == (3, 4) and all(minors[:, 0] == 4)
    with pytest.raises(ValueError):
        clf.predict([[1, 2, 3]])


def test_hermite_classifier_without_fallback_warns():
    from orbitspace.hermite import BoundaryWarning
    with pytest.warns(BoundaryWarning):
        out = HermiteClassifier(fallback=False).predict([[7, 17, 17, 6]])
    assert out.tolist() == [False]


def test_check_group_forms():
    assert check_group("S3").order == 6
    g = load_group("C2")
    assert check_group(g) is g
    assert check_group([[[0, 1], [1, 0]]]).order == 2
    assert check_group([RatMatrix.identity(3).scale(-1)]).order == 2
    with pytest.raises(TypeError):
        check_group([object()])


def test_check_points():
    p = check_point(["1+i", 2])
    assert p.coords == (1 + I, GaussianRational(2))
    with pytest.raises(ValueError):
        check_point([1, 2, 3], 2)
    with pytest.raises(ParseError):
        check_point("1,2")
    with pytest.raises(ValueError):
        check_points([[1, 2], [1, 2, 3]])
    assert len(check_points(np.array([[1, 2], [3, 4]]), 2)) == 2


def test_nonreal_values_rejected_without_conjugator():
    with pytest.raises(desc.NonRealValueError):
        OrbitSpaceDescriber(method="k1").fit("C4").transform([[I, 0, 0, 0]])


def test_fit_from_generator_list():
    c3 = [RatMatrix.permutation([1, 2, 0])]
    est = OrbitSpaceDescriber().fit(c3)
    assert est.method_ == "k1" and est.inequalities_ == ()
    assert group_closure(c3).order == 3
