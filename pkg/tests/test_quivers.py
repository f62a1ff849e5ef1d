from fractions import Fraction

import pytest

from lgmirror import constants as C
from lgmirror import quivers
from lgmirror.errors import InvalidInputError
from lgmirror.models import MonomialCoeff
from lgmirror.path_algebra import hom_dims


def _points(k):
    return [(1, -i) for i in range(1, k + 2)]


def test_qc_constraint_rewrites_to_minus_one():
    assert C.qc_monomial().substitute(C.rewrite_rules(5)) == MonomialCoeff(sign=-1)


def test_monomial_arithmetic():
    a, b = MonomialCoeff.symbol("a"), MonomialCoeff.symbol("b")
    assert (a * b / b) == a
    assert (-a) ** 2 == a ** 2
    assert (a / a).exponents == {}
    assert a.evaluate({"a": Fraction(3, 2)}) == Fraction(3, 2)


def test_mckay_quiver_shape():
    q = quivers.mckay_quiver(7)
    assert q.vertices == ["e_2", "e_3", "e_4", "e_5", "e_6"]
    assert len(q.arrows) == 8
    assert len(q.relations) == 9
    assert all(a.pre_shift_degree == 1 and a.degree == 0 for a in q.arrows)


@pytest.mark.parametrize("k", [5, 7])
def test_xk_quiver_vertices(k):
    q = quivers.xk_quiver(k, _points(k))
    assert q.vertices[k - 2:k + 1] == ["PhiO", "PhiT", "PhiOH"]
    assert q.vertices[-1] == f"B{k + 1}"
    assert len(q.vertices) == 2 * k + 2


def test_xk_quiver_rejects_bad_points():
    with pytest.raises(InvalidInputError):
        quivers.xk_quiver(5, _points(5)[:-1])
    with pytest.raises(InvalidInputError):
        quivers.xk_quiver(5, [(0, 0)] + _points(5)[1:])
    with pytest.raises(InvalidInputError):
        quivers.xk_quiver(5, [(1, 1), (2, 2)] + _points(5)[2:])


def test_gluing_quiver_needs_odd_k_at_least_five():
    with pytest.raises(InvalidInputError, match="odd k >= 5, got 3"):
        quivers.xk_quiver(3, _points(3))
    assert quivers.mckay_quiver(3).vertices == ["e_2"]
    with pytest.raises(InvalidInputError):
        quivers.fukaya_quiver(6)


@pytest.mark.parametrize("k", [5, 7, 9])
def test_fukaya_quiver_normalises(k):
    result = quivers.normalize_constants(quivers.fukaya_quiver(k))
    assert len(result.quiver.relations) == len(quivers.fukaya_quiver(k).relations)
    pts = quivers.normalized_points(result, list(range(2, k + 2)))
    assert pts == [(1, -i) for i in range(1, k + 2)]


def test_normalised_points_scale_with_rho():
    result = quivers.normalize_constants(quivers.fukaya_quiver(5))
    pts = quivers.normalized_points(result, [2, 3, 4, 5, 6], rho=Fraction(1, 2))
    assert pts[1] == (1, Fraction(-1))


def test_normalised_points_feed_xk_quiver():
    result = quivers.normalize_constants(quivers.fukaya_quiver(5))
    pts = quivers.normalized_points(result, [Fraction(3, 2), 2, 5, 7, 11])
    assert hom_dims(quivers.xk_quiver(5, pts)) == hom_dims(quivers.xk_quiver(5, _points(5)))


def test_coincident_novikov_weights_rejected():
    result = quivers.normalize_constants(quivers.fukaya_quiver(5))
    with pytest.raises(InvalidInputError):
        quivers.xk_quiver(5, quivers.normalized_points(result, [1] * 5))
    with pytest.raises(InvalidInputError):
        quivers.normalized_points(result, [2, 3])


def test_compare_rescalings():
    rows = {label: agree for label, _, _, agree in quivers.compare_rescalings(5)}
    assert rows["x1"] and rows["z1"] and rows["delta_tilde"]
    assert not rows["y1"]


def test_quiver_round_trip(tmp_path):
    q = quivers.fukaya_quiver(5)
    path = tmp_path / "fukaya.json"
    quivers.save_quiver(q, path)
    assert quivers.load_quiver(path) == q
