import numpy as np
import pytest
from pydantic import ValidationError

from lgmirror import lg_numerics as lg
from lgmirror.errors import InvalidInputError
from lgmirror.models import BranchKind, CriticalType, LGSpec


@pytest.mark.parametrize("k,expected", [(3, (2, 6, 8)), (5, (3, 8, 12)), (7, (4, 10, 16))])
def test_newton_polygon_count(k, expected):
    count = lg.newton_polygon_count(k)
    assert (count.interior, count.boundary, count.two_volume) == expected


def test_newton_polygon_needs_odd_k():
    with pytest.raises(InvalidInputError):
        lg.newton_polygon_count(4)


def test_spec_validation():
    with pytest.raises(ValidationError):
        LGSpec(k=4)
    with pytest.raises(ValidationError):
        LGSpec(k=5, s=0.0)
    with pytest.raises(ValidationError):
        LGSpec(k=5, q=[1.0, 2.0])
    with pytest.raises(ValidationError):
        LGSpec(k=5, tau=[1.0, 0.0, 0.5])


def test_polynomials_default_model():
    spec = LGSpec(k=5, delta=0.0)
    p = lg.p_poly(spec)
    assert p.degree() == 6
    assert p(0.0) == pytest.approx(1.0)
    assert lg.critical_polynomial(spec).degree() == 2 * 5 + 2
    assert lg.branch_polynomial(spec, 2.0).degree() == 5 + 1


def test_explicit_roots():
    spec = LGSpec(k=3, q=[1.0, 2.0, 3.0, 4.0])
    roots = np.sort(lg.p_roots(spec).real)
    assert np.allclose(roots, [-4, -3, -2, -1], atol=1e-9)


def test_critical_clusters():
    cs = lg.critical_set(LGSpec(k=5, s=1e-2, delta=1e-2))
    assert cs.counts == {"I": 3, "II": 3, "III": 6}
    assert len(cs.points) == 12
    assert cs.separation > 1


@pytest.mark.parametrize("k,s", [(3, 1e-2), (3, 1e-3), (5, 1e-3), (7, 1e-3)])
def test_critical_count_is_kouchnirenko(k, s):
    cs = lg.critical_set(LGSpec(k=k, s=s))
    assert len(cs.points) == 2 * k + 2
    assert cs.counts == {"I": k - 2, "II": 3, "III": k + 1}


def test_critical_points_solve_the_equations():
    spec = LGSpec(k=5, s=1e-2)
    cs = lg.critical_set(spec)
    p, t_poly = lg.p_poly(spec), lg.t_poly(spec)
    for point in cs.points:
        y, x = point.y, point.x
        # t = 2 s x + T(y) and x y^2 T'(y) = P - y P'
        assert point.t == pytest.approx(2 * spec.s * x + t_poly(y))
        lhs = x * y * y * t_poly.deriv()(y)
        assert abs(lhs - (p(y) - y * p.deriv()(y))) < 1e-6 * max(1.0, abs(lhs))


def test_type_three_near_roots_of_p():
    spec = LGSpec(k=5, s=1e-2)
    cs = lg.critical_set(spec)
    roots = lg.p_roots(spec)
    for point in cs.points:
        if point.kind == CriticalType.III:
            assert np.min(np.abs(roots - point.y)) < 0.25 * 0.5


@pytest.mark.parametrize("k", [5, 7, 9])
def test_two_real_critical_points(k):
    cs = lg.critical_set(LGSpec(k=k, s=1e-2))
    real = sorted(lg.real_critical_points(cs), key=lambda p: p.y.real)
    assert len(real) == 2
    assert all(p.y.real > 0 for p in real)
    # one near y = 0, one out on the large circle
    assert [p.kind for p in real] == [CriticalType.II, CriticalType.I]
    assert real[0].x.real > 0 > real[1].x.real


@pytest.mark.parametrize("k,s", [(5, 1e-6), (7, 1e-7), (9, 1e-8)])
def test_clusters_sit_at_their_predicted_scales(k, s):
    cs = lg.critical_set(LGSpec(k=k, s=s))
    small = max(abs(p.y) for p in cs.points if p.kind == CriticalType.II)
    large = min(abs(p.y) for p in cs.points if p.kind == CriticalType.I)
    assert small < large


@pytest.mark.parametrize("k", [5, 7])
def test_real_labels_survive_growing_s(k):
    kinds = []
    for s in (1e-6, 1e-4, 1e-2):
        real = sorted(lg.real_critical_points(lg.critical_set(LGSpec(k=k, s=s))), key=lambda p: p.y.real)
        kinds.append([p.kind for p in real])
    assert kinds == [[CriticalType.II, CriticalType.I]] * 3


@pytest.mark.parametrize("k,s", [(3, 1e-5), (5, 1e-8)])
def test_type_one_radius(k, s):
    cs = lg.critical_set(LGSpec(k=k, s=s))
    assert cs.type_one_geomean == pytest.approx(cs.type_one_predicted, rel=0.05)
    assert cs.type_one_displayed > cs.type_one_predicted


def test_bad_tolerance():
    with pytest.raises(InvalidInputError):
        lg.critical_set(LGSpec(k=5), tol=0.0)


def test_branch_points_outer_radius():
    bs = lg.branch_points(LGSpec(k=5, s=1e-4), 1.0)
    kinds = [p.kind for p in bs.points]
    assert len(kinds) == 6
    assert kinds.count(BranchKind.TWIN) == 2
    assert kinds.count(BranchKind.NEAR_ZERO) == 1
    assert kinds.count(BranchKind.OUTER) == 3
    assert bs.in_regime
    assert bs.outer_geomean == pytest.approx(bs.outer_predicted, rel=0.05)
    assert bs.outer_predicted == pytest.approx(13.572, rel=1e-3)


def test_branch_points_satisfy_equation():
    spec = LGSpec(k=5, s=1e-4)
    t = 1.0 + 0.5j
    bs = lg.branch_points(spec, t)
    poly = lg.branch_polynomial(spec, t)
    for point in bs.points:
        assert abs(poly(point.y)) < 1e-8 * max(1.0, abs(point.y)) ** 6


def test_gradient_nonnegative_without_s():
    res = lg.palais_smale_sample(LGSpec(k=5), n_samples=2000, s=0.0)
    assert res.minimum >= 0.0
    assert res.max_residual < 1e-9


def test_gradient_sample_reports_violations():
    res = lg.palais_smale_sample(LGSpec(k=5, s=1e-2), n_samples=2000)
    assert res.bound == pytest.approx(0.5e-4)
    assert res.minimum >= 0.0
    assert 0 <= res.violations <= res.samples


def test_gradient_small_along_the_valley():
    # where the first minor vanishes the gradient decays like 1/|y| and drops under s^2/2
    spec = LGSpec(k=5, s=1e-2)
    p = lg.p_poly(spec)
    y = np.array([1000.0 + 0j])
    b = y ** 2 * lg.t_poly(spec).deriv()(y)
    c = spec.s * y ** 2 * p.deriv()(y)
    z = (b + np.sqrt(b * b + 4 * c)) / 2
    x = p(y) / z
    value = lg.gradient_norm_sq(spec, x, y, z)
    assert value[0] < 0.5 * spec.s ** 2
    assert value[0] == pytest.approx(25 / (36 * 1000.0 ** 2), rel=0.05)


def test_negative_s_rejected():
    with pytest.raises(InvalidInputError):
        lg.palais_smale_sample(LGSpec(k=5), n_samples=10, s=-1.0)
