import pytest

from lgmirror import sturm
from lgmirror.errors import InvalidInputError


def test_double_point_values():
    assert sturm.t_double(5) == pytest.approx(0.3257, abs=1e-4)
    assert sturm.t_double_bound(5) == pytest.approx(0.3532, abs=1e-4)


@pytest.mark.parametrize("t0,expected", [(0.2, 3), (0.5, 1)])
def test_examples(t0, expected):
    count = sturm.sturm_real_roots(5, t0)
    assert count.distinct == expected
    assert count.with_multiplicity == expected
    assert count.numeric == expected


@pytest.mark.parametrize("k", [5, 7, 9])
@pytest.mark.parametrize("factor", [0.25, 0.5, 0.9])
def test_three_roots_below_double_point(k, factor):
    count = sturm.sturm_real_roots(k, factor * sturm.t_double(k))
    assert count.distinct == 3 == count.numeric


@pytest.mark.parametrize("k", [5, 7, 9])
@pytest.mark.parametrize("factor", [1.1, 1.5, 3.0])
def test_one_root_above_double_point(k, factor):
    count = sturm.sturm_real_roots(k, factor * sturm.t_double(k))
    assert count.distinct == 1 == count.numeric


@pytest.mark.parametrize("k", [5, 7, 9])
def test_exact_double_point(k):
    count = sturm.sturm_at_double_point(k)
    assert (count.distinct, count.with_multiplicity) == (2, 3)
    assert count.t_double < count.t_double_bound


def test_numeric_count_can_be_skipped():
    assert sturm.sturm_real_roots(5, 0.2, cross_check=False).numeric is None


def test_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        sturm.sturm_real_roots(5, 0.0)
    with pytest.raises(InvalidInputError):
        sturm.sturm_real_roots(2, 0.5)
