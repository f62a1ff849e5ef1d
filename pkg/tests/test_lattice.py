import numpy as np
import pytest

from lgmirror import lattice
from lgmirror.errors import InvalidInputError
from lgmirror.models import GradedCrossing, HomologyClass


@pytest.fixture
def basis():
    return lattice.xk_fiber_basis(5)


def test_basis_labels(basis):
    assert basis.labels == ["l", "l_2", "l_3", "l_4", "a", "b"]


def test_pairing_values(basis):
    u = basis.unit
    assert lattice.pair(u("l"), u("l_2")) == -1
    assert lattice.pair(u("l_2"), u("l_4")) == -1
    assert lattice.pair(u("b"), u("l")) == 1
    assert lattice.pair(u("a"), u("b")) == -1
    assert lattice.pair(u("a"), u("l")) == 0


def test_pairing_is_antisymmetric(basis):
    x = lattice.parse_class("b-4a-2l", basis)
    y = lattice.parse_class("l_3-2l_4+l", basis)
    assert lattice.pair(x, y) == -lattice.pair(y, x)
    assert lattice.pair(x, x) == 0



@pytest.mark.parametrize("k", [5, 9])
def test_pairing_is_bilinear_on_random_classes(k):
    basis = lattice.xk_fiber_basis(k)
    rng = np.random.default_rng(k)

    def draw():
        return HomologyClass(coeffs=rng.integers(-5, 6, size=basis.rank).tolist(), basis=basis)

    for _ in range(50):
        x, y, z = draw(), draw(), draw()
        a, b = (int(v) for v in rng.integers(-4, 5, size=2))
        assert lattice.pair(x * a + y * b, z) == a * lattice.pair(x, z) + b * lattice.pair(y, z)
        assert lattice.pair(z, x * a + y * b) == a * lattice.pair(z, x) + b * lattice.pair(z, y)
        assert lattice.pair(x, y) == -lattice.pair(y, x)
        assert lattice.pair(x, x) == 0

def test_parse_and_format(basis):
    x = lattice.parse_class("b-4a-2l", basis)
    assert x.coeffs == [-2, 0, 0, 0, -4, 1]
    assert lattice.format_class(x) == "-2l-4a+b"
    assert lattice.format_class(basis.zero()) == "0"


@pytest.mark.parametrize("expr", ["", "b c", "x+l", "b-+"])
def test_parse_rejects(basis, expr):
    with pytest.raises(InvalidInputError):
        lattice.parse_class(expr, basis)


def test_sign_normalization(basis):
    x = lattice.parse_class("-l+b", basis)
    assert lattice.normalize_sign(x).coeffs[0] == 1
    assert lattice.same_up_to_sign(x, -x)
    assert not lattice.same_up_to_sign(x, basis.unit("b"))


def test_class_L(basis):
    assert lattice.format_class(lattice.class_L(5, 2)) == "2l+l_2"
    assert lattice.format_class(lattice.class_L(5, 3)) == "-l-l_3"
    assert lattice.format_class(lattice.class_L(5, 4)) == "l_4"
    with pytest.raises(InvalidInputError):
        lattice.class_L(5, 5)


def test_l_collection_order():
    names = [lattice.format_class(x) for x in lattice.l_collection(5)]
    assert names == ["l_4", "-l-l_3", "2l+l_2"]


def test_even_k_rejected():
    with pytest.raises(InvalidInputError):
        lattice.xk_fiber_basis(6)


def test_general_basis_rejects_symmetric_form():
    with pytest.raises(ValueError):
        lattice.general_basis(["u", "v"], [[0, 1], [1, 0]])


def test_presets(basis):
    assert lattice.format_class(lattice.class_preset(5, "P~")) == "l+2a+2b"
    assert lattice.format_class(lattice.class_preset(5, "R_3")) == "-2l+l_3"
    with pytest.raises(InvalidInputError):
        lattice.class_preset(5, "Q_1")


def test_dual_presets(basis):
    x = lattice.class_preset(5, "Ltilde_2")
    assert x == lattice.parse_class("l_2-2l_3+l_4", basis)
    assert lattice.class_preset(5, "Ltilde_3") == lattice.parse_class("l_3-2l_4+l", basis)


def test_dehn_twist(basis):
    b, l = basis.unit("b"), basis.unit("l")
    assert lattice.dehn_twist(b, l, 1) == b + l
    assert lattice.dehn_twist(b, l, -2) == b - 2 * l
    assert lattice.twist_line_bundle(b, [l, l], [1, 1]) == b + 2 * l
    with pytest.raises(InvalidInputError):
        lattice.twist_line_bundle(b, [l], [1, 2])


def test_seidel_degrees():
    assert lattice.seidel_degree(lattice.crossing("p", 5, 2)) == 1
    assert lattice.seidel_degree(lattice.crossing("g", 5, 2)) == 2
    assert lattice.seidel_degree(lattice.crossing("p", 5, 2, shifted=True)) == 0
    assert lattice.seidel_degree(lattice.crossing("g", 5, 2, shifted=True)) == 0


@pytest.mark.parametrize("m", [-3, -1, 1, 2, 7])
def test_seidel_degree_ignores_common_shift(m):
    assert lattice.seidel_degree(GradedCrossing(alpha_lower=0.3, alpha_upper=1.7, shift_lower=m, shift_upper=m)) == 2
    for kind in ("p", "g"):
        for shifted in (False, True):
            c = lattice.crossing(kind, 7, 3, shifted=shifted)
            moved = c.model_copy(update={"shift_lower": c.shift_lower + m, "shift_upper": c.shift_upper + m})
            assert lattice.seidel_degree(moved) == lattice.seidel_degree(c)


@pytest.mark.parametrize("k", [5, 7, 9])
def test_cf_table_matches_pairing(k):
    assert len(lattice.cf_table(k)) == 2 * (k - 3) - 1 + 14
    assert lattice.cf_mismatches(k) == []
