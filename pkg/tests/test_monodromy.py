import numpy as np
import pytest

from lgmirror import monodromy
from lgmirror.errors import InvalidInputError
from lgmirror.models import LGSpec


def _is_transposition(perm):
    moved = [i for i, j in enumerate(perm) if i != j]
    return len(moved) == 2 and perm[moved[0]] == moved[1]


def test_permutation_helpers():
    perm = [1, 2, 0]
    assert monodromy.compose(perm, monodromy.inverse(perm)) == [0, 1, 2]
    assert monodromy.compose([1, 0, 2], [0, 2, 1]) == [2, 0, 1]
    start = np.array([0, 1, 2], dtype=complex)
    assert monodromy.permutation_between(start, np.array([1, 0, 2], dtype=complex)) == [1, 0, 2]


def test_constant_path_is_identity():
    spec = LGSpec(k=5, s=1e-6)
    traj = monodromy.track_roots(spec, [3.0, 3.0])
    assert traj.permutation == list(range(6))
    assert len(traj.roots) == 1


def test_track_roots_rejects_bad_input():
    spec = LGSpec(k=5, s=1e-6)
    with pytest.raises(InvalidInputError):
        monodromy.track_roots(spec, [])
    with pytest.raises(InvalidInputError):
        monodromy.track_roots(spec, [1.0, 2.0], safety=1.0)


def test_track_roots_hits_every_node():
    spec = LGSpec(k=5, s=1e-4)
    nodes = [1.0, 1.3, 1.3 + 0.2j]
    traj = monodromy.track_roots(spec, nodes, max_step=0.1)
    assert traj.t_path[0] == nodes[0]
    assert traj.t_path[-1] == nodes[-1]
    assert nodes[1] in traj.t_path
    assert all(abs(b - a) <= 0.1 + 1e-12 for a, b in zip(traj.t_path, traj.t_path[1:]))


@pytest.mark.parametrize("k", [5, 7])
def test_sector_rotation_swaps_twins(k):
    spec = LGSpec(k=k, s=1e-6)
    sector = monodromy.sector_monodromy(spec, 3.0)
    swap = monodromy.twin_transposition(spec, 3.0, sector.trajectory.roots[0])
    assert sector.permutation == swap
    assert _is_transposition(swap)
    assert sorted(sector.twins) == sorted(i for i, j in enumerate(swap) if i != j)


@pytest.mark.parametrize("k", [5, 7])
def test_full_loop_is_a_transposition(k):
    spec = LGSpec(k=k, s=1e-6)
    once = monodromy.loop_monodromy(spec, 3.0, 1)
    twice = monodromy.loop_monodromy(spec, 3.0, 2)
    back = monodromy.loop_monodromy(spec, 3.0, -1)
    assert _is_transposition(once.permutation)
    assert twice.permutation == list(range(k + 1))
    assert back.permutation == monodromy.inverse(once.permutation)
    assert monodromy.compose(once.permutation, once.permutation) == twice.permutation


def test_zero_turns_rejected():
    with pytest.raises(InvalidInputError):
        monodromy.loop_monodromy(LGSpec(k=5, s=1e-6), 3.0, 0)


def test_radial_collision():
    report = monodromy.radial_collision(LGSpec(k=5, s=1e-4), 1.0)
    assert report.relative_error < 1e-4
    assert report.monotone
    assert report.twins_ordered
    assert report.max_imag < 1e-3
    assert report.final_distance < report.distances[0]


def test_radial_collision_rejects_start_past_critical_value():
    with pytest.raises(InvalidInputError):
        monodromy.radial_collision(LGSpec(k=5, s=1e-4), 1e6)
