import pytest

from harada_quivers.algebra import build_algebra, same_ideal
from harada_quivers.block import BlockSpec
from harada_quivers.corpus import (a2_path_algebra, a3_radical_square_zero, commutative_square,
                                   truncated_polynomial)
from harada_quivers.harada import (NotQFError, StaircaseSpec, breakpoints, harada_construction, qf_check,
                                   socle_path)
from harada_quivers.quiver import Presentation

SPEC = BlockSpec((3, 2))
STAIR = StaircaseSpec(((1, 2, 2), (1, 2)))


def test_qf_running_example(running):
    check = qf_check(build_algebra(running))
    assert check.is_qf and check.permutation.is_identity()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qf_truncated_polynomial(n):
    assert qf_check(build_algebra(truncated_polynomial(n))).permutation.sigma == (0,)


@pytest.mark.parametrize("factory", [a2_path_algebra, a3_radical_square_zero, commutative_square])
def test_not_qf(factory):
    check = qf_check(build_algebra(factory()))
    assert not check.is_qf and check.problems


def test_nontrivial_nakayama_permutation():
    # the 2-cycle with radical square zero is self-injective with sigma swapping the vertices
    from harada_quivers.quiver import PathCombination, Quiver
    q = Quiver.from_labels(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    rels = tuple(PathCombination.from_path(q, q.path(*w)) for w in (("a", "b"), ("b", "a")))
    check = qf_check(build_algebra(Presentation(q, rels)))
    assert check.permutation.sigma == (1, 0)


def test_socle_paths(running):
    R = build_algebra(running)
    sigma = qf_check(R).permutation
    q = running.quiver
    assert [q.format_path(socle_path(R, i, sigma)) for i in range(2)] == ["a12*a21", "a21*a12"]


def test_breakpoints():
    assert breakpoints(STAIR).l == ((0, 1, 3), (0, 1, 2))
    assert breakpoints(StaircaseSpec(((2, 2, 2),))).l == ((0, 3),)


def test_staircase_validation(running):
    with pytest.raises(ValueError, match="nondecreasing"):
        harada_construction(running, SPEC, StaircaseSpec(((2, 1, 2), (1, 2))))
    with pytest.raises(ValueError, match="length"):
        harada_construction(running, SPEC, StaircaseSpec(((1, 2), (1, 2))))
    with pytest.raises(ValueError, match="lie in"):
        harada_construction(running, SPEC, StaircaseSpec(((1, 2, 3), (1, 3))))


def test_non_qf_input_rejected():
    with pytest.raises(NotQFError):
        harada_construction(a2_path_algebra(), BlockSpec((2, 1)), StaircaseSpec(((1, 1), (1,))))


def test_generators_running_example(running):
    hc = harada_construction(running, SPEC, STAIR)
    Q = hc.block.quiver
    assert [(g.i, g.u, g.v) for g in hc.generators] == [(0, 1, 1), (0, 3, 2), (1, 1, 1)]
    assert [Q.format_path(g.path) for g in hc.generators] == [
        "d:1:1*d:1:2*b:a12*d:2:1*b:a21*d:1:1",
        "b:a12*d:2:1*b:a21*d:1:1*d:1:2",
        "d:2:1*b:a21*d:1:1*d:1:2*b:a12*d:2:1",
    ]


def test_socle_choice_does_not_change_the_ideal(running):
    q = running.quiver
    default = harada_construction(running, SPEC, STAIR).presentation
    pinned = harada_construction(running, SPEC, STAIR, thetas={0: q.path("a11", "a11", "a11")}).presentation
    assert default.relations != pinned.relations
    assert same_ideal(default, pinned)


def test_wrong_socle_override(running):
    with pytest.raises(ValueError, match="does not span"):
        harada_construction(running, SPEC, STAIR, thetas={0: running.quiver.path("a11", "a11")})


def test_full_staircase_adds_nothing(running):
    # c_ij = n_sigma(i) everywhere: X = 0
    hc = harada_construction(running, SPEC, StaircaseSpec(((3, 3, 3), (2, 2))))
    assert hc.generators == [] and hc.presentation.relations == hc.block_relations
