import pytest
from hypothesis import given, settings, strategies as st

from harada_quivers.algebra import (NotFiniteDimensionalError, NormalForm, UnsupportedFieldError, build_algebra,
                                    evaluate_phi, loewy_length, quiver_of_algebra, radical_power,
                                    radical_trace_form, same_ideal, socle_left, socle_right, two_sided_ideal)
from harada_quivers.corpus import (a2_path_algebra, a3_radical_square_zero, commutative_square, random_admissible,
                                   running_example, truncated_polynomial)
from harada_quivers.quiver import PathCombination, Presentation, Quiver, QuiverError
from harada_quivers.scalars import GF


def test_running_example_basis(running):
    R = build_algebra(running)
    assert R.dim == 8
    assert R.labels == ["e_1", "e_2", "a11", "a12", "a21", "a11*a11", "a12*a21", "a21*a12"]
    assert [radical_power(R, k).dim for k in range(5)] == [8, 6, 3, 1, 0]
    assert loewy_length(R) == 4


def test_running_example_cube_equals_cycle(running):
    R = build_algebra(running)
    q = running.quiver
    cube = evaluate_phi(R, PathCombination.from_path(q, q.path("a11", "a11", "a11")))
    cycle = evaluate_phi(R, PathCombination.from_path(q, q.path("a12", "a21")))
    assert cube == cycle and cube


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_truncated_polynomial_dimension(n):
    assert build_algebra(truncated_polynomial(n)).dim == n


@pytest.mark.parametrize("factory, dim", [(a3_radical_square_zero, 5), (commutative_square, 9), (a2_path_algebra, 3)])
def test_small_dimensions(factory, dim):
    assert build_algebra(factory()).dim == dim


def test_not_finite_dimensional():
    q = Quiver.from_labels(["1"], [("x", "1", "1")])
    with pytest.raises(NotFiniteDimensionalError):
        build_algebra(Presentation(q, ()), max_len=10)
    q2 = Quiver.from_labels(["1"], [("x", "1", "1"), ("y", "1", "1")])
    comm = PathCombination.from_path(q2, q2.path("x", "y")) - PathCombination.from_path(q2, q2.path("y", "x"))
    with pytest.raises(NotFiniteDimensionalError):
        build_algebra(Presentation(q2, (comm,)))


def test_invalid_presentation_raises():
    q = Quiver.from_labels(["1"], [("x", "1", "1")])
    with pytest.raises(QuiverError):
        NormalForm(Presentation(q, (PathCombination.from_path(q, q.path("x")),)))


@settings(max_examples=25)
@given(st.integers(0, 400))
def test_random_presentations_are_sound(seed):
    pres = random_admissible(seed)
    R = build_algebra(pres)
    assert R.check_associativity() == []
    assert R.check_idempotents() == []
    # trace-form oracle agrees with the span of positive-length normal forms
    assert radical_trace_form(R) == R.radical
    # admissible: the algebra's quiver is the input quiver
    assert quiver_of_algebra(R).counts == pres.quiver.arrow_counts()


def test_same_field_results_over_gf():
    R = build_algebra(running_example(GF(3)))
    assert R.dim == 8
    with pytest.raises(UnsupportedFieldError):
        radical_trace_form(R)


def test_socles_of_running_example(running):
    R = build_algebra(running)
    for i, label in enumerate(["a12*a21", "a21*a12"]):
        soc = socle_right(R, i)
        assert soc.dim == 1
        assert [R.labels[a] for a in soc.basis()[0]] == [label]
        assert socle_left(R, i).dim == 1


def test_two_sided_ideal_of_arrow(running):
    R = build_algebra(running)
    a11 = {R.labels.index("a11"): R.field.one}
    ideal = two_sided_ideal(R, [a11])
    # a11, a11^2 and the socle of e_1R
    assert ideal.dim == 3


def test_same_ideal_detects_equal_and_different(running):
    q = running.quiver
    x = lambda *ls: PathCombination.from_path(q, q.path(*ls))
    rewritten = Presentation(q, (x("a11", "a11", "a11") - x("a12", "a21"), x("a11", "a12"),
                                 x("a21", "a11") + x("a21", "a11", "a11")))
    assert same_ideal(running, rewritten)
    bigger = Presentation(q, (x("a11", "a12"), x("a21", "a11"), x("a11", "a11", "a11"), x("a12", "a21")))
    assert not same_ideal(running, bigger)


def test_homogeneity_flag(running):
    assert not NormalForm(running).homogeneous
    assert NormalForm(commutative_square()).homogeneous
