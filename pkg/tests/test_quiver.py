import pytest
from hypothesis import given, strategies as st

from harada_quivers.quiver import (Path, PathCombination, Presentation, Quiver, QuiverError,
                                   multiply, validate_presentation)

Q = Quiver.from_labels(["1", "2"], [("a11", "1", "1"), ("a12", "1", "2"), ("a21", "2", "1")])


def walks(q: Quiver, max_len=5):
    @st.composite
    def walk(draw):
        v = draw(st.integers(0, q.num_vertices - 1))
        arrows = []
        for _ in range(draw(st.integers(0, max_len))):
            out = q.out_arrows(v if not arrows else q.arrows[arrows[-1]].target)
            if not out:
                break
            arrows.append(draw(st.sampled_from(out)))
        return Path(v, tuple(arrows))
    return walk()


def test_rejects_bad_quivers():
    with pytest.raises(QuiverError):
        Quiver.from_labels(["1", "1"], [])
    with pytest.raises(QuiverError):
        Quiver.from_labels(["1"], [("a", "1", "2")])
    with pytest.raises(QuiverError):
        Quiver.from_labels(["1"], [("a", "1", "1"), ("a", "1", "1")])


def test_path_construction():
    p = Q.path("a11", "a12", "a21")
    assert p.length == 3 and p.start == 0 and Q.target(p) == 0
    assert Q.format_path(p) == "a11*a12*a21"
    assert Q.format_path(Q.stationary(1)) == "e_2"
    with pytest.raises(QuiverError):
        Q.path("a12", "a11")


@given(walks(Q), walks(Q), walks(Q))
def test_composition_is_associative(p, q, r):
    pq = Q.compose(p, q)
    qr = Q.compose(q, r)
    left = Q.compose(pq, r) if pq is not None else None
    right = Q.compose(p, qr) if qr is not None else None
    assert left == right


@given(walks(Q))
def test_stationary_paths_are_units(p):
    assert Q.compose(Q.stationary(p.start), p) == p
    assert Q.compose(p, Q.stationary(Q.target(p))) == p


@given(walks(Q), walks(Q), st.integers(-3, 3), st.integers(-3, 3))
def test_combination_bilinearity(p, q, a, b):
    x = PathCombination.from_path(Q, p, a)
    y = PathCombination.from_path(Q, q, b)
    z = PathCombination.from_path(Q, q)
    assert multiply(x + y, z) == multiply(x, z) + multiply(y, z)
    assert (x - x).is_zero()


def test_paths_between_counts():
    assert len(Q.paths_of_length(2)) == 5
    assert [Q.format_path(p) for p in Q.paths_between(0, 0, 2)] == ["a11*a11", "a12*a21"]


def test_validation_diagnostics():
    x = PathCombination.from_path
    bad = Presentation(Q, (x(Q, Q.path("a11")), x(Q, Q.path("a11", "a12")) + x(Q, Q.path("a11", "a11"))))
    diag = validate_presentation(bad)
    assert not diag.ok
    assert any("length < 2" in p for p in diag.problems)
    assert any("not basic" in p for p in diag.problems)
    good = Presentation(Q, (x(Q, Q.path("a11", "a12")),))
    assert validate_presentation(good).ok


def test_presentation_coerces_coefficients():
    pres = Presentation(Q, (PathCombination.from_path(Q, Q.path("a11", "a12"), 2),))
    (c,) = pres.relations[0].terms.values()
    assert pres.field.contains(c)
