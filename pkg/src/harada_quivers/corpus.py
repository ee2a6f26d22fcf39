"""Small named presentations used by the tests, scripts and the CLI demo."""
from __future__ import annotations

import random

from .quiver import PathCombination, Presentation, Quiver
from .scalars import QQ, Field


def _p(q: Quiver, *labels, c=None, F: Field = QQ) -> PathCombination:
    return PathCombination.from_path(q, q.path(*labels), F.one if c is None else F(c))


def running_example(F: Field = QQ) -> Presentation:
    """Two loops-and-a-cycle algebra: ``a11^3 = a12 a21``, ``a11 a12 = a21 a11 = 0``."""
    q = Quiver.from_labels(["1", "2"], [("a11", "1", "1"), ("a12", "1", "2"), ("a21", "2", "1")])
    rels = (_p(q, "a11", "a11", "a11", F=F) - _p(q, "a12", "a21", F=F),
            _p(q, "a11", "a12", F=F), _p(q, "a21", "a11", F=F))
    return Presentation(q, rels, F, "R")


def truncated_polynomial(n: int, F: Field = QQ) -> Presentation:
    """``K[x]/(x^n)`` as a one-loop quiver."""
    q = Quiver.from_labels(["1"], [("x", "1", "1")])
    return Presentation(q, (_p(q, *["x"] * n, F=F),), F, f"K[x]/(x^{n})")


def a3_radical_square_zero(F: Field = QQ) -> Presentation:
    q = Quiver.from_labels(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return Presentation(q, (_p(q, "a", "b", F=F),), F, "A3")


def commutative_square(F: Field = QQ) -> Presentation:
    q = Quiver.from_labels(["1", "2", "3", "4"],
                           [("a", "1", "2"), ("b", "1", "3"), ("c", "2", "4"), ("d", "3", "4")])
    return Presentation(q, (_p(q, "a", "c", F=F) - _p(q, "b", "d", F=F),), F, "square")


def a2_path_algebra(F: Field = QQ) -> Presentation:
    q = Quiver.from_labels(["1", "2"], [("a", "1", "2")])
    return Presentation(q, (), F, "A2")


def random_admissible(seed: int, F: Field = QQ, max_vertices: int = 3, max_arrows: int = 4,
                      nil: int = 3) -> Presentation:
    """A random presentation whose ideal contains every path of length ``nil``.

    Besides the zero relations there is one random linear relation among the
    length-two paths sharing endpoints, when such a pair exists.
    """
    rng = random.Random(seed)
    m = rng.randint(1, max_vertices)
    verts = [str(v + 1) for v in range(m)]
    arrows = []
    for k in range(rng.randint(1, max_arrows)):
        arrows.append((f"x{k + 1}", rng.choice(verts), rng.choice(verts)))
    q = Quiver.from_labels(verts, arrows)
    rels = []
    by_ends: dict[tuple[int, int], list] = {}
    for p in q.paths_of_length(2):
        by_ends.setdefault((p.start, q.target(p)), []).append(p)
    pairs = sorted((ps for ps in by_ends.values() if len(ps) >= 2), key=lambda ps: ps[0])
    if pairs:
        ps = rng.choice(pairs)
        terms = {p: F(rng.choice([-2, -1, 1, 2, 3])) for p in ps[:2]}
        rels.append(PathCombination(q, terms))
    for p in q.paths_of_length(nil):
        rels.append(PathCombination.from_path(q, p, F.one))
    return Presentation(q, tuple(rels), F, f"random{seed}")


RANDOM_SEED = 9


def standard_corpus(F: Field = QQ) -> dict[str, Presentation]:
    return {
        "running": running_example(F),
        "poly2": truncated_polynomial(2, F),
        "poly3": truncated_polynomial(3, F),
        "poly4": truncated_polynomial(4, F),
        "A3": a3_radical_square_zero(F),
        "square": commutative_square(F),
        "random": random_admissible(RANDOM_SEED, F),
    }
