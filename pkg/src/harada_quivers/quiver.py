"""Quivers, paths, path algebras and presentations.

Paths compose left to right: ``p * q`` means "first p, then q" and is only
nonzero when ``p`` ends where ``q`` starts. Vertex and arrow labels are
strings; internally both are dense integer indices in declaration order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .scalars import QQ, Field


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex label")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise QuiverError("duplicate arrow label")
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise QuiverError(f"arrow {a.label} references a missing vertex")

    @classmethod
    def from_labels(cls, vertices: Sequence[str], arrows: Iterable[tuple[str, str, str]]) -> Quiver:
        """Build from ``(label, source label, target label)`` triples."""
        vertices = [str(v) for v in vertices]
        index = {v: i for i, v in enumerate(vertices)}
        out = []
        for label, s, t in arrows:
            if s not in index or t not in index:
                raise QuiverError(f"arrow {label} references unknown vertex")
            out.append(Arrow(label, index[s], index[t]))
        return cls(tuple(vertices), tuple(out))

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise QuiverError(f"unknown vertex {label!r}") from None

    def arrow_index(self, label: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.label == label:
                return k
        raise QuiverError(f"unknown arrow {label!r}")

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def arrow_counts(self) -> dict[tuple[int, int], int]:
        """Number of arrows ``i -> j`` for every pair that has any."""
        out: dict[tuple[int, int], int] = {}
        for a in self.arrows:
            out[(a.source, a.target)] = out.get((a.source, a.target), 0) + 1
        return out

    def out_arrows(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    # -- paths -------------------------------------------------------------
    def path(self, *labels: str, start: str | None = None) -> Path:
        """Path from arrow labels; with no labels, the stationary path at ``start``."""
        if not labels:
            if start is None:
                raise QuiverError("stationary path needs a vertex")
            return Path(self.vertex_index(start), ())
        idx = tuple(self.arrow_index(l) for l in labels)
        p = Path(self.arrows[idx[0]].source, idx)
        self.check_path(p)
        return p

    def stationary(self, v: int) -> Path:
        return Path(v, ())

    def arrow_path(self, k: int) -> Path:
        return Path(self.arrows[k].source, (k,))

    def target(self, p: Path) -> int:
        return self.arrows[p.arrows[-1]].target if p.arrows else p.start

    def check_path(self, p: Path) -> None:
        cur = p.start
        for k in p.arrows:
            a = self.arrows[k]
            if a.source != cur:
                raise QuiverError(f"arrows do not compose at {self.arrows[k].label}")
            cur = a.target

    def compose(self, p: Path, q: Path) -> Path | None:
        """Concatenate ``p`` then ``q``; ``None`` is the zero of KQ."""
        if self.target(p) != q.start:
            return None
        return Path(p.start, p.arrows + q.arrows)

    def paths_of_length(self, n: int) -> list[Path]:
        """All paths of length ``n`` in path order."""
        layer = [Path(v, ()) for v in range(len(self.vertices))]
        for _ in range(n):
            layer = [Path(p.start, p.arrows + (k,))
                     for p in layer for k in self.out_arrows(self.target(p))]
        return sorted(layer, key=path_key)

    def paths_between(self, i: int, j: int, length: int) -> list[Path]:
        return [p for p in self.paths_of_length(length) if p.start == i and self.target(p) == j]

    def format_path(self, p: Path, sep: str = "*") -> str:
        if not p.arrows:
            return f"e_{self.vertices[p.start]}"
        return sep.join(self.arrows[k].label for k in p.arrows)


class Path(NamedTuple):
    """A path: start vertex index plus arrow indices (empty for stationary)."""

    start: int
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


def path_key(p: Path):
    """Total order on paths: shorter first, then lexicographic arrow order."""
    return (len(p.arrows), p.arrows, p.start)


class PathCombination:
    """A finite linear combination of paths (an element of KQ)."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: dict[Path, object] | None = None):
        self.quiver = quiver
        self.terms = {p: c for p, c in (terms or {}).items() if c}

    @classmethod
    def from_path(cls, quiver: Quiver, p: Path, coeff=1) -> PathCombination:
        return cls(quiver, {p: coeff})

    def _check(self, other: PathCombination):
        if not isinstance(other, PathCombination):
            raise TypeError(f"expected PathCombination, got {type(other).__name__}")
        if other.quiver != self.quiver:
            raise QuiverError("elements of different path algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return PathCombination(self.quiver, out)

    def __neg__(self):
        return PathCombination(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> PathCombination:
        return PathCombination(self.quiver, {p: c * x for p, x in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        out: dict[Path, object] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                pq = self.quiver.compose(p, q)
                if pq is not None:
                    out[pq] = out.get(pq, 0) + a * b
        return PathCombination(self.quiver, out)

    def __eq__(self, other):
        if not isinstance(other, PathCombination):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_basic(self) -> bool:
        ends = {(p.start, self.quiver.target(p)) for p in self.terms}
        return len(ends) <= 1

    def endpoints(self) -> tuple[int, int] | None:
        ends = {(p.start, self.quiver.target(p)) for p in self.terms}
        return next(iter(ends)) if len(ends) == 1 else None

    def min_length(self) -> int:
        return min(p.length for p in self.terms)

    def max_length(self) -> int:
        return max(p.length for p in self.terms)

    def sorted_terms(self) -> list[tuple[Path, object]]:
        """Terms with the leading (largest) path first."""
        return sorted(self.terms.items(), key=lambda t: path_key(t[0]), reverse=True)

    def basic_components(self) -> list[PathCombination]:
        """Split into basic pieces ``e_i x e_j`` (explicit normalization)."""
        parts: dict[tuple[int, int], dict] = {}
        for p, c in self.terms.items():
            parts.setdefault((p.start, self.quiver.target(p)), {})[p] = c
        return [PathCombination(self.quiver, parts[k]) for k in sorted(parts)]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.quiver.format_path(p)}" for p, c in self.sorted_terms())


def compose(quiver: Quiver, p: Path, q: Path) -> Path | None:
    return quiver.compose(p, q)


def multiply(x: PathCombination, y: PathCombination) -> PathCombination:
    return x * y


@dataclass(frozen=True, eq=False)
class Presentation:
    """A quiver together with relation generators of an ideal of KQ."""

    quiver: Quiver
    relations: tuple[PathCombination, ...] = ()
    field: Field = QQ
    name: str = "R"

    def __post_init__(self):
        rels = []
        for r in self.relations:
            if r.quiver != self.quiver:
                raise QuiverError("relation lives in a different path algebra")
            rels.append(PathCombination(self.quiver, {p: self.field(c) for p, c in r.terms.items()}))
        object.__setattr__(self, "relations", tuple(rels))

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.quiver == other.quiver and self.field == other.field
                and list(self.relations) == list(other.relations))

    def __hash__(self):
        return hash((self.quiver, self.relations))


@dataclass
class Diagnostics:
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok


def validate_presentation(pres: Presentation) -> Diagnostics:
    """Check the admissibility prerequisites; never raises."""
    diag = Diagnostics()
    q = pres.quiver
    if not q.vertices:
        diag.problems.append("quiver has no vertices")
    for k, r in enumerate(pres.relations, 1):
        shown = repr(r)
        if r.is_zero():
            diag.problems.append(f"relation {k} is zero")
            continue
        if not r.is_basic():
            diag.problems.append(f"relation {k} ({shown}) is not basic")
        if r.min_length() < 2:
            diag.problems.append(f"relation {k} ({shown}) has a path of length < 2")
        for p in r.terms:
            try:
                q.check_path(p)
            except QuiverError as exc:
                diag.problems.append(f"relation {k}: {exc}")
    return diag
