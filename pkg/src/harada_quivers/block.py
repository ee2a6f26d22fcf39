"""Quivers with relations of block extensions ``R(n_1, ..., n_m)``.

Vertex ``(i, j)`` of the new quiver is labelled ``"(i,j)"`` using the input
vertex label ``i``. Delta arrows ``(i,j) -> (i,j+1)`` are named ``d:i:j``;
the beta arrow replacing an input arrow ``a`` is named ``b:a``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .quiver import Arrow, Path, PathCombination, Presentation, Quiver, QuiverError


@dataclass(frozen=True)
class BlockSpec:
    n: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if any(x < 1 for x in self.n):
            raise ValueError("block sizes must be positive")

    @classmethod
    def trivial(cls, m: int) -> BlockSpec:
        return cls((1,) * m)

    def __len__(self):
        return len(self.n)

    @property
    def total(self) -> int:
        return sum(self.n)


def vertex_label(label: str, j: int) -> str:
    return f"({label},{j})"


@dataclass(frozen=True, eq=False)
class BlockQuiver:
    """The quiver Q' together with its bookkeeping back to Q."""

    quiver: Quiver
    source: Presentation
    spec: BlockSpec
    vertex_of: dict  # (i, j) -> vertex index in Q', i 0-based, j 1-based
    delta: dict  # (i, j) -> arrow index of d:i:j
    beta: tuple  # input arrow index -> arrow index of its beta

    def delta_path(self, i: int, start: int = 1, stop: int | None = None) -> Path:
        """``delta_{i,start} ... delta_{i,stop}``; stationary when the range is empty.

        With the defaults this is the full chain ``delta_i`` from ``(i,1)`` to ``(i,n_i)``.
        """
        if stop is None:
            stop = self.spec.n[i] - 1
        arrows = tuple(self.delta[(i, j)] for j in range(start, stop + 1))
        return Path(self.vertex_of[(i, start)], arrows)

    def arrow_kind(self, k: int) -> str:
        return "beta" if k in self.beta else "delta"

    def alpha_of(self, k: int) -> int | None:
        try:
            return self.beta.index(k)
        except ValueError:
            return None


def block_quiver(pres: Presentation, spec: BlockSpec) -> BlockQuiver:
    q = pres.quiver
    if len(spec) != q.num_vertices:
        raise ValueError(f"block spec has {len(spec)} entries but the quiver has {q.num_vertices} vertices")
    vertices, vertex_of = [], {}
    for i, label in enumerate(q.vertices):
        for j in range(1, spec.n[i] + 1):
            vertex_of[(i, j)] = len(vertices)
            vertices.append(vertex_label(label, j))
    arrows, delta = [], {}
    for i, label in enumerate(q.vertices):
        for j in range(1, spec.n[i]):
            delta[(i, j)] = len(arrows)
            arrows.append(Arrow(f"d:{label}:{j}", vertex_of[(i, j)], vertex_of[(i, j + 1)]))
    beta = []
    for a in q.arrows:
        beta.append(len(arrows))
        arrows.append(Arrow(f"b:{a.label}", vertex_of[(a.source, spec.n[a.source])],
                            vertex_of[(a.target, 1)]))
    return BlockQuiver(Quiver(tuple(vertices), tuple(arrows)), pres, spec, vertex_of, delta, tuple(beta))


def extend_path(bq: BlockQuiver, p: Path) -> Path:
    if not p.arrows:
        raise ValueError("extension map defined on KQ+ only")
    q = bq.source.quiver
    out: list[int] = []
    for pos, k in enumerate(p.arrows):
        if pos:
            out.extend(bq.delta_path(q.arrows[k].source).arrows)
        out.append(bq.beta[k])
    i = p.start
    return Path(bq.vertex_of[(i, bq.spec.n[i])], tuple(out))


def extend(bq: BlockQuiver, x: PathCombination) -> PathCombination:
    """Linear extension map ``KQ+ -> KQ'+``."""
    if x.quiver != bq.source.quiver:
        raise QuiverError("element of a foreign path algebra")
    return PathCombination(bq.quiver, {extend_path(bq, p): c for p, c in x.terms.items()})


def extend_product(bq: BlockQuiver, p: Path, q: Path) -> Path:
    """``e(p) delta_j e(q)`` for ``p`` ending and ``q`` starting at ``j``."""
    src = bq.source.quiver
    j = src.target(p)
    if q.start != j:
        raise QuiverError("paths are not composable")
    Q = bq.quiver
    mid = Q.compose(extend_path(bq, p), bq.delta_path(j))
    return Q.compose(mid, extend_path(bq, q))


def block_presentation(pres: Presentation, spec: BlockSpec) -> Presentation:
    bq = block_quiver(pres, spec)
    return block_presentation_from(bq)


def block_presentation_from(bq: BlockQuiver) -> Presentation:
    pres = bq.source
    rels = [extend(bq, r) for r in pres.relations]
    n = ",".join(map(str, bq.spec.n))
    return Presentation(bq.quiver, tuple(rels), pres.field, f"{pres.name}({n})")


def relabel(pres: Presentation, quiver: Quiver, arrow_map: dict[int, int]) -> Presentation:
    """Transport relations along an arrow bijection into ``quiver``."""
    rels = []
    for r in pres.relations:
        terms = {}
        for p, c in r.terms.items():
            arrows = tuple(arrow_map[k] for k in p.arrows)
            start = quiver.arrows[arrows[0]].source
            terms[Path(start, arrows)] = c
        rels.append(PathCombination(quiver, terms))
    return Presentation(quiver, tuple(rels), pres.field, pres.name)
