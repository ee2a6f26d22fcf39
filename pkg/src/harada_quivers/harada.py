"""Quasi-Frobenius detection, socle paths and presentations of upper
staircase factor algebras of block extensions (basic left Harada algebras).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import DEFAULT_MAX_LEN, FDAlgebra, build_algebra, evaluate_phi, socle_left, socle_right
from .block import BlockQuiver, BlockSpec, block_presentation_from, block_quiver, extend_path
from .linalg import Vector
from .quiver import Path, PathCombination, Presentation, path_key


class NotQFError(ValueError):
    pass


class NoSoclePathError(RuntimeError):
    """No single path of the quiver maps onto the socle of ``e_i R``."""


@dataclass
class NakayamaPermutation:
    sigma: tuple[int, ...]
    right_socles: list[Vector]
    left_socles: list[Vector]

    def __call__(self, i: int) -> int:
        return self.sigma[i]

    def is_identity(self) -> bool:
        return all(s == i for i, s in enumerate(self.sigma))


@dataclass
class QFCheck:
    permutation: NakayamaPermutation | None
    problems: list[str] = field(default_factory=list)

    @property
    def is_qf(self) -> bool:
        return self.permutation is not None


def qf_check(alg: FDAlgebra) -> QFCheck:
    """Nakayama's criterion: simple socles on both sides, matched by a permutation."""
    m = alg.num_vertices
    problems = []
    right, left = [], []
    sigma = []
    for i in range(m):
        soc = socle_right(alg, i)
        if soc.dim != 1:
            problems.append(f"soc(e_{alg.vertices[i]}R) has dimension {soc.dim}")
            right.append(None)
            sigma.append(None)
            continue
        v = soc.basis()[0]
        targets = {alg.tags[a][1] for a in v}
        right.append(v)
        sigma.append(targets.pop() if len(targets) == 1 else None)
    for j in range(m):
        soc = socle_left(alg, j)
        if soc.dim != 1:
            problems.append(f"soc(Re_{alg.vertices[j]}) has dimension {soc.dim}")
            left.append(None)
        else:
            left.append(soc.basis()[0])
    if not problems:
        if sorted(sigma) != list(range(m)):
            hit = {}
            for i, s in enumerate(sigma):
                hit.setdefault(s, []).append(alg.vertices[i])
            for s, src in hit.items():
                if len(src) > 1:
                    problems.append(f"socles of {', '.join('e_' + x + 'R' for x in src)} "
                                    f"all lie at vertex {alg.vertices[s]}")
        else:
            for i, s in enumerate(sigma):
                sources = {alg.tags[a][0] for a in left[s]}
                if sources != {i}:
                    problems.append(f"soc(Re_{alg.vertices[s]}) does not lie at vertex {alg.vertices[i]}")
    if problems:
        return QFCheck(None, problems)
    return QFCheck(NakayamaPermutation(tuple(sigma), right, left))


def _in_line(v: Vector, w: Vector) -> bool:
    """Is ``v`` a nonzero multiple of ``w``?"""
    if not v or set(v) != set(w):
        return False
    a = next(iter(w))
    ratio = v[a] / w[a]
    return all(v[k] == ratio * w[k] for k in w)


def is_socle_path(alg: FDAlgebra, i: int, sigma: NakayamaPermutation, p: Path) -> bool:
    q = alg.normal_form.quiver
    if p.start != i or q.target(p) != sigma(i):
        return False
    return _in_line(evaluate_phi(alg, PathCombination.from_path(q, p)), sigma.right_socles[i])


def socle_path(alg: FDAlgebra, i: int, sigma: NakayamaPermutation) -> Path:
    """Shortest, then lexicographically least, path ``i -> sigma(i)`` spanning ``soc(e_i R)``."""
    q = alg.normal_form.quiver
    layer = [Path(i, ())]
    for _ in range(alg.normal_form.nil_length):
        for p in sorted(layer, key=path_key):
            if is_socle_path(alg, i, sigma, p):
                return p
        layer = [Path(p.start, p.arrows + (k,)) for p in layer for k in q.out_arrows(q.target(p))]
    raise NoSoclePathError(f"no pure path spans soc(e_{alg.vertices[i]}R)")


@dataclass(frozen=True)
class StaircaseSpec:
    c: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(tuple(int(x) for x in row) for row in self.c))

    def validate(self, spec: BlockSpec, sigma) -> None:
        sig = sigma.sigma if isinstance(sigma, NakayamaPermutation) else tuple(sigma)
        if len(self.c) != len(spec.n):
            raise ValueError("staircase needs one row per vertex")
        for i, row in enumerate(self.c):
            if len(row) != spec.n[i]:
                raise ValueError(f"staircase row {i + 1} must have length n_{i + 1} = {spec.n[i]}")
            bound = spec.n[sig[i]]
            if any(x < 1 or x > bound for x in row):
                raise ValueError(f"staircase row {i + 1} must lie in [1, {bound}]")
            if any(a > b for a, b in zip(row, row[1:])):
                raise ValueError(f"staircase row {i + 1} is not nondecreasing")


@dataclass(frozen=True)
class Breakpoints:
    """For each row, ``l_0 = 0 < l_1 < ... < l_u = n``."""

    l: tuple[tuple[int, ...], ...]

    @property
    def u(self) -> tuple[int, ...]:
        return tuple(len(row) - 1 for row in self.l)


def breakpoints(stair: StaircaseSpec) -> Breakpoints:
    rows = []
    for c in stair.c:
        ls = [0]
        for j in range(1, len(c)):
            if c[j - 1] < c[j]:
                ls.append(j)
        ls.append(len(c))
        rows.append(tuple(ls))
    return Breakpoints(tuple(rows))


def theta_prime(bq: BlockQuiver, sigma: NakayamaPermutation, thetas, i: int, u: int, v: int) -> Path:
    """``delta_{iu} .. delta_{i,n_i-1} e(theta_i) delta_{s1} .. delta_{sv}`` with ``s = sigma(i)``."""
    n = bq.spec.n
    s = sigma(i)
    if not 1 <= u <= n[i]:
        raise ValueError(f"u={u} outside 1..{n[i]}")
    if not 1 <= v <= n[s] - 1:
        raise ValueError(f"v={v} outside 1..{n[s] - 1}")
    Q = bq.quiver
    head = bq.delta_path(i, start=u)
    path = Q.compose(Q.compose(head, extend_path(bq, thetas[i])), bq.delta_path(s, 1, v))
    return path


def theta_prime_full(bq: BlockQuiver, sigma: NakayamaPermutation, thetas, i: int) -> Path:
    """``delta_i e(theta_i) delta_{sigma(i)}``."""
    Q = bq.quiver
    return Q.compose(Q.compose(bq.delta_path(i), extend_path(bq, thetas[i])), bq.delta_path(sigma(i)))


@dataclass
class Generator:
    i: int
    j: int
    u: int
    v: int
    path: Path


@dataclass
class HaradaConstruction:
    algebra: FDAlgebra
    sigma: NakayamaPermutation
    thetas: list[Path]
    block: BlockQuiver
    breakpoints: Breakpoints
    generators: list[Generator]
    block_relations: tuple
    presentation: Presentation


def harada_construction(pres: Presentation, spec: BlockSpec, stair: StaircaseSpec,
                        thetas: dict[int, Path] | None = None, alg: FDAlgebra | None = None,
                        max_len: int = DEFAULT_MAX_LEN) -> HaradaConstruction:
    """Block relations plus ``theta'_i(l_ij, c_{i,l_ij})`` for every breakpoint.

    ``thetas`` optionally fixes the socle path at some vertices; the rest are
    found by :func:`socle_path`.
    """
    alg = alg if alg is not None else build_algebra(pres, max_len)
    check = qf_check(alg)
    if not check.is_qf:
        raise NotQFError("input is not quasi-Frobenius: " + "; ".join(check.problems))
    sigma = check.permutation
    stair.validate(spec, sigma)
    chosen = []
    for i in range(alg.num_vertices):
        if thetas and i in thetas:
            p = thetas[i]
            if not is_socle_path(alg, i, sigma, p):
                raise ValueError(f"supplied path does not span soc(e_{alg.vertices[i]}R)")
        else:
            p = socle_path(alg, i, sigma)
        if not p.arrows:
            raise NoSoclePathError(f"socle of e_{alg.vertices[i]}R is spanned by the idempotent; "
                                   "the extension map is undefined on stationary paths")
        chosen.append(p)
    bq = block_quiver(pres, spec)
    bp = breakpoints(stair)
    gens = []
    for i, ls in enumerate(bp.l):
        s = sigma(i)
        for j in range(1, len(ls)):
            u = ls[j]
            v = stair.c[i][u - 1]
            if v == spec.n[s]:
                continue
            gens.append(Generator(i, j, u, v, theta_prime(bq, sigma, chosen, i, u, v)))
    block = block_presentation_from(bq)
    extra = [PathCombination.from_path(bq.quiver, g.path, pres.field.one) for g in gens]
    out = Presentation(bq.quiver, block.relations + tuple(extra), pres.field, block.name + "/X")
    return HaradaConstruction(alg, sigma, chosen, bq, bp, gens, block.relations, out)


def harada_presentation(pres: Presentation, spec: BlockSpec, stair: StaircaseSpec, **kw) -> Presentation:
    return harada_construction(pres, spec, stair, **kw).presentation
