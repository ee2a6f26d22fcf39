"""Independent matrix-algebra oracle.

The block extension ``P = R(n_1, ..., n_m)`` is built literally as an algebra
of block matrices with entries in ``R``; its radical comes from the trace
form, never from the closed formulas, so every comparison below is a genuine
cross-check of the symbolic constructions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import (FDAlgebra, UnsupportedFieldError, build_algebra, evaluate_phi, get_radical,
                      peirce_part, product_space, quiver_of_algebra, quotient, radical_power,
                      radical_trace_form, two_sided_ideal)
from .block import BlockQuiver, BlockSpec, vertex_label
from .harada import Breakpoints, NakayamaPermutation, StaircaseSpec
from .linalg import Echelon, Subspace, Vector, rank
from .quiver import PathCombination, Presentation

__all__ = [
    "BlockMatrixAlgebra", "Leg", "Report", "build_block_algebra", "radical_trace_form",
    "phi_prime", "verify_radical_formula", "verify_block_presentation", "staircase_ideal",
    "verify_harada_presentation", "verify_harada_conditions", "block_arrangement",
    "staircase_arrangement",
]


@dataclass
class Leg:
    name: str
    ok: bool | None  # None means undecided
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Report:
    title: str
    legs: list[Leg] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(leg.ok is True for leg in self.legs)

    def add(self, name: str, ok, detail: str = "") -> Leg:
        leg = Leg(name, None if ok is None else bool(ok), detail)
        self.legs.append(leg)
        return leg

    def failed(self) -> list[Leg]:
        return [leg for leg in self.legs if leg.ok is not True]

    def to_dict(self):
        return {"title": self.title, "ok": self.ok, "legs": [leg.to_dict() for leg in self.legs]}


@dataclass(eq=False)
class BlockMatrixAlgebra:
    """``P`` as an :class:`FDAlgebra` plus the block-matrix bookkeeping.

    Basis element ``k`` is ``E_{(i,j),(s,t)} ⊗ r_a`` where ``entries[k] =
    ((i, j), (s, t), a)``; ``index`` inverts this.
    """

    algebra: FDAlgebra
    base: FDAlgebra
    spec: BlockSpec
    entries: list[tuple[tuple[int, int], tuple[int, int], int]]
    index: dict
    positions: list[tuple[int, int]]
    radical_indices: frozenset

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def embed(self, row: tuple[int, int], col: tuple[int, int], r: Vector) -> Vector:
        """``E_{row,col} ⊗ r`` in P-coordinates; ``r`` must lie in the piece."""
        out = {}
        for a, c in r.items():
            k = self.index.get((row, col, a))
            if k is None:
                raise ValueError(f"{self.base.labels[a]} does not belong to the piece at {row},{col}")
            out[k] = c
        return out

    def piece(self, row, col) -> str:
        (i, j), (s, t) = row, col
        if i != s:
            return "A"
        return "Q" if j <= t else "J(Q)"


def _radical_indices(R: FDAlgebra) -> frozenset:
    J = get_radical(R)
    idx = frozenset(a for a in range(R.dim) if J.contains({a: R.field.one}))
    if Subspace(R.dim, [{a: R.field.one} for a in idx]) != J:
        raise ValueError("basis of R is not adapted to its radical")
    return idx


def build_block_algebra(R: FDAlgebra, spec: BlockSpec) -> BlockMatrixAlgebra:
    """The block extension as an algebra of block matrices over ``R``."""
    m = R.num_vertices
    if len(spec) != m:
        raise ValueError(f"block spec has {len(spec)} entries but R has {m} idempotents")
    rad = _radical_indices(R)
    positions = [(i, j) for i in range(m) for j in range(1, spec.n[i] + 1)]
    pos_index = {p: k for k, p in enumerate(positions)}
    entries = []
    for row in positions:
        for col in positions:
            for a in R.indices_at(row[0], col[0]):
                if row[0] == col[0] and row[1] > col[1] and a not in rad:
                    continue
                entries.append((row, col, a))
    index = {e: k for k, e in enumerate(entries)}
    by_row: dict[tuple[int, int], list[int]] = {}
    for k, (row, _, _) in enumerate(entries):
        by_row.setdefault(row, []).append(k)
    table = {}
    for x, (row, mid, a) in enumerate(entries):
        for y in by_row[mid]:
            _, col, b = entries[y]
            prod = R.table.get((a, b))
            if not prod:
                continue
            out = {}
            for c, z in prod.items():
                k = index.get((row, col, c))
                if k is None:
                    raise AssertionError("block product left P")
                out[k] = z
            table[(x, y)] = out
    idem = []
    for (i, j) in positions:
        idem.append({index[((i, j), (i, j), a)]: c for a, c in R.idempotents[i].items()})
    alg = FDAlgebra(
        field=R.field,
        labels=[f"[{R.vertices[r[0]]}{r[1]},{R.vertices[c[0]]}{c[1]}]{R.labels[a]}" for r, c, a in entries],
        tags=[(pos_index[r], pos_index[c]) for r, c, _ in entries],
        table=table,
        idempotents=idem,
        vertices=[vertex_label(R.vertices[i], j) for i, j in positions],
        radical=None,
    )
    return BlockMatrixAlgebra(alg, R, spec, entries, index, positions, rad)


def phi_prime(bq: BlockQuiver, P: BlockMatrixAlgebra, x: PathCombination) -> Vector:
    """Evaluate an element of KQ' in P: deltas to unit entries, betas to arrow images."""
    R = P.base
    src = bq.source.quiver
    Q = bq.quiver
    if x.quiver != Q:
        raise ValueError("element of a foreign path algebra")
    # invert vertex_of / delta / beta
    pos_of = {v: p for p, v in bq.vertex_of.items()}
    delta_of = {k: p for p, k in bq.delta.items()}
    alpha_of = {k: a for a, k in enumerate(bq.beta)}
    arrow_images = {}
    out: Vector = {}
    for p, coeff in x.terms.items():
        row = pos_of[p.start]
        col = row
        val = dict(R.idempotents[row[0]])
        for k in p.arrows:
            if k in delta_of:
                i, j = delta_of[k]
                col = (i, j + 1)
            else:
                a = alpha_of[k]
                if a not in arrow_images:
                    arrow_images[a] = evaluate_phi(R, PathCombination.from_path(src, src.arrow_path(a)))
                val = R.mul(val, arrow_images[a])
                col = (src.arrows[a].target, 1)
            if not val:
                break
        if not val:
            continue
        for k, c in P.embed(row, col, val).items():
            w = out.get(k, 0) + coeff * c
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def _subspace_at(P: BlockMatrixAlgebra, row, col, r_space: list[Vector]) -> list[Vector]:
    return [P.embed(row, col, v) for v in r_space]


def _per_position_diff(P: BlockMatrixAlgebra, got: Subspace, want: Subspace) -> list[str]:
    A = P.algebra
    out = []
    for row in P.positions:
        for col in P.positions:
            i, j = P.positions.index(row), P.positions.index(col)
            g = peirce_part(A, got, i, j)
            w = peirce_part(A, want, i, j)
            if g != w:
                out.append(f"entry {A.vertices[i]},{A.vertices[j]}: computed dim {g.dim}, table dim {w.dim}")
    return out


def expected_radical(P: BlockMatrixAlgebra) -> Subspace:
    """Span dictated by the closed formula for ``J(P)`` entry by entry."""
    one = P.base.field.one
    vecs = []
    for k, ((i, j), (s, t), a) in enumerate(P.entries):
        if i != s or j + 1 <= t or a in P.radical_indices:
            vecs.append({k: one})
    return Subspace(P.dim, vecs)


def expected_radical_square(P: BlockMatrixAlgebra) -> Subspace:
    """Span dictated by the closed formula for ``J(P)^2``; corners hold ``e_i J(R)^2 e_s``."""
    R = P.base
    one = R.field.one
    J2 = radical_power(R, 2)
    n = P.spec.n
    vecs = []
    for row in P.positions:
        for col in P.positions:
            (i, j), (s, t) = row, col
            if (j, t) == (n[i], 1):
                vecs.extend(_subspace_at(P, row, col, peirce_part(R, J2, i, s).basis()))
            elif i != s or j + 1 < t:
                vecs.extend({P.index[(row, col, a)]: one} for a in R.indices_at(i, s))
            else:
                vecs.extend({P.index[(row, col, a)]: one} for a in R.indices_at(i, s)
                            if a in P.radical_indices)
    return Subspace(P.dim, vecs)


def verify_radical_formula(P: BlockMatrixAlgebra) -> Report:
    rep = Report("radical formula")
    A = P.algebra
    if A.field.characteristic != 0:
        rep.add("trace-form radical", None, "skipped: trace form needs characteristic 0")
        return rep
    J = radical_trace_form(A)
    want = expected_radical(P)
    diff = _per_position_diff(P, J, want)
    rep.add("J(P) table", J == want, "; ".join(diff) or f"dim {J.dim}")
    J2 = product_space(A, J, J)
    want2 = expected_radical_square(P)
    diff2 = _per_position_diff(P, J2, want2)
    rep.add("J(P)^2 table", J2 == want2, "; ".join(diff2) or f"dim {J2.dim}")
    return rep


def oracle_radical(A: FDAlgebra) -> Subspace:
    """Trace-form radical over Q; over GF(p) fall back to whatever ``A`` carries."""
    if A.field.characteristic == 0:
        return radical_trace_form(A)
    if A.radical is None:
        raise UnsupportedFieldError("unsupported field for trace-form radical")
    return A.radical


def _with_radical(A: FDAlgebra, J: Subspace) -> FDAlgebra:
    out = FDAlgebra(A.field, A.labels, A.tags, A.table, A.idempotents, A.vertices, radical=J)
    return out


def verify_block_presentation(pres2: Presentation, bq: BlockQuiver, P: BlockMatrixAlgebra,
                              max_len: int = 64) -> Report:
    rep = Report("block presentation")
    A = P.algebra
    if A.field.characteristic == 0:
        J = radical_trace_form(A)
    else:
        J = expected_radical(P)
    derived = quiver_of_algebra(_with_radical(A, J))
    same_vertices = list(derived.quiver.vertices) == list(pres2.quiver.vertices)
    got, want = derived.counts, pres2.quiver.arrow_counts()
    rep.add("quiver", same_vertices and got == want,
            "" if got == want else f"matrix model {sorted(got.items())} vs symbolic {sorted(want.items())}")
    bad = [k for k, r in enumerate(pres2.relations, 1) if phi_prime(bq, P, r)]
    rep.add("relations vanish", not bad, f"nonzero relations: {bad}" if bad else f"{len(pres2.relations)} relations")
    dim = build_algebra(pres2, max_len).dim
    rep.add("dimension", dim == P.dim, f"KQ'/I' has dim {dim}, P has dim {P.dim}")
    return rep


@dataclass
class Staircase:
    ideal: Subspace
    quotient: FDAlgebra
    kept: list[int]


def staircase_ideal(P: BlockMatrixAlgebra, sigma: NakayamaPermutation, stair: StaircaseSpec) -> Staircase:
    """The socle staircase ideal ``X`` and the factor algebra ``P/X``."""
    stair.validate(P.spec, sigma)
    A = P.algebra
    vecs = []
    for i, row in enumerate(stair.c):
        s = sigma(i)
        soc = sigma.right_socles[i]
        for j, c in enumerate(row, 1):
            for t in range(c + 1, P.spec.n[s] + 1):
                vecs.append(P.embed((i, j), (s, t), soc))
    X = Subspace(P.dim, vecs)
    basis = [{a: A.field.one} for a in range(P.dim)]
    for x in X.basis():
        for b in basis:
            if not (X.contains(A.mul(b, x)) and X.contains(A.mul(x, b))):
                raise AssertionError("staircase subspace is not a two-sided ideal")
    Jbar = None
    if A.radical is not None:
        # X lies in J(P), so J(P/X) = J(P)/X
        new = {a: k for k, a in enumerate(a for a in range(P.dim) if a not in X.pivots())}
        Jbar = Subspace(P.dim - X.dim, [{new[a]: c for a, c in X.reduce(v).items()} for v in A.radical.basis()])
    Pbar, kept = quotient(A, X, Jbar)
    return Staircase(X, Pbar, kept)


def verify_harada_presentation(presH: Presentation, bq: BlockQuiver, P: BlockMatrixAlgebra,
                               X: Subspace, generators, max_len: int = 64) -> Report:
    rep = Report("harada presentation")
    A = P.algebra
    images = [phi_prime(bq, P, g) for g in generators]
    gen_ideal = two_sided_ideal(A, images)
    rep.add("generated ideal equals X", gen_ideal == X, f"ideal dim {gen_ideal.dim}, X dim {X.dim}")
    dim = build_algebra(presH, max_len).dim
    rep.add("dimension", dim == P.dim - X.dim, f"KQ'/I' has dim {dim}, P/X has dim {P.dim - X.dim}")
    bad = [k for k, r in enumerate(presH.relations, 1) if X.reduce(phi_prime(bq, P, r))]
    rep.add("relations vanish in P/X", not bad, f"nonzero relations: {bad}" if bad else "")
    return rep


def block_arrangement(spec: BlockSpec) -> list[list[int]]:
    out, k = [], 0
    for n in spec.n:
        out.append(list(range(k, k + n)))
        k += n
    return out


def staircase_arrangement(spec: BlockSpec, bp: Breakpoints) -> list[list[int]]:
    """Rows of the block arrangement cut where the staircase steps up.

    In ``P/X`` the idempotents ``f_{i,l_{j-1}+1}, ..., f_{i,l_j}`` form one
    row; the row heads are the injective projectives.
    """
    out, k = [], 0
    for n, ls in zip(spec.n, bp.l):
        for a, b in zip(ls, ls[1:]):
            out.append(list(range(k + a, k + b)))
        k += n
    return out


def _right_action(A: FDAlgebra, idx: list[int], b: int) -> list[Vector]:
    """Images ``m_l * b`` of the basis of ``e A`` (coordinates ``idx``), in local coordinates."""
    pos = {a: l for l, a in enumerate(idx)}
    out = []
    for a in idx:
        v = A.table.get((a, b), {})
        out.append({pos[c]: x for c, x in v.items()})
    return out


def is_injective_projective(A: FDAlgebra, v: int, J: Subspace) -> tuple[bool, str]:
    """Is ``e_v A`` injective? Its dual is compared with the projective cover of its top."""
    idx = A.indices_at(i=v)
    dim_m = len(idx)
    # J . D(M) is spanned by the columns of the right-action matrices of radical elements
    e = Echelon()
    for r in J.basis():
        cols: dict[int, Vector] = {}
        for a, c in r.items():
            for l, img in enumerate(_right_action(A, idx, a)):
                for k, x in img.items():
                    col = cols.setdefault(k, {})
                    w = col.get(l, 0) + c * x
                    if w:
                        col[l] = w
                    else:
                        col.pop(l, None)
        e.extend(c for c in cols.values() if c)
    jd = Subspace(dim_m, echelon=e)
    cover = 0
    tops = []
    for w in range(A.num_vertices):
        local = [l for l, a in enumerate(idx) if A.tags[a][1] == w]
        if not local:
            continue
        inside = rank({l: x for l, x in b.items() if l in local} for b in jd.basis())
        mult = len(local) - inside
        if mult:
            tops.append(f"{mult}x{A.vertices[w]}")
            cover += mult * len(A.indices_at(j=w))
    ok = cover == dim_m
    return ok, f"dim e_{A.vertices[v]}A = {dim_m}, projective cover of dual has dim {cover} (top {' + '.join(tops)})"


def find_isomorphism(A: FDAlgebra, v: int, N: Subspace, seed: int = 0, trials: int = 200):
    """Look for an isomorphism ``e_v A -> N`` of right modules.

    ``Hom(e_v A, N) = N e_v``: the map determined by ``n`` is ``e_v a -> n a``.
    Returns the chosen ``n``, ``None`` if dimensions differ, or ``"undecided"``.
    """
    dim_m = len(A.indices_at(i=v))
    if dim_m != N.dim:
        return None
    cands = [{a: c for a, c in b.items() if A.tags[a][1] == v} for b in N.basis()]
    cands = [c for c in cands if c]
    rng = random.Random(seed)
    basis = [{a: A.field.one} for a in range(A.dim)]

    def works(n):
        return rank(A.mul(n, b) for b in basis) == dim_m

    for n in cands:
        if works(n):
            return n
    if cands:
        for _ in range(trials):
            n = {}
            for c in cands:
                coeff = A.field(rng.randint(1, 10 ** 6))
                for a, x in c.items():
                    w = n.get(a, 0) + coeff * x
                    if w:
                        n[a] = w
                    else:
                        n.pop(a, None)
            if n and works(n):
                return n
    return "undecided"


def verify_harada_conditions(A: FDAlgebra, arrangement: list[list[int]], seed: int = 0) -> Report:
    """Check the two left Harada conditions for an arrangement of the idempotents."""
    rep = Report("harada conditions")
    J = oracle_radical(A)
    for row in arrangement:
        v = row[0]
        ok, detail = is_injective_projective(A, v, J)
        rep.add(f"(1) e_{A.vertices[v]}A injective", ok, detail)
        for prev, cur in zip(row, row[1:]):
            N = Subspace(A.dim, [{a: c for a, c in b.items() if A.tags[a][0] == prev} for b in J.basis()])
            found = find_isomorphism(A, cur, N, seed)
            name = f"(2) e_{A.vertices[cur]}A ≅ e_{A.vertices[prev]}J"
            if found is None:
                rep.add(name, False, f"dimensions {len(A.indices_at(i=cur))} vs {N.dim}")
            elif found == "undecided":
                rep.add(name, None, "dimensions match but no invertible homomorphism found")
            else:
                rep.add(name, True, "generator " + A.format_vector(found))
    return rep
