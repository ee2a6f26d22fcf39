"""Finite-dimensional algebras: structure constants, normal forms of
presented algebras ``KQ/I``, radicals, socles and Peirce components.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Echelon, Subspace, Vector, nullspace, vec_add
from .quiver import Arrow, Path, PathCombination, Presentation, Quiver, QuiverError, path_key, validate_presentation
from .scalars import Field

DEFAULT_MAX_LEN = 64
# paths of length < cap we are willing to enumerate before giving up
PATH_BUDGET = 200_000


class NotFiniteDimensionalError(RuntimeError):
    """The length-capped elimination did not stabilise before ``max_len``."""


class UnsupportedFieldError(ValueError):
    pass


@dataclass(eq=False)
class FDAlgebra:
    """An algebra given by a basis and sparse structure constants.

    ``table[(a, b)]`` is the product of basis elements ``a`` and ``b`` as a
    sparse vector; missing pairs multiply to zero. Every basis element is
    tagged ``(i, j)`` with ``e_i b = b = b e_j`` for the distinguished
    idempotents ``e_0 .. e_{m-1}``.
    """

    field: Field
    labels: list[str]
    tags: list[tuple[int, int]]
    table: dict[tuple[int, int], Vector]
    idempotents: list[Vector]
    vertices: list[str]
    radical: Subspace | None = None
    normal_form: "NormalForm | None" = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def basis_vector(self, a: int) -> Vector:
        return {a: self.field.one}

    def one(self) -> Vector:
        out: Vector = {}
        for e in self.idempotents:
            out = vec_add(out, e)
        return out

    def mul(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        table = self.table
        for a, x in u.items():
            for b, y in v.items():
                prod = table.get((a, b))
                if prod:
                    xy = x * y
                    for c, z in prod.items():
                        w = out.get(c)
                        w = xy * z if w is None else w + xy * z
                        if w:
                            out[c] = w
                        else:
                            del out[c]
        return out

    def indices_at(self, i: int | None = None, j: int | None = None) -> list[int]:
        """Basis indices with source ``i`` and/or target ``j``."""
        return [a for a, (s, t) in enumerate(self.tags)
                if (i is None or s == i) and (j is None or t == j)]

    def vertex(self, v) -> int:
        if isinstance(v, int) and 0 <= v < len(self.vertices):
            return v
        if isinstance(v, str) and v in self.vertices:
            return self.vertices.index(v)
        raise QuiverError(f"unknown vertex {v!r}")

    def format_vector(self, v: Vector) -> str:
        if not v:
            return "0"
        return " + ".join(f"{self.field.format(c)}*{self.labels[a]}" for a, c in sorted(v.items()))

    # -- audits ------------------------------------------------------------
    def check_associativity(self) -> list[tuple[int, int, int]]:
        """Basis triples where ``(ab)c != a(bc)`` (empty when associative)."""
        # products vanish unless Peirce tags chain, so only chained triples matter
        bad = []
        one = self.field.one
        by_source: dict[int, list[int]] = {}
        for a, (s, _) in enumerate(self.tags):
            by_source.setdefault(s, []).append(a)
        for a in range(self.dim):
            for b in by_source.get(self.tags[a][1], ()):
                ab = self.table.get((a, b), {})
                for c in by_source.get(self.tags[b][1], ()):
                    left = self.mul(ab, {c: one})
                    right = self.mul({a: one}, self.table.get((b, c), {}))
                    if left != right:
                        bad.append((a, b, c))
        return bad

    def check_idempotents(self) -> list[str]:
        problems = []
        es = self.idempotents
        for i, e in enumerate(es):
            for j, f in enumerate(es):
                prod = self.mul(e, f)
                want = e if i == j else {}
                if prod != want:
                    problems.append(f"e{i}*e{j} wrong")
        one = self.one()
        for a in range(self.dim):
            b = {a: self.field.one}
            if self.mul(one, b) != b or self.mul(b, one) != b:
                problems.append(f"sum of idempotents is not a unit on {self.labels[a]}")
                break
        for a, (i, j) in enumerate(self.tags):
            b = {a: self.field.one}
            if self.mul(es[i], b) != b or self.mul(b, es[j]) != b:
                problems.append(f"tag of {self.labels[a]} is inconsistent")
        return problems


# ---------------------------------------------------------------------------
# normal forms of KQ/I
# ---------------------------------------------------------------------------

class NormalForm:
    """Exact normal forms in ``KQ/I`` for an admissible ideal ``I``.

    Works in ``KQ/J^L`` (paths of length < L), where the ideal generated by
    the relations is a finite span closed under multiplication by arrows.
    ``L`` grows until some length ``k < L`` has every path reducing to zero,
    which certifies ``J^k ⊆ I`` and hence ``KQ/I = KQ/(I + J^L)``.
    """

    def __init__(self, pres: Presentation, max_len: int = DEFAULT_MAX_LEN):
        if not pres.quiver.vertices:
            raise QuiverError("empty quiver")
        diag = validate_presentation(pres)
        if not diag.ok:
            raise QuiverError("; ".join(diag.problems))
        self.pres = pres
        self.quiver = pres.quiver
        self.field = pres.field
        self.max_len = max_len
        longest = max((r.max_length() for r in pres.relations), default=1)
        cap = longest + 2
        while True:
            if cap > max_len + 1:
                raise NotFiniteDimensionalError(
                    f"not finite-dimensional within bound max_len={max_len}")
            ech, layers = self._eliminate(cap)
            k = self._certificate(ech, layers, cap)
            if k is not None:
                break
            cap = min(max_len + 1, cap + max(2, cap // 2)) if cap <= max_len else cap + 1
        self.cap = cap
        self.nil_length = k
        # With length-homogeneous relations the certificate proves J^k in I
        # outright; otherwise it relies on the ideal being admissible.
        self.homogeneous = all(r.min_length() == r.max_length() for r in pres.relations)
        self.echelon = ech
        basis = [p for layer in layers[:k] for p in layer if p not in ech.rows]
        self.basis_paths = sorted(basis, key=path_key)
        self.index = {p: a for a, p in enumerate(self.basis_paths)}

    def _eliminate(self, cap: int):
        q = self.quiver
        out_arrows = [q.out_arrows(v) for v in range(q.num_vertices)]
        layers = [[Path(v, ()) for v in range(q.num_vertices)]]
        total = len(layers[0])
        for _ in range(1, cap):
            layers.append([Path(p.start, p.arrows + (k,))
                           for p in layers[-1] for k in out_arrows[q.target(p)]])
            total += len(layers[-1])
            if total > PATH_BUDGET:
                raise NotFiniteDimensionalError(
                    f"not finite-dimensional within bounds: more than {PATH_BUDGET} paths "
                    f"of length < {cap}")
        ech = Echelon(key=path_key)

        def trunc(terms):
            return {p: c for p, c in terms.items() if len(p.arrows) < cap}

        queue = [trunc(r.terms) for r in self.pres.relations]
        while queue:
            g = queue.pop()
            r = ech.reduce(g)
            if not r:
                continue
            ech.add(r)
            for k in range(len(q.arrows)):
                a = q.arrows[k]
                left = {Path(a.source, (k,) + p.arrows): c for p, c in r.items()
                        if p.start == a.target and len(p.arrows) + 1 < cap}
                right = {Path(p.start, p.arrows + (k,)): c for p, c in r.items()
                         if q.target(p) == a.source and len(p.arrows) + 1 < cap}
                if left:
                    queue.append(left)
                if right:
                    queue.append(right)
        return ech, layers

    def _certificate(self, ech: Echelon, layers, cap: int) -> int | None:
        one = self.field.one
        for k in range(1, cap):
            if all(ech.rows.get(p) == {p: one} for p in layers[k]):
                return k
        return None

    def reduce(self, terms: dict[Path, object]) -> dict[Path, object]:
        """Normal form of an element of KQ, in path coordinates."""
        kept = {p: self.field(c) for p, c in terms.items() if len(p.arrows) < self.nil_length and c}
        return self.echelon.reduce(kept)

    def to_vector(self, terms: dict[Path, object]) -> Vector:
        return {self.index[p]: c for p, c in self.reduce(terms).items()}


def build_algebra(pres: Presentation, max_len: int = DEFAULT_MAX_LEN) -> FDAlgebra:
    """Realise ``KQ/<relations>`` with a basis of normal-form paths."""
    nf = NormalForm(pres, max_len)
    q = pres.quiver
    F = pres.field
    paths = nf.basis_paths
    table: dict[tuple[int, int], Vector] = {}
    for a, p in enumerate(paths):
        for b, r in enumerate(paths):
            pr = q.compose(p, r)
            if pr is None:
                continue
            v = nf.to_vector({pr: F.one})
            if v:
                table[(a, b)] = v
    idem = [{nf.index[Path(v, ())]: F.one} for v in range(q.num_vertices)]
    tags = [(p.start, q.target(p)) for p in paths]
    n = len(paths)
    radical = Subspace(n, [{a: F.one} for a, p in enumerate(paths) if p.arrows])
    return FDAlgebra(
        field=F,
        labels=[q.format_path(p) for p in paths],
        tags=tags,
        table=table,
        idempotents=idem,
        vertices=list(q.vertices),
        radical=radical,
        normal_form=nf,
    )


def evaluate_phi(alg: FDAlgebra, x: PathCombination) -> Vector:
    """Image of an element of KQ in the presented algebra, as a coordinate vector."""
    nf = alg.normal_form
    if nf is None:
        raise ValueError("algebra has no presentation")
    if x.quiver != nf.quiver:
        raise QuiverError("element of a foreign path algebra")
    return nf.to_vector(x.terms)


# ---------------------------------------------------------------------------
# radical, socles, Peirce components
# ---------------------------------------------------------------------------

def radical_trace_form(alg: FDAlgebra) -> Subspace:
    """Radical as the kernel of ``(x, y) -> tr(L_{xy})`` (characteristic 0 only)."""
    if alg.field.characteristic != 0:
        raise UnsupportedFieldError("unsupported field for trace-form radical")
    n = alg.dim
    zero = alg.field.zero
    traces = [zero] * n
    for (a, b), prod in alg.table.items():
        c = prod.get(b)
        if c:
            traces[a] += c
    rows = []
    for a in range(n):
        row: Vector = {}
        for b in range(n):
            prod = alg.table.get((a, b))
            if not prod:
                continue
            t = sum((c * traces[k] for k, c in prod.items()), zero)
            if t:
                row[b] = t
        if row:
            rows.append(row)
    return Subspace(n, nullspace(rows, n, alg.field.one))


def get_radical(alg: FDAlgebra) -> Subspace:
    if alg.radical is None:
        alg.radical = radical_trace_form(alg)
    return alg.radical


def product_space(alg: FDAlgebra, left: Subspace, right: Subspace) -> Subspace:
    e = Echelon()
    for u in left.basis():
        for v in right.basis():
            p = alg.mul(u, v)
            if p:
                e.add(p)
    return Subspace(alg.dim, echelon=e)


def radical_power(alg: FDAlgebra, k: int) -> Subspace:
    """``J^k`` as an echelon subspace; ``J^0`` is the whole algebra."""
    if k < 0:
        raise ValueError("radical power must be nonnegative")
    cache = alg._cache.setdefault("radical_power", {})
    if k in cache:
        return cache[k]
    if k == 0:
        out = Subspace(alg.dim, [{a: alg.field.one} for a in range(alg.dim)])
    elif k == 1:
        out = get_radical(alg)
    else:
        prev = radical_power(alg, k - 1)
        out = Subspace(alg.dim) if prev.dim == 0 else product_space(alg, prev, get_radical(alg))
    cache[k] = out
    return out


def loewy_length(alg: FDAlgebra) -> int:
    k = 0
    while radical_power(alg, k).dim:
        k += 1
    return k


def peirce_component(alg: FDAlgebra, i, j) -> Subspace:
    """``e_i A e_j``: span of basis elements with source i and target j."""
    i, j = alg.vertex(i), alg.vertex(j)
    return Subspace(alg.dim, [{a: alg.field.one} for a in alg.indices_at(i, j)])


def peirce_project(alg: FDAlgebra, v: Vector, i: int, j: int) -> Vector:
    return {a: c for a, c in v.items() if alg.tags[a] == (i, j)}


def peirce_part(alg: FDAlgebra, space: Subspace, i: int, j: int) -> Subspace:
    """``e_i S e_j`` for a subspace ``S`` closed under the idempotents."""
    return Subspace(alg.dim, [peirce_project(alg, b, i, j) for b in space.basis()])


@dataclass
class AlgebraQuiver:
    """Ext-quiver of a basic algebra with chosen arrow representatives."""

    quiver: Quiver
    counts: dict[tuple[int, int], int]
    representatives: dict[tuple[int, int], list[Vector]]


def quiver_of_algebra(alg: FDAlgebra) -> AlgebraQuiver:
    """Arrow counts ``d_ij = dim e_i (J/J^2) e_j`` and lifts of a basis of each."""
    J = radical_power(alg, 1)
    J2 = radical_power(alg, 2)
    counts: dict[tuple[int, int], int] = {}
    reps: dict[tuple[int, int], list[Vector]] = {}
    arrows = []
    m = alg.num_vertices
    for i in range(m):
        for j in range(m):
            e = Echelon()
            e.extend(peirce_part(alg, J2, i, j).basis())
            chosen = []
            for b in peirce_part(alg, J, i, j).basis():
                if e.add(b):
                    chosen.append(b)
            if chosen:
                counts[(i, j)] = len(chosen)
                reps[(i, j)] = chosen
                for t in range(len(chosen)):
                    arrows.append(Arrow(f"x_{alg.vertices[i]}_{alg.vertices[j]}_{t + 1}", i, j))
    return AlgebraQuiver(Quiver(tuple(alg.vertices), tuple(arrows)), counts, reps)


def _annihilator(alg: FDAlgebra, unknowns: list[int], side: str) -> Subspace:
    J = get_radical(alg)
    rows: dict[tuple[int, int], Vector] = {}
    for r_idx, r in enumerate(J.basis()):
        for pos, b in enumerate(unknowns):
            bv = {b: alg.field.one}
            prod = alg.mul(bv, r) if side == "right" else alg.mul(r, bv)
            for c, x in prod.items():
                rows.setdefault((r_idx, c), {})[pos] = x
    ker = nullspace(rows.values(), len(unknowns), alg.field.one)
    return Subspace(alg.dim, [{unknowns[p]: c for p, c in k.items()} for k in ker])


def socle_right(alg: FDAlgebra, i) -> Subspace:
    """``soc(e_i A) = {x in e_i A : xJ = 0}``."""
    i = alg.vertex(i)
    return _annihilator(alg, alg.indices_at(i=i), "right")


def socle_left(alg: FDAlgebra, j) -> Subspace:
    """``soc(A e_j) = {x in A e_j : Jx = 0}``."""
    j = alg.vertex(j)
    return _annihilator(alg, alg.indices_at(j=j), "left")


def quotient(alg: FDAlgebra, ideal: Subspace, radical: Subspace | None = None) -> tuple[FDAlgebra, list[int]]:
    """``A / ideal`` on the non-pivot basis elements; also returns their old indices."""
    keep = [a for a in range(alg.dim) if a not in ideal.pivots()]
    new = {a: k for k, a in enumerate(keep)}

    def push(v: Vector) -> Vector:
        return {new[a]: c for a, c in ideal.reduce(v).items()}

    table = {}
    for a in keep:
        for b in keep:
            prod = alg.table.get((a, b))
            if prod:
                v = push(prod)
                if v:
                    table[(new[a], new[b])] = v
    out = FDAlgebra(
        field=alg.field,
        labels=[alg.labels[a] for a in keep],
        tags=[alg.tags[a] for a in keep],
        table=table,
        idempotents=[push(e) for e in alg.idempotents],
        vertices=list(alg.vertices),
        radical=radical,
    )
    return out, keep


def two_sided_ideal(alg: FDAlgebra, generators) -> Subspace:
    """Smallest two-sided ideal containing ``generators``."""
    e = Echelon()
    queue = list(generators)
    basis = [{a: alg.field.one} for a in range(alg.dim)]
    while queue:
        g = queue.pop()
        r = e.reduce(g)
        if not r:
            continue
        e.add(r)
        for b in basis:
            for p in (alg.mul(b, r), alg.mul(r, b)):
                if p:
                    queue.append(p)
    return Subspace(alg.dim, echelon=e)


def same_ideal(a: Presentation, b: Presentation, max_len: int = DEFAULT_MAX_LEN) -> bool:
    """Do two presentations on one quiver generate the same ideal?

    Decided by mutual membership: each relation of one side has normal form
    zero modulo the other ideal.
    """
    if a.quiver != b.quiver:
        raise QuiverError("presentations live on different quivers")
    nfa, nfb = NormalForm(a, max_len), NormalForm(b, max_len)
    return (all(not nfb.reduce(r.terms) for r in a.relations)
            and all(not nfa.reduce(r.terms) for r in b.relations))
