"""Sparse exact linear algebra.

Vectors are plain dicts ``{column: nonzero scalar}``. Columns may be any
hashable objects (basis indices, paths); a ``key`` function decides which
column of a row becomes its pivot (the largest one).
"""
from __future__ import annotations

from typing import Callable, Hashable, Iterable

Vector = dict


def vec_add(u: Vector, v: Vector, c=1) -> Vector:
    """Return ``u + c*v`` without touching the inputs."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = c * x if y is None else y + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def _iadd(u: Vector, v: Vector, c) -> None:
    for k, x in v.items():
        y = u.get(k)
        y = c * x if y is None else y + c * x
        if y:
            u[k] = y
        else:
            del u[k]


class Echelon:
    """Incrementally maintained reduced row-echelon form.

    Invariant: every stored row has pivot coefficient 1, and no row mentions
    the pivot column of another row. The normal form of a vector is thus
    obtained in a single substitution pass.
    """

    def __init__(self, key: Callable[[Hashable], object] | None = None):
        self.key = key
        self.rows: dict[Hashable, Vector] = {}
        # column -> pivots of rows that contain it (non-pivot occurrences)
        self._occ: dict[Hashable, set] = {}

    def __len__(self):
        return len(self.rows)

    def _pivot(self, v: Vector):
        return max(v, key=self.key) if self.key else max(v)

    def reduce(self, v: Vector) -> Vector:
        out = dict(v)
        for col in [c for c in v if c in self.rows]:
            c = out.pop(col, None)
            if c:
                _iadd(out, {k: x for k, x in self.rows[col].items() if k != col}, -c)
        return out

    def add(self, v: Vector) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        piv = self._pivot(r)
        inv = 1 / r[piv]
        r = {k: x * inv for k, x in r.items()}
        for other in list(self._occ.pop(piv, ())):
            row = self.rows[other]
            c = row[piv]
            before = set(row)
            _iadd(row, r, -c)
            for k in before - set(row):
                if k != other:
                    self._occ.get(k, set()).discard(other)
            for k in set(row) - before:
                self._occ.setdefault(k, set()).add(other)
        self.rows[piv] = r
        for k in r:
            if k != piv:
                self._occ.setdefault(k, set()).add(piv)
        return True

    def extend(self, vectors: Iterable[Vector]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def pivots(self):
        return set(self.rows)

    def copy(self) -> Echelon:
        e = Echelon(self.key)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        e._occ = {k: set(s) for k, s in self._occ.items()}
        return e


class Subspace:
    """A subspace of ``F^n`` (columns ``0..n-1``) in canonical RREF.

    Two subspaces are equal iff their RREF rows are equal, so ``==`` is exact.
    """

    def __init__(self, n: int, vectors: Iterable[Vector] = (), echelon: Echelon | None = None):
        self.n = n
        self._e = echelon if echelon is not None else Echelon()
        if echelon is None:
            self._e.extend(vectors)

    @property
    def dim(self) -> int:
        return len(self._e)

    def basis(self) -> list[Vector]:
        return [self._e.rows[p] for p in sorted(self._e.rows)]

    def contains(self, v: Vector) -> bool:
        return self._e.contains(v)

    def reduce(self, v: Vector) -> Vector:
        return self._e.reduce(v)

    def pivots(self) -> set:
        return self._e.pivots()

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self._e.rows == other._e.rows

    def __add__(self, other: Subspace) -> Subspace:
        e = self._e.copy()
        e.extend(other.basis())
        return Subspace(self.n, echelon=e)

    def intersection(self, other: Subspace) -> Subspace:
        # x = sum a_i u_i = sum b_j w_j  <=>  (a, -b) in the kernel
        us, ws = self.basis(), other.basis()
        if not us or not ws:
            return Subspace(self.n)
        rows = []
        for col in range(self.n):
            row = {}
            for i, u in enumerate(us):
                if col in u:
                    row[i] = u[col]
            for j, w in enumerate(ws):
                if col in w:
                    row[len(us) + j] = -w[col]
            if row:
                rows.append(row)
        ker = nullspace(rows, len(us) + len(ws))
        out = []
        for k in ker:
            x = {}
            for i, c in k.items():
                if i < len(us):
                    _iadd(x, us[i], c)
            out.append(x)
        return Subspace(self.n, out)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.n})"


def nullspace(rows: Iterable[Vector], nvars: int, one=None) -> list[Vector]:
    """Basis of ``{x : row . x = 0 for every row}`` over columns ``0..nvars-1``.

    ``one`` is the field's unit; it is only needed when there are no rows to
    infer the field from.
    """
    e = Echelon()
    rows = list(rows)
    e.extend(rows)
    if one is None:
        one = 1
        for r in rows:
            for x in r.values():
                one = x / x
                break
            break
    free = [c for c in range(nvars) if c not in e.rows]
    basis = []
    for f in free:
        x = {f: one}
        for piv in e._occ.get(f, ()):
            x[piv] = -e.rows[piv][f]
        basis.append(x)
    return basis


def rank(vectors: Iterable[Vector]) -> int:
    e = Echelon()
    return e.extend(vectors)
