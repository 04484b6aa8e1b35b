"""Exact sparse/dense linear algebra over a field.

Matrices are immutable-by-convention, stored as sparse row dicts.  Row
reduction always picks the leftmost column and, within a column, the
lowest-index unprocessed row, so every derived basis is deterministic and
golden-file friendly.  Elimination switches to a dense working copy when
the entry density reaches `DENSE_THRESHOLD`; both paths follow the same
pivot rule and produce identical output.
"""

from __future__ import annotations

from .errors import DimensionError, FieldMismatchError
from .field import Field, PrimeField

# Density (nnz / (rows*cols)) at which elimination uses a dense working
# copy.  A config knob only: results are identical on both paths.
DENSE_THRESHOLD = 0.25


class Matrix:
    __slots__ = ("nrows", "ncols", "field", "rows")

    def __init__(self, nrows: int, ncols: int, field: Field, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        # rows: dict[row_index, dict[col_index, nonzero scalar]]
        self.rows = rows if rows is not None else {}

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, entries, field: Field, ncols=None) -> "Matrix":
        nrows = len(entries)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = {}
        for i, row in enumerate(entries):
            if len(row) != ncols:
                raise DimensionError("ragged rows")
            r = {}
            for j, v in enumerate(row):
                v = field.normalize(v)
                if v:
                    r[j] = v
            if r:
                rows[i] = r
        return cls(nrows, ncols, field, rows)

    @classmethod
    def from_triplets(cls, nrows, ncols, triplets, field: Field) -> "Matrix":
        rows = {}
        for i, j, v in triplets:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise DimensionError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            v = field.normalize(v)
            if not v:
                continue
            r = rows.setdefault(i, {})
            w = field.add(r.get(j, field.zero()), v)
            if w:
                r[j] = w
            elif j in r:
                del r[j]
        return cls(nrows, ncols, field, {i: r for i, r in rows.items() if r})

    @classmethod
    def from_columns(cls, columns, nrows, field: Field) -> "Matrix":
        """columns: list of dict[row_index, scalar]."""
        rows = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), field, rows)

    @classmethod
    def zero(cls, nrows, ncols, field: Field) -> "Matrix":
        return cls(nrows, ncols, field, {})

    @classmethod
    def identity(cls, n, field: Field) -> "Matrix":
        one = field.one()
        return cls(n, n, field, {i: {i: one} for i in range(n)})

    # -- basic access --------------------------------------------------

    def entry(self, i, j):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise DimensionError(f"index ({i},{j}) outside {self.nrows}x{self.ncols}")
        return self.rows.get(i, {}).get(j, self.field.zero())

    def column(self, j) -> dict:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def columns(self):
        cols = [{} for _ in range(self.ncols)]
        for i, r in self.rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def density(self) -> float:
        size = self.nrows * self.ncols
        return self.nnz() / size if size else 0.0

    def is_zero(self) -> bool:
        return not self.rows

    def to_dense(self):
        zero = self.field.zero()
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "Matrix":
        rows = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(self.ncols, self.nrows, self.field, rows)

    # -- arithmetic ----------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def matvec(self, vec: dict) -> dict:
        """Apply to a sparse column vector dict[col, scalar]."""
        f = self.field
        out = {}
        for i, r in self.rows.items():
            acc = f.zero()
            if len(r) <= len(vec):
                for j, v in r.items():
                    if j in vec:
                        acc = f.add(acc, f.mul(v, vec[j]))
            else:
                for j, w in vec.items():
                    if j in r:
                        acc = f.add(acc, f.mul(r[j], w))
            if acc:
                out[i] = acc
        return out

    def mul(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"{self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        f = self.field
        rows = {}
        for i, r in self.rows.items():
            acc = {}
            for j, v in r.items():
                orow = other.rows.get(j)
                if not orow:
                    continue
                for jj, w in orow.items():
                    s = f.add(acc.get(jj, f.zero()), f.mul(v, w))
                    if s:
                        acc[jj] = s
                    elif jj in acc:
                        del acc[jj]
            if acc:
                rows[i] = acc
        return Matrix(self.nrows, other.ncols, f, rows)

    def add(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionError("shape mismatch in add")
        f = self.field
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tr = rows.setdefault(i, {})
            for j, v in r.items():
                s = f.add(tr.get(j, f.zero()), v)
                if s:
                    tr[j] = s
                elif j in tr:
                    del tr[j]
            if not tr:
                del rows[i]
        return Matrix(self.nrows, self.ncols, f, rows)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.normalize(c)
        if not c:
            return Matrix.zero(self.nrows, self.ncols, f)
        return Matrix(
            self.nrows,
            self.ncols,
            f,
            {i: {j: f.mul(c, v) for j, v in r.items()} for i, r in self.rows.items()},
        )

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(
            self.nrows,
            self.ncols,
            f,
            {i: {j: f.neg(v) for j, v in r.items()} for i, r in self.rows.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field}, nnz={self.nnz()})"


# -- row echelon machinery ---------------------------------------------


def _rref_sparse(mat: Matrix):
    """Reduced row echelon form on sparse row dicts.

    Returns (pivots, rows): pivots is a list of (row, col) in pivot order,
    rows the fully reduced row dicts (pivot entries normalized to 1).
    """
    f = mat.field
    modular = isinstance(f, PrimeField)
    p = f.p if modular else None
    work = [dict(mat.rows.get(i, {})) for i in range(mat.nrows)]
    used = [False] * mat.nrows
    # col -> list of rows that at some point had an entry there (stale
    # entries are skipped at use; dedup happens per column scan).
    col_rows = {}
    for i, row in enumerate(work):
        for j in row:
            col_rows.setdefault(j, []).append(i)
    pivots = []
    for col in range(mat.ncols) if len(col_rows) > mat.ncols // 2 else sorted(col_rows):
        cand = col_rows.get(col)
        if not cand:
            continue
        pivot_row = None
        for i in cand:
            if not used[i] and col in work[i]:
                if pivot_row is None or i < pivot_row:
                    pivot_row = i
        if pivot_row is None:
            continue
        used[pivot_row] = True
        prow = work[pivot_row]
        pv = prow[col]
        if modular:
            if pv != 1:
                inv = pow(pv, p - 2, p)
                prow = {j: v * inv % p for j, v in prow.items()}
                work[pivot_row] = prow
        else:
            if pv != f.one():
                inv = f.inv(pv)
                prow = {j: f.mul(v, inv) for j, v in prow.items()}
                work[pivot_row] = prow
        seen = set()
        for i in cand:
            if i == pivot_row or i in seen:
                continue
            seen.add(i)
            row = work[i]
            c = row.get(col)
            if not c:
                continue
            if modular:
                for j, v in prow.items():
                    nv = (row.get(j, 0) - c * v) % p
                    if nv:
                        if j not in row:
                            col_rows.setdefault(j, []).append(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
            else:
                for j, v in prow.items():
                    nv = f.sub(row.get(j, f.zero()), f.mul(c, v))
                    if nv:
                        if j not in row:
                            col_rows.setdefault(j, []).append(i)
                        row[j] = nv
                    elif j in row:
                        del row[j]
        pivots.append((pivot_row, col))
    return pivots, work


def _rref_dense(mat: Matrix):
    """Same contract as _rref_sparse but on dense working lists."""
    f = mat.field
    zero = f.zero()
    one = f.one()
    work = mat.to_dense()
    pivots = []
    used = [False] * mat.nrows
    for col in range(mat.ncols):
        pivot_row = None
        for i in range(mat.nrows):
            if not used[i] and work[i][col] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        used[pivot_row] = True
        prow = work[pivot_row]
        if prow[col] != one:
            inv = f.inv(prow[col])
            work[pivot_row] = prow = [f.mul(v, inv) for v in prow]
        for i in range(mat.nrows):
            if i == pivot_row:
                continue
            c = work[i][col]
            if c == zero:
                continue
            row = work[i]
            work[i] = [f.sub(row[j], f.mul(c, prow[j])) for j in range(mat.ncols)]
        pivots.append((pivot_row, col))
    out = [{j: v for j, v in enumerate(row) if v != zero} for row in work]
    return pivots, out


def rref(mat: Matrix, dense_threshold=None):
    """Reduced row echelon form; returns (pivots, reduced row dicts)."""
    threshold = DENSE_THRESHOLD if dense_threshold is None else dense_threshold
    if mat.nrows and mat.ncols and mat.density() >= threshold:
        return _rref_dense(mat)
    return _rref_sparse(mat)


def rank(mat: Matrix, dense_threshold=None) -> int:
    pivots, _ = rref(mat, dense_threshold)
    return len(pivots)


def kernel_basis(mat: Matrix, dense_threshold=None):
    """Basis of the right null space as sparse column dicts.

    One vector per free column, in ascending column order: the free
    coordinate is 1 and pivot coordinates are read off the reduced rows.
    """
    f = mat.field
    pivots, rows = rref(mat, dense_threshold)
    pivot_cols = set(col for _, col in pivots)
    vecs = {}
    for j in range(mat.ncols):
        if j not in pivot_cols:
            vecs[j] = {j: f.one()}
    for prow, col in pivots:
        for j, v in rows[prow].items():
            if j != col and j in vecs:
                vecs[j][col] = f.neg(v)
    return [vecs[j] for j in sorted(vecs)]


def solve(mat: Matrix, b: dict):
    """Solve mat @ x = b for a sparse rhs dict.

    Returns ("solution", x) with a particular solution (free variables set
    to zero), or ("inconsistent", v) with a left null vector v satisfying
    v @ mat = 0 and v @ b != 0.
    """
    f = mat.field
    for i in b:
        if not 0 <= i < mat.nrows:
            raise DimensionError(f"rhs index {i} outside {mat.nrows} rows")
    B = mat.ncols  # rhs column
    T = mat.ncols + 1  # first transformation-tag column
    work = []
    for i in range(mat.nrows):
        row = dict(mat.rows.get(i, {}))
        if b.get(i):
            row[B] = f.normalize(b[i])
        row[T + i] = f.one()
        work.append(row)
    pivots = []
    used = [False] * mat.nrows
    for col in range(mat.ncols):
        pivot_row = None
        for i in range(mat.nrows):
            if not used[i] and work[i].get(col):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        used[pivot_row] = True
        prow = work[pivot_row]
        inv = f.inv(prow[col])
        if prow[col] != f.one():
            prow = {j: f.mul(v, inv) for j, v in prow.items()}
            work[pivot_row] = prow
        for i in range(mat.nrows):
            if i == pivot_row:
                continue
            row = work[i]
            c = row.get(col)
            if not c:
                continue
            for j, v in prow.items():
                nv = f.sub(row.get(j, f.zero()), f.mul(c, v))
                if nv:
                    row[j] = nv
                elif j in row:
                    del row[j]
        pivots.append((pivot_row, col))
    for i in range(mat.nrows):
        row = work[i]
        if row.get(B) and not any(0 <= j < mat.ncols for j in row):
            witness = {j - T: v for j, v in row.items() if j >= T}
            return "inconsistent", witness
    x = {}
    for prow, col in pivots:
        v = work[prow].get(B)
        if v:
            x[col] = v
    return "solution", x


class SpanReducer:
    """Incremental echelon form for a growing span of sparse vectors.

    Rows are kept with pivot entry 1; the pivot of a stored row is its
    smallest nonzero coordinate.  Optional tags ride along linearly, so
    reducing a vector to zero recovers its coordinates over the tagged
    generators.  Coordinates must be totally ordered (ints or tuples).
    """

    __slots__ = ("field", "rows", "tags", "_modular", "_p")

    def __init__(self, field: Field):
        self.field = field
        self.rows = {}  # pivot coordinate -> row dict (pivot value 1)
        self.tags = {}  # pivot coordinate -> tag dict
        self._modular = isinstance(field, PrimeField)
        self._p = field.p if self._modular else None

    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict):
        """Return (residual, used) with vec = residual + sum used[t]*gen_t

        modulo untagged rows; residual has no coordinate matching a stored
        pivot.
        """
        f = self.field
        p = self._p
        v = dict(vec)
        used = {}
        cursor = None  # coordinates <= cursor are final: no pivot there
        while True:
            piv = None
            for k in v:
                if cursor is not None and k <= cursor:
                    continue
                if piv is None or k < piv:
                    piv = k
            if piv is None:
                break
            row = self.rows.get(piv)
            if row is None:
                cursor = piv
                continue
            c = v[piv]
            # row's smallest coordinate is piv, so this touches only
            # coordinates > piv and the scan never goes backwards.
            if self._modular:
                for j, w in row.items():
                    nv = (v.get(j, 0) - c * w) % p
                    if nv:
                        v[j] = nv
                    elif j in v:
                        del v[j]
            else:
                for j, w in row.items():
                    nv = f.sub(v.get(j, f.zero()), f.mul(c, w))
                    if nv:
                        v[j] = nv
                    elif j in v:
                        del v[j]
            tag = self.tags.get(piv)
            if tag:
                for t, w in tag.items():
                    nt = f.add(used.get(t, f.zero()), f.mul(c, w))
                    if nt:
                        used[t] = nt
                    elif t in used:
                        del used[t]
        return v, used

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def add(self, vec: dict, tag=None):
        """Reduce vec and adjoin the residual if independent.

        Returns the normalized residual row, or None if vec was already in
        the span.  When `tag` is given, the stored row remembers that it
        equals inv*(gen_tag - sum used[t]*gen_t) modulo untagged rows.
        """
        f = self.field
        residual, used = self.reduce(vec)
        if not residual:
            return None
        piv = min(residual)
        inv = f.inv(residual[piv])
        if self._modular:
            p = self._p
            row = {j: v * inv % p for j, v in residual.items()}
        else:
            row = {j: f.mul(v, inv) for j, v in residual.items()}
        self.rows[piv] = row
        if tag is not None:
            t = {tag: inv}
            for key, v in used.items():
                w = f.neg(f.mul(inv, v))
                if w:
                    s = f.add(t.get(key, f.zero()), w)
                    if s:
                        t[key] = s
                    elif key in t:
                        del t[key]
            self.tags[piv] = t
        return row


def vec_add(a: dict, b: dict, field: Field) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = field.add(out.get(k, field.zero()), v)
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def vec_sub(a: dict, b: dict, field: Field) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = field.sub(out.get(k, field.zero()), v)
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def vec_scale(a: dict, c, field: Field) -> dict:
    c = field.normalize(c)
    if not c:
        return {}
    return {k: field.mul(c, v) for k, v in a.items()}


def vec_axpy(acc: dict, c, vec: dict, field: Field) -> None:
    """In-place acc += c * vec on plain dicts."""
    if not c:
        return
    for k, v in vec.items():
        s = field.add(acc.get(k, field.zero()), field.mul(c, v))
        if s:
            acc[k] = s
        elif k in acc:
            del acc[k]


def vec_dot(a: dict, b: dict, field: Field):
    if len(a) > len(b):
        a, b = b, a
    acc = field.zero()
    for k, v in a.items():
        if k in b:
            acc = field.add(acc, field.mul(v, b[k]))
    return acc
