"""Exact scalars over Q and prime fields, and sparse linear algebra.

Scalars are plain Python values: ``fractions.Fraction`` over the rationals
and ints in ``[0, p)`` over a prime field.  A ``Field`` object supplies the
arithmetic, so vectors and matrices stay lightweight dicts.

All reduction routines pivot by column order first and row order second,
which makes every derived basis deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigurationError, InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Arithmetic context for exact scalars."""

    char: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def parse(self, text):
        """Parse a scalar from an int or a ``"num"``/``"num/den"`` string."""
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.char == getattr(other, "char", None)

    def __hash__(self):
        return hash((type(self).__name__, self.char))


class Rationals(Field):
    """The field Q; scalars are ``Fraction`` (always reduced, positive
    denominator)."""

    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        if isinstance(text, bool):
            raise InputError("expected a scalar, got a boolean")
        if isinstance(text, int):
            return Fraction(text)
        if isinstance(text, str):
            try:
                return Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad rational scalar {text!r}: {exc}")
        raise InputError(f"bad rational scalar {text!r}")

    def format(self, a):
        return str(a)

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    """The field F_p for a prime p; scalars are ints in ``[0, p)``."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def parse(self, text):
        if isinstance(text, bool):
            raise InputError("expected a scalar, got a boolean")
        if isinstance(text, int):
            return text % self.p
        if isinstance(text, str):
            try:
                return int(text, 10) % self.p
            except ValueError as exc:
                raise InputError(f"bad scalar {text!r} for F_{self.p}: {exc}")
        raise InputError(f"bad scalar {text!r} for F_{self.p}")

    def format(self, a):
        return str(a % self.p)

    def __repr__(self):
        return f"F_{self.p}"


def field_from_json(doc) -> Field:
    """Build a field from ``{"type": "Q"}`` or ``{"type": "F", "p": 5}``."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise InputError("field block must be an object with a 'type'", "field")
    kind = doc["type"]
    if kind == "Q":
        return Rationals()
    if kind == "F":
        if "p" not in doc:
            raise InputError("prime field needs 'p'", "field.p")
        p = doc["p"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise InputError(f"'p' must be an integer, got {p!r}", "field.p")
        try:
            return PrimeField(p)
        except InputError as exc:
            raise InputError(str(exc), "field.p")
    raise InputError(f"unknown field type {kind!r}", "field.type")


def field_to_json(field: Field):
    if field.char == 0:
        return {"type": "Q"}
    return {"type": "F", "p": field.char}


# -- sparse vectors: dict[index] -> nonzero scalar ---------------------------


def vec_add(field: Field, u: dict, v: dict) -> dict:
    out = dict(u)
    for i, c in v.items():
        s = field.add(out.get(i, field.zero()), c)
        if field.is_zero(s):
            out.pop(i, None)
        else:
            out[i] = s
    return out


def vec_scale(field: Field, c, v: dict) -> dict:
    if field.is_zero(c):
        return {}
    return {i: field.mul(c, x) for i, x in v.items()}


def vec_sub(field: Field, u: dict, v: dict) -> dict:
    return vec_add(field, u, vec_scale(field, field.neg(field.one()), v))


def vec_is_zero(v: dict) -> bool:
    return not v


def vec_eq(field: Field, u: dict, v: dict) -> bool:
    return vec_is_zero(vec_sub(field, u, v))


class SparseMatrix:
    """Immutable-by-convention sparse matrix over a single field.

    ``entries`` maps ``(row, col)`` to a nonzero scalar; zeros are never
    stored.
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), c in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ConfigurationError(f"entry ({i},{j}) out of range")
                if not field.is_zero(c):
                    self.entries[(i, j)] = c

    @classmethod
    def from_rows(cls, field: Field, rows_list, cols: int) -> "SparseMatrix":
        entries = {}
        for i, row in enumerate(rows_list):
            for j, c in row.items():
                if not field.is_zero(c):
                    entries[(i, j)] = c
        return cls(field, len(rows_list), cols, entries)

    @classmethod
    def from_columns(cls, field: Field, cols_list, rows: int) -> "SparseMatrix":
        entries = {}
        for j, col in enumerate(cols_list):
            for i, c in col.items():
                if not field.is_zero(c):
                    entries[(i, j)] = c
        return cls(field, rows, len(cols_list), entries)

    @classmethod
    def from_dense(cls, field: Field, data) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            for j, c in enumerate(row):
                c = field.from_int(c) if isinstance(c, int) else c
                if not field.is_zero(c):
                    entries[(i, j)] = c
        return cls(field, rows, cols, entries)

    def row(self, i: int) -> dict:
        return {j: c for (r, j), c in self.entries.items() if r == i}

    def column(self, j: int) -> dict:
        return {i: c for (i, c2), c in self.entries.items() if c2 == j}

    def _row_list(self):
        rows = [dict() for _ in range(self.rows)]
        for (i, j), c in self.entries.items():
            rows[i][j] = c
        return rows

    def apply(self, v: dict) -> dict:
        """Matrix times sparse column vector."""
        field = self.field
        out: dict = {}
        for (i, j), c in self.entries.items():
            x = v.get(j)
            if x is None:
                continue
            s = field.add(out.get(i, field.zero()), field.mul(c, x))
            if field.is_zero(s):
                out.pop(i, None)
            else:
                out[i] = s
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.field,
            self.cols,
            self.rows,
            {(j, i): c for (i, j), c in self.entries.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.field == other.field
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"


def rref(m: SparseMatrix):
    """Reduced row-echelon form.

    Returns ``(rank, pivots, reduced)`` where ``pivots`` lists pivot columns
    in increasing order.  Pivoting is by column order, then row order, so the
    output is unique and deterministic.
    """
    field = m.field
    rows = m._row_list()
    pivots = []
    pivot_row = 0
    for col in range(m.cols):
        sel = None
        for i in range(pivot_row, m.rows):
            if col in rows[i]:
                sel = i
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        head = rows[pivot_row][col]
        if head != field.one():
            inv = field.inv(head)
            rows[pivot_row] = {j: field.mul(inv, c) for j, c in rows[pivot_row].items()}
        prow = rows[pivot_row]
        for i in range(m.rows):
            if i == pivot_row:
                continue
            c = rows[i].get(col)
            if c is None:
                continue
            ri = rows[i]
            for j, pc in prow.items():
                s = field.sub(ri.get(j, field.zero()), field.mul(c, pc))
                if field.is_zero(s):
                    ri.pop(j, None)
                else:
                    ri[j] = s
        pivots.append(col)
        pivot_row += 1
        if pivot_row == m.rows:
            break
    reduced = SparseMatrix.from_rows(field, rows, m.cols)
    return len(pivots), pivots, reduced


def kernel_basis(m: SparseMatrix):
    """Basis of the right null space, one vector per free column, in free
    column order.  Each vector has a 1 at its free column."""
    field = m.field
    rank, pivots, red = rref(m)
    pivot_set = set(pivots)
    pivot_of_row = {r: c for r, c in enumerate(pivots)}
    rows = red._row_list()
    basis = []
    for j in range(m.cols):
        if j in pivot_set:
            continue
        vec = {j: field.one()}
        for r in range(rank):
            c = rows[r].get(j)
            if c is not None:
                vec[pivot_of_row[r]] = field.neg(c)
        basis.append(vec)
    return basis


def solve(m: SparseMatrix, b: dict):
    """Particular solution of ``m x = b`` with free variables set to zero,
    or ``None`` if the system is inconsistent."""
    field = m.field
    for i in b:
        if not (0 <= i < m.rows):
            raise ConfigurationError(f"rhs index {i} out of range for {m.rows} rows")
    aug_entries = dict(m.entries)
    for i, c in b.items():
        if not field.is_zero(c):
            aug_entries[(i, m.cols)] = c
    aug = SparseMatrix(field, m.rows, m.cols + 1, aug_entries)
    rank, pivots, red = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x: dict = {}
    rows = red._row_list()
    for r, c in enumerate(pivots):
        v = rows[r].get(m.cols)
        if v is not None:
            x[c] = v
    return x


def complement_basis(field: Field, subspace, ambient_dim: int):
    """Standard basis vectors at the non-pivot columns of the reduced
    subspace; together with the subspace they span the ambient space."""
    m = SparseMatrix.from_rows(field, list(subspace), ambient_dim)
    _, pivots, _ = rref(m)
    pivot_set = set(pivots)
    return [{j: field.one()} for j in range(ambient_dim) if j not in pivot_set]


def solve_columns(field: Field, columns, rhs: dict, extra_columns=()):
    """One solution of ``sum_j x_j col_j (+ sum_k y_k extra_k) = rhs`` by
    sparsity-guided elimination; deterministic (pivot row of least fill,
    ties by index).  Returns ``(x, y)`` as sparse dicts, or ``None``.

    Unlike :func:`solve`, free variables are zeroed relative to the
    elimination order, which favours sparse witnesses on large systems.
    """
    import heapq

    cols = list(columns) + list(extra_columns)
    n_main = len(columns)
    # canonical integer row ids, in sorted row-key order for determinism
    row_keys = sorted({r for col in cols for r in col} | set(rhs))
    row_id = {r: n for n, r in enumerate(row_keys)}
    row_items = {n: {} for n in range(len(row_keys))}
    col_rows = [set() for _ in cols]
    for j, col in enumerate(cols):
        for r, c in col.items():
            if field.is_zero(c):
                continue
            n = row_id[r]
            row_items[n][j] = c
            col_rows[j].add(n)
    b = {row_id[r]: c for r, c in rhs.items() if not field.is_zero(c)}
    used_rows = set()
    used_cols = set()
    assignments = []
    heap = [(len(cs), r) for r, cs in row_items.items() if cs]
    heapq.heapify(heap)
    while heap:
        size, r = heapq.heappop(heap)
        if r in used_rows:
            continue
        live = row_items[r]
        if not live or len(live) != size:
            if live:
                heapq.heappush(heap, (len(live), r))
            continue
        j = min(live)
        used_rows.add(r)
        used_cols.add(j)
        assignments.append((j, r))
        inv = field.inv(live[j])
        prow = {jj: field.mul(inv, c) for jj, c in live.items()}
        row_items[r] = prow
        pval = field.mul(inv, b.get(r, field.zero()))
        if field.is_zero(pval):
            b.pop(r, None)
        else:
            b[r] = pval
        for jj in prow:
            if jj != j:
                col_rows[jj].add(r)
        touched = [rr for rr in col_rows[j] if rr != r and rr not in used_rows]
        for rr in touched:
            target = row_items[rr]
            c = target.get(j)
            if c is None:
                continue
            for jj, pc in prow.items():
                s = field.sub(target.get(jj, field.zero()), field.mul(c, pc))
                if field.is_zero(s):
                    target.pop(jj, None)
                else:
                    target[jj] = s
                    col_rows[jj].add(rr)
            bv = field.sub(b.get(rr, field.zero()), field.mul(c, pval))
            if field.is_zero(bv):
                b.pop(rr, None)
            else:
                b[rr] = bv
            if target:
                heapq.heappush(heap, (len(target), rr))
    # any remaining rhs on unused rows means inconsistency
    for r, c in b.items():
        if r not in used_rows and not field.is_zero(c):
            return None
    x: dict = {}
    for j, r in reversed(assignments):
        acc = b.get(r, field.zero())
        for jj, c in row_items[r].items():
            if jj == j:
                continue
            xv = x.get(jj)
            if xv is not None:
                acc = field.sub(acc, field.mul(c, xv))
        if not field.is_zero(acc):
            x[j] = acc
    # verify exactly (guards the incremental bookkeeping)
    check: dict = {}
    for j, c in x.items():
        for r, v in cols[j].items():
            n = row_id[r]
            s = field.add(check.get(n, field.zero()), field.mul(c, v))
            if field.is_zero(s):
                check.pop(n, None)
            else:
                check[n] = s
    want = {row_id[r]: c for r, c in rhs.items() if not field.is_zero(c)}
    if check != want:
        return None
    main = {j: c for j, c in x.items() if j < n_main}
    extra = {j - n_main: c for j, c in x.items() if j >= n_main}
    return main, extra


def coordinates_in_basis(field: Field, basis, v: dict, dim: int):
    """Coordinates of ``v`` in the span of ``basis`` (vectors of length
    ``dim``), or ``None`` if ``v`` is outside the span."""
    m = SparseMatrix.from_columns(field, list(basis), dim)
    return solve(m, v)


def rank_of(field: Field, vectors, dim: int) -> int:
    return rref(SparseMatrix.from_rows(field, list(vectors), dim))[0]
