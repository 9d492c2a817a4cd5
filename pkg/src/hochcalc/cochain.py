"""Hochschild cochains on the suspension of a graded algebra.

A cochain of arity p is a sparse homogeneous p-multilinear map on the
suspended algebra, stored as a table from basis tuples to sparse output
vectors.  Compositions evaluate with the Koszul sign

    (f o_i g)(u_1, ..., u_{p+q-1})
        = (-1)^{|g| (|u_1| + ... + |u_{i-1}|)}
          f(u_1, ..., g(u_i, ..., u_{i+q-1}), ...),

where degrees are suspended degrees and |g| is the degree of g as a map.
Braces expand as sums of iterated compositions over strictly increasing
insertion positions; all further signs arise from this single convention.

The bidegree of an arity-p cochain of map degree d is (p, q) with
q = 1 - p - d; the Hochschild differential [m2, -] moves (p, q) to
(p+1, q).
"""

from __future__ import annotations

from itertools import combinations, product as iproduct

from .algebra import GradedAlgebra, require_valid
from .errors import ConfigurationError, DomainError


class Cochain:
    """Sparse multilinear map on the suspended algebra.

    ``table`` maps tuples of basis indices to sparse output vectors
    ``{basis index: scalar}``.  Zero outputs are never stored, so equality
    of tables is equality of maps.
    """

    __slots__ = ("algebra", "arity", "end_degree", "table")

    def __init__(self, algebra: GradedAlgebra, arity: int, end_degree: int, table=None):
        self.algebra = algebra
        self.arity = arity
        self.end_degree = end_degree
        self.table = {}
        if table:
            field = algebra.field
            for t, vec in table.items():
                clean = {k: c for k, c in vec.items() if not field.is_zero(c)}
                if clean:
                    self.table[tuple(t)] = clean

    # -- bookkeeping --------------------------------------------------------

    @property
    def bidegree(self):
        return (self.arity, 1 - self.arity - self.end_degree)

    @classmethod
    def zero(cls, algebra, arity, end_degree):
        return cls(algebra, arity, end_degree, {})

    def zero_like(self, arity, end_degree):
        return Cochain.zero(self.algebra, arity, end_degree)

    def is_zero(self) -> bool:
        return not self.table

    def is_normalized(self) -> bool:
        """True if the cochain vanishes whenever an input is the unit."""
        u = self.algebra.unit
        return all(u not in t for t in self.table)

    def check_homogeneous(self):
        a = self.algebra
        for t, vec in self.table.items():
            want = sum(a.suspended_degree(i) for i in t) + self.end_degree
            for k in vec:
                if a.suspended_degree(k) != want:
                    raise DomainError(
                        f"inhomogeneous entry at {tuple(a.names[i] for i in t)}",
                        witness=(t, k),
                    )
        return self

    def multiplication(self) -> "Cochain":
        return shifted_m2(self.algebra)

    # -- linear structure ----------------------------------------------------

    def _check_compatible(self, other: "Cochain"):
        if self.algebra is not other.algebra:
            raise ConfigurationError("cochains over different algebras")
        if (self.arity, self.end_degree) != (other.arity, other.end_degree):
            raise ConfigurationError(
                f"cochain shape mismatch: {(self.arity, self.end_degree)} vs "
                f"{(other.arity, other.end_degree)}"
            )

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        field = self.algebra.field
        table = {t: dict(vec) for t, vec in self.table.items()}
        for t, vec in other.table.items():
            dst = table.setdefault(t, {})
            for k, c in vec.items():
                s = field.add(dst.get(k, field.zero()), c)
                if field.is_zero(s):
                    dst.pop(k, None)
                else:
                    dst[k] = s
            if not dst:
                del table[t]
        out = Cochain(self.algebra, self.arity, self.end_degree)
        out.table = table
        return out

    def __neg__(self) -> "Cochain":
        return self.scale(self.algebra.field.neg(self.algebra.field.one()))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        field = self.algebra.field
        if field.is_zero(c):
            return Cochain.zero(self.algebra, self.arity, self.end_degree)
        out = Cochain(self.algebra, self.arity, self.end_degree)
        out.table = {
            t: {k: field.mul(c, x) for k, x in vec.items()} for t, vec in self.table.items()
        }
        return out

    def scale_int(self, n: int) -> "Cochain":
        return self.scale(self.algebra.field.from_int(n))

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.algebra is other.algebra
            and self.arity == other.arity
            and self.end_degree == other.end_degree
            and self.table == other.table
        )

    def __repr__(self):
        return (
            f"Cochain(arity={self.arity}, deg={self.end_degree}, "
            f"{len(self.table)} entries)"
        )

    # -- evaluation and composition -------------------------------------------

    def evaluate(self, tuple_indices) -> dict:
        return dict(self.table.get(tuple(tuple_indices), {}))

    def compose_at(self, g: "Cochain", i: int) -> "Cochain":
        """Operadic composition at slot i (1-based)."""
        if self.algebra is not g.algebra:
            raise ConfigurationError("cochains over different algebras")
        if self.is_zero() or g.is_zero():
            return Cochain.zero(
                self.algebra, self.arity + g.arity - 1, self.end_degree + g.end_degree
            )
        if not (1 <= i <= self.arity):
            raise ConfigurationError(f"slot {i} out of range for arity {self.arity}")
        a = self.algebra
        field = a.field
        g_by_out: dict = {}
        for t_g, vec_g in g.table.items():
            for b, c in vec_g.items():
                g_by_out.setdefault(b, []).append((t_g, c))
        d_g = g.end_degree
        out = Cochain.zero(a, self.arity + g.arity - 1, self.end_degree + d_g)
        table = out.table
        for t_f, vec_f in self.table.items():
            slot_basis = t_f[i - 1]
            hits = g_by_out.get(slot_basis)
            if not hits:
                continue
            prefix = t_f[: i - 1]
            suffix = t_f[i:]
            prefix_deg = sum(a.suspended_degree(j) for j in prefix)
            negate = (d_g * prefix_deg) % 2 == 1
            for t_g, c_g in hits:
                coef = field.neg(c_g) if negate else c_g
                new_t = prefix + t_g + suffix
                dst = table.setdefault(new_t, {})
                for k, c in vec_f.items():
                    s = field.add(dst.get(k, field.zero()), field.mul(coef, c))
                    if field.is_zero(s):
                        dst.pop(k, None)
                    else:
                        dst[k] = s
                if not dst:
                    del table[new_t]
        return out


# -- brace calculus (generic over anything with compose_at/add/scale) --------


def brace(f, args):
    """f{args}: sum over order-preserving insertions of the arguments into
    the slots of f.  Empty argument list returns f; more arguments than
    slots gives zero."""
    args = list(args)
    n = len(args)
    if n == 0:
        return f
    for g in args:
        if g.algebra is not f.algebra:
            raise ConfigurationError("brace arguments over different algebras")
    arity = f.arity + sum(g.arity for g in args) - n
    degree = f.end_degree + sum(g.end_degree for g in args)
    total = f.zero_like(arity, degree)
    for positions in combinations(range(1, f.arity + 1), n):
        cur = f
        shift = 0
        for pos, g in zip(positions, args):
            cur = cur.compose_at(g, pos + shift)
            shift += g.arity - 1
        total = total + cur
    return total


def bracket(f, g):
    """Gerstenhaber bracket f{g} - (-1)^{|f||g|} g{f}."""
    sign = (f.end_degree * g.end_degree) % 2
    second = brace(g, [f])
    if sign == 0:
        second = second.scale(f.algebra.field.neg(f.algebra.field.one()))
    return brace(f, [g]) + second


def cup(f, g):
    """Cup product (-1)^{|f|} m2{f, g}."""
    m2 = f.multiplication()
    raw = brace(m2, [f, g])
    if f.end_degree % 2 != 0:
        raw = raw.scale(f.algebra.field.neg(f.algebra.field.one()))
    return raw


def sq(f):
    """Gerstenhaber square f{f}; needs odd map degree or characteristic 2."""
    if f.end_degree % 2 == 0 and f.algebra.field.char != 2:
        raise DomainError(
            f"square needs odd degree or characteristic 2, got degree {f.end_degree}"
        )
    return brace(f, [f])


def hoch_d(f):
    """Hochschild differential [m2, -]."""
    return bracket(f.multiplication(), f)


# -- distinguished cochains ---------------------------------------------------


def shifted_m2(a: GradedAlgebra) -> Cochain:
    """The multiplication of a, shifted onto the suspension:
    m2(sx, sy) = (-1)^{|x|} s(x y).  Cached on the algebra."""
    if a._m2 is not None:
        return a._m2
    require_valid(a)
    field = a.field
    table = {}
    for i in range(a.dim):
        sign_flip = a.degrees[i] % 2 == 1
        for j in range(a.dim):
            vec = a.product(i, j)
            if not vec:
                continue
            if sign_flip:
                vec = {k: field.neg(c) for k, c in vec.items()}
            else:
                vec = dict(vec)
            table[(i, j)] = vec
    m2 = Cochain(a, 2, -1, table)
    a._m2 = m2
    return m2


def euler_delta(a: GradedAlgebra) -> Cochain:
    """The Euler derivation, diagonal with coefficient 1 - |sx| on the
    suspended basis; bidegree (1, 0)."""
    field = a.field
    table = {}
    for i in range(a.dim):
        c = field.from_int(1 - a.suspended_degree(i))
        if not field.is_zero(c):
            table[(i,)] = {i: c}
    return Cochain(a, 1, 0, table)


def beta_cochain(a: GradedAlgebra) -> Cochain:
    """Diagonal cochain with the integer coefficient |x|(|x|-1)/2; a
    primitive for the cup square of the Euler derivation."""
    field = a.field
    table = {}
    for i in range(a.dim):
        d = a.degrees[i]
        c = field.from_int(d * (d - 1) // 2)
        if not field.is_zero(c):
            table[(i,)] = {i: c}
    return Cochain(a, 1, 0, table)


def identity_cochain(a: GradedAlgebra) -> Cochain:
    field = a.field
    return Cochain(a, 1, 0, {(i,): {i: field.one()} for i in range(a.dim)})


# -- homogeneous cochain bases -------------------------------------------------


def cochain_basis(a: GradedAlgebra, p: int, q: int, normalized: bool = True):
    """Ordered basis of the (p, q) cochain space: pairs (tuple, output index)
    in lexicographic order.  ``normalized`` restricts to tuples avoiding the
    unit."""
    d = 1 - p - q
    out_by_degree: dict = {}
    for k in range(a.dim):
        out_by_degree.setdefault(a.suspended_degree(k), []).append(k)
    indices = [i for i in range(a.dim) if not normalized or i != a.unit]
    basis = []
    if p == 0:
        for k in out_by_degree.get(d, []):
            basis.append(((), k))
        return basis
    for t in iproduct(indices, repeat=p):
        want = sum(a.suspended_degree(i) for i in t) + d
        for k in out_by_degree.get(want, []):
            basis.append((t, k))
    return basis


def q_support(a: GradedAlgebra, p: int):
    """Internal degrees q with a nonzero (p, q) cochain space, from the
    degree span of the algebra."""
    lo, hi = a.degree_span()
    slo, shi = lo + 1, hi + 1
    qs = []
    if p == 0:
        lo_d, hi_d = slo, shi
    else:
        lo_d, hi_d = slo - p * shi, shi - p * slo
    for d in range(lo_d, hi_d + 1):
        q = 1 - p - d
        if cochain_basis(a, p, q, normalized=False):
            qs.append(q)
    return sorted(qs)


def cochain_from_coords(a: GradedAlgebra, p: int, q: int, basis, coords: dict) -> Cochain:
    field = a.field
    table: dict = {}
    for idx, c in coords.items():
        if field.is_zero(c):
            continue
        t, k = basis[idx]
        dst = table.setdefault(t, {})
        dst[k] = field.add(dst.get(k, field.zero()), c)
    return Cochain(a, p, 1 - p - q, table)


def coords_of_cochain(z: Cochain, basis, index=None) -> dict:
    """Sparse coordinate vector of ``z`` in an enumerated basis.

    Raises ``DomainError`` if ``z`` has an entry outside the basis (e.g. a
    non-normalized cochain against a normalized basis).
    """
    if index is None:
        index = {pair: n for n, pair in enumerate(basis)}
    coords = {}
    for t, vec in z.table.items():
        for k, c in vec.items():
            n = index.get((t, k))
            if n is None:
                raise DomainError(
                    f"cochain entry {(t, k)} outside the enumerated basis",
                    witness=(t, k),
                )
            coords[n] = c
    return coords
