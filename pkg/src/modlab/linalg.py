"""Exact integer linear algebra and finitely generated abelian groups.

Every group is kept in invariant-factor form ``ℤ/d₁ ⊕ … ⊕ ℤ/dₖ`` with
``d₁ | d₂ | …`` (a ``0`` order stands for ``ℤ``). Elements are residue
vectors against those orders, so two elements are equal iff their vectors
are. Groups given by generators and relations are brought into this form by
:func:`present`, which also returns the coordinate maps in both directions.
"""

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from modlab import InputError

Vector = Tuple[int, ...]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Extended Euclid.

    Returns:
        (d, s, t) with d = s·a + t·b = gcd(a, b) and d ≥ 0
    """
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b) if a and b else 0, values, 1)


def reduce_vector(vector: Iterable[int], orders: Sequence[int]) -> Vector:
    return tuple(x % d if d else x for x, d in zip(vector, orders))


def _combine(a: int, u: Sequence[int], b: int, v: Sequence[int]) -> List[int]:
    return [a * x + b * y for x, y in zip(u, v)]


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix of Python integers"""

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("Matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise InputError("Matrix entry grid is not rectangular")

    @classmethod
    def from_rows(cls, rows, cols=None):
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [tuple(int(x) for x in c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise InputError(f"Columns must have length {rows}")
        entries = tuple(tuple(c[i] for c in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n):
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values, rows=None, cols=None):
        values = list(values)
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        entries = tuple(
            tuple(values[i] if i == j and i < len(values) else 0 for j in range(cols))
            for i in range(rows)
        )
        return cls(rows, cols, entries)

    @classmethod
    def block_diagonal(cls, *blocks):
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = []
        offset = 0
        for b in blocks:
            for r in b.entries:
                out.append((0,) * offset + r + (0,) * (cols - offset - b.cols))
            offset += b.cols
        return cls(rows, cols, tuple(out))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def row(self, i) -> Vector:
        return self.entries[i]

    def column(self, j) -> Vector:
        return tuple(r[j] for r in self.entries)

    @property
    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(r) for r in self.entries]

    def transpose(self):
        return IntMatrix.from_columns(self.entries, self.cols)

    def is_zero(self):
        return all(x == 0 for r in self.entries for x in r)

    def is_diagonal(self):
        return all(
            x == 0
            for i, r in enumerate(self.entries)
            for j, x in enumerate(r)
            if i != j
        )

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for r in self.entries:
            acc = [0] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(other.entries[k]):
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("Matrix shapes differ")

    def __add__(self, other):
        self._check_shape(other)
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return IntMatrix(
            self.rows, self.cols, tuple(tuple(k * x for x in r) for r in self.entries)
        )

    def kron(self, other):
        """Kronecker product, rows and columns indexed in mixed-radix order"""
        out = []
        for r in self.entries:
            for s in other.entries:
                out.append(tuple(a * b for a in r for b in s))
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, tuple(out))

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise InputError(f"Vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum(a * x for a, x in zip(r, vector) if a) for r in self.entries)

    def hstack(self, other):
        if self.rows != other.rows:
            raise InputError("Row counts differ")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(r + s for r, s in zip(self.entries, other.entries)),
        )

    def vstack(self, other):
        if self.cols != other.cols:
            raise InputError("Column counts differ")
        return IntMatrix(
            self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def select_rows(self, indices):
        rows = tuple(self.entries[i] for i in indices)
        return IntMatrix(len(indices), self.cols, rows)

    def select_columns(self, indices):
        return IntMatrix(
            self.rows,
            len(indices),
            tuple(tuple(r[j] for j in indices) for r in self.entries),
        )

    def reduce_rows(self, orders: Sequence[int]):
        """Reduces row i modulo orders[i] (0 leaves the row untouched)"""
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(x % d for x in r) if d else r
                for r, d in zip(self.entries, orders)
            ),
        )

    def determinant(self) -> int:
        """Fraction-free (Bareiss) elimination"""
        if self.rows != self.cols:
            raise InputError("Determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __str__(self):
        rows = ("[" + ",".join(map(str, r)) + "]" for r in self.entries)
        return "[" + ", ".join(rows) + "]"


class _SmithWorkspace(object):
    """Mutable state of one Smith normal form computation.

    Row operations are mirrored into U (and inverse column operations into
    U⁻¹), column operations into V and V⁻¹, each only when requested.
    """

    def __init__(self, matrix: IntMatrix, left: bool, right: bool):
        self.m, self.n = matrix.rows, matrix.cols
        self.a = [list(r) for r in matrix.entries]
        self.diagonal = matrix.is_diagonal()
        ident = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]  # noqa
        self.u = ident(self.m) if left else None
        self.u_inv = ident(self.m) if left else None
        self.v = ident(self.n) if right else None
        self.v_inv = ident(self.n) if right else None

    def swap_rows(self, i, j):
        self.a[i], self.a[j] = self.a[j], self.a[i]
        if self.u is not None:
            self.u[i], self.u[j] = self.u[j], self.u[i]
            for r in self.u_inv:
                r[i], r[j] = r[j], r[i]

    def add_row(self, target, source, q):
        """row_target += q·row_source"""
        a = self.a
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        if self.u is not None:
            self.u[target] = [x + q * y for x, y in zip(self.u[target], self.u[source])]
            for r in self.u_inv:
                r[source] -= q * r[target]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        if self.u is not None:
            self.u[i] = [-x for x in self.u[i]]
            for r in self.u_inv:
                r[i] = -r[i]

    def swap_cols(self, i, j):
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        if self.v is not None:
            for r in self.v:
                r[i], r[j] = r[j], r[i]
            self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def add_col(self, target, source, q):
        """col_target += q·col_source"""
        for r in self.a:
            r[target] += q * r[source]
        if self.v is not None:
            for r in self.v:
                r[target] += q * r[source]
            self.v_inv[source] = [
                x - q * y for x, y in zip(self.v_inv[source], self.v_inv[target])
            ]

    def _smallest(self, t):
        best = None
        if self.diagonal:
            for k in range(t, min(self.m, self.n)):
                x = abs(self.a[k][k])
                if x and (best is None or x < best[0]):
                    best = (x, k, k)
            return best
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                x = abs(row[j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
                    if x == 1:
                        return best
        return best

    def _non_divisible(self, t, p):
        if self.diagonal:
            for k in range(t + 1, min(self.m, self.n)):
                if self.a[k][k] % p:
                    return k
            return None
        for i in range(t + 1, self.m):
            if any(x % p for x in self.a[i][t + 1 :]):
                return i
        return None

    def run(self):
        a = self.a
        t = 0
        while t < min(self.m, self.n):
            best = self._smallest(t)
            if best is None:
                break
            _, i, j = best
            if i != t:
                self.swap_rows(t, i)
            if j != t:
                self.swap_cols(t, j)
            while True:
                p = a[t][t]
                clean = True
                for i in range(t + 1, self.m):
                    if a[i][t]:
                        q = a[i][t] // p
                        if q:
                            self.add_row(i, t, -q)
                        clean = clean and not a[i][t]
                for j in range(t + 1, self.n):
                    if a[t][j]:
                        q = a[t][j] // p
                        if q:
                            self.add_col(j, t, -q)
                        clean = clean and not a[t][j]
                if not clean:
                    # remainders are smaller than the pivot: move the smallest in
                    cands = [
                        (abs(a[i][t]), 0, i) for i in range(t + 1, self.m) if a[i][t]
                    ]
                    cands += [
                        (abs(a[t][j]), 1, j) for j in range(t + 1, self.n) if a[t][j]
                    ]
                    _, kind, k = min(cands)
                    if kind == 0:
                        self.swap_rows(t, k)
                    else:
                        self.swap_cols(t, k)
                    continue
                bad = self._non_divisible(t, abs(p))
                if bad is None:
                    break
                self.diagonal = False
                self.add_row(t, bad, 1)
            if a[t][t] < 0:
                self.negate_row(t)
            t += 1
        return self


@dataclass(frozen=True)
class SmithForm:
    diagonal: Tuple[int, ...]
    d: IntMatrix
    u: Optional[IntMatrix] = None
    u_inv: Optional[IntMatrix] = None
    v: Optional[IntMatrix] = None
    v_inv: Optional[IntMatrix] = None


def smith_form(matrix: IntMatrix, left=True, right=True) -> SmithForm:
    """Smith normal form with optional transforms (see smith_normal_form)"""
    ws = _SmithWorkspace(matrix, left, right).run()
    as_matrix = lambda rows, k: IntMatrix.from_rows(rows, k)  # noqa
    return SmithForm(
        diagonal=tuple(ws.a[i][i] for i in range(min(ws.m, ws.n))),
        d=IntMatrix.from_rows(ws.a, ws.n),
        u=as_matrix(ws.u, ws.m) if left else None,
        u_inv=as_matrix(ws.u_inv, ws.m) if left else None,
        v=as_matrix(ws.v, ws.n) if right else None,
        v_inv=as_matrix(ws.v_inv, ws.n) if right else None,
    )


def smith_normal_form(matrix: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Computes U, D, V with U·A·V = D.

    D is diagonal with nonnegative entries d₁ | d₂ | …; U and V are
    unimodular. The pivot is always the entry of smallest nonzero absolute
    value, ties going to the lowest (row, column) index.

    Args:
        matrix (IntMatrix): any rectangular integer matrix

    Returns:
        Tuple[IntMatrix, IntMatrix, IntMatrix]: U, D, V
    """
    sf = smith_form(matrix)
    return sf.u, sf.d, sf.v


def integer_kernel(matrix: IntMatrix) -> IntMatrix:
    """Basis (as columns) of {x ∈ ℤⁿ : A·x = 0}"""
    sf = smith_form(matrix, left=False, right=True)
    rank = sum(1 for d in sf.diagonal if d)
    return sf.v.select_columns(list(range(rank, matrix.cols)))


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form"""

    orders: Tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        object.__setattr__(self, "orders", orders)
        seen_free = False
        prev = None
        for d in orders:
            if d < 0 or d == 1:
                raise InputError(f"Invalid invariant factor {d} in {orders}")
            if d == 0:
                seen_free = True
                continue
            if seen_free:
                raise InputError(f"Free summands must come last in {orders}")
            if prev is not None and d % prev:
                raise InputError(f"Invariant factors {orders} do not form a chain")
            prev = d

    @classmethod
    def trivial(cls):
        return cls(())

    @classmethod
    def cyclic(cls, n):
        return cls((n,)) if n != 1 else cls(())

    @property
    def rank(self) -> int:
        """Number of cyclic summands (generators)"""
        return len(self.orders)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.orders if d == 0)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InputError(f"Group {self} is infinite")
        return reduce(lambda a, b: a * b, self.orders, 1)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.is_finite else 0

    def zero(self) -> Vector:
        return (0,) * self.rank

    def generator(self, i) -> Vector:
        return tuple(int(i == j) for j in range(self.rank))

    def normalize(self, x: Sequence[int]) -> Vector:
        if len(x) != self.rank:
            raise InputError(f"Element {tuple(x)} does not live in {self}")
        return reduce_vector(x, self.orders)

    def add(self, x, y) -> Vector:
        return self.normalize([a + b for a, b in zip(x, y)])

    def neg(self, x) -> Vector:
        return self.normalize([-a for a in x])

    def sub(self, x, y) -> Vector:
        return self.normalize([a - b for a, b in zip(x, y)])

    def scale(self, k, x) -> Vector:
        return self.normalize([k * a for a in x])

    def element_order(self, x) -> int:
        x = self.normalize(x)
        if any(d == 0 and a for a, d in zip(x, self.orders)):
            return 0
        return lcm(*(d // gcd(d, a) for a, d in zip(x, self.orders) if d))

    def elements(self) -> Iterator[Vector]:
        """All elements in mixed-radix order (last coordinate fastest)"""
        if not self.is_finite:
            raise InputError(f"Cannot enumerate the infinite group {self}")
        return itertools.product(*(range(d) for d in self.orders))

    def __str__(self):
        if not self.orders:
            return "0"
        return " ⊕ ".join(f"ℤ/{d}" if d else "ℤ" for d in self.orders)


@dataclass(frozen=True)
class GroupMorphism:
    """Homomorphism given by the images of the source generators (columns)"""

    source: AbelianGroup
    target: AbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if (m.rows, m.cols) != (self.target.rank, self.source.rank):
            raise InputError(
                f"Matrix of shape {m.rows}x{m.cols} cannot map {self.source} "
                f"to {self.target}"
            )
        m = m.reduce_rows(self.target.orders)
        object.__setattr__(self, "matrix", m)
        for j, d in enumerate(self.source.orders):
            if d and any(
                (d * x) % b if b else d * x
                for x, b in zip(m.column(j), self.target.orders)
            ):
                raise InputError(
                    f"Map {self.source} -> {self.target} is not well-defined on "
                    f"generator {j}"
                )

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.rank))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, IntMatrix.zeros(target.rank, source.rank))

    def __call__(self, x: Sequence[int]) -> Vector:
        return self.target.normalize(self.matrix.apply(self.source.normalize(x)))

    def compose(self, other):
        """self ∘ other"""
        if other.target != self.source:
            raise InputError("Morphisms are not composable")
        return GroupMorphism(other.source, self.target, self.matrix @ other.matrix)

    def _same_ends(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise InputError("Morphisms have different source or target")

    def __add__(self, other):
        self._same_ends(other)
        return GroupMorphism(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        self._same_ends(other)
        return GroupMorphism(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self):
        return GroupMorphism(self.source, self.target, -self.matrix)

    def is_zero(self):
        return self.matrix.is_zero()


def _solve_congruences(unknown_orders, rows):
    """Solves affine congruences over unknowns xⱼ ∈ ℤ/mⱼ.

    Each row is (coefficients, modulus, rhs) meaning Σ cⱼxⱼ ≡ rhs (mod q),
    q = 0 for an exact equation. Rows must be well-defined on residues
    (cⱼ·mⱼ ≡ 0 mod q). The solution lattice is refined one row at a time.

    Returns:
        (particular solution or None, generators of the homogeneous solutions)
    """
    n = len(unknown_orders)
    x0 = [0] * n
    gens = [list(g) for g in IntMatrix.identity(n).entries if any(g)]
    gens = [g for g in gens if any(reduce_vector(g, unknown_orders))]
    for coeffs, q, rhs in rows:
        c0 = sum(c * x for c, x in zip(coeffs, x0) if c) - rhs
        new = []
        piv, pv = None, 0
        for g in gens:
            v = sum(c * x for c, x in zip(coeffs, g) if c)
            if q:
                v %= q
            if v == 0:
                new.append(g)
                continue
            if piv is None:
                piv, pv = g, v
                continue
            d, s, t = xgcd(pv, v)
            new.append(_combine(v // d, piv, -(pv // d), g))
            piv, pv = _combine(s, piv, t, g), d
        if piv is None:
            if c0 % q if q else c0:
                return None, []
        else:
            g2 = gcd(pv, q)
            if c0 % g2:
                return None, []
            if c0 % q if q else c0:
                d, s, _ = xgcd(pv, q)
                x0 = _combine(1, x0, -(c0 // d) * s, piv)
            if q:
                new.append([(q // g2) * x for x in piv])
        x0 = list(reduce_vector(x0, unknown_orders))
        gens = []
        for g in new:
            g = list(reduce_vector(g, unknown_orders))
            if any(g):
                gens.append(g)
    return tuple(x0), [tuple(g) for g in gens]


def _sparse_combine(a, u, b, v):
    out = {}
    for k, x in u.items():
        out[k] = a * x
    for k, y in v.items():
        out[k] = out.get(k, 0) + b * y
    return {k: x for k, x in out.items() if x}


def _tidy(row, pivot, modulus):
    """Reduces the entries after the pivot modulo ``modulus``"""
    if not modulus:
        return row
    out = {}
    for k, x in row.items():
        if k != pivot:
            x %= modulus
        if x:
            out[k] = x
    return out


def _lattice_echelon(vectors, n, modulus=0):
    """Sparse echelon basis of the lattice spanned by vectors in ℤⁿ.

    Rows are dicts keyed by column and stored by pivot column. With a
    modulus E the lattice must contain E·ℤⁿ; entries after the pivot are
    then kept reduced modulo E. Rows whose pivot is 1 are finally cleared
    from every other row (Hermite form on those columns).
    """
    basis = {}
    if modulus:
        basis = {i: {i: modulus} for i in range(n)}
    for v in vectors:
        row = {i: x for i, x in enumerate(v) if x}
        if modulus:
            row = _tidy(row, None, modulus)
        while row:
            col = min(row)
            a = row[col]
            b = basis.get(col)
            if b is None:
                if a < 0:
                    row = {k: -x for k, x in row.items()}
                basis[col] = _tidy(row, col, modulus)
                break
            p = b[col]
            if a % p == 0:
                row = _sparse_combine(1, row, -(a // p), b)
            else:
                d, s, t = xgcd(p, a)
                basis[col] = _tidy(_sparse_combine(s, b, t, row), col, modulus)
                row = _sparse_combine(p // d, row, -(a // d), b)
            row.pop(col, None)
            if modulus:
                row = _tidy(row, None, modulus)

    ones = sorted(c for c, r in basis.items() if r[c] == 1)
    oneset = set(ones)

    def clear(c):
        row = basis[c]
        for k in sorted(k for k in row if k != c and k in oneset):
            q = row.get(k)
            if q:
                row = _tidy(_sparse_combine(1, row, -q, basis[k]), c, modulus)
        basis[c] = row

    for c in reversed(ones):
        clear(c)
    for c in list(basis):
        if c not in oneset:
            clear(c)
    return basis


@dataclass(frozen=True)
class Presentation:
    """A group given by generators and relations, in canonical coordinates.

    ``to_canonical`` maps generator coordinates (ℤⁿ) to elements of
    ``group``; ``from_canonical`` sends each canonical generator back to a
    representative combination of the original generators.
    """

    group: AbelianGroup
    to_canonical: IntMatrix
    from_canonical: IntMatrix

    @property
    def generator_count(self) -> int:
        return self.to_canonical.cols

    def encode(self, vector: Sequence[int]) -> Vector:
        return self.group.normalize(self.to_canonical.apply(vector))

    def lift(self, element: Sequence[int]) -> Vector:
        return self.from_canonical.apply(element)


def present(n: int, relations: Iterable[Sequence[int]], orders=None) -> Presentation:
    """Canonical form of ℤⁿ modulo the span of ``relations``.

    Generators killed by a relation with leading coefficient 1 are
    eliminated first; the Smith form then only sees the remaining ones.

    Args:
        n (int): number of generators
        relations (Iterable): relation vectors of length n
        orders (Sequence[int], optional): known orders of the generators
            (0 = unknown or infinite); added as relations

    Returns:
        Presentation: group with coordinate maps
    """
    relations = [tuple(r) for r in relations]
    if any(len(r) != n for r in relations):
        raise InputError(f"Relations must have length {n}")
    if orders is not None:
        relations += [
            tuple(d * int(i == j) for j in range(n)) for i, d in enumerate(orders) if d
        ]
    modulus = 0
    if orders is not None and n and all(orders):
        modulus = lcm(*orders)
    basis = _lattice_echelon(relations, n, modulus)

    kept = [c for c in range(n) if c not in basis or basis[c][c] != 1]
    position = {c: k for k, c in enumerate(kept)}
    rel = IntMatrix.from_columns(
        [[basis[c].get(j, 0) for j in kept] for c in kept if c in basis], len(kept)
    )
    sf = smith_form(rel, left=True, right=False)
    diag = list(sf.diagonal) + [0] * (len(kept) - len(sf.diagonal))
    keep = [i for i, d in enumerate(diag) if d != 1]
    group = AbelianGroup(tuple(diag[i] for i in keep))

    # generator c ≡ −Σ basis[c][j]·g_j when its pivot is 1
    reduction = [[0] * n for _ in kept]
    for c in range(n):
        if c in position:
            reduction[position[c]][c] = 1
        else:
            for j, x in basis[c].items():
                if j != c:
                    reduction[position[j]][c] = -x
    to_c = (sf.u.select_rows(keep) @ IntMatrix.from_rows(reduction, n)).reduce_rows(
        group.orders
    )
    back = sf.u_inv.select_columns(keep)
    from_rows = [[0] * len(keep) for _ in range(n)]
    for c, k in position.items():
        from_rows[c] = list(back.row(k))
    from_c = IntMatrix.from_rows(from_rows, len(keep))
    if modulus:
        from_c = from_c.reduce_rows([modulus] * n)
    return Presentation(group, to_c, from_c)


def _subgroup_of(orders, gens):
    """Group generated by ``gens`` inside ⊕ ℤ/orders.

    Returns:
        (Presentation over the generator list, lift matrix whose columns are
        the canonical generators in ambient coordinates)
    """
    gens = [reduce_vector(g, orders) for g in gens]
    s = len(gens)
    gen_orders = [
        (lcm(*(d // gcd(d, a) for a, d in zip(g, orders) if d)) if all(
            d or not a for a, d in zip(g, orders)) else 0)
        for g in gens
    ]
    rows = [
        (tuple(g[i] for g in gens), d, 0) for i, d in enumerate(orders)
    ]
    _, rels = _solve_congruences(gen_orders, rows)
    pres = present(s, rels, gen_orders)
    gmat = IntMatrix.from_columns(gens, len(orders))
    lift = (gmat @ pres.from_canonical).reduce_rows(orders)
    return pres, lift


def subgroup(group: AbelianGroup, generators: Sequence[Sequence[int]]):
    """Subgroup generated by elements, with its inclusion morphism"""
    pres, lift = _subgroup_of(group.orders, generators)
    return pres.group, GroupMorphism(pres.group, group, lift)


def kernel(f: GroupMorphism) -> Tuple[AbelianGroup, GroupMorphism]:
    rows = [
        (f.matrix.row(i), d, 0) for i, d in enumerate(f.target.orders)
    ]
    _, gens = _solve_congruences(f.source.orders, rows)
    return subgroup(f.source, gens)


def image_factorization(f: GroupMorphism):
    """f = incl ∘ surj with surj onto the image"""
    pres, lift = _subgroup_of(f.target.orders, f.matrix.columns)
    image_group = pres.group
    incl = GroupMorphism(image_group, f.target, lift)
    surj = GroupMorphism(f.source, image_group, pres.to_canonical)
    return image_group, incl, surj


def image(f: GroupMorphism) -> Tuple[AbelianGroup, GroupMorphism]:
    image_group, incl, _ = image_factorization(f)
    return image_group, incl


def cokernel(f: GroupMorphism) -> Tuple[AbelianGroup, GroupMorphism]:
    pres = present(f.target.rank, f.matrix.columns, f.target.orders)
    return pres.group, GroupMorphism(f.target, pres.group, pres.to_canonical)


def solve(f: GroupMorphism, y: Sequence[int]) -> Optional[Vector]:
    """Some x with f(x) = y, or None when y is not in the image"""
    y = f.target.normalize(y)
    rows = [
        (f.matrix.row(i), d, y[i]) for i, d in enumerate(f.target.orders)
    ]
    x, _ = _solve_congruences(f.source.orders, rows)
    return None if x is None else f.source.normalize(x)


def is_injective(f: GroupMorphism) -> bool:
    return kernel(f)[0].is_trivial


def is_surjective(f: GroupMorphism) -> bool:
    if f.target.is_finite:
        return image(f)[0].order == f.target.order
    return cokernel(f)[0].is_trivial


def is_isomorphism(f: GroupMorphism) -> bool:
    return is_injective(f) and is_surjective(f)


def contains(incl: GroupMorphism, y: Sequence[int]) -> bool:
    return solve(incl, y) is not None


def same_subgroup(a: GroupMorphism, b: GroupMorphism) -> bool:
    """Whether two inclusions have the same image in a common target"""
    if a.target != b.target:
        raise InputError("Subgroups of different groups")
    return all(contains(b, c) for c in a.matrix.columns) and all(
        contains(a, c) for c in b.matrix.columns
    )


def direct_sum(*groups: AbelianGroup):
    """Canonical direct sum with injections and projections"""
    orders = [d for g in groups for d in g.orders]
    pres = present(len(orders), [], orders)
    injections, projections = [], []
    offset = 0
    for g in groups:
        idx = list(range(offset, offset + g.rank))
        injections.append(
            GroupMorphism(g, pres.group, pres.to_canonical.select_columns(idx))
        )
        projections.append(
            GroupMorphism(pres.group, g, pres.from_canonical.select_rows(idx))
        )
        offset += g.rank
    return pres.group, injections, projections


@dataclass(frozen=True)
class ZTensor:
    """ℤ-tensor product of groups over the basis of generator words.

    The word (i₁, …, iₖ) stands for g_{i₁} ⊗ … ⊗ g_{iₖ}, of order
    gcd of the factor orders; words are indexed in mixed-radix order.
    """

    factors: Tuple[AbelianGroup, ...]
    presentation: Presentation

    @property
    def group(self) -> AbelianGroup:
        return self.presentation.group

    @property
    def words(self) -> List[Tuple[int, ...]]:
        return list(itertools.product(*(range(g.rank) for g in self.factors)))

    def word_index(self, word: Sequence[int]) -> int:
        idx = 0
        for w, g in zip(word, self.factors):
            idx = idx * g.rank + w
        return idx

    def word_vector(self, *elements) -> List[int]:
        """Coordinates of a pure tensor in the word basis"""
        out = [0] * self.presentation.generator_count
        for word in itertools.product(
            *([(i, a) for i, a in enumerate(e) if a] for e in elements)
        ):
            coeff = 1
            for _, a in word:
                coeff *= a
            out[self.word_index([i for i, _ in word])] += coeff
        return out

    def encode(self, *elements) -> Vector:
        return self.presentation.encode(self.word_vector(*elements))

    def expand(self, element: Sequence[int]):
        """Element as {word: coefficient}"""
        lifted = self.presentation.lift(element)
        words = self.words
        return {words[k]: c for k, c in enumerate(lifted) if c}


def ztensor(*groups: AbelianGroup) -> ZTensor:
    ranks = [g.rank for g in groups]
    word_orders = []
    for word in itertools.product(*(range(r) for r in ranks)):
        word_orders.append(reduce(gcd, (g.orders[i] for g, i in zip(groups, word)), 0))
    pres = present(len(word_orders), [], word_orders)
    return ZTensor(tuple(groups), pres)


def ztensor_map(source: ZTensor, target: ZTensor, *maps: GroupMorphism):
    """f₁ ⊗ … ⊗ fₖ between ℤ-tensor products"""
    if len(maps) != len(source.factors) or len(maps) != len(target.factors):
        raise InputError("One map per tensor factor is required")
    words = maps[0].matrix
    for f in maps[1:]:
        words = words.kron(f.matrix)
    to_target = target.presentation.to_canonical
    matrix = to_target @ words @ source.presentation.from_canonical
    return GroupMorphism(source.group, target.group, matrix)


@dataclass(frozen=True)
class CongruenceSystem:
    """Linear congruences Σ cⱼxⱼ ≡ bᵢ (mod qᵢ) on the entries of an unknown matrix.

    Unknowns are the entries of a target.rank × source.rank matrix in
    row-major order; ``rhs`` None means homogeneous.
    """

    coefficients: IntMatrix
    moduli: Tuple[int, ...]
    rhs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if len(self.moduli) != self.coefficients.rows:
            raise InputError("One modulus per congruence is required")
        if self.rhs is not None and len(self.rhs) != self.coefficients.rows:
            raise InputError("One right-hand side per congruence is required")


class HomGroup(object):
    """Solutions of a constrained Hom problem.

    ``group`` is the group of homogeneous solutions; the solution set is
    ``particular + group`` (empty when ``is_empty``).
    """

    def __init__(self, source, target, group, lift, particular):
        self.source = source
        self.target = target
        self.group = group
        self._lift = lift
        self._particular = particular
        self._unknown_orders = [d for d in target.orders for _ in range(source.rank)]

    @property
    def is_empty(self) -> bool:
        return self._particular is None

    def _to_morphism(self, vector) -> GroupMorphism:
        ns = self.source.rank
        rows = [vector[i * ns : (i + 1) * ns] for i in range(self.target.rank)]
        return GroupMorphism(self.source, self.target, IntMatrix.from_rows(rows, ns))

    @property
    def particular(self) -> Optional[GroupMorphism]:
        if self._particular is None:
            return None
        return self._to_morphism(self._particular)

    def elements(self) -> Iterator[Vector]:
        return self.group.elements()

    def decode(self, element: Sequence[int]) -> GroupMorphism:
        if self.is_empty:
            raise InputError("The constraint system has no solution")
        element = self.group.normalize(element)
        v = self._lift.apply(element)
        return self._to_morphism([a + b for a, b in zip(self._particular, v)])

    def morphisms(self) -> Iterator[GroupMorphism]:
        for e in self.elements():
            yield self.decode(e)

    def encode(self, morphism: GroupMorphism) -> Vector:
        """Group element decoding to ``morphism``"""
        if self.is_empty:
            raise InputError("The constraint system has no solution")
        flat = [x for r in morphism.matrix.entries for x in r]
        diff = [a - b for a, b in zip(flat, self._particular)]
        rows = [
            (self._lift.row(i), d, diff[i]) for i, d in enumerate(self._unknown_orders)
        ]
        x, _ = _solve_congruences(self.group.orders, rows)
        if x is None:
            raise InputError("Morphism is not a solution of the constraint system")
        return self.group.normalize(x)


def constrained_hom_group(
    source: AbelianGroup,
    target: AbelianGroup,
    constraints: Sequence[CongruenceSystem] = (),
) -> HomGroup:
    """Group of morphisms source → target satisfying linear congruences.

    Well-definedness on the source relations is always imposed; the given
    systems add further (possibly affine) conditions on the matrix entries.

    Raises:
        InputError: on shape mismatch or congruences that are not defined on
        residues
    """
    ns, nt = source.rank, target.rank
    unknown_orders = [d for d in target.orders for _ in range(ns)]
    rows = []
    for j, dj in enumerate(source.orders):
        if not dj:
            continue
        for i, bi in enumerate(target.orders):
            coeffs = [0] * (ns * nt)
            coeffs[i * ns + j] = dj
            rows.append((tuple(coeffs), bi, 0))
    for system in constraints:
        if system.coefficients.cols != ns * nt:
            raise InputError(
                f"Constraint over {system.coefficients.cols} unknowns, "
                f"expected {ns * nt}"
            )
        rhs = system.rhs or (0,) * system.coefficients.rows
        for coeffs, q, b in zip(system.coefficients.entries, system.moduli, rhs):
            for c, m in zip(coeffs, unknown_orders):
                if m and q and (c * m) % q or (m and not q and c):
                    raise InputError("Congruence is not defined on residues")
            rows.append((coeffs, q, b))
    particular, gens = _solve_congruences(unknown_orders, rows)
    pres, lift = _subgroup_of(unknown_orders, gens)
    return HomGroup(source, target, pres.group, lift, particular)
