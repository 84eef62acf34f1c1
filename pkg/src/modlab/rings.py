"""Finite rings as structure constants, algebras and algebra corpora"""

import itertools
import random
from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from sympy import factorint

from modlab import EnumerationRefused, InputError, RingAxiomError
from modlab.linalg import (
    AbelianGroup,
    GroupMorphism,
    IntMatrix,
    Presentation,
    Vector,
    present,
    reduce_vector,
    solve,
    subgroup,
)

DEFAULT_ENUMERATION_BOUND = 64
DEFAULT_ORDER_BOUND = 64

Table = Sequence[Sequence[Sequence[int]]]


@dataclass(frozen=True)
class FiniteRing:
    """Associative unital ring on a finite abelian group.

    ``mul[i][j]`` holds the coordinates of gᵢ·gⱼ for the additive
    generators gᵢ. Associativity and the unit laws are checked on all
    generator triples and pairs unless ``check`` is false.
    """

    additive: AbelianGroup
    mul: Tuple[Tuple[Vector, ...], ...]
    unit: Vector
    name: str = field(default="", compare=False)
    check: bool = field(default=True, compare=False, repr=False)
    _left: tuple = field(init=False, compare=False, repr=False, default=())

    def __post_init__(self):
        add = self.additive
        n = add.rank
        if not add.is_finite:
            raise InputError("Rings must be finite")
        if len(self.mul) != n or any(len(r) != n for r in self.mul):
            raise InputError(f"Structure constants must form a {n}x{n} table")
        if any(len(c) != n for r in self.mul for c in r):
            raise InputError(f"Structure constants must be vectors of length {n}")
        mul = tuple(tuple(add.normalize(c) for c in r) for r in self.mul)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "unit", add.normalize(self.unit))
        for i, j in itertools.product(range(n), repeat=2):
            c = mul[i][j]
            if add.scale(add.orders[i], c) != add.zero() or add.scale(
                add.orders[j], c
            ) != add.zero():
                raise RingAxiomError(
                    f"Product g{i}·g{j} is not compatible with the additive orders",
                    (i, j),
                )
        left = tuple(
            IntMatrix.from_columns([mul[i][j] for j in range(n)], n) for i in range(n)
        )
        object.__setattr__(self, "_left", left)
        if self.check:
            self.check_axioms()

    def check_axioms(self):
        n = self.rank
        gens = [self.additive.generator(i) for i in range(n)]
        for i in range(n):
            if self.mul_elements(self.unit, gens[i]) != gens[i]:
                raise RingAxiomError(f"Unit is not a left identity on g{i}", (i,))
            if self.mul_elements(gens[i], self.unit) != gens[i]:
                raise RingAxiomError(f"Unit is not a right identity on g{i}", (i,))
        for i, j, k in itertools.product(range(n), repeat=3):
            lhs = self.mul_elements(self.mul[i][j], gens[k])
            rhs = self.mul_elements(gens[i], self.mul[j][k])
            if lhs != rhs:
                raise RingAxiomError(
                    f"Multiplication is not associative on (g{i}, g{j}, g{k})",
                    (i, j, k),
                )
        return True

    @property
    def rank(self) -> int:
        return self.additive.rank

    @property
    def order(self) -> int:
        return self.additive.order

    @property
    def characteristic(self) -> int:
        return self.additive.element_order(self.unit)

    @property
    def is_commutative(self) -> bool:
        n = self.rank
        return all(self.mul[i][j] == self.mul[j][i] for i in range(n) for j in range(i))

    def zero(self) -> Vector:
        return self.additive.zero()

    def one(self) -> Vector:
        return self.unit

    def generator(self, i) -> Vector:
        return self.additive.generator(i)

    def scalar(self, k: int) -> Vector:
        return self.additive.scale(k, self.unit)

    def elements(self):
        return self.additive.elements()

    def add(self, x, y) -> Vector:
        return self.additive.add(x, y)

    def sub(self, x, y) -> Vector:
        return self.additive.sub(x, y)

    def left_matrix(self, x) -> IntMatrix:
        """Matrix of y ↦ x·y"""
        n = self.rank
        acc = IntMatrix.zeros(n, n)
        for i, a in enumerate(x):
            if a:
                acc = acc + self._left[i].scale(a)
        return acc.reduce_rows(self.additive.orders)

    def right_matrix(self, x) -> IntMatrix:
        """Matrix of y ↦ y·x"""
        n = self.rank
        cols = [self.mul_elements(self.generator(j), x) for j in range(n)]
        return IntMatrix.from_columns(cols, n)

    def left_morphism(self, x) -> GroupMorphism:
        return GroupMorphism(self.additive, self.additive, self.left_matrix(x))

    def right_morphism(self, x) -> GroupMorphism:
        return GroupMorphism(self.additive, self.additive, self.right_matrix(x))

    def mul_elements(self, x, y) -> Vector:
        acc = [0] * self.rank
        for i, a in enumerate(x):
            if a:
                for k, v in enumerate(self._left[i].apply(y)):
                    acc[k] += a * v
        return self.additive.normalize(acc)

    def is_central(self, x) -> bool:
        return all(
            self.mul_elements(x, g) == self.mul_elements(g, x)
            for g in (self.generator(i) for i in range(self.rank))
        )

    def __str__(self):
        return self.name or f"ring of order {self.order}"


def ring_from_basis(orders, table: Table, unit, name="", check=True):
    """Ring on ⊕ ℤ/orders given in an arbitrary basis, moved to canonical form.

    Returns:
        (FiniteRing, Presentation of the additive group over the given basis)
    """
    n = len(orders)
    if len(table) != n or any(len(r) != n for r in table) or len(unit) != n:
        raise InputError("Structure constant shapes do not match the additive orders")
    for i, j in itertools.product(range(n), repeat=2):
        c = table[i][j]
        if len(c) != n:
            raise InputError(f"Structure constant c[{i}][{j}] has wrong length")
        for d in (orders[i], orders[j]):
            if any(reduce_vector([d * x for x in c], orders)):
                raise RingAxiomError(
                    f"Product g{i}·g{j} is not compatible with the additive orders",
                    (i, j),
                )
    pres = present(n, [], list(orders))
    group = pres.group
    lifts = [pres.from_canonical.column(a) for a in range(group.rank)]

    def old_product(x, y):
        acc = [0] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k, c in enumerate(table[i][j]):
                            acc[k] += a * b * c
        return acc

    mul = tuple(
        tuple(pres.encode(old_product(x, y)) for y in lifts) for x in lifts
    )
    ring = FiniteRing(group, mul, pres.encode(unit), name=name, check=check)
    return ring, pres


def make_ring(orders, mul: Table, unit, name="") -> FiniteRing:
    """Builds a ring from structure constants.

    Orders need not be in invariant-factor form; the ring is moved to the
    canonical basis of its additive group when they are not.

    Raises:
        InputError: on shape mismatch
        RingAxiomError: naming the failing generator triple or pair
    """
    orders = tuple(int(d) for d in orders)
    if any(d < 2 for d in orders):
        raise InputError(f"Additive orders {orders} must be finite and at least 2")
    try:
        AbelianGroup(orders)
    except InputError:
        return ring_from_basis(orders, mul, unit, name)[0]
    if len(mul) != len(orders) or any(len(r) != len(orders) for r in mul):
        raise InputError("Structure constant shapes do not match the additive orders")
    return FiniteRing(
        AbelianGroup(orders),
        tuple(tuple(tuple(int(x) for x in c) for c in r) for r in mul),
        tuple(int(x) for x in unit),
        name=name,
    )


@dataclass(frozen=True)
class RingMorphism:
    source: FiniteRing
    target: FiniteRing
    map: GroupMorphism

    def __post_init__(self):
        if self.map.source != self.source.additive or self.map.target != (
            self.target.additive
        ):
            raise InputError("Ring morphism map does not match the rings")
        if self.map(self.source.unit) != self.target.unit:
            raise RingAxiomError("Ring morphism does not preserve the unit")
        n = self.source.rank
        images = [self.map(self.source.generator(i)) for i in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            if self.map(self.source.mul[i][j]) != self.target.mul_elements(
                images[i], images[j]
            ):
                raise RingAxiomError(
                    f"Ring morphism does not preserve the product g{i}·g{j}", (i, j)
                )

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring, GroupMorphism.identity(ring.additive))

    def __call__(self, x) -> Vector:
        return self.map(x)

    def compose(self, other):
        """self ∘ other"""
        return RingMorphism(other.source, self.target, self.map.compose(other.map))


@dataclass(frozen=True)
class Algebra:
    """A ring S together with its structure morphism σ: R → S"""

    ring: FiniteRing
    structure_map: RingMorphism
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.structure_map.target != self.ring:
            raise InputError("Structure map does not land in the algebra")

    @classmethod
    def trivial(cls, ring):
        return cls(ring, RingMorphism.identity(ring), name=ring.name)

    @property
    def base(self) -> FiniteRing:
        return self.structure_map.source

    def sigma(self, r) -> Vector:
        return self.structure_map(r)

    def __str__(self):
        return self.name or str(self.ring)


@dataclass(frozen=True)
class AlgebraArrow:
    source: Algebra
    target: Algebra
    morphism: RingMorphism
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.morphism.source != self.source.ring or (
            self.morphism.target != self.target.ring
        ):
            raise InputError("Arrow morphism does not match its algebras")
        if self.morphism.compose(self.source.structure_map) != (
            self.target.structure_map
        ):
            raise InputError(f"Arrow {self.name} does not commute with structure maps")


@dataclass(frozen=True)
class AlgebraMorphismCorpus:
    base: FiniteRing
    objects: Tuple[Algebra, ...]
    arrows: Tuple[AlgebraArrow, ...]

    def __post_init__(self):
        for S in self.objects:
            if S.base != self.base:
                raise InputError(f"Algebra {S} is not over the corpus base ring")
        for a in self.arrows:
            if a.source not in self.objects or a.target not in self.objects:
                raise InputError(f"Arrow {a.name} leaves the corpus")


@dataclass(frozen=True)
class RingIdeal:
    """Additive subgroup of a ring closed under the multiplications of ``side``"""

    ring: FiniteRing
    side: str
    group: AbelianGroup
    inclusion: GroupMorphism
    elements: frozenset = field(compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def generators(self) -> List[Vector]:
        return self.inclusion.matrix.columns

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"{self.side} ideal <{gens}> of order {self.order}"


SIDES = ("left", "right", "two-sided")


def ideal_generated_by(ring: FiniteRing, elements, side="two-sided") -> RingIdeal:
    if side not in SIDES:
        raise InputError(f"Unknown ideal side {side}")
    gens = [ring.generator(i) for i in range(ring.rank)]
    spanning = []
    for x in elements:
        spanning.append(x)
        if side in ("right", "two-sided"):
            spanning += [ring.mul_elements(x, g) for g in gens]
        if side in ("left", "two-sided"):
            spanning += [ring.mul_elements(g, x) for g in gens]
        if side == "two-sided":
            spanning += [
                ring.mul_elements(ring.mul_elements(g, x), h)
                for g in gens
                for h in gens
            ]
    group, incl = subgroup(ring.additive, spanning)
    members = frozenset(incl(e) for e in group.elements())
    return RingIdeal(ring, side, group, incl, members)


def enumerate_ideals(
    ring: FiniteRing, side="right", bound=DEFAULT_ENUMERATION_BOUND
) -> List[RingIdeal]:
    """All ideals of the given side, ordered by (order, sorted elements).

    Raises:
        EnumerationRefused: if the ring order exceeds ``bound``
    """
    if ring.order > bound:
        raise EnumerationRefused(f"{side} ideals of {ring}", ring.order, bound)
    zero = ideal_generated_by(ring, [], side)
    found = {zero.elements: zero}
    queue = [zero]
    elements = list(ring.elements())
    while queue:
        current = queue.pop(0)
        for x in elements:
            if x in current.elements:
                continue
            nxt = ideal_generated_by(ring, current.generators + [x], side)
            if nxt.elements not in found:
                found[nxt.elements] = nxt
                queue.append(nxt)
    return sorted(found.values(), key=lambda i: (i.order, sorted(i.elements)))


def _induced(pres_src: Presentation, pres_tgt: Presentation, old: IntMatrix):
    """Matrix between canonical bases of a map given on the original bases"""
    return pres_tgt.to_canonical @ old @ pres_src.from_canonical


def _identity_presentation(ring: FiniteRing) -> Presentation:
    ident = IntMatrix.identity(ring.rank)
    return Presentation(ring.additive, ident, ident)


def cyclic_ring(n: int) -> FiniteRing:
    if n < 2:
        raise InputError(f"Cyclic ring needs n ≥ 2, got {n}")
    return make_ring((n,), [[(1,)]], (1,), name=f"ℤ/{n}")


def _product_data(r1: FiniteRing, r2: FiniteRing):
    n1, n2 = r1.rank, r2.rank
    n = n1 + n2
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j in itertools.product(range(n1), repeat=2):
        table[i][j][:n1] = r1.mul[i][j]
    for i, j in itertools.product(range(n2), repeat=2):
        table[n1 + i][n1 + j][n1:] = r2.mul[i][j]
    unit = list(r1.unit) + list(r2.unit)
    name = f"{r1}×{r2}"
    return ring_from_basis(r1.additive.orders + r2.additive.orders, table, unit, name)


def product_ring(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    return _product_data(r1, r2)[0]


def product_projections(r1: FiniteRing, r2: FiniteRing):
    """The product ring with its two projection morphisms"""
    ring, pres = _product_data(r1, r2)
    n1 = r1.rank
    f = pres.from_canonical
    p1 = f.select_rows(list(range(n1)))
    p2 = f.select_rows(list(range(n1, n1 + r2.rank)))
    return ring, (
        RingMorphism(ring, r1, GroupMorphism(ring.additive, r1.additive, p1)),
        RingMorphism(ring, r2, GroupMorphism(ring.additive, r2.additive, p2)),
    )


def _entry_ring(base: FiniteRing, positions, d, name):
    """Matrices over ``base`` supported on ``positions`` (closed under products)"""
    n0 = base.rank
    index = {p: k for k, p in enumerate(positions)}
    n = len(positions) * n0
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (a, b), (c, e) in itertools.product(positions, repeat=2):
        if b != c:
            continue
        for i, j in itertools.product(range(n0), repeat=2):
            target = index[(a, e)] * n0
            row = table[index[(a, b)] * n0 + i][index[(c, e)] * n0 + j]
            row[target : target + n0] = base.mul[i][j]
    unit = [0] * n
    for a in range(d):
        unit[index[(a, a)] * n0 : index[(a, a)] * n0 + n0] = base.unit
    orders = base.additive.orders * len(positions)
    return ring_from_basis(orders, table, unit, name)[0]


def matrix_ring(base: FiniteRing, d: int) -> FiniteRing:
    if d < 1:
        raise InputError(f"Matrix size must be at least 1, got {d}")
    positions = [(a, b) for a in range(d) for b in range(d)]
    return _entry_ring(base, positions, d, f"M{d}({base})")


def triangular_ring(base: FiniteRing, d: int) -> FiniteRing:
    if d < 1:
        raise InputError(f"Matrix size must be at least 1, got {d}")
    positions = [(a, b) for a in range(d) for b in range(a, d)]
    return _entry_ring(base, positions, d, f"T{d}({base})")


def check_group_table(table) -> int:
    """Validates a group multiplication table with identity 0; returns its order"""
    n = len(table)
    if n < 1 or any(len(r) != n for r in table):
        raise InputError("Group table must be square and nonempty")
    if any(not 0 <= x < n for r in table for x in r):
        raise InputError("Group table entries out of range")
    if any(sorted(r) != list(range(n)) for r in table):
        raise InputError("Group table rows must be permutations")
    if any(table[0][x] != x or table[x][0] != x for x in range(n)):
        raise InputError("Element 0 must be the identity of the group table")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InputError(f"Group table is not associative on ({a}, {b}, {c})")
    return n


def group_ring(base: FiniteRing, table, name=None, bound=DEFAULT_ORDER_BOUND):
    order = check_group_table(table)
    if base.order ** order > bound:
        raise InputError(
            f"Group ring of order {base.order ** order} exceeds bound {bound}"
        )
    n0 = base.rank
    n = order * n0
    grid = [[[0] * n for _ in range(n)] for _ in range(n)]
    for h, k in itertools.product(range(order), repeat=2):
        hk = table[h][k]
        for i, j in itertools.product(range(n0), repeat=2):
            grid[h * n0 + i][k * n0 + j][hk * n0 : hk * n0 + n0] = base.mul[i][j]
    unit = list(base.unit) + [0] * (n - n0)
    name = name or f"{base}[G{order}]"
    return ring_from_basis(base.additive.orders * order, grid, unit, name)[0]


def _polynomial_data(base: FiniteRing, coefficients, name=None):
    k = len(coefficients)
    if k < 1:
        raise InputError("Polynomial quotient needs a monic polynomial of degree ≥ 1")
    # powers[s] = integer coefficients of x^s in the basis 1, x, …, x^(k-1)
    powers = [[int(s == e) for e in range(k)] for s in range(k)]
    for s in range(k, 2 * k - 1):
        prev = powers[s - 1]
        shifted = [0] + prev[:-1]
        top = prev[-1]
        powers.append([a - top * int(c) for a, c in zip(shifted, coefficients)])
    n0 = base.rank
    n = k * n0
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for e, f in itertools.product(range(k), repeat=2):
        for i, j in itertools.product(range(n0), repeat=2):
            row = table[e * n0 + i][f * n0 + j]
            for t, coeff in enumerate(powers[e + f]):
                if coeff:
                    for m, c in enumerate(base.mul[i][j]):
                        row[t * n0 + m] += coeff * c
    unit = list(base.unit) + [0] * (n - n0)
    if name is None:
        terms = " + ".join(
            f"{c}x^{e}" for e, c in enumerate(coefficients) if c
        )
        name = f"{base}[x]/(x^{k}{' + ' + terms if terms else ''})"
    return ring_from_basis(base.additive.orders * k, table, unit, name)


def polynomial_quotient_ring(base: FiniteRing, coefficients, name=None):
    """base[x]/(x^k + c_{k-1}x^{k-1} + … + c₀) with integer coefficients cₑ"""
    return _polynomial_data(base, coefficients, name)[0]


def generalized_triangular_ring(a: int, m: int, b: int) -> FiniteRing:
    """[[ℤ/a, ℤ/m], [0, ℤ/b]] with m | gcd(a, b)"""
    if min(a, m, b) < 2 or gcd(a, b) % m:
        raise InputError(f"Need m | gcd(a, b) with entries ≥ 2, got ({a}, {m}, {b})")
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    z = (0, 0, 0)
    table = [
        [e[0], e[1], z],
        [z, z, e[1]],
        [z, z, e[2]],
    ]
    name = f"[[ℤ/{a}, ℤ/{m}], [0, ℤ/{b}]]"
    return ring_from_basis((a, m, b), table, (1, 0, 1), name)[0]


def _quotient_data(ring: FiniteRing, ideal: RingIdeal, name=None):
    if ideal.side != "two-sided":
        raise InputError("Quotient rings need a two-sided ideal")
    pres = present(ring.rank, ideal.generators, ring.additive.orders)
    lifts = [pres.from_canonical.column(a) for a in range(pres.group.rank)]
    mul = tuple(
        tuple(pres.encode(ring.mul_elements(x, y)) for y in lifts) for x in lifts
    )
    name = name or f"{ring}/I{ideal.order}"
    quotient = FiniteRing(pres.group, mul, pres.encode(ring.unit), name=name)
    proj_map = GroupMorphism(ring.additive, quotient.additive, pres.to_canonical)
    proj = RingMorphism(ring, quotient, proj_map)
    return quotient, proj


def quotient_ring(ring: FiniteRing, ideal: RingIdeal, name=None):
    """R/I with its quotient morphism"""
    return _quotient_data(ring, ideal, name)


def hypothesis_status(ring: FiniteRing) -> str:
    """Which standing assumption makes comparison maps isomorphisms over ``ring``"""
    if ring.is_commutative:
        return "commutative"
    factors = factorint(ring.characteristic)
    if len(factors) == 1 and list(factors.values()) == [1]:
        return "prime-field"
    if all(e == 1 for e in factors.values()):
        return "squarefree-characteristic"
    return "unknown"


def _factor_through(src: Algebra, tgt: Algebra) -> Optional[RingMorphism]:
    """The morphism src → tgt under the base, if src's structure map is onto"""
    sigma = src.structure_map.map
    cols = []
    for a in range(src.ring.rank):
        pre = solve(sigma, src.ring.generator(a))
        if pre is None:
            return None
        cols.append(tgt.sigma(pre))
    try:
        return RingMorphism(
            src.ring,
            tgt.ring,
            GroupMorphism(
                src.ring.additive,
                tgt.ring.additive,
                IntMatrix.from_columns(cols, tgt.ring.rank),
            ),
        )
    except InputError:
        return None


def algebra_corpus(
    ring: FiniteRing,
    order_bound: int,
    seed: int = 0,
    enumeration_bound=DEFAULT_ENUMERATION_BOUND,
) -> AlgebraMorphismCorpus:
    """Finite family of R-algebras with morphisms between them.

    Contains R itself, the quotients by proper nonzero two-sided ideals,
    products of those within ``order_bound`` and, for commutative R, the
    dual numbers R[ε] with non-injective and non-surjective arrows.
    """
    if order_bound < ring.order:
        raise InputError(
            f"Order bound {order_bound} is smaller than the ring order {ring.order}"
        )
    rng = random.Random(seed)
    base = Algebra.trivial(ring)
    objects = [base]
    arrows = []

    try:
        ideals = enumerate_ideals(ring, "two-sided", enumeration_bound)
    except EnumerationRefused:
        ideals = []
    quotients = []
    for ideal in ideals:
        if ideal.order in (1, ring.order):
            continue
        q, proj = quotient_ring(ring, ideal, name=f"{ring}/I{len(quotients) + 1}")
        S = Algebra(q, proj, name=q.name)
        objects.append(S)
        quotients.append((ideal, S))
        arrows.append(AlgebraArrow(base, S, proj, name=f"{ring} -> {S}"))
    for (ia, sa), (ib, sb) in itertools.permutations(quotients, 2):
        if ia.elements < ib.elements:
            u = _factor_through(sa, sb)
            if u is not None:
                arrows.append(AlgebraArrow(sa, sb, u, name=f"{sa} -> {sb}"))

    factors = [base] + [S for _, S in quotients]
    for s1, s2 in itertools.combinations_with_replacement(factors, 2):
        if s1.ring.order * s2.ring.order > order_bound:
            continue
        prod, (p1, p2) = product_projections(s1.ring, s2.ring)
        diag = IntMatrix.from_columns(
            [
                s1.sigma(ring.generator(i)) + s2.sigma(ring.generator(i))
                for i in range(ring.rank)
            ],
            s1.ring.rank + s2.ring.rank,
        )
        _, pres = _product_data(s1.ring, s2.ring)
        sigma = RingMorphism(
            ring,
            prod,
            GroupMorphism(ring.additive, prod.additive, pres.to_canonical @ diag),
        )
        P = Algebra(prod, sigma, name=f"{s1}×{s2}")
        objects.append(P)
        arrows.append(AlgebraArrow(base, P, sigma, name=f"{ring} -> {P}"))
        arrows.append(AlgebraArrow(P, s1, p1, name=f"{P} -> {s1}"))
        arrows.append(AlgebraArrow(P, s2, p2, name=f"{P} -> {s2}"))

    if ring.is_commutative and ring.order**2 <= order_bound:
        dual, pres = _polynomial_data(ring, (0, 0), name=f"{ring}[ε]")
        n0 = ring.rank
        ident = IntMatrix.identity(n0)
        zero = IntMatrix.zeros(n0, n0)
        src = _identity_presentation(ring)
        incl = _induced(src, pres, ident.vstack(zero))
        sigma = RingMorphism(
            ring, dual, GroupMorphism(ring.additive, dual.additive, incl)
        )
        D = Algebra(dual, sigma, name=dual.name)
        objects.append(D)
        arrows.append(AlgebraArrow(base, D, sigma, name=f"{ring} -> {D}"))
        back = _induced(pres, src, ident.hstack(zero))
        arrows.append(
            AlgebraArrow(
                D,
                base,
                RingMorphism(
                    dual, ring, GroupMorphism(dual.additive, ring.additive, back)
                ),
                name=f"{D} -> {ring} (ε ↦ 0)",
            )
        )
        candidates = [x for x in ring.elements() if any(x)]
        for a in sorted(rng.sample(candidates, min(2, len(candidates)))):
            scale = ring.left_matrix(a)
            old = IntMatrix.block_diagonal(ident, scale)
            endo = _induced(pres, pres, old)
            u = RingMorphism(
                dual, dual, GroupMorphism(dual.additive, dual.additive, endo)
            )
            arrows.append(AlgebraArrow(D, D, u, name=f"{D}: ε ↦ {list(a)}ε"))

    return AlgebraMorphismCorpus(ring, tuple(objects), tuple(arrows))


def opposite_ring(ring: FiniteRing) -> FiniteRing:
    """Same additive group, product x∘y = y·x"""
    n = ring.rank
    mul = tuple(tuple(ring.mul[j][i] for j in range(n)) for i in range(n))
    return FiniteRing(ring.additive, mul, ring.unit, name=f"{ring}^op")
