"""Finitely presented modules over finite rings.

A module is an abelian group in canonical form together with one action
matrix per additive generator of the ring; the action of any ring element
follows by linearity. Bimodules carry a second family of matrices for the
right action, possibly by a different ring.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from modlab import InputError, ModuleAxiomError
from modlab.linalg import (
    AbelianGroup,
    CongruenceSystem,
    GroupMorphism,
    IntMatrix,
    Presentation,
    Vector,
    constrained_hom_group,
    contains,
    image_factorization,
    is_surjective,
    kernel,
    present,
    solve,
    subgroup,
)
from modlab.linalg import direct_sum as group_direct_sum
from modlab.rings import (
    DEFAULT_ENUMERATION_BOUND,
    Algebra,
    FiniteRing,
    RingIdeal,
    enumerate_ideals,
    ideal_generated_by,
    opposite_ring,
)

SIDES = ("left", "right", "bi")


def _combination(matrices, x, orders, n) -> IntMatrix:
    acc = IntMatrix.zeros(n, n)
    for m, a in zip(matrices, x):
        if a:
            acc = acc + m.scale(a)
    return acc.reduce_rows(orders)


def _check_action(ring: FiniteRing, matrices, group: AbelianGroup, right: bool):
    n = group.rank
    orders = group.orders
    kind = "right" if right else "left"
    for i, d in enumerate(ring.additive.orders):
        if not matrices[i].scale(d).reduce_rows(orders).is_zero():
            raise ModuleAxiomError(
                f"{kind} action of g{i} is not compatible with its additive order",
                (i,),
            )
    ident = IntMatrix.identity(n).reduce_rows(orders)
    if _combination(matrices, ring.unit, orders, n) != ident:
        raise ModuleAxiomError(f"Unit does not act as the identity ({kind})")
    for i in range(ring.rank):
        for j in range(ring.rank):
            lhs = _combination(matrices, ring.mul[i][j], orders, n)
            if right:
                rhs = matrices[j] @ matrices[i]
            else:
                rhs = matrices[i] @ matrices[j]
            if lhs != rhs.reduce_rows(orders):
                raise ModuleAxiomError(
                    f"{kind} action is not associative on (g{i}, g{j})", (i, j)
                )


@dataclass(frozen=True)
class ModulePres:
    """Module over a finite ring given by action matrices.

    ``action`` holds the left action for left and bimodules and the right
    action for right modules; ``right_action`` is the right action of a
    bimodule, by ``right_ring`` (defaults to ``ring``).
    """

    ring: FiniteRing
    side: str
    additive: AbelianGroup
    action: Tuple[IntMatrix, ...]
    right_action: Tuple[IntMatrix, ...] = ()
    right_ring: Optional[FiniteRing] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.side not in SIDES:
            raise InputError(f"Unknown module side {self.side}")
        if not self.additive.is_finite:
            raise InputError("Modules must be finite")
        if self.side == "bi":
            if self.right_ring is None:
                object.__setattr__(self, "right_ring", self.ring)
        elif self.right_action or self.right_ring is not None:
            raise InputError(f"A {self.side} module has a single action")
        n = self.additive.rank
        families = [("action", self.ring)]
        if self.side == "bi":
            families.append(("right_action", self.right_ring))
        for attr, ring in families:
            orders = self.additive.orders
            mats = tuple(m.reduce_rows(orders) for m in getattr(self, attr))
            if len(mats) != ring.rank:
                raise InputError(
                    f"Expected {ring.rank} action matrices, got {len(mats)}"
                )
            for i, m in enumerate(mats):
                if (m.rows, m.cols) != (n, n):
                    raise InputError(f"Action matrix {i} must be {n}x{n}")
                try:
                    GroupMorphism(self.additive, self.additive, m)
                except InputError as e:
                    raise ModuleAxiomError(
                        f"Action matrix {i} is not a group endomorphism: {e}", (i,)
                    )
            object.__setattr__(self, attr, mats)
        if self.side == "bi":
            _check_action(self.ring, self.action, self.additive, right=False)
            _check_action(self.right_ring, self.right_action, self.additive, right=True)
            orders = self.additive.orders
            for i, a in enumerate(self.action):
                for j, b in enumerate(self.right_action):
                    if (a @ b).reduce_rows(orders) != (b @ a).reduce_rows(orders):
                        raise ModuleAxiomError(
                            f"Left action of g{i} and right action of g{j} do not "
                            "commute",
                            (i, j),
                        )
        else:
            _check_action(
                self.ring, self.action, self.additive, right=self.side == "right"
            )

    @property
    def rank(self) -> int:
        return self.additive.rank

    @property
    def order(self) -> int:
        return self.additive.order

    @property
    def is_zero(self) -> bool:
        return self.additive.is_trivial

    @property
    def left_ring(self) -> Optional[FiniteRing]:
        return self.ring if self.side in ("left", "bi") else None

    @property
    def acting_right_ring(self) -> Optional[FiniteRing]:
        if self.side == "right":
            return self.ring
        return self.right_ring if self.side == "bi" else None

    @property
    def left_matrices(self) -> Tuple[IntMatrix, ...]:
        return self.action if self.side in ("left", "bi") else ()

    @property
    def right_matrices(self) -> Tuple[IntMatrix, ...]:
        if self.side == "right":
            return self.action
        return self.right_action

    def left_matrix(self, r) -> IntMatrix:
        if self.left_ring is None:
            raise InputError("Module has no left action")
        return _combination(self.left_matrices, r, self.additive.orders, self.rank)

    def right_matrix(self, r) -> IntMatrix:
        if self.acting_right_ring is None:
            raise InputError("Module has no right action")
        return _combination(self.right_matrices, r, self.additive.orders, self.rank)

    def act_left(self, r, m) -> Vector:
        return self.additive.normalize(self.left_matrix(r).apply(m))

    def act_right(self, m, r) -> Vector:
        return self.additive.normalize(self.right_matrix(r).apply(m))

    def all_matrices(self) -> Tuple[IntMatrix, ...]:
        return self.action + self.right_action

    def __str__(self):
        return self.name or f"{self.side} module {self.additive} over {self.ring}"


def module_from_basis(
    ring: FiniteRing,
    side: str,
    orders: Sequence[int],
    action: Sequence[IntMatrix],
    right_action: Sequence[IntMatrix] = (),
    right_ring: Optional[FiniteRing] = None,
    name="",
) -> Tuple[ModulePres, Presentation]:
    """Module on ⊕ ℤ/orders with actions given in that basis, made canonical"""
    pres = present(len(orders), [], list(orders))
    move = lambda m: pres.to_canonical @ m @ pres.from_canonical  # noqa: E731
    module = ModulePres(
        ring,
        side,
        pres.group,
        tuple(move(m) for m in action),
        tuple(move(m) for m in right_action),
        right_ring,
        name=name,
    )
    return module, pres


@dataclass(frozen=True)
class ModuleMorphism:
    """Additive map commuting with every action both modules share"""

    source: ModulePres
    target: ModulePres
    map: GroupMorphism

    def __post_init__(self):
        if self.map.source != self.source.additive or (
            self.map.target != self.target.additive
        ):
            raise InputError("Morphism map does not match its modules")
        shared = False
        f = self.map.matrix
        pairs = []
        if self.source.left_ring is not None and (
            self.source.left_ring == self.target.left_ring
        ):
            pairs += list(zip(self.source.left_matrices, self.target.left_matrices))
            shared = True
        if self.source.acting_right_ring is not None and (
            self.source.acting_right_ring == self.target.acting_right_ring
        ):
            pairs += list(zip(self.source.right_matrices, self.target.right_matrices))
            shared = True
        if not shared:
            raise InputError("Modules share no action side over a common ring")
        orders = self.target.additive.orders
        for k, (a, b) in enumerate(pairs):
            if (f @ a).reduce_rows(orders) != (b @ f).reduce_rows(orders):
                raise InputError(f"Map is not equivariant for action generator {k}")

    @classmethod
    def identity(cls, module):
        return cls(module, module, GroupMorphism.identity(module.additive))

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, GroupMorphism.zero(source.additive, target.additive))

    def __call__(self, m) -> Vector:
        return self.map(m)

    def compose(self, other):
        """self ∘ other"""
        return ModuleMorphism(other.source, self.target, self.map.compose(other.map))

    def __add__(self, other):
        return ModuleMorphism(self.source, self.target, self.map + other.map)

    def kernel(self):
        _, incl = kernel(self.map)
        sub = restrict_to_subgroup(self.source, incl)
        return sub, ModuleMorphism(sub, self.source, incl)

    def image(self):
        _, incl, _ = image_factorization(self.map)
        sub = restrict_to_subgroup(self.target, incl)
        return sub, ModuleMorphism(sub, self.target, incl)

    def cokernel(self):
        return quotient_module(self.target, self.map.matrix.columns)

    def is_injective(self) -> bool:
        return kernel(self.map)[0].is_trivial

    def is_surjective(self) -> bool:
        return is_surjective(self.map)


def restrict_to_subgroup(module: ModulePres, incl: GroupMorphism) -> ModulePres:
    """The submodule structure on an invariant subgroup given by its inclusion"""
    sub = incl.source

    def restrict(m):
        cols = []
        for c in incl.matrix.columns:
            x = solve(incl, m.apply(c))
            if x is None:
                raise InputError("Subgroup is not closed under the action")
            cols.append(x)
        return IntMatrix.from_columns(cols, sub.rank)

    return ModulePres(
        module.ring,
        module.side,
        sub,
        tuple(restrict(m) for m in module.action),
        tuple(restrict(m) for m in module.right_action),
        module.right_ring if module.side == "bi" else None,
    )


def submodule(module: ModulePres, generators: Sequence[Sequence[int]]):
    """Submodule generated by elements, with its inclusion"""
    gens = [module.additive.normalize(g) for g in generators]
    mats = module.all_matrices()
    while True:
        _, incl = subgroup(module.additive, gens)
        cols = incl.matrix.columns
        images = [module.additive.normalize(m.apply(c)) for m in mats for c in cols]
        missing = [v for v in images if not contains(incl, v)]
        if not missing:
            break
        gens = cols + missing
    sub = restrict_to_subgroup(module, incl)
    return sub, ModuleMorphism(sub, module, incl)


def quotient_module(module: ModulePres, generators: Sequence[Sequence[int]]):
    """M modulo the submodule spanned (additively) by ``generators``"""
    pres = present(module.rank, [tuple(g) for g in generators], module.additive.orders)
    move = lambda m: pres.to_canonical @ m @ pres.from_canonical  # noqa: E731
    quotient = ModulePres(
        module.ring,
        module.side,
        pres.group,
        tuple(move(m) for m in module.action),
        tuple(move(m) for m in module.right_action),
        module.right_ring if module.side == "bi" else None,
    )
    proj = GroupMorphism(module.additive, quotient.additive, pres.to_canonical)
    return quotient, ModuleMorphism(module, quotient, proj)


def zero_module(ring: FiniteRing, side="left") -> ModulePres:
    empty = tuple(IntMatrix.zeros(0, 0) for _ in range(ring.rank))
    if side == "bi":
        return ModulePres(ring, "bi", AbelianGroup.trivial(), empty, empty, name="0")
    return ModulePres(ring, side, AbelianGroup.trivial(), empty, name="0")


def free_module(ring: FiniteRing, k: int, side="left") -> ModulePres:
    return _free_with_basis(ring, k, side)[0]


def _free_with_basis(ring: FiniteRing, k: int, side="left"):
    if side not in ("left", "right"):
        raise InputError(f"Free modules are left or right, not {side}")
    if k < 0:
        raise InputError(f"Free module rank must be nonnegative, got {k}")
    blocks = IntMatrix.identity(k)
    mats = []
    for i in range(ring.rank):
        g = ring.generator(i)
        m = ring.left_matrix(g) if side == "left" else ring.right_matrix(g)
        mats.append(blocks.kron(m))
    name = f"{ring}^{k}" if side == "left" else f"{ring}^{k} (right)"
    return module_from_basis(ring, side, ring.additive.orders * k, mats, name=name)


def regular_bimodule(ring: FiniteRing) -> ModulePres:
    gens = [ring.generator(i) for i in range(ring.rank)]
    return ModulePres(
        ring,
        "bi",
        ring.additive,
        tuple(ring.left_matrix(g) for g in gens),
        tuple(ring.right_matrix(g) for g in gens),
        name=f"{ring} (bimodule)",
    )


def algebra_bimodule(algebra: Algebra, structure_side="right") -> ModulePres:
    """An algebra S as a bimodule over itself and its base ring R.

    With ``structure_side="right"`` this is the (S, R)-bimodule used for base
    change S ⊗_R M; with ``"left"`` it is the (R, S)-bimodule whose Hom
    groups Hom_R(M, S) are right S-modules.
    """
    S = algebra.ring
    R = algebra.base
    s_gens = [S.generator(i) for i in range(S.rank)]
    r_images = [algebra.sigma(R.generator(i)) for i in range(R.rank)]
    if structure_side == "right":
        return ModulePres(
            S,
            "bi",
            S.additive,
            tuple(S.left_matrix(g) for g in s_gens),
            tuple(S.right_matrix(x) for x in r_images),
            right_ring=R,
            name=f"{algebra} as ({S}, {R})-bimodule",
        )
    if structure_side == "left":
        return ModulePres(
            R,
            "bi",
            S.additive,
            tuple(S.left_matrix(x) for x in r_images),
            tuple(S.right_matrix(g) for g in s_gens),
            right_ring=S,
            name=f"{algebra} as ({R}, {S})-bimodule",
        )
    raise InputError(f"Unknown structure side {structure_side}")


def restrict_scalars(module: ModulePres, algebra: Algebra) -> ModulePres:
    """A module over S as a module over the base ring along σ"""
    R = algebra.base
    if module.ring != algebra.ring or module.side == "bi":
        raise InputError("Restriction needs a one-sided module over the algebra")
    images = [algebra.sigma(R.generator(i)) for i in range(R.rank)]
    if module.side == "left":
        mats = tuple(module.left_matrix(x) for x in images)
    else:
        mats = tuple(module.right_matrix(x) for x in images)
    return ModulePres(R, module.side, module.additive, mats)


def cyclic_module(ring: FiniteRing, ideal, side="left") -> ModulePres:
    """R/I for an ideal (or generating elements) on the matching side"""
    if side not in ("left", "right"):
        raise InputError(f"Cyclic modules are left or right, not {side}")
    if not isinstance(ideal, RingIdeal):
        ideal = ideal_generated_by(ring, [tuple(x) for x in ideal], side)
    if ideal.ring != ring:
        raise InputError("Ideal of another ring")
    if ideal.side not in (side, "two-sided"):
        raise InputError(f"A {side} cyclic module needs a {side} ideal")
    regular = free_module(ring, 1, side)
    quotient, _ = quotient_module(regular, ideal.generators)
    return quotient


def direct_sum(*modules: ModulePres):
    """Direct sum with its injections and projections"""
    if not modules:
        raise InputError("Direct sum of no modules")
    first = modules[0]
    for m in modules[1:]:
        if (m.ring, m.side, m.right_ring) != (first.ring, first.side, first.right_ring):
            raise InputError("Summands must be modules of one kind")
    group, injections, projections = group_direct_sum(*(m.additive for m in modules))
    n = group.rank

    def summed(family):
        out = []
        for mats in zip(*(getattr(m, family) for m in modules)):
            acc = IntMatrix.zeros(n, n)
            for inj, a, pr in zip(injections, mats, projections):
                acc = acc + inj.matrix @ a @ pr.matrix
            out.append(acc)
        return tuple(out)

    total = ModulePres(
        first.ring,
        first.side,
        group,
        summed("action"),
        summed("right_action") if first.side == "bi" else (),
        first.right_ring if first.side == "bi" else None,
    )
    return (
        total,
        [ModuleMorphism(m, total, i) for m, i in zip(modules, injections)],
        [ModuleMorphism(total, m, p) for m, p in zip(modules, projections)],
    )


def opposite_module(module: ModulePres) -> ModulePres:
    """Left R-modules as right R^op-modules and vice versa"""
    if module.side == "bi":
        return ModulePres(
            opposite_ring(module.right_ring),
            "bi",
            module.additive,
            module.right_action,
            module.action,
            opposite_ring(module.ring),
        )
    side = "right" if module.side == "left" else "left"
    return ModulePres(opposite_ring(module.ring), side, module.additive, module.action)


def _common_side(source: ModulePres, target: ModulePres, side=None) -> str:
    candidates = [side] if side else ["left", "right"]
    for s in candidates:
        if s == "left":
            ring = source.left_ring
            if ring is not None and ring == target.left_ring:
                return "left"
        elif s == "right":
            ring = source.acting_right_ring
            if ring is not None and ring == target.acting_right_ring:
                return "right"
        else:
            raise InputError(f"Unknown side {s}")
    raise InputError(f"No common side between {source} and {target}")


def equivariance_system(source_mats, target_mats, source, target) -> CongruenceSystem:
    """Congruences X·A ≡ B·X on the entries of an unknown map X"""
    ns, nt = source.rank, target.rank
    rows, moduli = [], []
    for a_mat, b_mat in zip(source_mats, target_mats):
        for a in range(nt):
            for b in range(ns):
                coeffs = [0] * (nt * ns)
                for q in range(ns):
                    coeffs[a * ns + q] += a_mat[q, b]
                for p in range(nt):
                    coeffs[p * ns + b] -= b_mat[a, p]
                if any(coeffs):
                    rows.append(coeffs)
                    moduli.append(target.orders[a])
    return CongruenceSystem(IntMatrix.from_rows(rows, nt * ns), tuple(moduli))


class ModuleHom(object):
    """Hom group of two modules; ``module`` carries the outer action, if any"""

    def __init__(self, source, target, side, hom_group, module=None):
        self.source = source
        self.target = target
        self.side = side
        self._hom = hom_group
        self.module = module

    @property
    def group(self) -> AbelianGroup:
        return self._hom.group

    @property
    def order(self) -> int:
        return self.group.order

    def elements(self):
        return self._hom.elements()

    def decode(self, element) -> ModuleMorphism:
        return ModuleMorphism(self.source, self.target, self._hom.decode(element))

    def encode(self, morphism) -> Vector:
        return self._hom.encode(getattr(morphism, "map", morphism))

    def morphisms(self):
        for e in self.elements():
            yield self.decode(e)

    def generators(self) -> List[ModuleMorphism]:
        return [self.decode(self.group.generator(i)) for i in range(self.group.rank)]


def _outer_module(hom, ring, side, transform) -> ModulePres:
    group = hom.group
    mats = []
    for t in range(ring.rank):
        cols = []
        for a in range(group.rank):
            f = hom._hom.decode(group.generator(a))
            cols.append(hom.encode(transform(t, f)))
        mats.append(IntMatrix.from_columns(cols, group.rank))
    return ModulePres(ring, side, group, tuple(mats))


def hom_module(source: ModulePres, target: ModulePres, side=None) -> ModuleHom:
    """Hom over the common ring of two modules.

    Raises:
        InputError: if the modules share no side over a common ring
    """
    side = _common_side(source, target, side)
    if side == "left":
        system = equivariance_system(
            source.left_matrices, target.left_matrices, source.additive, target.additive
        )
    else:
        system = equivariance_system(
            source.right_matrices,
            target.right_matrices,
            source.additive,
            target.additive,
        )
    hom = ModuleHom(
        source,
        target,
        side,
        constrained_hom_group(source.additive, target.additive, [system]),
    )

    def post(mats):
        return lambda t, f: GroupMorphism(f.source, f.target, mats[t] @ f.matrix)

    def pre(mats):
        return lambda t, f: GroupMorphism(f.source, f.target, f.matrix @ mats[t])

    if side == "left" and target.side == "bi":
        hom.module = _outer_module(
            hom, target.right_ring, "right", post(target.right_action)
        )
    elif side == "right" and target.side == "bi":
        hom.module = _outer_module(hom, target.ring, "left", post(target.action))
    elif side == "left" and source.side == "bi":
        hom.module = _outer_module(
            hom, source.right_ring, "left", pre(source.right_action)
        )
    elif side == "right" and source.side == "bi":
        hom.module = _outer_module(hom, source.ring, "right", pre(source.action))
    return hom


@dataclass(frozen=True)
class TensorProduct:
    """A ⊗ B presented on the words gᵢ ⊗ hⱼ (index i·rank(B) + j)"""

    first: AbelianGroup
    second: AbelianGroup
    presentation: Presentation
    module: Optional[ModulePres] = None
    base: Optional[FiniteRing] = None

    @property
    def group(self) -> AbelianGroup:
        return self.presentation.group

    def word_index(self, i, j) -> int:
        return i * self.second.rank + j

    def word_vector(self, a, b) -> List[int]:
        out = [0] * (self.first.rank * self.second.rank)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i * self.second.rank + j] += x * y
        return out

    def encode(self, a, b) -> Vector:
        """Class of the pure tensor a ⊗ b"""
        return self.presentation.encode(self.word_vector(a, b))

    def expand(self, element):
        """Element as {(i, j): coefficient} over the words"""
        lifted = self.presentation.lift(element)
        nb = self.second.rank
        return {(k // nb, k % nb): c for k, c in enumerate(lifted) if c}

    def word_morphism(self, target: AbelianGroup, images) -> GroupMorphism:
        """Morphism out of the tensor product given by the images of the words"""
        words = IntMatrix.from_columns(images, target.rank)
        return GroupMorphism(
            self.group, target, words @ self.presentation.from_canonical
        )


def _tensor_outer(pres, first, second) -> Optional[ModulePres]:
    move = lambda m: pres.to_canonical @ m @ pres.from_canonical  # noqa: E731
    ident_a = IntMatrix.identity(first.rank) if first is not None else None
    ident_b = IntMatrix.identity(second.rank) if second is not None else None
    left = ()
    right = ()
    if first is not None and first.left_ring is not None:
        left = tuple(move(m.kron(ident_b)) for m in first.left_matrices)
    if second is not None and second.acting_right_ring is not None:
        right = tuple(move(ident_a.kron(m)) for m in second.right_matrices)
    if left and right:
        return ModulePres(
            first.left_ring, "bi", pres.group, left, right, second.acting_right_ring
        )
    if left:
        return ModulePres(first.left_ring, "left", pres.group, left)
    if right:
        return ModulePres(second.acting_right_ring, "right", pres.group, right)
    return None


def _as_parts(x):
    if isinstance(x, ModulePres):
        return x.additive, x
    return x, None


def tensor_over_R(right: ModulePres, left: ModulePres) -> TensorProduct:
    """N ⊗_R M for a right module N and a left module M.

    The outer left action of N and right action of M, when present, pass to
    the tensor product.

    Raises:
        InputError: if the right ring of N is not the left ring of M
    """
    R = right.acting_right_ring
    if R is None or left.left_ring is None or R != left.left_ring:
        raise InputError("Tensor product needs a right and a left module over one ring")
    nr, nl = right.rank, left.rank
    orders = [gcd(a, b) for a in right.additive.orders for b in left.additive.orders]
    relations = []
    for b_mat, a_mat in zip(right.right_matrices, left.left_matrices):
        for i in range(nr):
            for j in range(nl):
                v = [0] * (nr * nl)
                for a in range(nr):
                    x = b_mat[a, i]
                    if x:
                        v[a * nl + j] += x
                for b in range(nl):
                    x = a_mat[b, j]
                    if x:
                        v[i * nl + b] -= x
                if any(v):
                    relations.append(v)
    pres = present(nr * nl, relations, orders)
    outer = _tensor_outer(
        pres,
        right if right.side == "bi" else None,
        left if left.side == "bi" else None,
    )
    return TensorProduct(right.additive, left.additive, pres, outer, R)


def tensor_over_Z(a, b) -> TensorProduct:
    """A ⊗_ℤ B for groups or modules; A's left and B's right action survive"""
    ga, ma = _as_parts(a)
    gb, mb = _as_parts(b)
    orders = [gcd(x, y) for x in ga.orders for y in gb.orders]
    pres = present(len(orders), [], orders)
    outer = _tensor_outer(pres, ma, mb) if (ma or mb) else None
    return TensorProduct(ga, gb, pres, outer, None)


def tensor_map(f, g, source: TensorProduct, target: TensorProduct) -> GroupMorphism:
    """f ⊗ g between two tensor products"""
    f = getattr(f, "map", f)
    g = getattr(g, "map", g)
    if (f.source, g.source) != (source.first, source.second) or (
        f.target,
        g.target,
    ) != (target.first, target.second):
        raise InputError("Maps do not match the tensor factors")
    words = f.matrix.kron(g.matrix)
    matrix = (
        target.presentation.to_canonical @ words @ source.presentation.from_canonical
    )
    return GroupMorphism(source.group, target.group, matrix)


def base_change(algebra: Algebra, module: ModulePres) -> ModulePres:
    """S ⊗_R M as a left S-module"""
    return tensor_over_R(algebra_bimodule(algebra, "right"), module).module


def dual_module(module: ModulePres) -> ModulePres:
    """Hom_R(M, R) with the action coming from R on the other side"""
    ring = module.left_ring or module.acting_right_ring
    return hom_module(module, regular_bimodule(ring)).module


def module_generators(module: ModulePres) -> List[Vector]:
    """Elements generating the module, picked greedily in enumeration order"""
    gens = []
    _, incl = submodule(module, [])
    for x in module.additive.elements():
        if not contains(incl.map, x):
            gens.append(x)
            _, incl = submodule(module, gens)
            if incl.source.order == module.order:
                break
    return gens


def free_cover(module: ModulePres, generators=None):
    """Surjection R^k → M sending the basis to the given generators.

    Raises:
        InputError: if the elements do not generate the module
    """
    if module.side != "left":
        raise InputError("Free covers are built for left modules")
    ring = module.ring
    if generators is None:
        generators = [module.additive.generator(i) for i in range(module.rank)]
    generators = [module.additive.normalize(g) for g in generators]
    free, pres = _free_with_basis(ring, len(generators))
    cols = [
        module.act_left(ring.generator(i), m)
        for m in generators
        for i in range(ring.rank)
    ]
    words = IntMatrix.from_columns(cols, module.rank)
    cover = ModuleMorphism(
        free,
        module,
        GroupMorphism(free.additive, module.additive, words @ pres.from_canonical),
    )
    if not cover.is_surjective():
        raise InputError("Elements do not generate the module")
    return cover


def tor1(right: ModulePres, left: ModulePres, generators=None) -> AbelianGroup:
    """Tor₁(N, M) from the free cover of M on ``generators``"""
    if left.is_zero:
        return AbelianGroup.trivial()
    cover = free_cover(left, generators)
    syzygy, incl = cover.kernel()
    tk = tensor_over_R(right, syzygy)
    tf = tensor_over_R(right, cover.source)
    ident = GroupMorphism.identity(right.additive)
    return kernel(tensor_map(ident, incl, tk, tf))[0]


def projective_section(module: ModulePres) -> Optional[ModuleMorphism]:
    """A section of the standard free cover, or None if M is not projective"""
    if module.is_zero:
        return ModuleMorphism.zero(module, module)
    cover = free_cover(module)
    free = cover.source
    equivariance = equivariance_system(
        module.left_matrices, free.left_matrices, module.additive, free.additive
    )
    ns, nf = module.rank, free.rank
    rows, moduli, rhs = [], [], []
    pi = cover.map.matrix
    for a in range(ns):
        for b in range(ns):
            coeffs = [0] * (nf * ns)
            for p in range(nf):
                coeffs[p * ns + b] = pi[a, p]
            rows.append(coeffs)
            moduli.append(module.additive.orders[a])
            rhs.append(int(a == b))
    splitting = CongruenceSystem(
        IntMatrix.from_rows(rows, nf * ns), tuple(moduli), tuple(rhs)
    )
    solutions = constrained_hom_group(
        module.additive, free.additive, [equivariance, splitting]
    )
    if solutions.is_empty:
        return None
    return ModuleMorphism(module, free, solutions.particular)


def is_projective(module: ModulePres) -> bool:
    return projective_section(module) is not None


def enumerate_right_ideals(ring: FiniteRing, bound=DEFAULT_ENUMERATION_BOUND):
    """Right ideals of R as submodules of R_R with their inclusions.

    Raises:
        EnumerationRefused: if the ring order exceeds ``bound``
    """
    regular = free_module(ring, 1, "right")
    out = []
    for ideal in enumerate_ideals(ring, "right", bound):
        out.append(submodule(regular, ideal.generators))
    return out


def is_flat(module: ModulePres, bound=DEFAULT_ENUMERATION_BOUND) -> bool:
    """Tor₁(R/I, M) = 0 for every right ideal I.

    Raises:
        EnumerationRefused: if the ring order exceeds ``bound``
    """
    ring = module.left_ring
    if ring is None:
        raise InputError("Flatness is tested for left modules")
    for ideal in enumerate_ideals(ring, "right", bound):
        quotient = cyclic_module(ring, ideal, "right")
        if not tor1(quotient, module).is_trivial:
            return False
    return True
