from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlab import InputError
from modlab.linalg import (
    AbelianGroup,
    CongruenceSystem,
    GroupMorphism,
    IntMatrix,
    cokernel,
    constrained_hom_group,
    direct_sum,
    image,
    integer_kernel,
    is_injective,
    is_isomorphism,
    is_surjective,
    kernel,
    present,
    same_subgroup,
    smith_normal_form,
    solve,
    subgroup,
    ztensor,
    ztensor_map,
)


def _diagonal(d):
    return [d[i, i] for i in range(min(d.rows, d.cols))]


def test_smith_normal_form_example():
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    u, d, v = smith_normal_form(a)

    assert _diagonal(d) == [2, 4]
    assert d.is_diagonal()
    assert u @ a @ v == d
    assert abs(u.determinant()) == 1
    assert abs(v.determinant()) == 1


def test_smith_normal_form_rectangular_and_zero():
    a = IntMatrix.from_rows([[0, 0, 0], [0, 0, 0]])
    u, d, v = smith_normal_form(a)
    assert d == a

    b = IntMatrix.from_rows([[4, 6, 10]])
    u, d, v = smith_normal_form(b)
    assert _diagonal(d) == [2]
    assert u @ b @ v == d


matrices = st.integers(min_value=1, max_value=6).flatmap(
    lambda rows: st.integers(min_value=1, max_value=6).flatmap(
        lambda cols: st.lists(
            st.lists(
                st.integers(min_value=-50, max_value=50), min_size=cols, max_size=cols
            ),
            min_size=rows,
            max_size=rows,
        )
    )
)


@settings(max_examples=1000, deadline=None)
@given(matrices)
def test_smith_normal_form_properties(rows):
    a = IntMatrix.from_rows(rows)
    u, d, v = smith_normal_form(a)

    assert u @ a @ v == d
    assert d.is_diagonal()
    assert abs(u.determinant()) == 1
    assert abs(v.determinant()) == 1
    diag = _diagonal(d)
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        if x == 0:
            assert y == 0
        else:
            assert y % x == 0


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_normal_form_is_idempotent(rows):
    _, d, _ = smith_normal_form(IntMatrix.from_rows(rows))
    u, again, v = smith_normal_form(d)

    assert again == d
    assert u @ d @ v == d


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_integer_kernel_is_annihilated(rows):
    a = IntMatrix.from_rows(rows)
    k = integer_kernel(a)

    assert k.rows == a.cols
    assert (a @ k).is_zero()


def test_abelian_group_invariants():
    with pytest.raises(InputError):
        AbelianGroup((4, 2))
    with pytest.raises(InputError):
        AbelianGroup((0, 2))
    with pytest.raises(InputError):
        AbelianGroup((1,))

    g = AbelianGroup((2, 4))
    assert g.order == 8
    assert g.exponent == 4
    assert str(g) == "ℤ/2 ⊕ ℤ/4"
    assert str(AbelianGroup.trivial()) == "0"
    assert len(list(g.elements())) == 8
    assert g.element_order((1, 2)) == 2
    assert g.normalize((3, -1)) == (1, 3)


def test_present_canonical_form():
    p = present(2, [(2, 0), (0, 3)])
    assert p.group.orders == (6,)
    assert p.group.order == 6

    q = present(3, [(1, 1, 0)], (4, 4, 2))
    assert q.group.orders == (2, 4)
    # every generator survives the trip back
    for i in range(q.group.rank):
        g = q.group.generator(i)
        assert q.encode(q.lift(g)) == g


def test_kernel_image_cokernel():
    z4 = AbelianGroup.cyclic(4)
    double = GroupMorphism(z4, z4, IntMatrix.from_rows([[2]]))

    assert kernel(double)[0].orders == (2,)
    assert image(double)[0].orders == (2,)
    assert cokernel(double)[0].orders == (2,)
    assert not is_injective(double)
    assert not is_surjective(double)
    assert is_isomorphism(GroupMorphism.identity(z4))


def test_morphism_must_be_well_defined():
    z2 = AbelianGroup.cyclic(2)
    z4 = AbelianGroup.cyclic(4)
    with pytest.raises(InputError):
        GroupMorphism(z2, z4, IntMatrix.from_rows([[1]]))
    assert GroupMorphism(z2, z4, IntMatrix.from_rows([[2]]))((1,)) == (2,)


def test_solve():
    z4 = AbelianGroup.cyclic(4)
    double = GroupMorphism(z4, z4, IntMatrix.from_rows([[2]]))

    assert solve(double, (1,)) is None
    x = solve(double, (2,))
    assert double(x) == (2,)


def test_subgroup_and_same_subgroup():
    g = AbelianGroup((2, 4))
    h, incl = subgroup(g, [(0, 2)])
    assert h.orders == (2,)
    _, other = subgroup(g, [(0, 2), (0, 0)])
    assert same_subgroup(incl, other)
    _, bigger = subgroup(g, [(1, 0)])
    assert not same_subgroup(incl, bigger)


def test_direct_sum_and_tensor():
    z2, z3, z4 = (AbelianGroup.cyclic(n) for n in (2, 3, 4))

    assert direct_sum(z2, z2)[0].orders == (2, 2)
    assert direct_sum(z2, z3)[0].orders == (6,)
    assert ztensor(z4, AbelianGroup.cyclic(6)).group.orders == (2,)
    assert ztensor(z2, z3).group.is_trivial

    t = ztensor(z4, z4)
    double = GroupMorphism(z4, z4, IntMatrix.from_rows([[2]]))
    ident = GroupMorphism.identity(z4)
    f = ztensor_map(t, t, double, ident)
    assert kernel(f)[0].orders == (2,)


def test_constrained_hom_group():
    z2 = AbelianGroup.cyclic(2)
    z4 = AbelianGroup.cyclic(4)
    hom = constrained_hom_group(z4, z2)
    assert hom.group.order == 2
    assert len(list(hom.morphisms())) == 2

    # x ≡ 1 (mod 2) picks the surjection only
    onto = CongruenceSystem(IntMatrix.from_rows([[1]]), (2,), (1,))
    affine = constrained_hom_group(z4, z2, [onto])
    assert not affine.is_empty
    assert affine.particular((1,)) == (1,)
    assert affine.group.is_trivial

    # 2x ≡ 1 (mod 4) has no solution
    impossible = CongruenceSystem(IntMatrix.from_rows([[2]]), (4,), (1,))
    assert constrained_hom_group(z4, z4, [impossible]).is_empty


def test_hom_group_encode_decode():
    g = AbelianGroup((2, 4))
    hom = constrained_hom_group(g, g)
    assert hom.group.order == 2 * 2 * 2 * 4
    for e in hom.elements():
        assert hom.encode(hom.decode(e)) == hom.group.normalize(e)


def test_constrained_hom_group_single_congruence():
    z4 = AbelianGroup.cyclic(4)
    assert constrained_hom_group(z4, z4).group.orders == (4,)

    # 2x ≡ 0 (mod 4)
    doubling = CongruenceSystem(IntMatrix.from_rows([[2]]), (4,))
    hom = constrained_hom_group(z4, z4, [doubling])
    assert hom.group.orders == (2,)
    assert {f((1,)) for f in hom.morphisms()} == {(0,), (2,)}


GROUP_ORDERS = [(2,), (3,), (4,), (6,), (2, 2), (2, 4), (2, 6), (12,)]


@st.composite
def group_maps(draw):
    source = AbelianGroup(draw(st.sampled_from(GROUP_ORDERS)))
    target = AbelianGroup(draw(st.sampled_from(GROUP_ORDERS)))
    cols = []
    for s in source.orders:
        # images of an element of order s are killed by s
        col = [draw(st.integers(0, t - 1)) * (t // gcd(s, t)) for t in target.orders]
        cols.append(col)
    return GroupMorphism(source, target, IntMatrix.from_columns(cols, target.rank))


@settings(max_examples=200, deadline=None)
@given(group_maps())
def test_kernel_and_image_orders_multiply(f):
    K, incl = kernel(f)
    I, _ = image(f)
    C, proj = cokernel(f)

    assert K.order * I.order == f.source.order
    assert I.order * C.order == f.target.order
    assert f.compose(incl).is_zero()
    assert proj.compose(f).is_zero()
    # the kernel inclusion hits exactly the elements sent to zero
    zeros = {x for x in f.source.elements() if f(x) == f.target.zero()}
    assert {incl(k) for k in K.elements()} == zeros


@settings(max_examples=200, deadline=None)
@given(group_maps())
def test_solve_finds_exactly_the_image(f):
    hit = {f(x) for x in f.source.elements()}
    for y in f.target.elements():
        x = solve(f, y)
        if y in hit:
            assert f(x) == y
        else:
            assert x is None
