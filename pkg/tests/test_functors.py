import pytest

from modlab import InputError
from modlab.functors import (
    QcFunctor,
    RKernelElement,
    SchemeFunctor,
    TruncTensorAlgebra,
    certified_injectivity,
    check_linearity,
    check_naturality,
    comparison_map,
    double_dual_eval,
    dual_coincidence,
    hom_scheme_to_qc,
    induced_transformation,
    r_extension,
    r_extension_direct,
    star_double_dual_eval,
    symmetry_check,
    unit_counit_roundtrip,
)
from modlab.linalg import GroupMorphism, IntMatrix, is_isomorphism, same_subgroup
from modlab.modules import cyclic_module, free_module, zero_module
from modlab.rings import (
    Algebra,
    FiniteRing,
    RingMorphism,
    algebra_corpus,
    enumerate_ideals,
)


@pytest.fixture
def z4_base(z4):
    return Algebra.trivial(z4)


@pytest.fixture
def z2_algebra(z4, z2):
    sigma = RingMorphism(
        z4, z2, GroupMorphism(z4.additive, z2.additive, IntMatrix.from_rows([[1]]))
    )
    return Algebra(z2, sigma, name="ℤ/2")


@pytest.fixture
def z2_pair(z2_over_z4_right, z2_over_z4):
    return z2_over_z4_right, z2_over_z4


@pytest.fixture
def twice(z2_over_z4, z4):
    """ℤ/2 → ℤ/4, 1 ↦ 2"""
    return GroupMorphism(z2_over_z4.additive, z4.additive, IntMatrix.from_rows([[2]]))


def _proper_cyclic(ring, side):
    for ideal in enumerate_ideals(ring, side):
        if ideal.order not in (1, ring.order):
            yield cyclic_module(ring, ideal, side)


def test_r_extension_of_z2_over_z4(z2_pair):
    ext = r_extension(*z2_pair)
    assert ext.group.orders == (2,)
    assert is_isomorphism(comparison_map(ext))
    assert hom_scheme_to_qc(*z2_pair).group == ext.group


def test_r_extension_of_zero_modules(z4, z2_over_z4, z2_over_z4_right):
    assert r_extension(zero_module(z4, "right"), z2_over_z4).group.is_trivial
    assert r_extension(z2_over_z4_right, zero_module(z4)).group.is_trivial


def test_r_extension_of_free_module(z2_over_z4_right, z4_free):
    ext = r_extension(z2_over_z4_right, z4_free)
    assert ext.group.order == z2_over_z4_right.order
    assert is_isomorphism(comparison_map(ext))


def test_kernel_elements(z2_pair):
    ext = r_extension(*z2_pair)
    assert [e.is_zero() for e in ext.elements()] == [True, False]
    phi = ext.generators()[0]
    assert RKernelElement.from_ambient(ext, phi.ambient) == phi
    assert ext.difference(phi.ambient) == ext.difference.target.zero()


def test_comparison_map_over_triangular_ring(t2f2):
    rights = list(_proper_cyclic(t2f2, "right")) + [free_module(t2f2, 1, "right")]
    for right in rights:
        for left in _proper_cyclic(t2f2, "left"):
            ext = r_extension(right, left)
            assert is_isomorphism(comparison_map(ext))


def test_symmetry(z2_pair, t2f2):
    assert symmetry_check(*z2_pair)
    right = free_module(t2f2, 1, "right")
    for left in _proper_cyclic(t2f2, "left"):
        assert symmetry_check(right, left)


def test_direct_extension_agrees(z2_pair):
    ext = r_extension(*z2_pair)
    direct = r_extension_direct(*z2_pair)
    assert direct.group.orders == (2,)
    assert same_subgroup(direct.inclusion, ext.inclusion)
    assert direct.confined
    assert sorted(direct.degree_kernels) == [0, 2]


def test_direct_extension_is_stable_in_degree(z2_pair):
    assert r_extension_direct(*z2_pair, 3).group == r_extension_direct(*z2_pair).group


def test_direct_extension_needs_degree_two(z2_pair, z4):
    with pytest.raises(InputError):
        r_extension_direct(*z2_pair, 1)
    zero = r_extension_direct(zero_module(z4, "right"), z2_pair[1])
    assert zero.group.is_trivial


def test_induced_transformation(z2_pair, z4_base, twice):
    ext = r_extension(*z2_pair)
    zero, phi = list(ext.elements())
    assert any(induced_transformation(phi, z4_base, twice))
    assert not any(induced_transformation(zero, z4_base, twice))


def test_induced_transformation_rejects_bad_maps(z2_pair, z4_base, z2_over_z4, z4):
    phi = r_extension(*z2_pair).generators()[0]
    with pytest.raises(InputError):
        bad = GroupMorphism(
            z2_over_z4.additive, z4.additive, IntMatrix.from_rows([[1]])
        )
        induced_transformation(phi, z4_base, bad)


def test_naturality_on_algebra_corpus(z2_pair, z4):
    ext = r_extension(*z2_pair)
    corpus = algebra_corpus(z4, 16, seed=3)
    ok, certificate = check_naturality(ext, corpus)
    assert ok
    assert certificate["arrows"] == len(corpus.arrows)
    assert not certificate["violations"]
    assert certificate["linear"]


def test_naturality_needs_matching_ring(z2_pair, z2):
    ext = r_extension(*z2_pair)
    with pytest.raises(InputError):
        check_naturality(ext, algebra_corpus(z2, 4))


def test_linearity(z2_pair, z4_base, z2_algebra):
    ext = r_extension(*z2_pair)
    assert check_linearity(ext, z4_base)
    assert check_linearity(ext, z2_algebra)


def test_certified_injectivity(z2_pair, t2f2, z4, z2_over_z4_right):
    assert certified_injectivity(*z2_pair)
    assert certified_injectivity(z2_over_z4_right, free_module(z4, 1))
    assert certified_injectivity(zero_module(z4, "right"), z2_pair[1])
    right = free_module(t2f2, 1, "right")
    for left in _proper_cyclic(t2f2, "left"):
        assert certified_injectivity(right, left)


def test_truncated_tensor_algebra(z2_over_z4, z4, twice, z4_base):
    trunc = TruncTensorAlgebra(z2_over_z4, 2)
    assert trunc.patterns() == ["", "0", "00"]
    assert trunc.module.order == 16
    carrier = trunc.algebra.ring
    # rebuilding with the axiom checks on verifies associativity and the unit
    FiniteRing(carrier.additive, carrier.mul, carrier.unit)
    assert trunc.algebra.base == z4
    extended = trunc.extend(twice, z4_base)
    assert extended.compose(trunc.degree_one_inclusion()).map == twice


def test_truncated_tensor_algebra_bounds(z2_over_z4, z2_over_z4_right):
    with pytest.raises(InputError):
        TruncTensorAlgebra(z2_over_z4, 0)
    with pytest.raises(InputError):
        TruncTensorAlgebra(z2_over_z4_right)
    with pytest.raises(InputError):
        TruncTensorAlgebra(z2_over_z4, 1).piece("00")


def test_unit_counit_roundtrip(z2_over_z4_right, z4_base, z2_algebra):
    assert unit_counit_roundtrip(z2_over_z4_right, z4_base)
    assert unit_counit_roundtrip(z2_over_z4_right, z2_algebra)


def test_quasi_coherent_functor(z2_over_z4, z2_over_z4_right, z2_algebra, z4_base):
    qc = QcFunctor(z2_over_z4)
    assert qc.evaluate(z2_algebra).order == 2
    assert qc.evaluate(z2_algebra).ring == z2_algebra.ring
    assert is_isomorphism(qc.global_sections())
    with pytest.raises(InputError):
        QcFunctor(z2_over_z4_right)


def test_scheme_functor(z2_over_z4, z4_base, z2_algebra):
    scheme = SchemeFunctor(z2_over_z4)
    assert scheme.evaluate(z4_base).order == 2
    assert scheme.evaluate(z2_algebra).order == 2


def test_double_duals(z2_over_z4, z2_algebra, z4_base):
    dd = double_dual_eval(z2_over_z4, z2_algebra)
    assert dd.group.orders == (2,)
    assert dd.is_isomorphism
    star = star_double_dual_eval(z2_over_z4, z2_algebra)
    assert star.is_isomorphism
    assert double_dual_eval(z2_over_z4, z4_base).is_isomorphism


def test_double_dual_of_zero_module(z4, z4_base):
    star = star_double_dual_eval(zero_module(z4), z4_base)
    assert star.group.is_trivial


def test_dual_coincidence(z2_over_z4, z4_free, z2_algebra, z4_base):
    assert dual_coincidence(z2_over_z4, z2_algebra)
    assert dual_coincidence(z4_free, z4_base)


def test_kernel_is_the_image_of_the_tensor_product(z2, z4, z6, z2xz2, t2f2):
    checked = 0
    for ring in (z2, z4, z6, z2xz2, t2f2):
        rights = [free_module(ring, 1, "right")]
        ideals = enumerate_ideals(ring, "right")
        rights += [cyclic_module(ring, i, "right") for i in ideals]
        lefts = [free_module(ring, 1)]
        lefts += [cyclic_module(ring, i) for i in enumerate_ideals(ring, "left")]
        for right in rights:
            for left in lefts:
                ext = r_extension(right, left)
                # n ⊗ m ↦ n ⊗ m ⊗ 1 inside (N ⊗_R M) ⊗_ℤ R
                tensors = ext.inclusion.compose(comparison_map(ext))
                assert same_subgroup(tensors, ext.inclusion)
                checked += 1
    assert checked >= 100
