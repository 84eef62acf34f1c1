import pytest

from modlab import EnumerationRefused, InputError, RingAxiomError
from modlab.linalg import GroupMorphism, IntMatrix
from modlab.rings import (
    Algebra,
    RingMorphism,
    algebra_corpus,
    cyclic_ring,
    enumerate_ideals,
    generalized_triangular_ring,
    group_ring,
    hypothesis_status,
    ideal_generated_by,
    make_ring,
    opposite_ring,
    polynomial_quotient_ring,
    quotient_ring,
    triangular_ring,
)
from modlab.zoo import RingZoo, default_zoo, zoo_ring


def test_cyclic_ring(z4):
    assert z4.order == 4
    assert z4.characteristic == 4
    assert z4.is_commutative
    assert str(z4) == "ℤ/4"
    assert z4.mul_elements((2,), (3,)) == (2,)
    assert z4.is_central((2,))
    with pytest.raises(InputError):
        cyclic_ring(1)


def test_triangular_ring(t2f2):
    assert t2f2.order == 8
    assert t2f2.characteristic == 2
    assert not t2f2.is_commutative
    assert hypothesis_status(t2f2) == "prime-field"


def test_matrix_ring(m2f2):
    assert m2f2.order == 16
    assert not m2f2.is_commutative
    assert len(enumerate_ideals(m2f2, "two-sided")) == 2
    assert len(enumerate_ideals(m2f2, "right")) == 5


def test_ideals_of_triangular_ring(t2f2):
    assert len(enumerate_ideals(t2f2, "right")) == 7
    assert len(enumerate_ideals(t2f2, "left")) == 7
    assert len(enumerate_ideals(t2f2, "two-sided")) == 5


def test_ideals_are_sorted(z4):
    ideals = enumerate_ideals(z4, "two-sided")
    assert [i.order for i in ideals] == [1, 2, 4]


def test_enumeration_bound(m2f2):
    with pytest.raises(EnumerationRefused) as e:
        enumerate_ideals(m2f2, "right", bound=8)
    assert e.value.order == 16
    assert e.value.bound == 8


def test_ring_axioms_are_checked():
    with pytest.raises(RingAxiomError):
        make_ring((2,), [[(1,)]], (0,))
    with pytest.raises(InputError):
        make_ring((2,), [[(1, 0)]], (1,))


def test_hypothesis_status(z4, z6, t2f2):
    assert hypothesis_status(z4) == "commutative"
    assert hypothesis_status(z6) == "commutative"
    assert hypothesis_status(t2f2) == "prime-field"
    assert (
        hypothesis_status(triangular_ring(cyclic_ring(6), 2))
        == "squarefree-characteristic"
    )
    assert hypothesis_status(generalized_triangular_ring(4, 2, 2)) == "unknown"


def test_generalized_triangular_ring():
    ring = generalized_triangular_ring(4, 2, 2)
    assert ring.order == 16
    assert ring.characteristic == 4
    assert not ring.is_commutative
    with pytest.raises(InputError):
        generalized_triangular_ring(4, 2, 3)


def test_polynomial_quotients(z2):
    f4 = polynomial_quotient_ring(z2, (1, 1))
    assert f4.order == 4
    assert f4.is_commutative
    # a field has only the trivial ideals
    assert len(enumerate_ideals(f4, "two-sided")) == 2

    dual = polynomial_quotient_ring(z2, (0, 0))
    assert len(enumerate_ideals(dual, "two-sided")) == 3


def test_group_ring(z2):
    ring = group_ring(z2, [[0, 1], [1, 0]])
    assert ring.order == 4
    assert ring.is_commutative
    with pytest.raises(InputError):
        group_ring(z2, [[0, 1], [0, 1]])


def test_quotient_ring(z4):
    ideal = ideal_generated_by(z4, [(2,)])
    assert ideal.order == 2
    q, proj = quotient_ring(z4, ideal)
    assert q.order == 2
    assert proj(z4.one()) == q.one()


def test_ring_morphism_checks_unit(z2, z4):
    with pytest.raises(RingAxiomError):
        RingMorphism(
            z2, z4, GroupMorphism(z2.additive, z4.additive, IntMatrix.from_rows([[2]]))
        )
    reduction = RingMorphism(
        z4, z2, GroupMorphism(z4.additive, z2.additive, IntMatrix.from_rows([[1]]))
    )
    assert reduction((3,)) == (1,)


def test_opposite_ring(t2f2, z4):
    op = opposite_ring(t2f2)
    assert op.order == t2f2.order
    assert opposite_ring(opposite_ring(t2f2)).mul == t2f2.mul
    assert opposite_ring(z4).mul == z4.mul


def test_algebra_corpus(z4):
    corpus = algebra_corpus(z4, 16, seed=3)

    assert corpus.objects[0] == Algebra.trivial(z4)
    orders = sorted(S.ring.order for S in corpus.objects)
    assert orders[0] == 2
    assert 16 in orders
    assert corpus.arrows
    for arrow in corpus.arrows:
        assert arrow.source in corpus.objects
        assert arrow.target in corpus.objects

    again = algebra_corpus(z4, 16, seed=3)
    assert [a.name for a in again.arrows] == [a.name for a in corpus.arrows]


def test_algebra_corpus_bound(m2f2):
    with pytest.raises(InputError):
        algebra_corpus(m2f2, 8)


def test_zoo():
    zoo = default_zoo()
    assert zoo.mandatory == ["Z2", "Z4", "Z6", "Z2xZ2", "T2F2", "M2F2"]
    assert zoo.corpus_names[-1] == "F4"
    assert zoo_ring("F4").order == 4
    assert zoo_ring("GR4").characteristic == 4
    assert zoo_ring("GR4").is_commutative
    assert zoo_ring("Z2xZ2").order == 4
    assert zoo_ring("T2F2").order == 8
    with pytest.raises(InputError):
        zoo_ring("Q8")


def test_zoo_rejects_broken_recipes():
    zoo = RingZoo({"A": {"constructor": "matrix", "base": "A", "args": [2]}})
    with pytest.raises(InputError):
        zoo.ring("A")
    zoo = RingZoo({"B": {"constructor": "spline", "args": [2]}})
    with pytest.raises(InputError):
        zoo.ring("B")
