"""Shared rings and modules for the modlab tests"""

import pytest

from modlab.modules import cyclic_module, free_module
from modlab.rings import cyclic_ring, matrix_ring, product_ring, triangular_ring


@pytest.fixture
def z2():
    return cyclic_ring(2)


@pytest.fixture
def z4():
    return cyclic_ring(4)


@pytest.fixture
def z6():
    return cyclic_ring(6)


@pytest.fixture
def z2xz2():
    return product_ring(cyclic_ring(2), cyclic_ring(2))


@pytest.fixture
def t2f2():
    return triangular_ring(cyclic_ring(2), 2)


@pytest.fixture
def m2f2():
    return matrix_ring(cyclic_ring(2), 2)


@pytest.fixture
def z2_over_z4(z4):
    """ℤ/2 as a left ℤ/4-module"""
    return cyclic_module(z4, [(2,)])


@pytest.fixture
def z2_over_z4_right(z4):
    return cyclic_module(z4, [(2,)], "right")


@pytest.fixture
def z4_free(z4):
    return free_module(z4, 1)
