"""RingZoo - named finite rings used for corpora and single computations"""

from functools import lru_cache

import yaml

from modlab import InputError
from modlab.rings import (
    FiniteRing,
    cyclic_ring,
    generalized_triangular_ring,
    group_ring,
    matrix_ring,
    polynomial_quotient_ring,
    product_ring,
    triangular_ring,
)
from modlab.utils import read_package_text

from . import db

RING_ZOO_FILE = "ring_zoo.yaml"


class RingZoo(object):
    """Registry of ring recipes read from ``db/ring_zoo.yaml``.

    A recipe names a constructor, its integer arguments and, where the
    constructor needs one, the base ring(s) by zoo name.
    """

    def __init__(self, recipes=None):
        if recipes is None:
            recipes = yaml.safe_load(read_package_text(db, RING_ZOO_FILE))
        self.recipes = recipes
        self._built = {}

    @property
    def names(self):
        return list(self.recipes)

    @property
    def mandatory(self):
        return [k for k, v in self.recipes.items() if v.get("mandatory", False)]

    @property
    def corpus_names(self):
        """Mandatory rings first, then the other corpus rings, in file order"""
        extra = [k for k, v in self.recipes.items() if v.get("corpus", False)]
        return self.mandatory + [k for k in extra if k not in self.mandatory]

    def __contains__(self, name):
        return name in self.recipes

    def ring(self, name: str) -> FiniteRing:
        if name not in self.recipes:
            raise InputError(
                f"Unknown ring {name}; known rings: {', '.join(self.names)}"
            )
        if name not in self._built:
            self._built[name] = self._build(name, self.recipes[name], ())
        return self._built[name]

    def _build(self, name, recipe, seen):
        if name in seen:
            raise InputError(f"Ring recipe {name} refers to itself")
        constructor = recipe.get("constructor")
        args = recipe.get("args", [])
        base = recipe.get("base")
        if isinstance(base, list):
            bases = [self._build(b, self._recipe(b), seen + (name,)) for b in base]
        elif base is not None:
            bases = [self._build(base, self._recipe(base), seen + (name,))]
        else:
            bases = []

        if constructor == "cyclic":
            ring = cyclic_ring(*args)
        elif constructor == "generalized_triangular":
            ring = generalized_triangular_ring(*args)
        elif constructor == "product" and len(bases) == 2:
            ring = product_ring(*bases)
        elif constructor == "matrix" and len(bases) == 1:
            ring = matrix_ring(bases[0], *args)
        elif constructor == "triangular" and len(bases) == 1:
            ring = triangular_ring(bases[0], *args)
        elif constructor == "polynomial" and len(bases) == 1:
            ring = polynomial_quotient_ring(bases[0], args)
        elif constructor == "group_ring" and len(bases) == 1:
            ring = group_ring(bases[0], *args)
        else:
            raise InputError(
                f"Ring recipe {name} has unusable constructor {constructor}"
            )
        return FiniteRing(ring.additive, ring.mul, ring.unit, name=name)

    def _recipe(self, name):
        if name not in self.recipes:
            raise InputError(f"Ring recipe refers to unknown ring {name}")
        return self.recipes[name]


@lru_cache(maxsize=None)
def default_zoo() -> RingZoo:
    return RingZoo()


def zoo_ring(name: str) -> FiniteRing:
    return default_zoo().ring(name)
