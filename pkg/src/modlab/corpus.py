"""Corpus - generated rings, modules and algebras, and their manifest files"""

import hashlib
import os
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Tuple

import yaml

from modlab import CorpusFileError, EnumerationRefused, InputError
from modlab.linalg import AbelianGroup, GroupMorphism, IntMatrix
from modlab.manifest_schema import CorpusSchema
from modlab.modules import ModulePres, cyclic_module, dual_module, free_module
from modlab.rings import (
    DEFAULT_ENUMERATION_BOUND,
    Algebra,
    AlgebraArrow,
    AlgebraMorphismCorpus,
    FiniteRing,
    RingMorphism,
    algebra_corpus,
    enumerate_ideals,
    generalized_triangular_ring,
)
from modlab.utils import load_yaml_file
from modlab.zoo import default_zoo

MANIFEST_FILE = "manifest.yaml"
DEFAULT_MAX_ALGEBRA_ORDER = 16


def _ints(values) -> List[str]:
    return [str(int(x)) for x in values]


def _parse_ints(values, what) -> List[int]:
    try:
        return [int(x) for x in values]
    except (TypeError, ValueError) as e:
        raise CorpusFileError(f"Malformed integers in {what}", e)


def matrix_to_list(m: IntMatrix) -> List[List[str]]:
    return [_ints(r) for r in m.entries]


def matrix_from_list(rows, cols, what="matrix") -> IntMatrix:
    try:
        return IntMatrix.from_rows([_parse_ints(r, what) for r in rows], cols)
    except InputError as e:
        raise CorpusFileError(f"Malformed {what}", e)


def ring_to_dict(ring: FiniteRing) -> dict:
    return {
        "name": ring.name,
        "orders": _ints(ring.additive.orders),
        "unit": _ints(ring.unit),
        "mul": [[_ints(c) for c in row] for row in ring.mul],
    }


def ring_from_dict(data: dict) -> FiniteRing:
    """Inverse of ring_to_dict.

    Raises:
        CorpusFileError: on missing keys or malformed integers
        RingAxiomError: if the structure constants are not a ring
    """
    try:
        orders = _parse_ints(data["orders"], "ring orders")
        unit = _parse_ints(data["unit"], "ring unit")
        mul = tuple(
            tuple(tuple(_parse_ints(c, "structure constants")) for c in row)
            for row in data["mul"]
        )
    except (KeyError, TypeError) as e:
        raise CorpusFileError("Ring record needs orders, unit and mul", e)
    return FiniteRing(AbelianGroup(orders), mul, unit, name=data.get("name", ""))


def module_to_dict(module: ModulePres) -> dict:
    data = {
        "name": module.name,
        "side": module.side,
        "orders": _ints(module.additive.orders),
        "action": [matrix_to_list(m) for m in module.action],
    }
    if module.side == "bi":
        data["right_action"] = [matrix_to_list(m) for m in module.right_action]
    return data


def module_from_dict(data: dict, ring: FiniteRing, right_ring=None) -> ModulePres:
    try:
        group = AbelianGroup(_parse_ints(data["orders"], "module orders"))
        side = data["side"]
        action = tuple(
            matrix_from_list(m, group.rank, "action matrix") for m in data["action"]
        )
        right = tuple(
            matrix_from_list(m, group.rank, "action matrix")
            for m in data.get("right_action", [])
        )
    except (KeyError, TypeError) as e:
        raise CorpusFileError("Module record needs side, orders and action", e)
    name = data.get("name", "")
    if side == "bi":
        return ModulePres(
            ring, side, group, action, right, right_ring or ring, name=name
        )
    return ModulePres(ring, side, group, action, name=name)


def algebra_to_dict(algebra: Algebra) -> dict:
    return {
        "name": algebra.name,
        "ring": ring_to_dict(algebra.ring),
        "sigma": matrix_to_list(algebra.structure_map.map.matrix),
    }


def algebra_from_dict(data: dict, base: FiniteRing) -> Algebra:
    try:
        ring = ring_from_dict(data["ring"])
        sigma = matrix_from_list(data["sigma"], base.rank, "structure map")
    except (KeyError, TypeError) as e:
        raise CorpusFileError("Algebra record needs ring and sigma", e)
    structure = RingMorphism(
        base, ring, GroupMorphism(base.additive, ring.additive, sigma)
    )
    return Algebra(ring, structure, name=data.get("name", ""))


def arrow_to_dict(arrow: AlgebraArrow, ids: Dict[int, str]) -> dict:
    return {
        "name": arrow.name,
        "source": ids[id(arrow.source)],
        "target": ids[id(arrow.target)],
        "matrix": matrix_to_list(arrow.morphism.map.matrix),
    }


def arrow_from_dict(data: dict, algebras: Dict[str, Algebra]) -> AlgebraArrow:
    try:
        source = algebras[data["source"]]
        target = algebras[data["target"]]
    except KeyError as e:
        raise CorpusFileError(
            f"Arrow {data.get('name', '')} refers to unknown algebra", e
        )
    matrix = matrix_from_list(data["matrix"], source.ring.rank, "arrow matrix")
    morphism = RingMorphism(
        source.ring,
        target.ring,
        GroupMorphism(source.ring.additive, target.ring.additive, matrix),
    )
    return AlgebraArrow(source, target, morphism, name=data.get("name", ""))


@dataclass
class CorpusEntry:
    """One ring with the modules and algebras checked over it"""

    ring_id: str
    ring: FiniteRing
    left_modules: List[Tuple[str, ModulePres]]
    right_modules: List[Tuple[str, ModulePres]]
    algebras: AlgebraMorphismCorpus
    algebra_ids: List[str]


@dataclass
class Corpus:
    identifier: str
    seed: int
    entries: List[CorpusEntry]

    def entry(self, ring_id: str) -> CorpusEntry:
        for e in self.entries:
            if e.ring_id == ring_id:
                return e
        raise InputError(f"Corpus {self.identifier} has no ring {ring_id}")


@dataclass
class CorpusManifest:
    """Serialized corpus: records with stable ids, plus seed and bounds"""

    seed: int
    bounds: Dict[str, int]
    rings: List[dict] = field(default_factory=list)
    modules: List[dict] = field(default_factory=list)
    algebras: List[dict] = field(default_factory=list)
    arrows: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "seed": str(self.seed),
            "bounds": {k: str(v) for k, v in self.bounds.items()},
            "rings": self.rings,
            "modules": self.modules,
            "algebras": self.algebras,
            "arrows": self.arrows,
        }

    def dump(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, allow_unicode=True)

    @property
    def identifier(self) -> str:
        return hashlib.sha256(self.dump().encode("utf-8")).hexdigest()[:16]

    @classmethod
    def from_dict(cls, data: dict):
        """Reads a manifest and checks that every referenced id resolves.

        Raises:
            CorpusFileError: on missing sections or dangling ids
        """
        if not isinstance(data, dict):
            raise CorpusFileError("Corpus manifest must be a mapping")
        try:
            seed = int(data["seed"])
            bounds = {k: int(v) for k, v in data["bounds"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise CorpusFileError("Corpus manifest needs a seed and bounds", e)
        manifest = cls(
            seed,
            bounds,
            list(data.get("rings") or []),
            list(data.get("modules") or []),
            list(data.get("algebras") or []),
            list(data.get("arrows") or []),
        )
        manifest.check_references()
        return manifest

    def check_references(self):
        ids = set()
        for section in ("rings", "modules", "algebras", "arrows"):
            for record in getattr(self, section):
                if not isinstance(record, dict) or "id" not in record:
                    raise CorpusFileError(f"Record without id in {section}")
                if record["id"] in ids:
                    raise CorpusFileError(f"Duplicate id {record['id']}")
                ids.add(record["id"])
        ring_ids = {r["id"] for r in self.rings}
        algebra_ids = {a["id"]: a.get("base") for a in self.algebras}
        for record in self.modules + self.algebras:
            if record.get("ring_id", record.get("base")) not in ring_ids:
                raise CorpusFileError(f"{record['id']} refers to an unknown ring")
        for arrow in self.arrows:
            for end in ("source", "target"):
                if arrow.get(end) not in algebra_ids:
                    raise CorpusFileError(
                        f"Arrow {arrow['id']} refers to unknown algebra "
                        f"{arrow.get(end)}"
                    )

    def write(self, out_dir: str) -> str:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, MANIFEST_FILE)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.dump())
        return path

    @classmethod
    def load(cls, path: str, validate=True):
        """Loads ``manifest.yaml`` from a corpus directory (or the file itself).

        Raises:
            CorpusFileError: if the file is missing, does not parse or has
                dangling ids
            ValidationError: if the manifest does not match the corpus schema
        """
        if os.path.isdir(path):
            path = os.path.join(path, MANIFEST_FILE)
        data = load_yaml_file(path)
        if validate:
            CorpusSchema().validate(data)
        return cls.from_dict(data)

    def to_corpus(self) -> Corpus:
        entries = []
        for record in self.rings:
            rid = record["id"]
            ring = ring_from_dict(record["ring"])
            lefts, rights = [], []
            for m in self.modules:
                if m["ring_id"] != rid:
                    continue
                module = module_from_dict(m["module"], ring)
                (lefts if module.side == "left" else rights).append((m["id"], module))
            algebras = {}
            for a in self.algebras:
                if a["base"] == rid:
                    algebras[a["id"]] = algebra_from_dict(a["algebra"], ring)
            arrows = tuple(
                arrow_from_dict(u, algebras)
                for u in self.arrows
                if u["source"] in algebras
            )
            corpus = AlgebraMorphismCorpus(ring, tuple(algebras.values()), arrows)
            entries.append(
                CorpusEntry(rid, ring, lefts, rights, corpus, list(algebras))
            )
        return Corpus(self.identifier, self.seed, entries)


def _left_ideals(ring, enumeration_bound):
    try:
        ideals = enumerate_ideals(ring, "left", enumeration_bound)
    except EnumerationRefused:
        return []
    return [i for i in ideals if i.order not in (1, ring.order)]


def _right_ideals(ring, enumeration_bound):
    try:
        ideals = enumerate_ideals(ring, "right", enumeration_bound)
    except EnumerationRefused:
        return []
    return [i for i in ideals if i.order not in (1, ring.order)]


def _add_module(found, mid, module, max_module_order):
    if module.order > max_module_order or module.is_zero:
        return
    if any(module == m for _, m in found):
        return
    found.append((mid, module))


def ring_modules(ring, rid, max_module_order, enumeration_bound):
    """Free, cyclic and dual modules over one ring, deduplicated"""
    lefts, rights = [], []
    for k in (1, 2):
        _add_module(lefts, f"{rid}:free{k}", free_module(ring, k), max_module_order)
    for n, ideal in enumerate(_left_ideals(ring, enumeration_bound), 1):
        _add_module(lefts, f"{rid}:L{n}", cyclic_module(ring, ideal), max_module_order)
    for k in (1, 2):
        _add_module(
            rights, f"{rid}:rfree{k}", free_module(ring, k, "right"), max_module_order
        )
    for n, ideal in enumerate(_right_ideals(ring, enumeration_bound), 1):
        _add_module(
            rights, f"{rid}:R{n}", cyclic_module(ring, ideal, "right"), max_module_order
        )
    for mid, module in list(lefts):
        _add_module(rights, f"{rid}:dual({mid})", dual_module(module), max_module_order)
    return lefts, rights


def corpus_generate(
    max_ring_order: int,
    max_module_order: int,
    seed: int = 0,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
    max_algebra_order: int = DEFAULT_MAX_ALGEBRA_ORDER,
    zoo=None,
) -> CorpusManifest:
    """Deterministic corpus over the mandatory zoo rings within the bounds.

    Raises:
        InputError: if a bound is below 2
    """
    if max_ring_order < 2 or max_module_order < 2:
        raise InputError(
            f"Bounds must be at least 2, got ring order {max_ring_order} and "
            f"module order {max_module_order}"
        )
    zoo = zoo or default_zoo()
    manifest = CorpusManifest(
        seed,
        {
            "max_ring_order": max_ring_order,
            "max_module_order": max_module_order,
            "max_algebra_order": max_algebra_order,
            "enumeration_bound": enumeration_bound,
        },
    )
    for rid in zoo.corpus_names:
        ring = zoo.ring(rid)
        if ring.order > max_ring_order:
            continue
        manifest.rings.append({"id": rid, "ring": ring_to_dict(ring)})
        lefts, rights = ring_modules(ring, rid, max_module_order, enumeration_bound)
        for mid, module in lefts + rights:
            manifest.modules.append(
                {"id": mid, "ring_id": rid, "module": module_to_dict(module)}
            )
        algebras = algebra_corpus(
            ring, max(max_algebra_order, ring.order), seed, enumeration_bound
        )
        ids = {}
        for k, S in enumerate(algebras.objects):
            ids[id(S)] = f"{rid}:S{k}"
            manifest.algebras.append(
                {"id": ids[id(S)], "base": rid, "algebra": algebra_to_dict(S)}
            )
        for k, arrow in enumerate(algebras.arrows):
            manifest.arrows.append(dict(id=f"{rid}:u{k}", **arrow_to_dict(arrow, ids)))
    return manifest


def hp2_family(
    max_ring_order: int,
    max_module_order: int,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
) -> List[CorpusEntry]:
    """Triangular rings [[ℤ/a, ℤ/m], [0, ℤ/b]] with free and cyclic modules.

    These rings are noncommutative, and non-squarefree characteristic
    occurs once a or b has a square factor.
    """
    entries = []
    for a in range(2, max_ring_order + 1):
        for b in range(2, max_ring_order + 1):
            for m in range(2, gcd(a, b) + 1):
                if gcd(a, b) % m or a * m * b > max_ring_order:
                    continue
                ring = generalized_triangular_ring(a, m, b)
                rid = f"T({a},{m},{b})"
                lefts, rights = [], []
                bound = max_module_order
                _add_module(lefts, f"{rid}:free1", free_module(ring, 1), bound)
                for n, ideal in enumerate(_left_ideals(ring, enumeration_bound), 1):
                    _add_module(lefts, f"{rid}:L{n}", cyclic_module(ring, ideal), bound)
                _add_module(
                    rights,
                    f"{rid}:rfree1",
                    free_module(ring, 1, "right"),
                    max_module_order,
                )
                for n, ideal in enumerate(_right_ideals(ring, enumeration_bound), 1):
                    _add_module(
                        rights,
                        f"{rid}:R{n}",
                        cyclic_module(ring, ideal, "right"),
                        max_module_order,
                    )
                base = Algebra.trivial(ring)
                algebras = AlgebraMorphismCorpus(ring, (base,), ())
                entries.append(
                    CorpusEntry(rid, ring, lefts, rights, algebras, [f"{rid}:S0"])
                )
    return entries


def load_corpus(path: str) -> Corpus:
    return CorpusManifest.load(path).to_corpus()
