"""Theorem suites run over a corpus, with per-case reports."""

from dataclasses import dataclass, field
from multiprocessing import Pool, cpu_count
from typing import Dict, List, Optional

from modlab import EnumerationRefused, InputError, get_version
from modlab.corpus import (
    Corpus,
    CorpusEntry,
    algebra_to_dict,
    hp2_family,
    module_to_dict,
    ring_to_dict,
)
from modlab.functors import (
    DEFAULT_DEGREE_BOUND,
    DEFAULT_EXHAUSTIVE_LIMIT,
    QcFunctor,
    SchemeFunctor,
    certified_injectivity,
    check_naturality,
    comparison_map,
    double_dual_eval,
    dual_coincidence,
    evaluation_morphism,
    evaluation_tensor,
    r_extension,
    r_extension_direct,
    star_double_dual_eval,
    symmetry_check,
    unit_counit_roundtrip,
)
from modlab.linalg import (
    GroupMorphism,
    IntMatrix,
    is_injective,
    is_isomorphism,
    same_subgroup,
    solve,
    ztensor_map,
)
from modlab.linalg import direct_sum as group_direct_sum
from modlab.modules import (
    algebra_bimodule,
    hom_module,
    is_flat,
    is_projective,
    module_generators,
    opposite_module,
    submodule,
    tensor_map,
    tensor_over_R,
    tor1,
)
from modlab.rings import Algebra, DEFAULT_ENUMERATION_BOUND, hypothesis_status

STATUSES = ("pass", "fail", "refused", "inconclusive")

DEFAULT_SETTINGS = {
    "enumeration_bound": DEFAULT_ENUMERATION_BOUND,
    "degree_bound": DEFAULT_DEGREE_BOUND,
    "exhaustive_limit": DEFAULT_EXHAUSTIVE_LIMIT,
    "max_ring_order": 16,
    "max_module_order": 64,
}


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    status: str
    provenance: str = ""
    expected: str = "positive"
    detail: str = ""
    witness: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise InputError(f"Unknown case status {self.status}")

    def to_dict(self):
        return {
            "id": self.case_id,
            "status": self.status,
            "provenance": self.provenance,
            "expected": self.expected,
            "detail": self.detail,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    suite: str
    corpus: str
    seed: int
    cases: List[CaseResult]
    version: str = field(default_factory=get_version)
    meta: Dict[str, str] = field(default_factory=dict)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {s: 0 for s in STATUSES}
        for c in self.cases:
            counts[c.status] += 1
        return counts

    @property
    def exit_code(self) -> int:
        """1 on any failure, 2 when every case was refused, else 0"""
        counts = self.summary
        if counts["fail"]:
            return 1
        if counts["refused"] and counts["refused"] == len(self.cases):
            return 2
        return 0

    def to_dict(self):
        return {
            "suite": self.suite,
            "corpus": self.corpus,
            "seed": str(self.seed),
            "version": self.version,
            "summary": {k: str(v) for k, v in self.summary.items()},
            "meta": dict(self.meta),
            "cases": [c.to_dict() for c in self.cases],
        }


def _guaranteed(ring) -> Optional[str]:
    status = hypothesis_status(ring)
    return None if status == "unknown" else status


def _provenance(ring, modules=()) -> str:
    status = _guaranteed(ring)
    if status:
        return status
    if any(m.side == "bi" for m in modules):
        return "bimodule"
    for m in modules:
        if is_projective(m if m.side == "left" else opposite_module(m)):
            return "flat"
    return "unknown"


def _decide(ok: bool, provenance: str):
    """Status of a theorem-backed check"""
    return ("pass" if ok else "fail"), provenance


def _settle(result: CaseResult) -> CaseResult:
    """Cases on rings without a known hypothesis are refused.

    The computed status stays in the witness as ``outcome``.
    """
    if result.provenance != "unknown" or result.status == "refused":
        return result
    return CaseResult(
        result.case_id,
        "refused",
        "unknown",
        result.expected,
        result.detail,
        dict(result.witness, outcome=result.status),
    )


def _data(entry: CorpusEntry, modules=(), algebra=None) -> dict:
    data = {"ring": ring_to_dict(entry.ring)}
    if modules:
        data["modules"] = {mid: module_to_dict(m) for mid, m in modules}
    if algebra is not None:
        data["algebra"] = algebra_to_dict(algebra)
    return data


def _witness(status, entry, ids, modules=(), algebra=None, negative=False):
    witness = dict(ids)
    if status == "fail" or negative:
        witness["data"] = _data(entry, modules, algebra)
    return witness


def case_reflexivity(settings, entry, mid, module, sid, algebra):
    case_id = f"{entry.ring_id}/{mid}/{sid}"
    dd = double_dual_eval(module, algebra)
    star = star_double_dual_eval(module, algebra)
    ok = dd.is_isomorphism and star.is_isomorphism
    status, provenance = _decide(ok, _provenance(entry.ring))
    detail = f"double dual {dd.group}; star double dual {star.group}"
    ids = {"ring": entry.ring_id, "module": mid, "algebra": sid}
    return CaseResult(
        case_id,
        status,
        provenance,
        detail=detail,
        witness=_witness(status, entry, ids, [(mid, module)], algebra),
    )


def case_symmetry(settings, entry, nid, right, mid, left):
    case_id = f"{entry.ring_id}/{nid}/{mid}"
    status = "pass" if symmetry_check(right, left) else "fail"
    ids = {"ring": entry.ring_id, "right": nid, "left": mid}
    return CaseResult(
        case_id,
        status,
        "unconditional",
        witness=_witness(status, entry, ids, [(nid, right), (mid, left)]),
    )


def case_super(settings, entry, nid, right, mid, left):
    case_id = f"{entry.ring_id}/{nid}/{mid}"
    ext = r_extension(right, left)
    ok = is_isomorphism(comparison_map(ext))
    status, provenance = _decide(
        ok, _provenance(entry.ring, (right, left))
    )
    ids = {"ring": entry.ring_id, "right": nid, "left": mid}
    return CaseResult(
        case_id,
        status,
        provenance,
        detail=f"N⊗M = {ext.tensor.group}; kernel = {ext.group}",
        witness=_witness(status, entry, ids, [(nid, right), (mid, left)]),
    )


def case_hp2(settings, entry, nid, right, mid, left):
    case_id = f"{entry.ring_id}/{nid}/{mid}"
    ext = r_extension(right, left)
    equal = is_isomorphism(comparison_map(ext))
    guaranteed = _guaranteed(entry.ring)
    ids = {"ring": entry.ring_id, "right": nid, "left": mid}
    if equal:
        status, provenance = "pass", guaranteed or "corpus-verified"
    elif guaranteed:
        status, provenance = "fail", guaranteed
    else:
        status, provenance = "inconclusive", "unknown"
    return CaseResult(
        case_id,
        status,
        provenance,
        expected="none" if guaranteed is None else "positive",
        detail="equal" if equal else "comparison map is not an isomorphism",
        witness=_witness(
            status, entry, ids, [(nid, right), (mid, left)], negative=not equal
        ),
    )


def _scheme_map(module, algebra):
    """S ⊗_R M → Hom_R(M*, S), s ⊗ m ↦ (f ↦ s·σ(f(m)))"""
    dual_hom = SchemeFunctor(module).evaluate(Algebra.trivial(module.ring))
    dual = dual_hom.module
    tp = QcFunctor(module).tensor(algebra)
    S = algebra.ring
    target = algebra_bimodule(algebra, "right")
    H = hom_module(dual, target, "right")
    functionals = [
        dual_hom.decode(dual.additive.generator(a)) for a in range(dual.rank)
    ]
    cols = []
    for i in range(S.rank):
        for j in range(module.rank):
            m = module.additive.generator(j)
            images = [
                S.mul_elements(S.generator(i), algebra.sigma(f(m))) for f in functionals
            ]
            F = GroupMorphism(
                dual.additive, S.additive, IntMatrix.from_columns(images, S.rank)
            )
            cols.append(H.encode(F))
    words = IntMatrix.from_columns(cols, H.group.rank)
    return GroupMorphism(
        tp.group, H.group, words @ tp.presentation.from_canonical
    )


def case_scheme(settings, entry, mid, module):
    case_id = f"{entry.ring_id}/{mid}"
    projective = is_projective(module)
    ids = {"ring": entry.ring_id, "module": mid}
    failures = []
    for sid, algebra in zip(entry.algebra_ids, entry.algebras.objects):
        if not is_isomorphism(_scheme_map(module, algebra)):
            failures.append((sid, algebra))
            if not projective:
                break
    provenance = _provenance(entry.ring)
    if projective:
        status, provenance = _decide(not failures, provenance)
        return CaseResult(
            case_id,
            status,
            provenance,
            detail="isomorphism at every corpus algebra" if not failures else (
                f"not an isomorphism at {failures[0][0]}"
            ),
            witness=_witness(
                status,
                entry,
                dict(ids, algebra=failures[0][0]) if failures else ids,
                [(mid, module)],
                failures[0][1] if failures else None,
            ),
        )
    if failures:
        sid, algebra = failures[0]
        return CaseResult(
            case_id,
            "pass",
            provenance,
            expected="negative",
            detail=f"not an isomorphism at {sid}",
            witness=_witness(
                "pass", entry, dict(ids, algebra=sid), [(mid, module)], algebra, True
            ),
        )
    return CaseResult(
        case_id,
        "inconclusive",
        provenance,
        expected="negative",
        detail="isomorphism at every corpus algebra",
        witness=ids,
    )


def _factors(ext, phi_ambient):
    """Whether φ lies in the image of 𝒬^r(M) for Q the image of its evaluation at R"""
    right, left = ext.right, ext.left
    R = left.ring
    base = Algebra.trivial(R)
    hom = SchemeFunctor(left).evaluate(base)
    Z = evaluation_tensor(ext, base)
    to_right = Z.word_morphism(
        right.additive,
        [
            right.act_right(right.additive.generator(i), R.generator(j))
            for i in range(right.rank)
            for j in range(R.rank)
        ],
    )
    values = [
        to_right(evaluation_morphism(ext, base, g, Z)(phi_ambient))
        for g in hom.generators()
    ]
    Q, incl = submodule(right, values)
    sub = r_extension(Q, left)
    ident_m = GroupMorphism.identity(left.additive)
    words = tensor_map(incl, ident_m, sub.tensor, ext.tensor)
    ident_r = GroupMorphism.identity(R.additive)
    move = ztensor_map(sub.ambient, ext.ambient, words, ident_r)
    return solve(move.compose(sub.inclusion), phi_ambient) is not None


def case_factorization(settings, entry, mid, module, rights):
    case_id = f"{entry.ring_id}/{mid}"
    projective = is_projective(module)
    ids = {"ring": entry.ring_id, "module": mid}
    violation = None
    checked = 0
    for nid, right in rights:
        ext = r_extension(right, module)
        if ext.group.order <= settings["exhaustive_limit"]:
            phis = [e.ambient for e in ext.elements()]
        else:
            phis = [e.ambient for e in ext.generators()]
        for phi in phis:
            checked += 1
            if not _factors(ext, phi):
                violation = (nid, right, phi)
                break
        if violation:
            break
    provenance = _provenance(entry.ring)
    if projective:
        status, provenance = _decide(violation is None, provenance)
        modules = [(mid, module)] + ([violation[:2]] if violation else [])
        return CaseResult(
            case_id,
            status,
            provenance,
            detail=f"{checked} transformations factor" if not violation else (
                f"element {list(violation[2])} over {violation[0]} does not factor"
            ),
            witness=_witness(status, entry, ids, modules),
        )
    if violation:
        return CaseResult(
            case_id,
            "pass",
            provenance,
            expected="negative",
            detail=f"element {list(violation[2])} over {violation[0]} does not factor",
            witness=_witness(
                "pass", entry, dict(ids, right=violation[0]),
                [(mid, module), violation[:2]], negative=True,
            ),
        )
    return CaseResult(
        case_id,
        "inconclusive",
        provenance,
        expected="negative",
        detail=(
            "no violation over corpus right modules; "
            "one may exist outside the corpus"
        ),
        witness=ids,
    )


def _product_map(module, algebra):
    """S ⊗_R M → ∏_f S, s ⊗ m ↦ (s·σ(f(m)))_f over generators f of Hom_R(M, R)"""
    hom = SchemeFunctor(module).evaluate(Algebra.trivial(module.ring))
    tp = QcFunctor(module).tensor(algebra)
    S = algebra.ring
    functionals = hom.generators()
    k = len(functionals)
    rows = S.rank * k
    cols = []
    for i in range(S.rank):
        for j in range(module.rank):
            m = module.additive.generator(j)
            col = []
            for f in functionals:
                col += list(S.mul_elements(S.generator(i), algebra.sigma(f(m))))
            cols.append(col)
    product = group_direct_sum(*([S.additive] * k))[0]
    words = IntMatrix.from_columns(cols, rows)
    return GroupMorphism(tp.group, product, words @ tp.presentation.from_canonical)


def _injective_at(module, algebra) -> bool:
    return is_injective(_product_map(module, algebra))


def case_embedding(settings, entry, mid, module):
    case_id = f"{entry.ring_id}/{mid}"
    projective = is_projective(module)
    ids = {"ring": entry.ring_id, "module": mid}
    failures = []
    for sid, algebra in zip(entry.algebra_ids, entry.algebras.objects):
        if not _injective_at(module, algebra):
            failures.append((sid, algebra))
            break
    provenance = _provenance(entry.ring)
    if projective:
        status, provenance = _decide(not failures, provenance)
        return CaseResult(
            case_id,
            status,
            provenance,
            detail="injective at every corpus algebra" if not failures else (
                f"not injective at {failures[0][0]}"
            ),
            witness=_witness(status, entry, ids, [(mid, module)]),
        )
    if failures:
        sid, algebra = failures[0]
        return CaseResult(
            case_id,
            "pass",
            provenance,
            expected="negative",
            detail=f"not injective at {sid}",
            witness=_witness(
                "pass", entry, dict(ids, algebra=sid), [(mid, module)], algebra, True
            ),
        )
    return CaseResult(
        case_id,
        "inconclusive",
        provenance,
        expected="negative",
        detail="injective at every corpus algebra",
        witness=ids,
    )


def case_naturality(settings, entry, nid, right, mid, left):
    case_id = f"{entry.ring_id}/{nid}/{mid}"
    ext = r_extension(right, left)
    natural, certificate = check_naturality(
        ext, entry.algebras, settings["exhaustive_limit"]
    )
    injective = certified_injectivity(right, left, ext)
    status = "pass" if natural and injective else "fail"
    detail = (
        f"{certificate['checks']} checks over {certificate['arrows']} arrows; "
        f"linear: {certificate['linear']}; injective: {injective}"
    )
    ids = {"ring": entry.ring_id, "right": nid, "left": mid}
    if certificate["violations"]:
        ids["arrow"] = certificate["violations"][0]
    return CaseResult(
        case_id,
        status,
        "unconditional",
        detail=detail,
        witness=_witness(status, entry, ids, [(nid, right), (mid, left)]),
    )


def case_flat_projective(settings, entry, mid, module):
    case_id = f"{entry.ring_id}/{mid}"
    ids = {"ring": entry.ring_id, "module": mid}
    try:
        flat = is_flat(module, settings["enumeration_bound"])
    except EnumerationRefused as e:
        return CaseResult(case_id, "refused", "unknown", detail=str(e), witness=ids)
    projective = is_projective(module)
    status = "pass" if flat == projective else "fail"
    return CaseResult(
        case_id,
        status,
        "unconditional",
        detail=f"flat: {flat}; projective: {projective}",
        witness=_witness(status, entry, ids, [(mid, module)]),
    )


def _word_count(right, left, degree):
    T = tensor_over_R(right, left)
    return T.group.rank * left.rank ** (degree - 1) * left.ring.rank**2


def case_extension(settings, entry, nid, right, mid, left):
    case_id = f"{entry.ring_id}/{nid}/{mid}"
    ext = r_extension(right, left)
    degree = settings["degree_bound"]
    degrees = [degree]
    skipped = _word_count(right, left, degree + 1) > settings["exhaustive_limit"]
    if not skipped:
        degrees.append(degree + 1)
    ok = True
    for d in degrees:
        direct = r_extension_direct(right, left, d)
        ok = ok and direct.confined and same_subgroup(direct.inclusion, ext.inclusion)
    ids = {"ring": entry.ring_id, "right": nid, "left": mid}
    if ok and skipped:
        return CaseResult(
            case_id,
            "inconclusive",
            "unconditional",
            detail=f"degree {degree} agrees; degree {degree + 1} exceeds the limit",
            witness=dict(ids, skipped_degree=str(degree + 1)),
        )
    status = "pass" if ok else "fail"
    return CaseResult(
        case_id,
        status,
        "unconditional",
        detail=f"degrees {degrees}; kernel {ext.group}",
        witness=_witness(status, entry, ids, [(nid, right), (mid, left)]),
    )


def case_duality(settings, entry, mid, module, rights):
    case_id = f"{entry.ring_id}/{mid}"
    ids = {"ring": entry.ring_id, "module": mid}
    for sid, algebra in zip(entry.algebra_ids, entry.algebras.objects):
        if not dual_coincidence(module, algebra):
            return CaseResult(
                case_id,
                "fail",
                "unconditional",
                detail=f"dual modules differ at {sid}",
                witness=_witness(
                    "fail", entry, dict(ids, algebra=sid), [(mid, module)], algebra
                ),
            )
        for nid, right in rights:
            if not unit_counit_roundtrip(right, algebra):
                return CaseResult(
                    case_id,
                    "fail",
                    "unconditional",
                    detail=(
                        f"unit-counit composite is not the identity for {nid} "
                        f"at {sid}"
                    ),
                    witness=_witness(
                        "fail",
                        entry,
                        dict(ids, algebra=sid, right=nid),
                        [(mid, module), (nid, right)],
                        algebra,
                    ),
                )
    return CaseResult(
        case_id, "pass", "unconditional", detail="dual modules coincide", witness=ids
    )


def case_tor(settings, entry, mid, module, rights):
    case_id = f"{entry.ring_id}/{mid}"
    ids = {"ring": entry.ring_id, "module": mid}
    projective = is_projective(module)
    minimal = module_generators(module)
    for nid, right in rights:
        standard = tor1(right, module)
        other = tor1(right, module, minimal)
        if standard != other or (projective and not standard.is_trivial):
            return CaseResult(
                case_id,
                "fail",
                "unconditional",
                detail=f"Tor1({nid}, {mid}): {standard} vs {other}",
                witness=_witness(
                    "fail", entry, dict(ids, right=nid), [(mid, module), (nid, right)]
                ),
            )
    return CaseResult(
        case_id,
        "pass",
        "unconditional",
        detail=f"{len(rights)} right modules, {len(minimal)} generators",
        witness=ids,
    )


CASES = {
    "reflexivity": case_reflexivity,
    "symmetry": case_symmetry,
    "super": case_super,
    "hp2-search": case_hp2,
    "scheme": case_scheme,
    "factorization": case_factorization,
    "embedding": case_embedding,
    "naturality": case_naturality,
    "flat-projective": case_flat_projective,
    "extension": case_extension,
    "duality": case_duality,
    "tor": case_tor,
}

SUITES = tuple(CASES) + ("all",)


def _pairs(entries):
    for entry in entries:
        for nid, right in entry.right_modules:
            for mid, left in entry.left_modules:
                yield entry, nid, right, mid, left


def collect_cases(suite: str, corpus: Corpus, settings) -> List[tuple]:
    """(case function name, arguments) for every case of a suite"""
    entries = corpus.entries
    if suite in ("symmetry", "super", "naturality", "extension"):
        return [(suite, args) for args in _pairs(entries)]
    if suite == "hp2-search":
        family = hp2_family(settings["max_ring_order"], settings["max_module_order"])
        return [(suite, args) for args in _pairs(family)]
    if suite == "reflexivity":
        return [
            (suite, (e, mid, m, sid, S))
            for e in entries
            for mid, m in e.left_modules
            for sid, S in zip(e.algebra_ids, e.algebras.objects)
        ]
    if suite in ("scheme", "embedding", "flat-projective"):
        return [(suite, (e, mid, m)) for e in entries for mid, m in e.left_modules]
    if suite in ("factorization", "duality", "tor"):
        return [
            (suite, (e, mid, m, e.right_modules))
            for e in entries
            for mid, m in e.left_modules
        ]
    raise InputError(f"Unknown suite {suite}")


class SuiteWorker:
    def __init__(self, settings):
        self.settings = settings

    def __call__(self, case):
        suite, args = case
        result = CASES[suite](self.settings, *args)
        return result if suite == "hp2-search" else _settle(result)


def run_suite(
    suite: str, corpus: Corpus, seed: int = 0, settings=None, n_workers=1
) -> VerificationReport:
    """Runs one suite (or all of them) and collects the report.

    Raises:
        InputError: on an unknown suite name or worker count
    """
    if suite not in SUITES:
        raise InputError(f"Unknown suite {suite}; choose one of {', '.join(SUITES)}")
    settings = dict(DEFAULT_SETTINGS, **(settings or {}))
    names = list(CASES) if suite == "all" else [suite]
    cases = []
    for name in names:
        cases += collect_cases(name, corpus, settings)

    n_processes = n_workers if n_workers > 0 else cpu_count() + n_workers
    if n_processes < 1:
        raise InputError(f"Can't use {n_processes} workers")
    worker = SuiteWorker(settings)
    if n_processes != 1:
        with Pool(processes=n_processes) as pool:
            results = pool.map(worker, cases)
    else:
        results = [worker(c) for c in cases]

    if suite == "all":
        results = [
            CaseResult(
                f"{name}:{r.case_id}",
                r.status,
                r.provenance,
                r.expected,
                r.detail,
                r.witness,
            )
            for (name, _), r in zip(cases, results)
        ]
    meta = {}
    if suite in ("hp2-search", "all"):
        meta["envelope"] = (
            f"ring order <= {settings['max_ring_order']}, "
            f"module order <= {settings['max_module_order']}"
        )
    return VerificationReport(suite, corpus.identifier, seed, results, meta=meta)
