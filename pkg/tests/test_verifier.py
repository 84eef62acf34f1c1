import pytest

from modlab import InputError
from modlab.corpus import CorpusEntry, corpus_generate
from modlab.manifest_schema import ReportSchema
from modlab.modules import free_module
from modlab.rings import Algebra, AlgebraMorphismCorpus, generalized_triangular_ring
from modlab.verifier import (
    CASES,
    DEFAULT_SETTINGS,
    SUITES,
    CaseResult,
    SuiteWorker,
    VerificationReport,
    _provenance,
    _settle,
    collect_cases,
    run_suite,
)

SMALL = {"max_ring_order": 8, "max_module_order": 8}


@pytest.fixture(scope="module")
def corpus():
    return corpus_generate(4, 4, seed=0).to_corpus()


def _statuses(report):
    return {c.status for c in report.cases}


def test_exit_codes():
    def report(*statuses):
        cases = [CaseResult(f"c{i}", s, "unknown") for i, s in enumerate(statuses)]
        return VerificationReport("tor", "abc", 0, cases)

    assert report("pass", "refused").exit_code == 0
    assert report("pass", "fail", "refused").exit_code == 1
    assert report("refused", "refused").exit_code == 2
    assert report("inconclusive").exit_code == 0
    assert report().exit_code == 0
    assert report("pass", "fail").summary == {
        "pass": 1,
        "fail": 1,
        "refused": 0,
        "inconclusive": 0,
    }


def test_case_status_is_checked():
    with pytest.raises(InputError):
        CaseResult("c", "maybe")


def test_suites():
    assert set(SUITES) == set(CASES) | {"all"}
    assert "hp2-search" in SUITES


def test_unknown_suite(corpus):
    with pytest.raises(InputError):
        run_suite("bogus", corpus)
    with pytest.raises(InputError):
        collect_cases("bogus", corpus, SMALL)


def test_worker_count_is_checked(corpus):
    with pytest.raises(InputError):
        run_suite("flat-projective", corpus, n_workers=-100000)


@pytest.mark.parametrize(
    "suite",
    ["symmetry", "extension", "naturality", "flat-projective", "tor", "duality"],
)
def test_unconditional_suites_pass(corpus, suite):
    report = run_suite(suite, corpus, settings=SMALL)
    assert report.cases
    assert _statuses(report) == {"pass"}
    assert {c.provenance for c in report.cases} == {"unconditional"}
    assert report.exit_code == 0


def test_super_suite_over_commutative_rings(corpus):
    report = run_suite("super", corpus, settings=SMALL)
    n_pairs = sum(len(e.left_modules) * len(e.right_modules) for e in corpus.entries)
    assert len(report.cases) == n_pairs
    assert _statuses(report) == {"pass"}
    assert "unknown" not in {c.provenance for c in report.cases}


def test_reflexivity_suite(corpus):
    report = run_suite("reflexivity", corpus, settings=SMALL)
    assert _statuses(report) == {"pass"}
    ring, module, algebra = report.cases[0].case_id.split("/")
    assert algebra.startswith(f"{ring}:S")


def test_negative_suites_never_fail(corpus):
    for suite in ("scheme", "factorization", "embedding"):
        report = run_suite(suite, corpus, settings=SMALL)
        assert "fail" not in _statuses(report)
        for case in report.cases:
            if case.expected == "negative" and case.status == "pass":
                assert "data" in case.witness


def test_z2_over_z4_is_a_negative_witness(corpus):
    report = run_suite("scheme", corpus, settings=SMALL)
    case = next(c for c in report.cases if c.case_id == "Z4/Z4:L1")
    assert case.expected == "negative"
    assert case.status == "pass"


def test_hp2_search(corpus):
    report = run_suite("hp2-search", corpus, settings=SMALL)
    assert report.cases
    assert all(c.case_id.startswith("T(2,2,2)/") for c in report.cases)
    assert "fail" not in _statuses(report)
    assert "envelope" in report.meta


def test_all_suites(corpus):
    report = run_suite("all", corpus, seed=5, settings=SMALL)
    prefixes = {c.case_id.split(":")[0] for c in report.cases}
    assert prefixes == set(CASES)
    assert report.exit_code == 0
    assert report.seed == 5


def test_report_matches_schema(corpus):
    report = run_suite("tor", corpus, settings=SMALL)
    document = report.to_dict()
    assert ReportSchema().validate(document)
    assert document["corpus"] == corpus.identifier
    assert document["summary"]["pass"] == str(len(report.cases))


def test_worker_pool_gives_same_results(corpus):
    serial = run_suite("symmetry", corpus, settings=SMALL)
    parallel = run_suite("symmetry", corpus, settings=SMALL, n_workers=2)
    assert serial.cases == parallel.cases


@pytest.fixture(scope="module")
def mixed_entry():
    # characteristic 4 and noncommutative: no standing hypothesis applies
    ring = generalized_triangular_ring(4, 2, 2)
    base = Algebra.trivial(ring)
    return CorpusEntry(
        "T(4,2,2)",
        ring,
        [("T(4,2,2):free1", free_module(ring, 1))],
        [("T(4,2,2):rfree1", free_module(ring, 1, "right"))],
        AlgebraMorphismCorpus(ring, (base,), ()),
        ["T(4,2,2):S0"],
    )


def test_unknown_hypothesis_refuses_a_passing_check(mixed_entry):
    mid, module = mixed_entry.left_modules[0]
    sid, algebra = mixed_entry.algebra_ids[0], mixed_entry.algebras.objects[0]
    worker = SuiteWorker(DEFAULT_SETTINGS)
    result = worker(("reflexivity", (mixed_entry, mid, module, sid, algebra)))
    assert result.status == "refused"
    assert result.provenance == "unknown"
    assert result.witness["outcome"] == "pass"


def test_unknown_hypothesis_keeps_a_failing_outcome():
    failing = CaseResult("R/M", "fail", "unknown", witness={"ring": "R", "data": {}})
    settled = _settle(failing)
    assert settled.status == "refused"
    assert settled.witness["outcome"] == "fail"
    assert "data" in settled.witness
    backed = CaseResult("R/M", "fail", "commutative")
    assert _settle(backed) is backed


def test_flat_right_module_gives_provenance(mixed_entry):
    ring = mixed_entry.ring
    assert _provenance(ring) == "unknown"
    right = mixed_entry.right_modules[0][1]
    assert _provenance(ring, (right,)) == "flat"


def test_extension_records_a_skipped_degree(corpus):
    settings = dict(SMALL, exhaustive_limit=0)
    report = run_suite("extension", corpus, settings=settings)
    assert _statuses(report) <= {"pass", "inconclusive"}
    skipped = [c for c in report.cases if c.status == "inconclusive"]
    assert skipped
    for case in skipped:
        assert case.witness["skipped_degree"] == "3"
    assert report.exit_code == 0
