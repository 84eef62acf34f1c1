import copy

import pytest
import yaml

from modlab import CorpusFileError, InputError, ValidationError
from modlab.corpus import (
    CorpusManifest,
    corpus_generate,
    hp2_family,
    load_corpus,
    module_from_dict,
    module_to_dict,
    ring_from_dict,
    ring_to_dict,
)
from modlab.modules import regular_bimodule
from modlab.zoo import default_zoo


@pytest.fixture(scope="module")
def small_manifest():
    return corpus_generate(4, 16, seed=1)


@pytest.fixture
def manifest_dir(tmp_path, small_manifest):
    small_manifest.write(str(tmp_path))
    return tmp_path


def test_smallest_corpus_holds_only_z2():
    manifest = corpus_generate(2, 4, seed=0)
    assert [r["id"] for r in manifest.rings] == ["Z2"]
    assert all(m["ring_id"] == "Z2" for m in manifest.modules)
    assert all(a["base"] == "Z2" for a in manifest.algebras)


def test_corpus_respects_bounds(small_manifest):
    assert [r["id"] for r in small_manifest.rings] == ["Z2", "Z4", "Z2xZ2", "F4"]
    corpus = small_manifest.to_corpus()
    for entry in corpus.entries:
        assert entry.ring.order <= 4
        for _, module in entry.left_modules + entry.right_modules:
            assert 1 < module.order <= 16
        assert entry.algebras.base == entry.ring


def test_corpus_contains_mandatory_rings():
    manifest = corpus_generate(16, 64, seed=42)
    ids = [r["id"] for r in manifest.rings]
    for name in default_zoo().mandatory:
        assert name in ids


def test_corpus_is_deterministic(small_manifest):
    again = corpus_generate(4, 16, seed=1)
    assert again.dump() == small_manifest.dump()
    assert again.identifier == small_manifest.identifier
    assert len(small_manifest.identifier) == 16


def test_corpus_bounds_are_checked():
    with pytest.raises(InputError):
        corpus_generate(1, 16)
    with pytest.raises(InputError):
        corpus_generate(16, 0)


def test_manifest_round_trip(manifest_dir, small_manifest):
    loaded = CorpusManifest.load(str(manifest_dir))
    assert loaded.to_dict() == small_manifest.to_dict()
    assert loaded.identifier == small_manifest.identifier

    corpus = load_corpus(str(manifest_dir / "manifest.yaml"))
    assert corpus.identifier == small_manifest.identifier
    assert corpus.seed == 1
    assert corpus.entry("Z4").ring == default_zoo().ring("Z4")
    with pytest.raises(InputError):
        corpus.entry("Z9")


def test_manifest_ids_must_resolve(small_manifest):
    data = copy.deepcopy(small_manifest.to_dict())
    data["modules"][0]["ring_id"] = "nowhere"
    with pytest.raises(CorpusFileError):
        CorpusManifest.from_dict(data)

    data = copy.deepcopy(small_manifest.to_dict())
    data["arrows"][0]["target"] = "Z4:S99"
    with pytest.raises(CorpusFileError):
        CorpusManifest.from_dict(data)

    data = copy.deepcopy(small_manifest.to_dict())
    data["modules"].append(dict(data["modules"][0]))
    with pytest.raises(CorpusFileError):
        CorpusManifest.from_dict(data)


def test_manifest_needs_seed_and_bounds():
    with pytest.raises(CorpusFileError):
        CorpusManifest.from_dict({"rings": []})
    with pytest.raises(CorpusFileError):
        CorpusManifest.from_dict(["not", "a", "mapping"])


def test_manifest_is_validated(tmp_path, small_manifest):
    data = copy.deepcopy(small_manifest.to_dict())
    data["seed"] = 1
    path = tmp_path / "manifest.yaml"
    path.write_text(yaml.safe_dump(data))
    with pytest.raises(ValidationError):
        CorpusManifest.load(str(path))
    assert CorpusManifest.load(str(path), validate=False).seed == 1


def test_broken_manifest_files():
    with pytest.raises(CorpusFileError):
        CorpusManifest.load("tests/testfiles/corpus/duplicate_keys.yaml")
    with pytest.raises(CorpusFileError):
        CorpusManifest.load("tests/testfiles/corpus/unparsable.yaml")
    with pytest.raises(CorpusFileError):
        CorpusManifest.load("tests/testfiles/corpus/missing")


def test_ring_and_module_records(t2f2):
    assert ring_from_dict(ring_to_dict(t2f2)) == t2f2
    bimodule = regular_bimodule(t2f2)
    data = module_to_dict(bimodule)
    assert "right_action" in data
    assert module_from_dict(data, t2f2) == bimodule


def test_malformed_records(t2f2):
    data = ring_to_dict(t2f2)
    data["unit"] = ["one", "0", "0"]
    with pytest.raises(CorpusFileError):
        ring_from_dict(data)
    with pytest.raises(CorpusFileError):
        module_from_dict({"side": "left"}, t2f2)


def test_hp2_family():
    family = hp2_family(8, 16)
    assert [e.ring_id for e in family] == ["T(2,2,2)"]
    entry = family[0]
    assert not entry.ring.is_commutative
    assert entry.left_modules and entry.right_modules
    assert len(entry.algebras.objects) == 1
