import pytest

from modlab import CorpusFileError, InputError
from modlab import conf, db
from modlab.linalg import IntMatrix
from modlab.utils import (
    chunks,
    load_yaml_file,
    matrix_to_str,
    parse_int_list,
    parse_matrix,
    read_package_text,
)


def test_chunks():
    assert chunks([1, 0, 0, 1], 2) == [(1, 0), (0, 1)]
    assert chunks([], 3) == []
    with pytest.raises(InputError):
        chunks([1, 2, 3], 2)


def test_parse_int_list():
    assert parse_int_list("1,0, 2") == [1, 0, 2]
    assert parse_int_list("-3,") == [-3]
    with pytest.raises(InputError):
        parse_int_list("1,x")


def test_parse_matrix():
    assert parse_matrix("[[2,4],[6,8]]") == IntMatrix.from_rows([[2, 4], [6, 8]])
    assert parse_matrix("[]").rows == 0
    for bad in ("[[1,2],[3]]", "5", "[[a]]", "[[1,"):
        with pytest.raises(InputError):
            parse_matrix(bad)


def test_matrix_to_str():
    assert matrix_to_str(IntMatrix.from_rows([[1, -2], [10, 0]])) == (
        "[ 1 -2]\n[10  0]"
    )
    assert matrix_to_str(IntMatrix.zeros(0, 0)) == "[]"


def test_load_yaml_file():
    ring = load_yaml_file("tests/testfiles/compute/z4.yaml")
    assert ring["orders"] == ["4"]
    with pytest.raises(CorpusFileError) as e:
        load_yaml_file("tests/testfiles/corpus/unparsable.yaml")
    assert "line" in str(e.value)
    with pytest.raises(CorpusFileError) as e:
        load_yaml_file("tests/testfiles/corpus/duplicate_keys.yaml")
    assert "Duplicate 'seed' key" in str(e.value)
    with pytest.raises(CorpusFileError):
        load_yaml_file("tests/testfiles/nothing.yaml")


def test_read_package_text():
    assert "Z4:" in read_package_text(db, "ring_zoo.yaml")
    assert read_package_text(conf, "report_schema.yaml").startswith("report:")
