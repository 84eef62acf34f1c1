import pytest

from modlab.manifest_schema import CorpusSchema, ReportSchema, ValidationError
from modlab.schema import check_type


@pytest.fixture
def schema():
    return CorpusSchema()


@pytest.fixture
def report_schema():
    return ReportSchema()


@pytest.fixture
def report():
    return {
        "suite": "tor",
        "corpus": "0123456789abcdef",
        "seed": "0",
        "version": "0.1.0",
        "summary": {"pass": "1", "fail": "0", "refused": "0", "inconclusive": "0"},
        "cases": [
            {
                "id": "Z4/Z4:L1",
                "status": "pass",
                "provenance": "unconditional",
                "expected": "positive",
                "witness": {"ring": "Z4"},
            }
        ],
    }


def test_init(schema):
    assert isinstance(schema, CorpusSchema)
    assert schema.definition == "corpus_schema.yaml"


def test_manifest_fields(schema):
    assert isinstance(schema.fields, dict)
    assert "rings" in schema.fields
    assert schema.fields["seed"]["type"] == "integer"
    assert "seed" in schema.mandatory_fields
    assert "bounds" in schema.mandatory_fields
    assert schema.field_definition("nothing") is None


def test_check_type(schema):
    assert schema.check_type("seed", "42")
    assert schema.check_type("seed", "-1")
    with pytest.raises(ValidationError) as e:
        schema.check_type("seed", 42)
    assert "Field seed must be an integer written as a decimal string" in str(e.value)

    assert schema.check_type("rings", [])
    with pytest.raises(ValidationError) as e:
        schema.check_type("rings", "Z4")
    assert "Field rings must be of type list" in str(e.value)

    with pytest.raises(ValidationError) as e:
        schema.check_type("title", "x")
    assert "Field title not defined in schema." in str(e.value)


def test_check_records(schema):
    ring = {"id": "Z2", "ring": {"orders": ["2"], "unit": ["1"], "mul": [[["1"]]]}}
    assert schema.check_type("rings", [ring])

    ring["ring"]["colour"] = "blue"
    with pytest.raises(ValidationError) as e:
        schema.check_type("rings", [ring])
    assert "Field colour not allowed in rings[0].ring" in str(e.value)

    with pytest.raises(ValidationError) as e:
        schema.check_type("rings", [{"id": "Z2"}])
    assert "Mandatory field ring missing in rings[0]" in str(e.value)


def test_module_side_is_a_choice(schema):
    record = {"side": "up", "orders": [], "action": []}
    module = {"id": "m", "ring_id": "Z2", "module": record}
    with pytest.raises(ValidationError) as e:
        schema.check_type("modules", [module])
    assert "must be one of left, right, bi" in str(e.value)


def test_matrix_type():
    definition = {"type": "matrix"}
    assert check_type({}, "m", definition, [["1", "0"], ["0", "1"]])
    with pytest.raises(ValidationError) as e:
        check_type({}, "m", definition, [["1", "0"], ["1"]])
    assert "Rows of matrix m differ in length" in str(e.value)
    with pytest.raises(ValidationError):
        check_type({}, "m", definition, [[1, 0]])


def test_unknown_type():
    with pytest.raises(ValidationError) as e:
        check_type({}, "x", {"type": "datetime"}, "2021-04-21")
    assert "Unsupported schema type datetime" in str(e.value)


def test_validate_report(report_schema, report):
    assert report_schema.validate(report)

    report["summary"]["fail"] = "1"
    with pytest.raises(ValidationError) as e:
        report_schema.validate(report)
    assert "does not add up" in str(e.value)


def test_report_case_fields(report_schema, report):
    report["cases"][0]["status"] = "maybe"
    with pytest.raises(ValidationError):
        report_schema.validate(report)


def test_validate_needs_a_mapping(report_schema):
    with pytest.raises(ValidationError):
        report_schema.validate(["cases"])
