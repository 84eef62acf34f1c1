"""Schemas of corpus manifests and verification reports"""

import yaml

from modlab import ValidationError
from modlab.schema import check_fields, check_type
from modlab.utils import read_package_text

from . import conf

CORPUS_SCHEMA_FILE = "corpus_schema.yaml"
REPORT_SCHEMA_FILE = "report_schema.yaml"


class DocumentSchema(object):
    """Defines the structure of a YAML document and supports validation"""

    def __init__(self, schema_file, root):
        schema = read_package_text(conf, schema_file)
        self.schema = yaml.safe_load(schema)
        self.root = root
        self.definition = schema_file

    @property
    def fields(self):
        return {k: v for k, v in self.schema[self.root].items()}  # noqa: C416

    @property
    def mandatory_fields(self):
        return {k: v for k, v in self.fields.items() if v["mandatory"]}

    def field_definition(self, field):
        return self.fields.get(field, None)

    def check_type(self, field, value):
        """Checks whether a top-level field's type matches the definition"""
        field_def = self.field_definition(field)
        if field_def is None:
            raise ValidationError(f"Field {field} not defined in schema.")
        return check_type(self.schema, field, field_def, value)

    def validate(self, document):
        if not isinstance(document, dict):
            raise ValidationError(f"A {self.root} must be a mapping")
        check_fields(self.schema, self.root, self.fields, document)
        return True


class CorpusSchema(DocumentSchema):
    def __init__(self):
        super().__init__(CORPUS_SCHEMA_FILE, "manifest")


class ReportSchema(DocumentSchema):
    def __init__(self):
        super().__init__(REPORT_SCHEMA_FILE, "report")

    def validate(self, document):
        super().validate(document)
        counts = {k: int(v) for k, v in document["summary"].items()}
        if sum(counts.values()) != len(document["cases"]):
            raise ValidationError("Report summary does not add up to its cases")
        return True
