from modlab import ValidationError


def load_field_type_definition(udts, item_type):
    if item_type.startswith("@"):
        fd = udts.get(item_type[1:])
        if fd is None:
            raise ValidationError(f"No type {item_type[1:]} found in the schema.")
        return fd
    else:
        return {"type": item_type}


def check_type_list_items(udts, field_name, field_definition, lst):
    if "item_type" in field_definition:
        item_type = field_definition["item_type"]
        if item_type.startswith("@"):
            # records of a user defined type
            item_def = {"type": "dict", "item_type": item_type}
        else:
            item_def = load_field_type_definition(udts, item_type)
        for i, x in enumerate(lst):
            check_type(udts, f"{field_name}[{i}]", item_def, x)


def check_fields(udts, field_name, fd_def, dct):
    """Mandatory fields present, no unknown fields, every value well-typed"""
    mandatory_fields = [k for k, v in fd_def.items() if bool(v.get("mandatory", False))]

    for field in mandatory_fields:
        if field not in dct:
            raise ValidationError(f"Mandatory field {field} missing in {field_name}")

    for k, v in dct.items():
        fd = fd_def.get(k, None)
        if fd is None:
            raise ValidationError(f"Field {k} not allowed in {field_name}")
        check_type(udts, f"{field_name}.{k}", fd, v)


def check_type_dict(udts, field_name, field_definition, dct):
    if not isinstance(dct, dict):
        raise ValidationError(f"Field {field_name} must be of type dict")
    if "item_type" in field_definition:
        fd_def = load_field_type_definition(udts, field_definition["item_type"])
        if "type" in fd_def and isinstance(fd_def["type"], str):
            raise ValidationError(
                f"Type of dict {field_name} is a basic type {fd_def['type']}"
            )
        check_fields(udts, field_name, fd_def, dct)


def _is_decimal(value):
    if not isinstance(value, str):
        return False
    digits = value[1:] if value.startswith("-") else value
    return digits.isdigit()


def check_type(udts, field_name, field_definition, value):
    """Checks whether a field's type matches the definition.

    Integers are stored as decimal strings.
    """
    schema_type = field_definition["type"]
    if schema_type == "text":
        if not isinstance(value, str):
            raise ValidationError("Field {} must be of type text".format(field_name))
        if len(value.strip()) == 0:
            raise ValidationError("Empty value in text field {}".format(field_name))
    elif schema_type == "string":
        if not isinstance(value, str):
            raise ValidationError(f"Field {field_name} must be of type string")
    elif schema_type == "integer":
        if not _is_decimal(value):
            raise ValidationError(
                f"Field {field_name} must be an integer written as a decimal string"
            )
    elif schema_type == "integer_list":
        if not isinstance(value, list) or not all(_is_decimal(x) for x in value):
            raise ValidationError(
                f"Field {field_name} must be a list of decimal strings"
            )
    elif schema_type == "matrix":
        if not isinstance(value, list):
            raise ValidationError(f"Field {field_name} must be a list of rows")
        for i, row in enumerate(value):
            check_type(udts, f"{field_name}[{i}]", {"type": "integer_list"}, row)
        if len({len(row) for row in value}) > 1:
            raise ValidationError(f"Rows of matrix {field_name} differ in length")
    elif schema_type == "choice":
        if value not in field_definition.get("values", []):
            raise ValidationError(
                f"Value {value} of field {field_name} must be one of "
                f"{', '.join(field_definition.get('values', []))}"
            )
    elif schema_type == "list":
        if not isinstance(value, list):
            raise ValidationError(f"Field {field_name} must be of type list")
        check_type_list_items(udts, field_name, field_definition, value)
    elif schema_type == "dict":
        check_type_dict(udts, field_name, field_definition, value)
    else:
        raise ValidationError("Unsupported schema type {}".format(schema_type))
    return True
