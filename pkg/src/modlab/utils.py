import os
import sys

if sys.version_info >= (3, 9):
    from importlib.resources import files as imprtlb_files
else:
    from importlib_resources import files as imprtlb_files

import yaml

from modlab import CorpusFileError, InputError, UniqueKeyLoader, ValidationError
from modlab.linalg import IntMatrix


def chunks(seq, size):
    """Consecutive slices of ``seq`` of length ``size``"""
    if size < 1 or len(seq) % size:
        raise InputError(f"Cannot split {len(seq)} values into pieces of {size}")
    return [tuple(seq[i : i + size]) for i in range(0, len(seq), size)]


def parse_int_list(text: str):
    """'1,0, 2' -> [1, 0, 2]"""
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"Expected comma separated integers, got {text!r}")


def parse_matrix(text: str) -> IntMatrix:
    """A matrix given as a YAML list of rows, e.g. '[[2,4],[6,8]]'"""
    try:
        rows = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InputError(f"Cannot parse matrix {text!r}: {e}")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"Matrix must be a list of rows, got {text!r}")
    try:
        return IntMatrix.from_rows(rows, len(rows[0]) if rows else 0)
    except (TypeError, ValueError) as e:
        raise InputError(f"Matrix entries must be integers: {e}")


def matrix_to_str(m: IntMatrix) -> str:
    if m.rows == 0:
        return "[]"
    width = max(len(str(x)) for r in m.entries for x in r) if m.cols else 0
    return "\n".join(
        "[" + " ".join(str(x).rjust(width) for x in r) + "]" for r in m.entries
    )


def load_yaml_file(path: str):
    """Reads a YAML file, rejecting duplicate keys.

    Raises:
        CorpusFileError: if the file is missing or does not parse, with the
            parser position when available
    """
    if not os.path.isfile(path):
        raise CorpusFileError(f"No such file {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            return yaml.load(f, UniqueKeyLoader)
        except ValidationError as e:
            raise CorpusFileError(f"Invalid YAML in {path}", e)
        except yaml.MarkedYAMLError as e:
            mark = e.problem_mark
            where = ""
            if mark:
                where = f" at line {mark.line + 1}, column {mark.column + 1}"
            raise CorpusFileError(f"Cannot parse {path}{where}", e)


def read_package_text(package, name: str) -> str:
    """Text of a data file shipped inside a modlab subpackage"""
    return imprtlb_files(package).joinpath(name).read_text(encoding="utf-8")
