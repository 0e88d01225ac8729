"""
Report documents and their byte-deterministic JSON/CSV renderings.

Rationals are always written as "p/q" strings (q = 1 included), subsets as
ascending 1-based arrays, JSON keys sorted. Nothing here ever emits a float.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from app.config import SCHEMA_VERSION

FORMATS = ("json", "csv")


@dataclass
class ReportDocument:
    kind: str
    command: dict
    n: int
    weights: list = None
    payload: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "command": self.command,
            "ground_set": list(range(1, self.n + 1)),
            "n": self.n,
            "weights": self.weights,
            "payload": self.payload,
        }


def plain(value):
    """Convert a payload into JSON-safe values; rationals become "p/q"."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise TypeError(f"floating-point value {value!r} cannot appear in a report")
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, "to_payload"):
        return plain(value.to_payload())
    raise TypeError(f"cannot serialize {type(value).__name__}")


def compact(value):
    return json.dumps(plain(value), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return compact(value)


def _class_rows(payload):
    yield ("subset", "coefficient")
    for entry in payload["coefficients"]:
        yield (compact(entry["subset"]), entry["coefficient"])


def _curve_rows(payload):
    columns = ("partition", "contracted", "type", "table_value", "direct_value", "match")
    yield columns
    for row in payload["curves"]:
        yield tuple(_cell(row[column]) for column in columns)


def _verification_rows(payload):
    yield ("check", "status", "detail")
    for name, check in payload["checks"].items():
        detail = compact(check["counterexamples"][0]) if check["counterexamples"] else f"runs={check['runs']}"
        yield (name, check["status"], detail)


def _scan_rows(payload):
    yield ("weights", "regime", "chamber", "walls")
    for descriptor in payload["descriptors"]:
        chamber = descriptor["collisions"] if descriptor["model"] == "hassett" else descriptor["walls"]
        yield (compact(descriptor["weights"]), descriptor["regime"], compact(chamber), compact(descriptor["walls"]))


def _field_rows(payload):
    yield ("field", "value")
    for key in sorted(payload):
        yield (key, _cell(payload[key]))


CSV_ROWS = {
    "class": _class_rows,
    "curves": _curve_rows,
    "verification": _verification_rows,
    "scan": _scan_rows,
    "model": _field_rows,
    "rank": _field_rows,
}


def emit(document, fmt="json"):
    """Render a document as UTF-8 bytes, newline-terminated."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}, expected one of {', '.join(FORMATS)}")
    data = plain(document.to_dict())
    if fmt == "json":
        text = json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        return text.encode("utf-8")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(CSV_ROWS[document.kind](data["payload"]))
    return buffer.getvalue().encode("utf-8")
