"""JSON interchange documents for matrices, moves and reports.

Integers outside the signed 64-bit range are written as decimal strings;
both forms are accepted on input.
"""

import json
import os
import tempfile

from .errors import ParseError, ReportIOError, ValidationError
from .linalg import IntMatrix
from .moves import ClassicalCongruence, Enlarge, Reduce, StrongCongruence
from .seifert import OrderedSeifertMatrix, validate

__all__ = [
    "encode_int",
    "decode_int",
    "matrix_to_document",
    "serialize_matrix",
    "parse_matrix",
    "document_to_osm",
    "parse_int_matrix",
    "move_to_document",
    "move_from_document",
    "serialize_moves",
    "parse_moves",
    "load_json",
    "persist_report",
    "read_report",
]

_INT64 = 2 ** 63


def encode_int(v):
    return v if -_INT64 <= v < _INT64 else str(v)


def decode_int(v, field):
    if isinstance(v, bool):
        raise ParseError("expected an integer, got a boolean", field=field)
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip(), 10)
        except ValueError:
            pass
    raise ParseError(f"expected an integer, got {v!r}", field=field)


def load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc


def _decode_rows(rows, field):
    if not isinstance(rows, list):
        raise ParseError("expected a list of rows", field=field)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise ParseError("expected a list", field=f"{field}[{i}]")
        out.append([decode_int(v, f"{field}[{i}][{j}]") for j, v in enumerate(row)])
    width = len(out[0]) if out else 0
    for i, row in enumerate(out):
        if len(row) != width:
            raise ParseError("ragged matrix rows", field=f"{field}[{i}]")
    return IntMatrix(out, ncols=width)


def _encode_rows(M):
    return [[encode_int(v) for v in r] for r in M.rows]


def matrix_to_document(S, label=None):
    doc = {"components": S.m, "genus": S.g, "entries": _encode_rows(S.matrix)}
    if label is not None:
        doc["label"] = label
    return doc


def _dump_rows(rows, indent):
    if not rows:
        return "[]"
    pad = " " * indent
    inner = ",\n".join(pad + "  " + json.dumps(r) for r in rows)
    return "[\n" + inner + "\n" + pad + "]"


def serialize_matrix(S, label=None):
    """Deterministic text for a MatrixDocument (one matrix row per line)."""
    doc = matrix_to_document(S, label)
    lines = ["{",
             f'  "components": {doc["components"]},',
             f'  "genus": {doc["genus"]},']
    tail = f'  "entries": {_dump_rows(doc["entries"], 2)}'
    if label is not None:
        lines.append(tail + ",")
        lines.append(f'  "label": {json.dumps(label)}')
    else:
        lines.append(tail)
    lines.append("}")
    return "\n".join(lines) + "\n"


def document_to_osm(doc, strict=True):
    if not isinstance(doc, dict):
        raise ParseError("a matrix document must be an object")
    for key in ("components", "genus", "entries"):
        if key not in doc:
            raise ParseError("missing field", field=key)
    m = decode_int(doc["components"], "components")
    g = decode_int(doc["genus"], "genus")
    if m < 1:
        raise ParseError("components must be at least 1", field="components")
    if g < 0:
        raise ParseError("genus must be non-negative", field="genus")
    S = OrderedSeifertMatrix(m, g, _decode_rows(doc["entries"], "entries"))
    if strict is None:
        return S
    report = validate(S, strict=strict)
    if not report.ok:
        name = report.failures()[0]
        if name == "size":
            msg = f"entries are {S.matrix.nrows}x{S.matrix.ncols}, expected size m-1+2g = {m - 1 + 2 * g}"
        else:
            msg = f"invariant {name} fails: {report.summary()}"
        raise ValidationError(msg, invariant=name)
    return S


def parse_matrix(text, strict=True):
    """Parse a MatrixDocument into a validated OrderedSeifertMatrix.

    ``strict=False`` relaxes validation to the classical checks and
    ``strict=None`` skips validation altogether.
    """
    return document_to_osm(load_json(text), strict=strict)


def parse_int_matrix(text):
    """A bare 2D list, or any object with an ``entries`` field."""
    doc = load_json(text)
    if isinstance(doc, dict):
        if "entries" not in doc:
            raise ParseError("missing field", field="entries")
        return _decode_rows(doc["entries"], "entries")
    return _decode_rows(doc, "matrix")


# -- moves -----------------------------------------------------------------------

def move_to_document(mv):
    if isinstance(mv, StrongCongruence):
        return {"type": "strong_congruence", "A": _encode_rows(mv.A)}
    if isinstance(mv, ClassicalCongruence):
        return {"type": "classical_congruence", "P": _encode_rows(mv.P)}
    if isinstance(mv, Enlarge):
        return {"type": "enlarge", "form": mv.form,
                "x": [encode_int(v) for v in mv.x],
                "y": [encode_int(v) for v in mv.y],
                "z": encode_int(mv.z)}
    if isinstance(mv, Reduce):
        return {"type": "reduce"}
    raise TypeError(f"not a move: {mv!r}")


def move_from_document(doc, position=0):
    where = f"moves[{position}]"
    if not isinstance(doc, dict) or "type" not in doc:
        raise ParseError("a move must be an object with a 'type'", field=where)
    kind = doc["type"]
    try:
        if kind == "strong_congruence":
            return StrongCongruence(_decode_rows(doc["A"], f"{where}.A"))
        if kind == "classical_congruence":
            return ClassicalCongruence(_decode_rows(doc["P"], f"{where}.P"))
        if kind == "enlarge":
            form = doc["form"]
            if form not in ("A", "B"):
                raise ParseError("form must be 'A' or 'B'", field=f"{where}.form")
            x = [decode_int(v, f"{where}.x") for v in doc["x"]]
            y = [decode_int(v, f"{where}.y") for v in doc["y"]]
            return Enlarge(form, x, y, decode_int(doc["z"], f"{where}.z"))
        if kind == "reduce":
            return Reduce()
    except KeyError as exc:
        raise ParseError("missing field", field=f"{where}.{exc.args[0]}") from None
    raise ParseError(f"unknown move type {kind!r}", field=f"{where}.type")


def serialize_moves(moves):
    return json.dumps({"moves": [move_to_document(mv) for mv in moves]}, indent=2) + "\n"


def parse_moves(text):
    """Accepts a bare list, ``{"moves": [...]}`` or ``{"witness": {"moves": [...]}}``."""
    doc = load_json(text)
    if isinstance(doc, dict):
        if "witness" in doc and isinstance(doc["witness"], dict):
            doc = doc["witness"]
        if "moves" not in doc:
            raise ParseError("missing field", field="moves")
        doc = doc["moves"]
    if not isinstance(doc, list):
        raise ParseError("moves must be a list", field="moves")
    return [move_from_document(d, i) for i, d in enumerate(doc)]


# -- reports ---------------------------------------------------------------------

def _dumps_report(report):
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def persist_report(report, path):
    """Write a report atomically; on failure no partial file is left behind."""
    text = _dumps_report(report)
    directory = os.path.dirname(os.path.abspath(path))
    tmp = None
    try:
        fd, tmp = tempfile.mkstemp(prefix=".sseq-", suffix=".tmp", dir=directory)
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
        tmp = None
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {path}: {exc.strerror or exc}") from exc
    finally:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)


def read_report(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ReportIOError(f"cannot read report {path}: {exc.strerror or exc}") from exc
