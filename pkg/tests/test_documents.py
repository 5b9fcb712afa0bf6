import json
import os
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M0, osm_from_seed
from sseq import IntMatrix, OrderedSeifertMatrix
from sseq.documents import (
    parse_int_matrix,
    parse_matrix,
    parse_moves,
    persist_report,
    read_report,
    serialize_matrix,
    serialize_moves,
)
from sseq.errors import ParseError, ReportIOError, ValidationError
from sseq.invariants import InvariantFingerprint, fingerprint
from sseq.moves import ClassicalCongruence, Enlarge, Reduce, StrongCongruence, random_sequence

M0_TEXT = '{"components": 3, "genus": 0, "entries": [[-1, -1], [-1, -1]], "label": "M0"}'


def test_parse_counterexample_document():
    assert parse_matrix(M0_TEXT) == M0


def test_dimension_error_names_invariant():
    text = '{"components": 3, "genus": 0, "entries": [[0,0,0],[0,0,0],[0,0,0]]}'
    with pytest.raises(ValidationError) as info:
        parse_matrix(text)
    assert info.value.invariant == "size"


def test_classical_parse_relaxes_validation():
    text = '{"components": 3, "genus": 0, "entries": [[0, 1], [0, 0]]}'
    with pytest.raises(ValidationError) as info:
        parse_matrix(text)
    assert info.value.invariant == "lambda_symmetry"
    assert parse_matrix(text, strict=False).matrix == IntMatrix([[0, 1], [0, 0]])


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as info:
        parse_matrix('{"components": 3,\n"genus": 0,\n"entries": [[1, 2]')
    assert info.value.line == 3
    with pytest.raises(ParseError) as info:
        parse_matrix('{"components": 3, "genus": 0, "entries": [[1, true], [0, 0]]}')
    assert info.value.field == "entries[0][1]"
    with pytest.raises(ParseError) as info:
        parse_matrix('{"components": 3, "entries": []}')
    assert info.value.field == "genus"
    with pytest.raises(ParseError) as info:
        parse_matrix('{"components": 1, "genus": 1, "entries": [[1, 2], [3]]}')
    assert info.value.field == "entries[1]"


def big_osm(seed):
    """A valid matrix with entries far outside the 64-bit range."""
    rng = random.Random(seed)
    S = osm_from_seed(seed)
    rows = S.matrix.tolist()
    for i in range(S.dim):
        for j in range(i, S.dim):
            k = rng.choice([0, 1, -1]) * rng.randint(2 ** 63, 2 ** 200)
            rows[i][j] += k
            if i != j:
                rows[j][i] += k
    return S.with_matrix(IntMatrix(rows))


@given(st.integers(0, 2 ** 32))
def test_big_matrix_round_trip_is_byte_identical(seed):
    S = big_osm(seed)
    text = serialize_matrix(S, label=f"big-{seed}")
    again = parse_matrix(text)
    assert again == S
    assert serialize_matrix(again, label=f"big-{seed}") == text


def test_big_integers_are_strings_only_outside_64_bits():
    S = OrderedSeifertMatrix(1, 1, IntMatrix([[2 ** 63, 1], [0, -2 ** 63]]))
    doc = json.loads(serialize_matrix(S))
    assert doc["entries"] == [[str(2 ** 63), 1], [0, -2 ** 63]]


def test_move_documents_round_trip():
    moves = [StrongCongruence([[1, 0], [5, 1]]), ClassicalCongruence([[0, 1], [1, 0]]),
             Enlarge("B", (1, 2 ** 80), (1, -3), -2 ** 70), Reduce()]
    text = serialize_moves(moves)
    assert parse_moves(text) == moves
    assert serialize_moves(parse_moves(text)) == text


@given(st.integers(0, 2 ** 32))
def test_random_sequences_round_trip(seed):
    seq = random_sequence(osm_from_seed(seed), 6, 3, seed)
    text = serialize_moves(seq.moves)
    assert tuple(parse_moves(text)) == seq.moves


def test_move_parse_errors_are_positioned():
    with pytest.raises(ParseError) as info:
        parse_moves('[{"type": "reduce"}, {"type": "twist"}]')
    assert info.value.field == "moves[1].type"
    with pytest.raises(ParseError) as info:
        parse_moves('[{"type": "enlarge", "form": "A", "x": [], "y": []}]')
    assert info.value.field == "moves[0].z"


def test_parse_moves_accepts_wrappers():
    body = [{"type": "reduce"}]
    for doc in (body, {"moves": body}, {"witness": {"moves": body}, "verdict": "equivalent"}):
        assert parse_moves(json.dumps(doc)) == [Reduce()]


def test_parse_int_matrix_forms():
    assert parse_int_matrix("[[1, 2], [3, 4]]") == IntMatrix([[1, 2], [3, 4]])
    assert parse_int_matrix('{"entries": [["5"]]}') == IntMatrix([[5]])


# -- reports ------------------------------------------------------------------------

def test_fingerprint_report_round_trip(tmp_path):
    report = {"fingerprint": fingerprint(M0).to_dict(), "label": "M0"}
    path = tmp_path / "report.json"
    persist_report(report, str(path))
    assert read_report(str(path)) == report
    assert InvariantFingerprint.from_dict(read_report(str(path))["fingerprint"]) == fingerprint(M0)
    first = path.read_bytes()
    persist_report(dict(reversed(list(report.items()))), str(path))
    assert path.read_bytes() == first


def test_unwritable_path_leaves_no_partial_file(tmp_path):
    missing = tmp_path / "no" / "such" / "dir" / "r.json"
    with pytest.raises(ReportIOError) as info:
        persist_report({"a": 1}, str(missing))
    assert str(missing) in str(info.value)
    # the destination is a directory: os.replace fails after the temp file was written
    target = tmp_path / "occupied"
    target.mkdir()
    with pytest.raises(ReportIOError):
        persist_report({"a": 1}, str(target))
    assert os.listdir(tmp_path) == ["occupied"]
    assert os.listdir(target) == []


def test_read_report_missing_file(tmp_path):
    with pytest.raises(ReportIOError):
        read_report(str(tmp_path / "nothing.json"))
