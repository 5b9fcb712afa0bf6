"""Command-line front end.

Human-readable text goes to stdout by default; ``--json`` switches stdout to
a single JSON document instead.  Errors are always a JSON object on stderr.

Exit codes: 0 success (or Equivalent), 1 invalid input or failed check,
2 Distinguished, 3 Inconclusive, 4 I/O failure, 64 usage error.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .documents import (
    document_to_osm,
    encode_int,
    load_json,
    matrix_to_document,
    move_to_document,
    parse_int_matrix,
    parse_matrix,
    parse_moves,
    persist_report,
)
from .errors import ReportIOError, SeifertError
from .factorize import elementary_factorization, factor_DE, split_blocks, stabilizes_X
from .invariants import InvariantFingerprint, classical_fingerprint, fingerprint
from .linalg import IntMatrix
from .moves import MoveSequence, apply_sequence
from .normalize import annotate, common_matrix, normalize_sequence
from .search import (
    Distinguished,
    Equivalent,
    SearchConfig,
    classical_equiv_bounded,
    search_report,
    strong_equiv_bounded,
)
from .seifert import OrderedSeifertMatrix, linking_numbers, validate

EXIT_OK, EXIT_INVALID, EXIT_DISTINGUISHED, EXIT_INCONCLUSIVE, EXIT_IO, EXIT_USAGE = 0, 1, 2, 3, 4, 64
_VERDICT_EXIT = {"equivalent": EXIT_OK, "distinguished": EXIT_DISTINGUISHED,
                 "inconclusive": EXIT_INCONCLUSIVE}

M0_ROWS = [[-1, -1], [-1, -1]]
M1_ROWS = [[-1, 0], [0, 0]]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _rows(M):
    return [[encode_int(v) for v in r] for r in M.rows]


def _value_doc(value):
    if isinstance(value, OrderedSeifertMatrix):
        return matrix_to_document(value)
    return {"entries": _rows(value)}


def _value_text(value):
    if isinstance(value, OrderedSeifertMatrix):
        return f"m={value.m} g={value.g}\n{value.matrix}"
    return str(value)


def _load_start(path, classical):
    """An OSM (strict) or, in classical mode, a bare integer matrix."""
    text = _read(path)
    if classical:
        return parse_int_matrix(text)
    return parse_matrix(text, strict=True)


# -- subcommands -------------------------------------------------------------------
# each returns (json-ready dict, human text, exit code)

def cmd_validate(args):
    S = parse_matrix(_read(args.matrix), strict=None)
    report = validate(S, strict=True)
    data = report.to_dict()
    data.update({"components": S.m, "genus": S.g})
    text = f"m={S.m} g={S.g}: " + ("valid" if report.ok else "INVALID: " + report.summary())
    return data, text, EXIT_OK if report.ok else EXIT_INVALID


def cmd_invariants(args):
    if args.classical:
        fp = classical_fingerprint(parse_int_matrix(_read(args.matrix)))
    else:
        fp = fingerprint(parse_matrix(_read(args.matrix)))
    data = fp.to_dict()
    data["conway_text"] = str(fp.conway)
    return data, str(fp), EXIT_OK


def cmd_apply(args):
    start = _load_start(args.matrix, args.classical)
    moves = parse_moves(_read(args.moves))
    final, trace = apply_sequence(MoveSequence(start, tuple(moves)))
    data = {"final": _value_doc(final)}
    lines = [_value_text(final)]
    if args.trace:
        data["trace"] = [_value_doc(t) for t in trace]
        lines = []
        for k, t in enumerate(trace):
            label = "start" if k == 0 else f"after move {k} ({moves[k - 1].kind})"
            lines.append(f"[{label}]\n{_value_text(t)}")
    return data, "\n".join(lines), EXIT_OK


def cmd_normalize(args):
    S = parse_matrix(_read(args.matrix))
    moves = parse_moves(_read(args.moves))
    history = []
    out = normalize_sequence(annotate(MoveSequence(S, tuple(moves))), history)
    data = {
        "moves": [move_to_document(mv) for mv in out.moves],
        "kinds": out.kinds,
        "input_kinds": "".join(mv.kind for mv in moves),
        "inversion_history": history,
    }
    lines = [f"input : {data['input_kinds'] or '(empty)'}",
             f"output: {out.kinds or '(empty)'} after {len(history)} rewrites"]
    if args.common:
        C = common_matrix(out)
        data["common"] = matrix_to_document(C)
        lines.append(f"common matrix ({C.dim}x{C.dim}):\n{C.matrix}")
    return data, "\n".join(lines), EXIT_OK


def cmd_factor(args):
    C = parse_int_matrix(_read(args.matrix))
    cb = split_blocks(C, args.m, args.g)
    D, E = factor_DE(cb)
    factors = elementary_factorization(cb)
    data = {
        "B": _rows(cb.B), "S": _rows(cb.S), "D": _rows(D), "E": _rows(E),
        "factors": [{"i": f.i, "j": f.j, "exponent": encode_int(f.exponent)} for f in factors],
        "stabilizes_X": stabilizes_X(C, args.m, args.g),
        "C_equals_DE": D @ E == C,
    }
    word = " ".join(f"E_{f.i},{f.j}^{f.exponent}" for f in factors) or "I"
    text = (f"B =\n{cb.B}\nS =\n{cb.S}\nE = {word}\n"
            f"C = D E: {data['C_equals_DE']}, stabilizes X: {data['stabilizes_X']}")
    return data, text, EXIT_OK


def _search_config(args):
    return SearchConfig(max_depth=args.depth, entry_bound=args.bound, max_genus=args.max_genus,
                        mode="classical" if args.classical else "strong", seed=args.seed,
                        enlarge_support=args.support, max_nodes=args.max_nodes)


def _search_payload(outcome, cfg):
    data, text = search_report(outcome, cfg)
    if isinstance(outcome, Equivalent):
        data["witness"] = {"moves": [move_to_document(mv) for mv in outcome.witness.moves]}
        data["meeting"] = _rows(outcome.meeting)
    return data, text


def cmd_search(args):
    cfg = _search_config(args)
    A = _load_start(args.matrix_a, args.classical)
    B = _load_start(args.matrix_b, args.classical)
    if args.classical:
        outcome = classical_equiv_bounded(A, B, cfg)
    else:
        outcome = strong_equiv_bounded(A, B, cfg)
    data, text = _search_payload(outcome, cfg)
    return data, text, _VERDICT_EXIT[outcome.verdict]


def run_counterexample(cfg_depth=2):
    """Classical search M1 -> M0, then strong comparison of the ordered pair."""
    M0, M1 = IntMatrix(M0_ROWS), IntMatrix(M1_ROWS)
    classical_cfg = SearchConfig(max_depth=cfg_depth, entry_bound=1, mode="classical")
    classical = classical_equiv_bounded(M1, M0, classical_cfg)
    S0, S1 = OrderedSeifertMatrix(3, 0, M0), OrderedSeifertMatrix(3, 0, M1)
    strong = strong_equiv_bounded(S0, S1, SearchConfig(max_depth=cfg_depth, entry_bound=1))
    return classical, strong, classical_cfg


def cmd_demo(args):
    classical, strong, ccfg = run_counterexample()
    cdata, ctext = _search_payload(classical, ccfg)
    sdata, stext = _search_payload(strong, None)
    S0 = OrderedSeifertMatrix(3, 0, IntMatrix(M0_ROWS))
    S1 = OrderedSeifertMatrix(3, 0, IntMatrix(M1_ROWS))
    ok = isinstance(classical, Equivalent) and isinstance(strong, Distinguished) \
        and strong.invariant == "linking"
    data = {"classical": cdata, "strong": sdata, "expected_verdicts": ok}
    text = "\n".join([
        "Two 3-component links with Seifert matrices",
        f"M0 =\n{S0.matrix}\nM1 =\n{S1.matrix}",
        "",
        "classical S-equivalence (M1 -> M0):",
        ctext,
        "",
        "strong S-equivalence (ordered bases):",
        stext,
        f"linking tables: {linking_numbers(S0)} vs {linking_numbers(S1)}",
        "",
        "both expected verdicts reproduced" if ok else "UNEXPECTED verdicts",
    ])
    return data, text, EXIT_OK if ok else EXIT_INVALID


def _fingerprint_of(doc):
    return fingerprint(document_to_osm(doc)).to_dict()


def batch_results(docs, jobs=1):
    """Fingerprints and pairwise differing parts (None when component counts differ)."""
    for d in docs:
        document_to_osm(d)  # validate everything before any parallel work
    if jobs > 1 and len(docs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            prints = list(pool.map(_fingerprint_of, docs))
    else:
        prints = [_fingerprint_of(d) for d in docs]
    fps = [InvariantFingerprint.from_dict(p) for p in prints]
    parts = InvariantFingerprint.PARTS
    table = []
    for a in fps:
        row = []
        for b in fps:
            if a.m != b.m:
                row.append(None)
            else:
                row.append([p for p in parts if getattr(a, p) != getattr(b, p)])
        table.append(row)
    labels = [d.get("label", f"#{k}") for k, d in enumerate(docs)]
    return {"labels": labels, "fingerprints": prints, "distinguishes": table}


def cmd_batch(args):
    catalog = load_json(_read(args.catalog))
    docs = catalog.get("matrices") if isinstance(catalog, dict) else catalog
    if not isinstance(docs, list):
        raise SeifertError("a catalog is a list of matrix documents or {\"matrices\": [...]}")
    results = batch_results(docs, args.jobs)
    output = args.output or args.catalog + ".results.json"
    persist_report(results, output)
    lines = [f"{len(docs)} matrices, results written to {output}"]
    for label, fp in zip(results["labels"], results["fingerprints"]):
        lines.append(f"  {label}: conway={fp['conway']} signature={fp['signature']} "
                     f"determinant={fp['determinant']}")
    n = len(docs)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)
             if results["distinguishes"][i][j]]
    lines.append(f"{len(pairs)} of {n * (n - 1) // 2} pairs distinguished")
    data = dict(results, output=output)
    return data, "\n".join(lines), EXIT_OK


# -- wiring -------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="sseq", description="Strong S-equivalence of ordered Seifert matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="write one JSON document to stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="strict validation report")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", help="linking, Conway, signature, determinant")
    s.add_argument("matrix")
    s.add_argument("--classical", action="store_true", help="unordered matrix, no linking table")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("apply", help="replay a move sequence")
    s.add_argument("matrix")
    s.add_argument("moves")
    s.add_argument("--trace", action="store_true", help="include every intermediate matrix")
    s.add_argument("--classical", action="store_true", help="classical move semantics")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("normalize", help="move every enlargement before every reduction")
    s.add_argument("matrix")
    s.add_argument("moves")
    s.add_argument("--common", action="store_true", help="also print the common enlargement")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("factor", help="split a change of basis into D E and elementary factors")
    s.add_argument("matrix")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("search", help="bounded search for a witness")
    s.add_argument("matrix_a")
    s.add_argument("matrix_b")
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--bound", type=int, default=1)
    s.add_argument("--max-genus", type=int, default=None)
    s.add_argument("--classical", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--support", type=int, default=1,
                   help="nonzero coordinates allowed in generated enlargement data")
    s.add_argument("--max-nodes", type=int, default=500_000)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("demo", help="built-in demonstrations")
    s.add_argument("name", choices=["counterexample"])
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("batch", help="fingerprint a catalog and compare all pairs")
    s.add_argument("catalog")
    s.add_argument("--output", default=None, help="results path (default: <catalog>.results.json)")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_batch)
    return p


def _error_payload(exc):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("field", "line", "invariant", "index"):
        v = getattr(exc, attr, None)
        if v is not None:
            payload[attr] = v
    return payload


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(json.dumps({"error": "UsageError", "message": str(exc)}), file=stderr)
        return EXIT_USAGE
    try:
        data, text, code = args.func(args)
    except ReportIOError as exc:
        print(json.dumps(_error_payload(exc)), file=stderr)
        return EXIT_IO
    except (SeifertError, ValueError) as exc:
        print(json.dumps(_error_payload(exc)), file=stderr)
        return EXIT_INVALID
    if args.json:
        print(json.dumps(data, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
