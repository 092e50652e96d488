"""Command-line interface: ``stats``, ``matrices``, ``sample`` and ``verify``.

Exit status: 0 success, 1 usage / I/O / verification errors, 2 when the
sampler reports the requested k as infeasible.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import warnings
from pathlib import Path

from .errors import Infeasible
from .graph import DirectedGraph, EdgeListParseError, read_edge_list, write_edge_list
from .matrices import DCM, JDM, DegreeMatrix, extract_dcm, extract_jdm, sparsity_report
from .metrics import distribution_distance, distributions, deviation_bounds, fmt, verify_bounds
from .pipeline import sample_graph_input
from .rescale import ROUNDING_MODES, derive_adjustment, parse_k, rescale

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def graph_digest(g: DirectedGraph) -> str:
    return hashlib.sha256(write_edge_list(g).encode()).hexdigest()


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path: str):
    if not os.path.isfile(path):
        raise CliError(f"{path}: no such file")
    try:
        return read_edge_list(path)
    except EdgeListParseError as exc:
        raise CliError(f"{path}: {exc}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: {exc}") from None


def cmd_stats(args) -> int:
    parsed = _load(args.input)
    try:
        rep = sparsity_report(parsed.graph)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.format == "text":
        doc = rep.to_dict()
        header = f"{'N':>10} {'E':>10} {'#DCM':>8} {'#JDM':>8} {'%DCM':>8} {'%JDM':>8}\n"
        row = (
            f"{doc['n']:>10} {doc['e']:>10} {doc['nnz_dcm']:>8} {doc['nnz_jdm']:>8} "
            f"{float(rep.pct_dcm) * 100:>7.2f}% {float(rep.pct_jdm) * 100:>7.2f}%\n"
        )
        _emit(header + row, args.out)
    else:
        _emit(_dumps(rep.to_dict()), args.out)
    return EXIT_OK


def cmd_matrices(args) -> int:
    g = _load(args.input).graph
    a, b = extract_jdm(g), extract_dcm(g)
    if args.out and (os.path.isdir(args.out) or args.out.endswith(os.sep)):
        os.makedirs(args.out, exist_ok=True)
        Path(args.out, "jdm.tsv").write_text(a.to_tsv(), encoding="utf-8")
        Path(args.out, "dcm.tsv").write_text(b.to_tsv(), encoding="utf-8")
        return EXIT_OK
    if args.format == "json":
        text = _dumps({"schema_version": SCHEMA_VERSION, "jdm": a.to_list(), "dcm": b.to_list()})
    else:
        text = "% JDM\n" + a.to_tsv() + "% DCM\n" + b.to_tsv()
    _emit(text, args.out)
    return EXIT_OK


def _dump_intermediates(run, directory: str) -> None:
    os.makedirs(directory, exist_ok=True)
    d = Path(directory)
    rm, adj = run.rescaled, run.adjustment
    (d / "a_prime.tsv").write_text(rm.a_prime.to_tsv(), encoding="utf-8")
    (d / "b_prime.tsv").write_text(rm.b_prime.to_tsv(), encoding="utf-8")
    if adj is not None:
        (d / "adjustment.json").write_text(_dumps(adj.to_dict()), encoding="utf-8")
        (d / "l.tsv").write_text("".join(f"{i}\t{j}\t{v}\n" for (i, j), v in adj.l_matrix().items()), encoding="utf-8")
    if run.ok:
        (d / "d.tsv").write_text("".join(f"{i}\t{j}\t{v}\n" for (i, j), v in sorted(run.d.items())), encoding="utf-8")
        (d / "a_target.tsv").write_text(run.a_target.to_tsv(), encoding="utf-8")
        (d / "b_target.tsv").write_text(run.b_target.to_tsv(), encoding="utf-8")


def cmd_sample(args) -> int:
    try:
        k = parse_k(args.k)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    parsed = _load(args.input)
    g = parsed.graph
    if g.num_nodes == 0:
        raise CliError(f"{args.input}: empty graph")
    refined = args.refined_bounds == "on"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore" if args.rounding == "paper" else "default")
        run = sample_graph_input(g, k, seed=args.seed, rounding=args.rounding, refined=refined)

    record = run.to_dict()
    record["schema_version"] = SCHEMA_VERSION
    record["input"] = {
        "path": os.path.basename(args.input),
        "sha256": graph_digest(g),
        "nodes": g.num_nodes,
        "edges": g.num_edges,
        "self_loops_dropped": parsed.self_loops_dropped,
        "duplicates_collapsed": parsed.duplicates_collapsed,
    }
    if args.dump_intermediates:
        _dump_intermediates(run, args.dump_intermediates)
    record_path = args.record or (args.out + ".json" if args.out else None)

    if not run.ok:
        _emit(_dumps(record), record_path)
        print(f"infeasible: {run.diagnosis}", file=sys.stderr)
        return EXIT_INFEASIBLE

    record["sample"] = {"sha256": graph_digest(run.graph)}
    _emit(write_edge_list(run.graph), args.out)
    if record_path:
        _emit(_dumps(record), record_path)
    return EXIT_OK


def _matrix_diff(name: str, got: DegreeMatrix, want: DegreeMatrix) -> list[dict]:
    cells = sorted(set(got.entries) | set(want.entries))
    return [
        {"matrix": name, "i": i, "j": j, "sample": got[i, j], "record": want[i, j]}
        for i, j in cells
        if got[i, j] != want[i, j]
    ]


def cmd_verify(args) -> int:
    original = _load(args.original).graph
    sample_g = _load(args.sample).graph
    try:
        record = json.loads(Path(args.record).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"{args.record}: {exc}") from None
    if record.get("outcome") != "success":
        raise CliError("record describes an infeasible run; nothing to verify")

    if record["input"]["sha256"] != graph_digest(original):
        raise CliError("record does not match inputs: original graph hash differs")

    mismatches = []
    if record["sample"]["sha256"] != graph_digest(sample_g):
        mismatches += _matrix_diff("jdm", extract_jdm(sample_g), DegreeMatrix.from_list(record["a_target"], JDM))
        mismatches += _matrix_diff("dcm", extract_dcm(sample_g), DegreeMatrix.from_list(record["b_target"], DCM))
    if mismatches or record["sample"]["sha256"] != graph_digest(sample_g):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "status": "mismatch",
            "error": "record does not match inputs",
            "matrix_mismatches": mismatches,
        }
        _emit(_dumps(doc), args.out)
        print("record does not match inputs: sample differs from the recorded run", file=sys.stderr)
        return EXIT_ERROR

    refined = record.get("refined_bounds", True) if args.refined_bounds is None else args.refined_bounds == "on"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rm = rescale(extract_jdm(original), extract_dcm(original), record["k"], record.get("rounding", "paper"))
    try:
        p = derive_adjustment(rm).p
    except Infeasible as exc:
        raise CliError(f"record claims success but the original is infeasible at k={record['k']}: {exc}") from None
    report = deviation_bounds(rm.a_ring, rm.b_ring, p, refined=refined)
    report.params["k"] = record["k"]
    d_orig, d_sample = distributions(original), distributions(sample_g)
    report = verify_bounds(d_sample, report)
    distances = {
        name: {key: fmt(v) for key, v in vals.items()} for name, vals in distribution_distance(d_orig, d_sample).items()
    }
    doc = {
        "schema_version": SCHEMA_VERSION,
        "status": "ok",
        "all_inside": report.all_inside,
        "deviation": report.to_dict(),
        "distances": distances,
    }
    if args.format == "text":
        counts = report.counts()
        lines = [f"k = {record['k']}, p = {p}, refined bounds: {'on' if refined else 'off'}"]
        lines += [f"{v:>12}: {counts.get(v, 0)}" for v in ("inside", "outside", "degenerate", "unbounded")]
        lines += [f"{name:>20}  L1 {d['l1']:.6g}  TV {d['tv']:.6g}" for name, d in distances.items()]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_dumps(doc), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jdmsample", description="Sample directed graphs by rescaling their degree matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="node/edge counts and JDM/DCM sparsity")
    p.add_argument("input")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("matrices", help="dump JDM and DCM as i<TAB>j<TAB>count")
    p.add_argument("input")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", help="file, or directory (receives jdm.tsv and dcm.tsv)")
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("sample", help="build a sample graph shrunk by a factor k")
    p.add_argument("input")
    p.add_argument("--k", required=True, help="sample coefficient, e.g. 2, 2.5 or 5/2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounding", choices=tuple(ROUNDING_MODES), default="paper")
    p.add_argument("--refined-bounds", choices=("on", "off"), default="on")
    p.add_argument("--dump-intermediates", metavar="DIR")
    p.add_argument("--out", help="sample edge list (default: stdout)")
    p.add_argument("--record", help="run record JSON (default: OUT.json when --out is given)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="check a sample against its original and run record")
    p.add_argument("original")
    p.add_argument("sample")
    p.add_argument("record")
    p.add_argument("--refined-bounds", choices=("on", "off"), default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
