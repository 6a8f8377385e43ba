"""Command-line interface: graph tools, orbit dumps, and variance reports.

Exit codes: 0 success, 1 configuration or input error, 2 exact-vs-oracle
mismatch, 3 mismatch against a supplied reference table, 4 Monte Carlo
estimate outside tolerance, 5 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classify import (
    class_counts,
    diagonal_approximation,
    exact_variance,
    variance_from_classes,
    write_orbit_dump,
)
from .graphs import (
    DirectedGraph,
    build_binary_graph,
    load_graph,
    save_graph,
    validate_graph,
)
from .orbits import DEFAULT_CAP, EnumerationCapExceeded, enumerate_pseudo_orbits
from .quantize import build_bond_scattering, load_lengths, sample_bond_lengths
from .spectral import DEFAULT_K_MAX, mc_variance, minor_sum_variance

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ORACLE_MISMATCH = 2
EXIT_TABLE_MISMATCH = 3
EXIT_MC_DIVERGED = 4
EXIT_CAP = 5

ORACLE_TOL = 1e-12
DEFAULT_MC_TOL = 5e-3
SUBSET_LIMIT = 2_000_000  # above this many minors, exact/oracle report n/a


def _fmt(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _exhaustive_feasible(B: int, n: int, limit: int = SUBSET_LIMIT) -> bool:
    return math.comb(B, min(n, B - n)) <= limit


def graph_sha256(graph: DirectedGraph) -> str:
    payload = json.dumps(
        {"V": graph.vertex_count, "bonds": [list(b) for b in graph.bonds]},
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _resolve_graph(args) -> DirectedGraph:
    if getattr(args, "graph_file", None):
        return load_graph(args.graph_file)
    if getattr(args, "p", None) is not None and getattr(args, "r", None) is not None:
        return build_binary_graph(args.p, args.r)
    raise ValueError("provide --graph-file, or both --p and --r")


def _resolve_lengths(args, graph: DirectedGraph):
    if getattr(args, "graph_file", None):
        stored = load_lengths(args.graph_file)
        if stored is not None:
            if len(stored) != graph.num_bonds:
                raise ValueError("stored lengths do not match the bond count")
            return stored
    return sample_bond_lengths(graph, args.seed)


def _index_range(args, B: int) -> list[int]:
    n = getattr(args, "n", None)
    n_max = getattr(args, "n_max", None)
    if n is not None and n_max is not None:
        raise ValueError("give --n or --n-max, not both")
    if n is not None:
        ns = [n]
    else:
        ns = list(range((B // 2 if n_max is None else n_max) + 1))
    for n_i in ns:
        if not 0 <= n_i <= B:
            raise ValueError(f"coefficient index {n_i} outside 0..{B}")
    return ns


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_sidecar(out: str | None, payload: dict) -> None:
    if out:
        Path(out + ".meta.json").write_text(json.dumps(payload, indent=1) + "\n")


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _config_echo(args) -> dict:
    skip = {"func"}
    return {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in skip and not callable(value)
    }


# --- graph ------------------------------------------------------------


def cmd_graph_gen(args) -> int:
    graph = build_binary_graph(args.p, args.r)
    lengths = None
    if args.seed is not None:
        lengths = sample_bond_lengths(graph, args.seed)
    save_graph(graph, args.out, lengths=lengths)
    print(
        f"wrote {args.out}: V={graph.vertex_count} B={graph.num_bonds}"
        + (f" lengths(seed={args.seed})" if lengths is not None else "")
    )
    return EXIT_OK


def cmd_graph_validate(args) -> int:
    data = json.loads(Path(args.graph_file).read_text())
    bonds = tuple((int(u), int(v)) for u, v in data["bonds"])
    graph = DirectedGraph(int(data["V"]), bonds)
    report = validate_graph(graph)
    problems = list(report.problems)
    if list(bonds) != sorted(bonds):
        problems.append("bond list is not in canonical (origin, terminus) order")
    passed = report.passed and len(problems) == len(report.problems)
    payload = {
        "four_regular": report.four_regular,
        "strongly_connected": report.strongly_connected,
        "bond_count_ok": report.bond_count_ok,
        "passed": passed,
        "problems": problems,
    }
    _emit(json.dumps(payload, indent=1) + "\n", args.out)
    return EXIT_OK if passed else EXIT_CONFIG


# --- orbits -----------------------------------------------------------


def cmd_orbits_enumerate(args) -> int:
    graph = _resolve_graph(args)
    pos = enumerate_pseudo_orbits(graph, args.n, mode=args.mode, cap=args.cap)
    buf = io.StringIO()
    write_orbit_dump(graph, pos, buf)
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_orbits_classify(args) -> int:
    graph = _resolve_graph(args)
    counts = class_counts(graph, args.n, mode=args.mode, cap=args.cap)
    variance = variance_from_classes(counts)
    payload = {
        "n": counts.n,
        "mode": args.mode,
        "p0": counts.p0,
        "phat": {str(N): c for N, c in counts.phat.items()},
        "excluded": counts.excluded,
        "variance_fraction": str(variance),
        "variance": float(variance),
    }
    _emit(json.dumps(payload, indent=1) + "\n", args.out)
    return EXIT_OK


# --- variance ---------------------------------------------------------


def cmd_variance_exact(args) -> int:
    graph = _resolve_graph(args)
    ns = _index_range(args, graph.num_bonds)
    rows = []
    for n in ns:
        frac = exact_variance(graph, n)
        rows.append([_fmt(n), _fmt(frac), _fmt(float(frac))])
    _emit(_csv_text(["n", "exact_fraction", "exact"], rows), args.out)
    return EXIT_OK


def cmd_variance_oracle(args) -> int:
    graph = _resolve_graph(args)
    S = build_bond_scattering(graph)
    ns = _index_range(args, graph.num_bonds)
    rows = [[_fmt(n), _fmt(minor_sum_variance(S, n))] for n in ns]
    _emit(_csv_text(["n", "oracle"], rows), args.out)
    return EXIT_OK


def cmd_variance_mc(args) -> int:
    graph = _resolve_graph(args)
    B = graph.num_bonds
    ns = _index_range(args, B)
    S = build_bond_scattering(graph)
    lengths = _resolve_lengths(args, graph)
    estimates = mc_variance(
        S, lengths, ns, args.samples, args.seed, args.kmax, threads=args.threads
    )
    rows = []
    for est in estimates:
        feasible = _exhaustive_feasible(B, est.n)
        exact = float(exact_variance(graph, est.n)) if feasible else None
        oracle = minor_sum_variance(S, est.n) if feasible else None
        rows.append(
            [
                _fmt(est.n),
                _fmt(exact),
                _fmt(oracle),
                _fmt(est.mean),
                _fmt(est.std_error),
                _fmt(est.samples),
                _fmt(est.seed),
            ]
        )
    header = ["n", "exact", "oracle", "mc_mean", "mc_stderr", "samples", "seed"]
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_variance_diagonal(args) -> int:
    graph = _resolve_graph(args)
    ns = _index_range(args, graph.num_bonds)
    rows = []
    for n in ns:
        value = diagonal_approximation(graph, n, cap=args.cap)
        count = value * 2**n
        rows.append([_fmt(n), _fmt(int(count)), _fmt(value), _fmt(float(value))])
    header = ["n", "pseudo_orbits", "diagonal_fraction", "diagonal"]
    _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


# --- reports ----------------------------------------------------------


@dataclass
class TableResult:
    header: list[str]
    rows: list[list[str]]
    exit_code: int
    sidecar: dict

    @property
    def csv_text(self) -> str:
        return _csv_text(self.header, self.rows)


def run_table_report(args) -> TableResult:
    t_start = time.perf_counter()
    graph = _resolve_graph(args)
    B = graph.num_bonds
    ns = _index_range(args, B)
    S = build_bond_scattering(graph)
    lengths = _resolve_lengths(args, graph)
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    counts_by_n = {}
    exact_by_n = {}
    for n in ns:
        if not _exhaustive_feasible(B, n):
            exact_by_n[n] = None
            continue
        if n <= B // 2:
            counts_by_n[n] = class_counts(graph, n)
            exact_by_n[n] = variance_from_classes(counts_by_n[n])
        else:
            exact_by_n[n] = exact_variance(graph, n)  # mirrored; no census shown
    timings["exact_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    oracle_by_n = {
        n: minor_sum_variance(S, n) if _exhaustive_feasible(B, n) else None
        for n in ns
    }
    timings["oracle_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    estimates = {
        e.n: e
        for e in mc_variance(
            S, lengths, ns, args.samples, args.seed, args.kmax, threads=args.threads
        )
    }
    timings["mc_s"] = time.perf_counter() - t0

    max_encounters = max(
        (max(c.phat, default=0) for c in counts_by_n.values()), default=0
    )
    header = (
        ["n", "p0"]
        + [f"phat{N}" for N in range(1, max_encounters + 1)]
        + ["exact_fraction", "exact", "oracle", "mc_mean", "mc_stderr", "abs_error"]
    )
    rows = []
    for n in ns:
        counts = counts_by_n.get(n)
        exact = exact_by_n[n]
        est = estimates[n]
        abs_error = None if exact is None else abs(est.mean - float(exact))
        row = [_fmt(n), _fmt(counts.p0 if counts else None)]
        for N in range(1, max_encounters + 1):
            row.append(_fmt(counts.phat.get(N, 0) if counts else None))
        row += [
            _fmt(exact),
            _fmt(None if exact is None else float(exact)),
            _fmt(oracle_by_n[n]),
            _fmt(est.mean),
            _fmt(est.std_error),
            _fmt(abs_error),
        ]
        rows.append(row)

    exit_code = EXIT_OK
    for n in ns:
        exact = exact_by_n[n]
        oracle = oracle_by_n[n]
        if exact is not None and oracle is not None and abs(float(exact) - oracle) > ORACLE_TOL:
            exit_code = EXIT_ORACLE_MISMATCH
            break
    if exit_code == EXIT_OK and getattr(args, "expect", None):
        if _reference_mismatches(args.expect, header, rows):
            exit_code = EXIT_TABLE_MISMATCH
    if exit_code == EXIT_OK:
        for n in ns:
            exact = exact_by_n[n]
            if exact is None:
                continue
            est = estimates[n]
            if abs(est.mean - float(exact)) > max(args.mc_tol, 3 * est.std_error):
                exit_code = EXIT_MC_DIVERGED
                break

    timings["total_s"] = time.perf_counter() - t_start
    sidecar = {
        "version": __version__,
        "config": _config_echo(args),
        "graph_sha256": graph_sha256(graph),
        "timings": timings,
    }
    return TableResult(header=header, rows=rows, exit_code=exit_code, sidecar=sidecar)


def _reference_mismatches(path: str, header: list[str], rows: list[list[str]]) -> list[str]:
    """Compare discrete columns (p0, phat*, exact_fraction) against a
    reference CSV keyed by n; returns human-readable mismatch notes."""
    ours = {row[header.index("n")]: dict(zip(header, row)) for row in rows}
    mismatches = []
    with open(path, newline="") as handle:
        for expected in csv.DictReader(handle):
            n = expected.get("n")
            if n is None or n not in ours:
                mismatches.append(f"reference row n={n} has no computed counterpart")
                continue
            for column, wanted in expected.items():
                if column == "n" or wanted in (None, ""):
                    continue
                if not (column == "exact_fraction" or column == "p0" or column.startswith("phat")):
                    continue
                if column in ours[n] and ours[n][column] != wanted.strip():
                    mismatches.append(
                        f"n={n} {column}: computed {ours[n][column]}, reference {wanted.strip()}"
                    )
    return mismatches


def cmd_report_table(args) -> int:
    result = run_table_report(args)
    _emit(result.csv_text, args.out)
    _write_sidecar(args.out, result.sidecar)
    return result.exit_code


def cmd_report_convergence(args) -> int:
    t_start = time.perf_counter()
    r_values = [int(x) for x in str(args.r).split(",") if x != ""]
    if not r_values or any(r < 1 for r in r_values):
        raise ValueError("--r needs a comma-separated list of positive integers")
    rows = []
    for r in r_values:
        graph = build_binary_graph(1, r)
        B = graph.num_bonds
        n = args.n if args.n is not None else B // 2
        if not 0 <= n <= B:
            raise ValueError(f"coefficient index {n} outside 0..{B}")
        S = build_bond_scattering(graph)
        lengths = sample_bond_lengths(graph, args.seed)
        est = mc_variance(
            S, lengths, [n], args.samples, args.seed, args.kmax, threads=args.threads
        )[0]
        rows.append(
            [
                _fmt(r),
                _fmt(B),
                _fmt(n),
                _fmt(est.mean),
                _fmt(est.std_error),
                _fmt(abs(est.mean - 0.5)),
            ]
        )
    header = ["r", "B", "n", "mc_mean", "mc_stderr", "abs_dev_from_half"]
    _emit(_csv_text(header, rows), args.out)
    _write_sidecar(
        args.out,
        {
            "version": __version__,
            "config": _config_echo(args),
            "timings": {"total_s": time.perf_counter() - t_start},
        },
    )
    return EXIT_OK


# --- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgspectra",
        description="Coefficient-variance statistics of 4-regular directed quantum graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    graph_src = argparse.ArgumentParser(add_help=False)
    graph_src.add_argument("--p", type=int, help="binary-graph parameter p (odd)")
    graph_src.add_argument("--r", type=int, help="binary-graph parameter r (>= 1)")
    graph_src.add_argument("--graph-file", help="graph JSON file instead of --p/--r")

    out_opt = argparse.ArgumentParser(add_help=False)
    out_opt.add_argument("--out", help="output path (default: stdout)")

    index_opts = argparse.ArgumentParser(add_help=False)
    index_opts.add_argument("--n", type=int, help="single coefficient index")
    index_opts.add_argument("--n-max", type=int, help="indices 0..n-max (default B/2)")

    mc_opts = argparse.ArgumentParser(add_help=False)
    mc_opts.add_argument("--samples", type=int, default=100_000)
    mc_opts.add_argument("--seed", type=int, default=0)
    mc_opts.add_argument("--kmax", type=float, default=DEFAULT_K_MAX)
    mc_opts.add_argument("--threads", type=int, default=1)

    mode_opts = argparse.ArgumentParser(add_help=False)
    mode_opts.add_argument(
        "--mode", choices=["bond_distinct", "general"], default="bond_distinct"
    )
    mode_opts.add_argument("--cap", type=int, default=DEFAULT_CAP)

    graph_cmd = sub.add_parser("graph", help="generate and validate graphs")
    gsub = graph_cmd.add_subparsers(dest="action", required=True)
    gen = gsub.add_parser("gen", help="write a binary graph (with optional lengths)")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--r", type=int, required=True)
    gen.add_argument("--seed", type=int, default=None, help="embed lengths drawn with this seed")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_graph_gen)
    val = gsub.add_parser("validate", parents=[out_opt], help="validate a graph file")
    val.add_argument("--graph-file", required=True)
    val.set_defaults(func=cmd_graph_validate)

    orbits_cmd = sub.add_parser("orbits", help="enumerate and classify pseudo orbits")
    osub = orbits_cmd.add_subparsers(dest="action", required=True)
    oenum = osub.add_parser(
        "enumerate", parents=[graph_src, out_opt, mode_opts], help="JSONL pseudo-orbit dump"
    )
    oenum.add_argument("--n", type=int, required=True)
    oenum.set_defaults(func=cmd_orbits_enumerate)
    oclass = osub.add_parser(
        "classify", parents=[graph_src, out_opt, mode_opts], help="class census at one n"
    )
    oclass.add_argument("--n", type=int, required=True)
    oclass.set_defaults(func=cmd_orbits_classify)

    variance_cmd = sub.add_parser("variance", help="variance by a single route")
    vsub = variance_cmd.add_subparsers(dest="action", required=True)
    vexact = vsub.add_parser("exact", parents=[graph_src, out_opt, index_opts])
    vexact.set_defaults(func=cmd_variance_exact)
    voracle = vsub.add_parser("oracle", parents=[graph_src, out_opt, index_opts])
    voracle.set_defaults(func=cmd_variance_oracle)
    vmc = vsub.add_parser("mc", parents=[graph_src, out_opt, index_opts, mc_opts])
    vmc.set_defaults(func=cmd_variance_mc)
    vdiag = vsub.add_parser("diagonal", parents=[graph_src, out_opt, index_opts])
    vdiag.add_argument("--cap", type=int, default=DEFAULT_CAP)
    vdiag.set_defaults(func=cmd_variance_diagonal)

    report_cmd = sub.add_parser("report", help="cross-validated reports")
    rsub = report_cmd.add_subparsers(dest="action", required=True)
    table = rsub.add_parser(
        "table", parents=[graph_src, out_opt, index_opts, mc_opts],
        help="per-n table: class counts, exact, oracle, MC",
    )
    table.add_argument("--expect", help="reference CSV to compare discrete columns against")
    table.add_argument("--mc-tol", type=float, default=DEFAULT_MC_TOL)
    table.set_defaults(func=cmd_report_table)
    conv = rsub.add_parser(
        "convergence", parents=[out_opt, mc_opts],
        help="MC variance at n = B/2 across graph sizes",
    )
    conv.add_argument("--r", default="2,3,4,5", help="comma-separated r values")
    conv.add_argument("--n", type=int, help="coefficient index (default B/2 per graph)")
    conv.set_defaults(func=cmd_report_convergence)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return EXIT_OK if code == 0 else EXIT_CONFIG
    try:
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
