"""
Command-line front end.

    beilab invariants "5;1 2;2 3"          combinatorial invariants
    beilab reg --betti A_                  regularity (and Betti table) of R/J_G
    beilab bounds --input graphs.g6        every bound next to reg
    beilab minimal-primes Bw               cut sets with their heights
    beilab check-height --max-n 6          reg <= hgt over all connected graphs
    beilab check-subadditivity --max-n 5   reg(G) <= reg(H_1) + reg(H_2) over edge splits
    beilab check-decompositions --max-n 6  the clique-separator decomposition theorem
    beilab decomp-check "6;1 2;2 3;3 4;2 5;3 5;5 6" --A 1 --B 2 --C 3,4,5,6
    beilab enumerate --n 5                 graph6 of the connected graphs on n vertices

Exit codes: 0 when every check holds, 1 when a mathematical violation was
found, 2 on input, size, configuration or I/O errors.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional

import pandas as pd
from pydantic import ValidationError

from src import bounds, homology
from src.covers import clique_count, eta, mixed_cover_number
from src.errors import BeilabError, SizeLimitError
from src.graphs import Graph, emit_graph6, enumerate_connected_graphs, iv, parse_graph, read_graphs, vertex_set
from src.groebner import ideal_text, initial_ideal
from src.monitoring import configure_logging, log_event
from src.primes import height, minimal_primes
from src.settings import Settings, load_settings
from src.storage import write_df, write_report
from src.sweeps import SweepReport, check_decompositions, check_height, check_subadditivity

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _labels(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex labels, got {text!r}") from e


def _add_inputs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("graph", nargs="?", help="graph6 string or edge list \"n; i j; ...\"")
    parser.add_argument("--input", "-i", help="file with one graph per line ('-' for stdin)")


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Options accepted before or after the subcommand; the subcommand copy only sets what was given."""

    def default(value: Any) -> Any:
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--log-level", dest="log_level", default=default(None))
    parser.add_argument("--char", type=int, default=default(None), help="prime characteristic p (default 2)")
    parser.add_argument("--jobs", type=int, default=default(None), help="worker processes for sweeps")
    parser.add_argument("--format", choices=["json", "csv"], default=default("json"))
    parser.add_argument("--no-progress", action="store_true", default=default(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beilab", description="Regularity toolkit for binomial edge ideals")
    parser.add_argument("--config", help="extra YAML config file")
    parser.add_argument("--env", help="environment overlay config/<env>.yaml")
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    _add_inputs(
        sub.add_parser("invariants", parents=[common], help="n, m, iv, c, eta, height, mixed cover, minimal primes")
    )
    reg = sub.add_parser("reg", parents=[common], help="reg(R/J_G) over GF(p)")
    _add_inputs(reg)
    reg.add_argument("--betti", action="store_true", help="include the Betti table of the initial ideal")
    reg.add_argument("--table", action="store_true", help="print the Betti table as text")
    _add_inputs(sub.add_parser("bounds", parents=[common], help="bounds report"))
    _add_inputs(sub.add_parser("minimal-primes", parents=[common], help="cut sets and heights"))

    for name in ("check-height", "check-subadditivity", "check-decompositions"):
        sweep = sub.add_parser(name, parents=[common])
        sweep.add_argument("--max-n", type=int, dest="max_n")
        sweep.add_argument("--resume", help="JSON-lines cache to resume from and append to")
        sweep.add_argument("--output", "-o", help="also write the report to this file")
        if name == "check-subadditivity":
            sweep.add_argument("--splits", choices=["all", "sample"])
            sweep.add_argument("--samples", type=int)
            sweep.add_argument("--seed", type=int)

    decomp = sub.add_parser("decomp-check", parents=[common], help="check one decomposition V(G) = A ⊔ B ⊔ C")
    _add_inputs(decomp)
    decomp.add_argument("--A", dest="a", type=_labels, required=True)
    decomp.add_argument("--B", dest="b", type=_labels, required=True)
    decomp.add_argument("--C", dest="c", type=_labels, required=True)

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="connected graphs up to isomorphism, as graph6")
    enumerate_.add_argument("--n", type=int, required=True)
    return parser

def _read_inputs(args: argparse.Namespace) -> List[Graph]:
    if args.graph:
        return [parse_graph(args.graph)]
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="ascii") as f:
            return list(read_graphs(f))
    return list(read_graphs(sys.stdin))


def _guard(graph: Graph, settings: Settings) -> None:
    if graph.n > settings.max_reg_vertices:
        raise SizeLimitError(
            f"n <= {settings.max_reg_vertices} is supported (2n <= {2 * settings.max_reg_vertices} variables), "
            f"got n={graph.n}"
        )


def _emit(rows: List[Any], fmt: str) -> None:
    if fmt == "csv":
        flat = pd.json_normalize([row if isinstance(row, dict) else {"value": row} for row in rows])
        sys.stdout.write(write_df(flat))
        return
    for row in rows:
        sys.stdout.write(json.dumps(row) + "\n")


# commands --------------------------------------------------------------------


def cmd_invariants(graph: Graph, settings: Settings) -> Dict[str, Any]:
    _guard(graph, settings)
    primes = minimal_primes(graph)
    hgt = height(graph)
    return {
        "graph6": emit_graph6(graph),
        "n": graph.n,
        "m": graph.edge_count,
        "iv": iv(graph),
        "c": clique_count(graph),
        "eta": eta(graph),
        "height": hgt,
        "mixedCover": mixed_cover_number(graph).model_dump(by_alias=True),
        "minimalPrimes": {
            "count": len(primes),
            "attaining": [r.subset for r in primes if r.height == min(p.height for p in primes)],
        },
    }


def cmd_reg(graph: Graph, settings: Settings, betti: bool = False) -> Dict[str, Any]:
    result: Dict[str, Any] = {
        "graph6": emit_graph6(graph),
        "p": settings.char,
        "reg": homology.reg_binomial_edge(graph, settings.char, settings.max_reg_vertices),
    }
    if betti:
        table = homology.betti_table_binomial_edge(graph, settings.char, settings.max_reg_vertices)
        result["betti"] = table.model_dump(by_alias=True)
        result["initialIdeal"] = ideal_text(initial_ideal(graph), graph.n)
    return result


def cmd_bounds(graph: Graph, settings: Settings) -> Dict[str, Any]:
    return bounds.bounds_report(graph, settings.char, settings.max_reg_vertices).model_dump(by_alias=True)


def cmd_minimal_primes(graph: Graph, settings: Settings) -> List[Dict[str, Any]]:
    _guard(graph, settings)
    return [record.model_dump(by_alias=True) for record in minimal_primes(graph)]


def cmd_decomp_check(
    graph: Graph, settings: Settings, a: List[int], b: List[int], c: List[int]
) -> bounds.DecompositionCase:
    return bounds.decomp_check(
        graph, vertex_set(a), vertex_set(b), vertex_set(c), settings.char, settings.max_reg_vertices
    )


def _run_sweep(args: argparse.Namespace, settings: Settings) -> SweepReport:
    common = dict(
        max_n=args.max_n or settings.sweep.max_n,
        p=settings.char,
        jobs=settings.jobs,
        resume=args.resume,
        progress=settings.progress and not args.no_progress,
        max_vertices=settings.max_reg_vertices,
    )
    if args.command == "check-height":
        return check_height(**common)
    if args.command == "check-decompositions":
        return check_decompositions(**common)
    splits = args.splits or settings.sweep.splits
    if args.max_n is None and splits == "all":
        common["max_n"] = min(common["max_n"], 5)
    return check_subadditivity(
        splits=splits,
        samples=args.samples or settings.sweep.samples,
        seed=settings.sweep.seed if args.seed is None else args.seed,
        **common,
    )


def run(args: argparse.Namespace, settings: Settings) -> int:
    fmt = args.format
    if args.command == "enumerate":
        for graph in enumerate_connected_graphs(args.n):
            sys.stdout.write(emit_graph6(graph) + "\n")
        return EXIT_OK

    if args.command.startswith("check-"):
        report = _run_sweep(args, settings)
        if args.output:
            write_report(report.model_dump(by_alias=True), args.output)
        if fmt == "csv":
            _emit(report.violations or report.summary, fmt)
        else:
            sys.stdout.write(json.dumps(report.model_dump(by_alias=True)) + "\n")
        return EXIT_OK if report.holds else EXIT_VIOLATION

    graphs = _read_inputs(args)
    if args.command == "decomp-check":
        cases = [cmd_decomp_check(g, settings, args.a, args.b, args.c) for g in graphs]
        _emit([case.model_dump(by_alias=True) for case in cases], fmt)
        return EXIT_OK if all(case.holds for case in cases) else EXIT_VIOLATION

    if args.command == "reg" and args.table:
        for graph in graphs:
            sys.stdout.write(str(homology.betti_table_binomial_edge(graph, settings.char, settings.max_reg_vertices)))
            sys.stdout.write("\n")
        return EXIT_OK

    commands: Dict[str, Callable[[Graph], Any]] = {
        "invariants": lambda g: cmd_invariants(g, settings),
        "reg": lambda g: cmd_reg(g, settings, betti=args.betti),
        "bounds": lambda g: cmd_bounds(g, settings),
        "minimal-primes": lambda g: cmd_minimal_primes(g, settings),
    }
    rows = [commands[args.command](graph) for graph in graphs]
    if args.command == "minimal-primes" and fmt == "csv":
        rows = [dict(record, graph6=emit_graph6(g)) for g, records in zip(graphs, rows) for record in records]
    _emit(rows, fmt)
    if args.command == "bounds" and not all(all(row["verdicts"].values()) for row in rows):
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(
            env=args.env, config_file=args.config, char=args.char, jobs=args.jobs, log_level=args.log_level
        )
        configure_logging(settings.log_level)
        homology.set_memo_size(settings.memo_size)
        bounds.set_memo_size(settings.memo_size)
        log_event("cli_command", {"command": args.command, "p": settings.char, "jobs": settings.jobs})
        return run(args, settings)
    except (BeilabError, OSError, ValidationError) as e:
        log_event("cli_error", {"command": args.command, "error": type(e).__name__})
        sys.stderr.write(f"beilab: error: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
