#!/usr/bin/env python3
"""
Turanflag - Flag-algebra bounds and exact certificates for 3-graph Turan densities

Every result is one JSON object per line on stdout; human summaries and
logging go to stderr.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .config import get_config
from .core import catalog
from .core.constructions import KINDS, construction, check_free
from .core.exact import FieldElement, format_field_element, parse_field_element
from .core.family import MAX_ORDER, MIN_ORDER, Family, generate_admissible, parse_family
from .core.hypergraph import ThreeGraph, blowup_contains, format_graph, parse_graph
from .core.lagrangian import WeightVector, lambda_at, maximize_lagrangian
from .errors import (
    CertificateError,
    FieldError,
    FormatError,
    GraphError,
    RoundingError,
    SolverError,
)
from .process.solver import resolve_solver, run_solver
from .sdp.certificate import check_certificate, parse_certificate, verify_certificate, write_certificate
from .sdp.flags import SUPPORTED_ORDERS, edge_density
from .sdp.problem import FlagProblem
from .sdp.rounding import round_solution
from .sdp.sdpa import emit_sdp, parse_solution

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTERRUPTED = 130


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one invocation: arguments first, then the config file"""

    command: str
    n: Optional[int] = None
    family: Optional[str] = None
    solver_path: Optional[str] = None
    solver_kind: str = "auto"
    timeout: float = 3600.0
    denominators: Tuple[int, ...] = ()
    epsilons: Tuple[Fraction, ...] = ()
    sharp_tolerance: float = 1e-6
    out: Optional[Path] = None
    solution: Optional[Path] = None
    seed: int = 0
    restarts: int = 200
    iterations: int = 10000
    workers: int = 1
    extra: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        config = get_config(args.config)
        n = getattr(args, "n", None)
        if n is not None and args.command in ("admissible", "bound", "round"):
            low, high = (MIN_ORDER, MAX_ORDER) if args.command == "admissible" else (min(SUPPORTED_ORDERS), max(SUPPORTED_ORDERS))
            if not low <= n <= high:
                raise GraphError(f"{args.command} needs {low} <= n <= {high}, got {n}")
        denominators = getattr(args, "denominators", None)
        if denominators is not None:
            denominators = tuple(sorted(denominators))
        out = getattr(args, "out", None)
        solution = getattr(args, "solution", None) or getattr(args, "input", None)
        return cls(
            command=args.command,
            n=n,
            family=getattr(args, "family", None),
            solver_path=getattr(args, "solver", None) or config.solver_path,
            solver_kind=getattr(args, "kind", None) or config.solver_kind,
            timeout=getattr(args, "timeout", None) or config.solver_timeout,
            denominators=denominators or tuple(config.denominators),
            epsilons=tuple(config.epsilons),
            sharp_tolerance=config.sharp_tolerance,
            out=Path(out) if out else None,
            solution=Path(solution) if solution else None,
            seed=args.seed if getattr(args, "seed", None) is not None else config.seed,
            restarts=getattr(args, "restarts", None) or config.restarts,
            iterations=getattr(args, "iterations", None) or config.iterations,
            workers=args.workers or config.workers,
        )


# ============================================================================
# Argument resolution
# ============================================================================

def resolve_graph(text: str) -> ThreeGraph:
    """``@name`` from the catalog, a file holding one graph, or graph text"""
    if text.startswith("@"):
        return catalog.graph(text[1:])
    path = Path(text)
    if path.is_file():
        lines = [
            line.strip() for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        if len(lines) != 1:
            raise FormatError(f"expected exactly one graph, found {len(lines)}", str(path))
        try:
            return parse_graph(lines[0])
        except GraphError as e:
            raise FormatError(str(e), str(path)) from e
    return parse_graph(text)


def resolve_family(text: str) -> Family:
    """``@name`` from the catalog or a family file"""
    if text.startswith("@"):
        return catalog.family(text[1:])
    return parse_family(text)


def family_stem(text: str) -> str:
    stem = text[1:] if text.startswith("@") else Path(text).stem
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in stem)


def emit(record: Dict[str, Any]) -> None:
    print(json.dumps(record), flush=True)


def summary(message: str) -> None:
    print(message, file=sys.stderr)


# ============================================================================
# Subcommands
# ============================================================================

def cmd_admissible(run: RunConfig, args: argparse.Namespace) -> int:
    family = resolve_family(run.family)
    graphs = generate_admissible(run.n, family, run.workers)
    record: Dict[str, Any] = {"command": "admissible", "n": run.n, "family": run.family, "count": len(graphs)}
    if args.list:
        record["graphs"] = [format_graph(G) for G in graphs]
    emit(record)
    summary(f"{len(graphs)} admissible graphs of order {run.n}")
    return EXIT_OK


def _problem(run: RunConfig) -> FlagProblem:
    return FlagProblem.build(run.n, resolve_family(run.family), run.workers)


def cmd_bound(run: RunConfig, args: argparse.Namespace) -> int:
    problem = _problem(run)
    out = run.out or Path(f"{family_stem(run.family)}-n{run.n}.dat-s")
    sdp = emit_sdp(problem.admissible, problem.contexts, out, problem.matrices)
    record: Dict[str, Any] = {
        "command": "bound",
        "n": run.n,
        "family": run.family,
        "constraints": sdp.num_constraints,
        "blocks": sdp.block_sizes,
        "sdp": str(out),
        "max_density": format_field_element(max(problem.densities)),
    }
    solver = resolve_solver(run.solver_path)
    if solver is None:
        record["solver"] = None
        emit(record)
        summary(f"no solver found; wrote {out} ({sdp.num_constraints} constraints)")
        return EXIT_OK

    solution_path = run.solution or out.with_suffix(".sol")
    result = run_solver(out, solution_path, solver, run.timeout, run.solver_kind)
    solution = parse_solution(solution_path, sdp, result.objective)
    record.update(solver=solver, solution=str(solution_path), bound=solution.bound,
                  objective=result.bound)
    emit(record)
    summary(f"numeric bound {solution.bound:.10f} from {sdp.num_constraints} constraints")
    return EXIT_OK


def cmd_round(run: RunConfig, args: argparse.Namespace) -> int:
    target = parse_field_element(args.target)
    problem = _problem(run)
    sdp = emit_sdp(problem.admissible, problem.contexts, matrices=problem.matrices)
    solution = parse_solution(run.solution, sdp)
    certificate = round_solution(
        solution, target, problem,
        denominator_schedule=run.denominators,
        epsilons=run.epsilons,
        sharp_tolerance=run.sharp_tolerance,
        workers=run.workers,
    )
    write_certificate(certificate, run.out)
    emit({
        "command": "round",
        "n": run.n,
        "family": run.family,
        "bound": format_field_element(certificate.bound),
        "certificate": str(run.out),
    })
    summary(f"certificate for {format_field_element(target)} written to {run.out}")
    return EXIT_OK


def cmd_verify(run: RunConfig, args: argparse.Namespace) -> int:
    certificate = parse_certificate(args.cert)
    record: Dict[str, Any] = {
        "command": "verify",
        "certificate": args.cert,
        "bound": format_field_element(certificate.bound),
    }
    try:
        report = verify_certificate(certificate, run.workers)
    except CertificateError as e:
        record.update(valid=False, reason=str(e))
        emit(record)
        summary(f"INVALID: {e}")
        return EXIT_INVALID
    sharp = [format_graph(G) for G in report.sharp_set]
    record.update(valid=True, graphs=len(report), sharp=sharp)
    emit(record)
    summary(f"valid: {len(report)} graphs, {len(sharp)} sharp")
    for text in sharp:
        summary(f"  sharp {text}")
    return EXIT_OK


def cmd_slack(run: RunConfig, args: argparse.Namespace) -> int:
    certificate = parse_certificate(args.cert)
    check = check_certificate(certificate, run.workers)
    for G, s in zip(check.report.graphs, check.report.slacks):
        emit({"graph": format_graph(G), "slack": format_field_element(s), "sharp": s == 0})
    failure = check.worst_pivot()
    if failure is not None:
        block, pivot, value = failure
        summary(f"block {block} is not positive semidefinite at pivot {pivot} ({format_field_element(value)})")
    if not check.bounds_ok:
        graph, slack = check.report.worst()
        summary(f"graph {format_graph(graph)} has negative slack {format_field_element(slack)}")
    return EXIT_OK if check.is_valid else EXIT_INVALID


def cmd_lagrangian(run: RunConfig, args: argparse.Namespace) -> int:
    G = resolve_graph(args.graph)
    value, weights = maximize_lagrangian(G, run.restarts, run.iterations, run.seed)
    record: Dict[str, Any] = {
        "command": "lagrangian",
        "graph": format_graph(G),
        "value": value,
        "weights": list(weights),
    }
    if args.witness:
        witness = WeightVector.parse(args.witness)
        witness.validate()
        exact = lambda_at(G, witness)
        record["exact"] = format_field_element(exact)
        record["exact_value"] = float(exact)
    emit(record)
    summary(f"lambda({format_graph(G)}) ~ {value:.12f}")
    return EXIT_OK


def cmd_construction(run: RunConfig, args: argparse.Namespace) -> int:
    c = construction(args.kind, args.n)
    G = c.graph
    record: Dict[str, Any] = {
        "command": "construction",
        "kind": c.kind,
        "n": c.n,
        "classes": [len(part) for part in c.partition],
        "edges": G.num_edges,
        "density": format_field_element(edge_density(G)),
        "graph": format_graph(G),
    }
    status = EXIT_OK
    if args.check_free:
        free, witness = check_free(G, resolve_family(args.check_free))
        record["free"] = free
        if witness is not None:
            record["witness"] = {
                "member": format_graph(witness.member),
                "embedding": [v + 1 for v in witness.embedding],
                "induced": witness.induced,
            }
            status = EXIT_INVALID
    emit(record)
    summary(f"{c.kind}_{c.n}: {G.num_edges} edges" + (f", free: {record['free']}" if "free" in record else ""))
    return status


def cmd_blowup_check(run: RunConfig, args: argparse.Namespace) -> int:
    F = resolve_graph(args.f)
    G = resolve_graph(args.g)
    result = blowup_contains(F, G)
    emit({"command": "blowup-check", "f": format_graph(F), "g": format_graph(G), "result": result})
    summary("true" if result else "false")
    return EXIT_OK


def cmd_catalog(run: RunConfig, args: argparse.Namespace) -> int:
    if not args.families:
        for name in catalog.graph_names():
            emit({"graph": name, "text": catalog.GRAPHS[name]})
    if not args.graphs:
        for name in catalog.family_names():
            fam = catalog.family(name)
            emit({
                "family": name,
                "members": [format_graph(F) for F in fam.members],
                "induced": [format_graph(F) for F in fam.induced_members],
            })
    return EXIT_OK


COMMANDS = {
    "admissible": cmd_admissible,
    "bound": cmd_bound,
    "round": cmd_round,
    "verify": cmd_verify,
    "slack": cmd_slack,
    "lagrangian": cmd_lagrangian,
    "construction": cmd_construction,
    "blowup-check": cmd_blowup_check,
    "catalog": cmd_catalog,
}


# ============================================================================
# Parser
# ============================================================================

def _denominators(text: str) -> List[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("denominators must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turanflag",
        description="Turanflag - flag-algebra upper bounds for 3-graph Turan densities",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  turanflag admissible -n 6 -f @k4              Count K4-free 6-vertex graphs
  turanflag bound -n 6 -f @h29-aug              Emit the SDP and run the solver
  turanflag round -n 6 -f @h29-aug --target 2/9 --in h29-aug-n6.sol --out h29.cert
  turanflag verify --cert h29.cert              Exact verification (exit 1 if invalid)
  turanflag lagrangian -g @k4- --witness 1/3,2/9,2/9,2/9
  turanflag construction --kind T -n 12 --check-free @k4
  turanflag blowup-check -f @f5 -g @k4-
        """,
    )
    parser.add_argument("--config", type=str, help="Path to custom config file")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="More logging on stderr (-v info, -vv debug)")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (default: config)")
    parser.add_argument("--version", action="version", version=f"Turanflag v{__version__}")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("admissible", help="Count (and list) admissible graphs")
    p.add_argument("-n", type=int, required=True, help="Order")
    p.add_argument("-f", "--family", required=True, help="Family file or @name")
    p.add_argument("--list", action="store_true", help="Include the graphs in the output")

    p = sub.add_parser("bound", help="Emit the SDP and run the solver")
    p.add_argument("-n", type=int, required=True, help="Order of admissible graphs (5-7)")
    p.add_argument("-f", "--family", required=True, help="Family file or @name")
    p.add_argument("--solver", help="Solver binary (default: config, $TURANFLAG_SOLVER, csdp)")
    p.add_argument("--kind", choices=("auto", "csdp", "sdpa"), help="Solver output layout")
    p.add_argument("--out", help="SDP file (default: <family>-n<N>.dat-s)")
    p.add_argument("--solution", help="Solution file (default: SDP file with .sol)")
    p.add_argument("--timeout", type=float, help="Solver timeout in seconds")

    p = sub.add_parser("round", help="Round a solver solution to an exact certificate")
    p.add_argument("-n", type=int, required=True, help="Order of admissible graphs (5-7)")
    p.add_argument("-f", "--family", required=True, help="Family file or @name")
    p.add_argument("--target", required=True, help="Exact bound, P/Q or P/Q+R/S*sqrt(D)")
    p.add_argument("--in", dest="input", required=True, help="Solver solution file")
    p.add_argument("--out", required=True, help="Certificate file to write")
    p.add_argument("--denominators", type=_denominators, help="Comma-separated denominator schedule")

    p = sub.add_parser("verify", help="Verify a certificate exactly")
    p.add_argument("--cert", required=True, help="Certificate file")

    p = sub.add_parser("slack", help="Print the exact slack of every admissible graph")
    p.add_argument("--cert", required=True, help="Certificate file")

    p = sub.add_parser("lagrangian", help="Maximise the Lagrangian of a graph")
    p.add_argument("-g", "--graph", required=True, help="Graph text, file or @name")
    p.add_argument("--witness", help="Exact weights, e.g. 1/3,2/9,2/9,2/9")
    p.add_argument("--restarts", type=int, help="Random starts (default: config)")
    p.add_argument("--iterations", type=int, help="Steps per start (default: config)")
    p.add_argument("--seed", type=int, help="Base seed (default: config)")

    p = sub.add_parser("construction", help="Build S, J, T or B on n vertices")
    p.add_argument("--kind", required=True, type=str.upper, choices=KINDS)
    p.add_argument("-n", type=int, required=True, help="Vertex count (>= 3)")
    p.add_argument("--check-free", help="Family file or @name to check freeness against")

    p = sub.add_parser("blowup-check", help="Does some blow-up of G contain F?")
    p.add_argument("-f", required=True, help="Graph F (text, file or @name)")
    p.add_argument("-g", required=True, help="Graph G (text, file or @name)")

    p = sub.add_parser("catalog", help="List named graphs and families")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--graphs", action="store_true", help="Only graphs")
    group.add_argument("--families", action="store_true", help="Only families")

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)
        return COMMANDS[args.command](config, args)
    except KeyboardInterrupt:
        summary("Interrupted.")
        return EXIT_INTERRUPTED
    except CertificateError as e:
        summary(f"Error: {e}")
        return EXIT_INVALID
    except (FormatError, SolverError, RoundingError, OSError) as e:
        summary(f"Error: {e}")
        return EXIT_IO
    except (GraphError, FieldError, KeyError, ValueError) as e:
        summary(f"Error: {e.args[0] if isinstance(e, KeyError) and e.args else e}")
        return EXIT_USAGE


def main() -> None:
    """Main entry point"""
    sys.exit(run())


if __name__ == "__main__":
    main()
