"""
Command-line entry point `bunkbed-lab`.

Exit codes: 0 ok, 1 violation in a theorem suite (or a replay mismatch), 2 configuration or input error, 3 time
budget exceeded.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from bunkbed_lab.closedform import asymptotic_reference, closed_form_A, closed_form_B, closed_form_terms
from bunkbed_lab.data.graph_families import ladder
from bunkbed_lab.data.graph_files import read_graph_file
from bunkbed_lab.exceptions import BunkbedLabError, Mismatch, TimeBudgetExceeded
from bunkbed_lab.graphcore import CapacitatedNetwork, WeightRole, build_bunkbed
from bunkbed_lab.harness import SUITES, ExperimentConfig, exit_code, question_search, replay, run_suite
from bunkbed_lab.maxflow import max_flow, verify_flow_inequality
from bunkbed_lab.presistance import SolverConfig, primal_p_resistance, solve_dual
from bunkbed_lab.saw import DEFAULT_MAX_WALKS, census, count_saw, ladder_prediction, ladder_s5_formula
from bunkbed_lab.utils import format_rational

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _emit(data: Dict[str, Any]) -> None:
    print(json.dumps(data, indent=2, sort_keys=True))


def parse_family(text: str) -> Dict[str, Any]:
    """
    Parses a family given either as a JSON object or as `kind[:key=value,...]`, e.g. `cycle:n_min=3,n_max=8`.
    """
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    kind, _, rest = text.partition(":")
    family: Dict[str, Any] = {"kind": kind}
    for item in filter(None, rest.split(",")):
        key, _, value = item.partition("=")
        if key == "path":
            family[key] = value
        elif key == "edge_probability":
            family[key] = float(value)
        else:
            family[key] = int(value)
    return family


########################################################################################################################
# Subcommands
########################################################################################################################


def _maxflow(args: argparse.Namespace) -> int:
    graph_file = read_graph_file(args.graph)
    pair = args.x is not None or args.y is not None
    if pair and (args.x is None or args.y is None or not args.bunkbed):
        raise ValueError("--x and --y go together and need --bunkbed")
    if args.bunkbed:
        graph = build_bunkbed(graph_file.graph)
        weights = graph_file.bunkbed_weights(graph)
    else:
        graph, weights = graph_file.graph, list(graph_file.edge_weights)
    network = CapacitatedNetwork(graph, tuple(weights), WeightRole.CAPACITY)

    source, sink = args.source, args.sink
    if source is None and sink is None and pair:
        source, sink = graph.vertex(args.x, 0), graph.vertex(args.y, 1)
    if source is None or sink is None:
        raise ValueError("Give --source and --sink, or --bunkbed with --x and --y")
    result = max_flow(network, source, sink)
    data: Dict[str, Any] = {
        "source": source,
        "sink": sink,
        "value": format_rational(result.value),
        "cut_edges": [list(graph.edge_list[idx]) for idx in result.cut.crossing_edges],
    }
    if pair:
        report = verify_flow_inequality(graph_file.graph, weights, args.x, args.y)
        data.update(mf00=format_rational(report.mf00), mf01=format_rational(report.mf01), holds=report.holds)
    _emit(data)
    return EXIT_OK


def _presistance(args: argparse.Namespace) -> int:
    graph_file = read_graph_file(args.graph)
    if args.bunkbed:
        graph = build_bunkbed(graph_file.graph)
        weights = graph_file.bunkbed_weights(graph)
        x, y = graph.vertex(args.x, 0), graph.vertex(args.y, args.layer)
    else:
        graph, weights = graph_file.graph, list(graph_file.edge_weights)
        x, y = args.x, args.y
    network = CapacitatedNetwork(graph, tuple(weights), WeightRole.RESISTANCE)
    config = SolverConfig() if args.tol is None else SolverConfig(grad_tol=args.tol)
    if not args.dual_only:
        _emit(primal_p_resistance(network, x, y, args.p, config).to_dict())
        return EXIT_OK
    solution = solve_dual(network, x, y, args.p, config)
    data = {
        "p": args.p,
        "Rp": solution.capacity ** (-(args.p - 1)),
        "Cp": solution.capacity,
        "gap": None,
        "iterations": solution.iterations,
        "converged": solution.converged,
        "method": solution.method,
    }
    _emit(data)
    return EXIT_OK


def _saw(args: argparse.Namespace) -> int:
    if (args.graph is None) == (args.ladder is None):
        raise ValueError("Give exactly one of --graph and --ladder")
    base = ladder(args.ladder).base if args.ladder is not None else read_graph_file(args.graph).graph
    store = args.store_walks is not None
    max_walks = args.store_walks if store else DEFAULT_MAX_WALKS
    options = dict(store_walks=store, max_walks=max_walks, workers=args.workers, time_limit=args.time_limit)

    if args.census or args.ladder is not None:
        predicted = ladder_prediction(args.ladder, args.u, args.v) if args.ladder is not None else None
        result = census(base, args.u, args.v, **options)
        data = result.to_dict()
        if not args.census:
            data = {key: data[key] for key in ("u", "v", "total_v0", "total_v1")}
        if store:
            data["walks"] = {
                "{}_v{}".format(cls.label.name, cls.parity): [walk.to_dict() for walk in walks]
                for cls, walks in sorted(result.walks.items(), key=lambda item: (item[0].parity, item[0].label))
            }
        if args.ladder is not None:
            t0, t1 = result.total_v0, result.total_v1
            data["predicted"] = predicted
            data["observed"] = ">" if t0 > t1 else ("=" if t0 == t1 else "<")
            data["s5"] = [str(count) for count in result.s5]
            data["s5_formula"] = [str(count) for count in ladder_s5_formula(args.ladder, args.u, args.v)]
        _emit(data)
        return EXIT_OK

    bunkbed = build_bunkbed(base)
    source = bunkbed.vertex(args.u, 0)
    counts = {parity: count_saw(bunkbed, source, bunkbed.vertex(args.v, parity), **options) for parity in (0, 1)}
    data = {"u": args.u, "v": args.v}
    for parity, counted in counts.items():
        data["total_v{}".format(parity)] = str(counted.count)
        if store:
            data["walks_v{}".format(parity)] = [walk.to_dict() for walk in counted.walks]
    _emit(data)
    return EXIT_OK


def _closedform(args: argparse.Namespace) -> int:
    data: Dict[str, Any] = {"n": args.n, "A": str(closed_form_A(args.n)), "B": str(closed_form_B(args.n))}
    if args.terms:
        data["terms"] = closed_form_terms(args.n).to_dict()
    if args.asymptotics:
        data["asymptotics"] = asymptotic_reference(args.n).to_dict()
    _emit(data)
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    config = ExperimentConfig.from_json(args.config, suite=args.suite, workers=args.workers)
    result = run_suite(config, args.out)
    print(result.summary.to_string())
    return exit_code(config.suite, result.records)


def _replay(args: argparse.Namespace) -> int:
    result = replay(args.records, args.id)
    _emit({"id": result.record.id, "verdict": result.verdict, "quantities": result.quantities})
    return EXIT_OK


def _search(args: argparse.Namespace) -> int:
    result = question_search(
        args.question,
        parse_family(args.family),
        seed=args.seed,
        trials=args.trials,
        time_budget=args.time_budget,
        trial_time_cap=args.trial_time_cap,
        workers=args.workers,
        out=args.out,
    )
    print(result.summary.to_string())
    for record in result.violations:
        _emit({"id": record.id, "instance": record.instance, "quantities": record.quantities})
    return EXIT_OK


########################################################################################################################
# Parser
########################################################################################################################


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bunkbed-lab", description="Bunkbed graph inequality checks")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    commands = parser.add_subparsers(dest="command", required=True)

    command = commands.add_parser("maxflow", help="maximum flow and minimum cut between two vertices")
    command.add_argument("--graph", required=True)
    command.add_argument("--source", type=int, default=None, help="source vertex id")
    command.add_argument("--sink", type=int, default=None, help="sink vertex id")
    command.add_argument("--bunkbed", action="store_true", help="work on graph x K2, vertex ids u + layer * n")
    command.add_argument("--x", type=int, default=None, help="with --y: also compare MF(x0, y0) and MF(x0, y1)")
    command.add_argument("--y", type=int, default=None)
    command.set_defaults(handler=_maxflow)

    command = commands.add_parser("presistance", help="p-resistance between two vertices")
    command.add_argument("--graph", required=True)
    command.add_argument("--x", type=int, required=True)
    command.add_argument("--y", type=int, required=True)
    command.add_argument("--p", type=float, default=2.0)
    command.add_argument("--bunkbed", action="store_true", help="R_p(x0, y_layer) on graph x K2")
    command.add_argument("--layer", type=int, choices=[0, 1], default=1)
    command.add_argument("--dual-only", action="store_true", help="report R_p = C_p^-(p-1) without the primal flow")
    command.add_argument("--tol", type=float, default=None, help="scaled projected gradient to stop at")
    command.set_defaults(handler=_presistance)

    command = commands.add_parser("saw", help="self-avoiding walks from u0 to v0 and v1")
    command.add_argument("--graph", default=None)
    command.add_argument("--ladder", type=int, default=None, help="use P_n x K2 instead of a graph file")
    command.add_argument("--u", type=int, required=True)
    command.add_argument("--v", type=int, required=True)
    command.add_argument("--census", action="store_true", help="counts per class S1..S5")
    command.add_argument("--store-walks", type=int, default=None, metavar="N", help="keep and print up to N walks")
    command.add_argument("--workers", type=int, default=1)
    command.add_argument("--time-limit", type=float, default=None)
    command.set_defaults(handler=_saw)

    command = commands.add_parser("closedform", help="A_n and B_n on K_n x K2")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--terms", action="store_true")
    command.add_argument("--asymptotics", action="store_true")
    command.set_defaults(handler=_closedform)

    command = commands.add_parser("run", help="run a verification suite")
    command.add_argument("--suite", choices=SUITES, default=None)
    command.add_argument("--config", required=True)
    command.add_argument("--out", default=None)
    command.add_argument("--workers", type=int, default=None)
    command.set_defaults(handler=_run)

    command = commands.add_parser("replay", help="recompute one record of a records file")
    command.add_argument("--records", required=True)
    command.add_argument("--id", type=int, required=True)
    command.set_defaults(handler=_replay)

    command = commands.add_parser("search", help="counterexample search for the walk-count questions")
    command.add_argument("--question", choices=["q1", "q2"], required=True)
    command.add_argument("--family", required=True, help="JSON object or kind[:key=value,...]")
    command.add_argument("--seed", type=int, default=0)
    command.add_argument("--trials", type=int, default=None)
    command.add_argument("--time-budget", type=float, default=None)
    command.add_argument("--trial-time-cap", type=float, default=None)
    command.add_argument("--workers", type=int, default=1)
    command.add_argument("--out", default=None)
    command.set_defaults(handler=_search)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except TimeBudgetExceeded as error:
        log.error("%s (%d record(s) completed)", error, len(error.records or []))
        return EXIT_BUDGET
    except Mismatch as error:
        log.error("%s", error)
        return EXIT_VIOLATION
    except (BunkbedLabError, ValueError, OSError) as error:
        log.error("%s", error)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
