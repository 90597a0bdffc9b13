"""
Batch verification suites, counterexample searches and replay.

A run turns an `ExperimentConfig` into a sequence of instances (plain dicts holding everything needed to recompute
them), evaluates every instance and persists one `ResultRecord` per instance to a JSON-lines file, after a manifest
line echoing the config. Evaluation only reads the instance, which is what makes `replay` possible.

Suites:

| suite              | family kinds | instance                                       | verdict                         |
|--------------------|--------------|------------------------------------------------|---------------------------------|
| `theorem1`         | any          | graph, symmetric capacities, pair (x, y)       | `MF(x0,y0) >= MF(x0,y1)`        |
| `theorem2`         | any          | graph, symmetric resistances, pair, p          | `R_p(x0,y1) >= R_p(x0,y0)`      |
| `ladder`           | path         | n, ordered pair (u, v)                         | case analysis and S5 formulas   |
| `complete`         | complete     | n                                              | closed forms, relation          |
| `question1-search` | any          | graph, pair u < v                              | `S(u0,v0) <= S(u0,v1)`          |
| `question2-search` | any          | graph, pair u < v that is not a cut-edge       | `S(u0,v0) <= S(u0,v1)`          |

In the question suites a "violated" record is a candidate counterexample, not an error.
"""
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import asdict, dataclass
from importlib.metadata import PackageNotFoundError, version
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import pandas as pd

from bunkbed_lab.closedform import closed_form_A, closed_form_B
from bunkbed_lab.data.graph_families import (
    ATLAS_MAX_VERTICES,
    complete_graph,
    cycle_graph,
    exhaustive_connected_graphs,
    path_graph,
    star_graph,
)
from bunkbed_lab.data.graph_files import read_graph_file
from bunkbed_lab.data.random_graphs import random_symmetric_weights, sample_connected_graph
from bunkbed_lab.exceptions import ConfigError, Mismatch, NotConverged, RecordNotFound, TimeBudgetExceeded
from bunkbed_lab.graphcore import BaseGraph, CapacitatedNetwork, WeightRole, build_bunkbed, is_cut_edge
from bunkbed_lab.maxflow import max_flow, min_binary_potential_value, min_cut_brute_force, verify_flow_inequality
from bunkbed_lab.presistance import verify_p_resistance_inequality
from bunkbed_lab.saw import census, ladder_pair_report
from bunkbed_lab.utils import (
    canonical_json,
    format_rational,
    get_project_root,
    instance_digest,
    make_rng,
    parse_rational,
)

log = logging.getLogger(__name__)

THEOREM_SUITES = ("theorem1", "theorem2", "ladder", "complete")
QUESTION_SUITES = ("question1-search", "question2-search")
SUITES = THEOREM_SUITES + QUESTION_SUITES
FAMILY_KINDS = ("file", "random", "exhaustive", "path", "cycle", "complete", "star")
VERDICTS = ("holds", "violated", "inconclusive")

HOLDS, VIOLATED, INCONCLUSIVE = VERDICTS

# bunkbed networks up to this size also get the exhaustive cut and potential oracles
ORACLE_MAX_VERTICES = 12
REPLAY_REL_TOL = 1e-8

_FAMILY_KEYS = {
    "file": {"path"},
    "random": {"n_min", "n_max", "edge_probability"},
    "exhaustive": {"n_min", "n_max"},
    "path": {"n_min", "n_max"},
    "cycle": {"n_min", "n_max"},
    "complete": {"n_min", "n_max"},
    "star": {"n_min", "n_max"},
}
_FAMILY_SMALLEST = {"random": 2, "exhaustive": 2, "path": 1, "cycle": 3, "complete": 2, "star": 1}

########################################################################################################################
# Configuration
########################################################################################################################


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything a run depends on. Instance `i` of a run is reproducible from `(config, i)` alone.

    Args:
        suite: one of `SUITES`.
        family: graph family, a dict with a `kind` in `FAMILY_KINDS` and kind-specific keys (see `docs/harness.md`).
        seed: experiment seed; trial `i` draws from the stream `(seed, i)`.
        p_values: exponents checked by `theorem2`.
        trials: number of random instances, or a cap on the instances of a deterministic family.
        time_budget: wall-clock budget of the whole run in seconds.
        trial_time_cap: wall-clock cap of one walk enumeration in seconds; an expired cap makes the record
            inconclusive.
        workers: number of processes evaluating instances.
        record_runtime: whether records carry their runtime (records are then no longer byte-identical across runs).
    """

    suite: str
    family: Dict[str, Any]
    seed: int = 0
    p_values: Tuple[float, ...] = (1.5, 2.0, 3.0)
    trials: Optional[int] = None
    time_budget: Optional[float] = None
    trial_time_cap: Optional[float] = None
    workers: int = 1
    record_runtime: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", dict(self.family))
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ConfigError: on unknown suites or family kinds, unknown family keys and out-of-range parameters.
        """
        if self.suite not in SUITES:
            raise ConfigError("Unknown suite {!r}, expected one of {}".format(self.suite, ", ".join(SUITES)))
        kind = self.family.get("kind")
        if kind not in FAMILY_KINDS:
            raise ConfigError("Unknown family kind {!r}, expected one of {}".format(kind, ", ".join(FAMILY_KINDS)))
        unknown = set(self.family) - _FAMILY_KEYS[kind] - {"kind"}
        if unknown:
            raise ConfigError("Unknown keys for family {!r}: {}".format(kind, ", ".join(sorted(unknown))))

        if kind == "file":
            if "path" not in self.family:
                raise ConfigError("Family 'file' needs a 'path'")
        else:
            n_min, n_max = self.n_range
            if n_min < _FAMILY_SMALLEST[kind] or n_max < n_min:
                raise ConfigError("Bad size range [{}, {}] for family {!r}".format(n_min, n_max, kind))
            if kind == "exhaustive" and n_max > ATLAS_MAX_VERTICES:
                raise ConfigError("Exhaustive families stop at {} vertices".format(ATLAS_MAX_VERTICES))
        if kind == "random":
            probability = self.family.get("edge_probability", 0.5)
            if not 0 < probability <= 1:
                raise ConfigError("edge_probability must lie in (0, 1], got {}".format(probability))
            if self.trials is None:
                raise ConfigError("Random families need a number of trials")

        if self.suite == "ladder" and kind != "path":
            raise ConfigError("The ladder suite runs on the 'path' family")
        if self.suite == "complete" and kind != "complete":
            raise ConfigError("The complete suite runs on the 'complete' family")
        if self.suite == "theorem2" and (not self.p_values or any(p <= 1 for p in self.p_values)):
            raise ConfigError("p_values must be a non-empty list of exponents > 1, got {}".format(list(self.p_values)))
        if self.seed < 0:
            raise ConfigError("seed must be non-negative, got {}".format(self.seed))
        if self.trials is not None and self.trials < 0:
            raise ConfigError("trials must be non-negative, got {}".format(self.trials))
        if self.workers < 1:
            raise ConfigError("workers must be at least 1, got {}".format(self.workers))
        for name in ("time_budget", "trial_time_cap"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ConfigError("{} must be positive, got {}".format(name, value))

    @property
    def n_range(self) -> Tuple[int, int]:
        n_min = int(self.family.get("n_min", _FAMILY_SMALLEST.get(self.family["kind"], 2)))
        return n_min, int(self.family.get("n_max", n_min))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        data = dict(data)
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ConfigError("Unknown config keys: {}".format(", ".join(sorted(unknown))))
        for required in ("suite", "family"):
            if required not in data:
                raise ConfigError("Config is missing {!r}".format(required))
        if not isinstance(data["family"], dict):
            raise ConfigError("'family' must be an object, got {!r}".format(data["family"]))
        try:
            return cls(**data)
        except (TypeError, ValueError) as error:
            if isinstance(error, ConfigError):
                raise
            raise ConfigError(str(error)) from None

    @classmethod
    def from_json(cls, path: Union[str, Path], **overrides: Any) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigError("Cannot read config {}: {}".format(path, error)) from None
        if not isinstance(data, dict):
            raise ConfigError("Config {} must hold a JSON object".format(path))
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["p_values"] = list(self.p_values)
        return data


########################################################################################################################
# Records
########################################################################################################################


@dataclass(frozen=True)
class ResultRecord:
    """
    Attributes:
        id: position of the record in its run.
        suite: suite id.
        trial: index of the family member the instance was built from.
        digest: sha256 of the canonical instance serialization.
        instance: everything needed to recompute the record.
        quantities: computed values (exact values as decimal strings or p/q).
        verdict: "holds", "violated" or "inconclusive".
        runtime: seconds spent, when the config asks for it.
    """

    id: int
    suite: str
    trial: int
    digest: str
    instance: Dict[str, Any]
    quantities: Dict[str, Any]
    verdict: str
    runtime: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if self.runtime is None:
            del data["runtime"]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ResultRecord":
        return cls(**data)

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


class SuiteResult(NamedTuple):
    records: List[ResultRecord]
    summary: pd.DataFrame

    @property
    def violations(self) -> List[ResultRecord]:
        return [r for r in self.records if r.verdict == VIOLATED]


class ReplayResult(NamedTuple):
    record: ResultRecord
    quantities: Dict[str, Any]
    verdict: str


def manifest(config: ExperimentConfig) -> Dict[str, Any]:
    try:
        code_version = version("bunkbed-lab")
    except PackageNotFoundError:
        code_version = "unknown"
    return {"manifest": True, "config": config.to_dict(), "version": code_version}


def summarize(records: Sequence[ResultRecord]) -> pd.DataFrame:
    """Verdict counts per suite, one row per suite and one column per verdict plus a total."""
    if not records:
        return pd.DataFrame(columns=[*VERDICTS, "total"])
    frame = pd.DataFrame([{"suite": r.suite, "verdict": r.verdict} for r in records], columns=["suite", "verdict"])
    table = frame.groupby(["suite", "verdict"]).size().unstack(fill_value=0)
    table = table.reindex(columns=list(VERDICTS), fill_value=0)
    table["total"] = table.sum(axis=1)
    return table


def exit_code(suite: str, records: Sequence[ResultRecord]) -> int:
    """1 when a theorem suite produced a violation, else 0."""
    if suite in THEOREM_SUITES and any(r.verdict == VIOLATED for r in records):
        return 1
    return 0


########################################################################################################################
# Instances
########################################################################################################################


def _weights_to_json(weights: Sequence) -> List[str]:
    return [format_rational(w) for w in weights]


def family_members(config: ExperimentConfig) -> Iterator[Tuple[int, BaseGraph, Optional[List], Any]]:
    """
    Yields `(trial, graph, weights, rng)`: the family members in canonical order, their file weights (indexed by
    bunkbed edge id, None when the family has none) and the random stream of the trial.
    """
    kind = config.family["kind"]
    trials = config.trials
    if kind == "random":
        n_min, n_max = config.n_range
        probability = config.family.get("edge_probability", 0.5)
        for trial in range(trials):
            rng = make_rng(config.seed, trial)
            n = int(rng.integers(n_min, n_max + 1))
            yield trial, sample_connected_graph(rng, n, probability), None, rng
        return

    if kind == "file":
        path = Path(config.family["path"])
        if not path.is_absolute() and not path.exists():
            path = get_project_root() / path
        graph_file = read_graph_file(path)
        weights = graph_file.bunkbed_weights()
        for trial in range(1 if trials is None else trials):
            yield trial, graph_file.graph, weights, make_rng(config.seed, trial)
        return

    if kind == "exhaustive":
        n_min, n_max = config.n_range
        graphs = exhaustive_connected_graphs(n_max, n_min)
    else:
        build = {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph, "star": star_graph}[kind]
        n_min, n_max = config.n_range
        graphs = (build(n) for n in range(n_min, n_max + 1))
    for trial, graph in enumerate(graphs):
        if trials is not None and trial >= trials:
            return
        yield trial, graph, None, make_rng(config.seed, trial)


def build_instances(config: ExperimentConfig) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yields `(trial, instance)` for every check of the run, in record order."""
    suite = config.suite
    if suite == "ladder":
        n_min, n_max = config.n_range
        for trial, n in enumerate(range(max(n_min, 2), n_max + 1)):
            for u in range(n + 1):
                for v in range(n + 1):
                    if u != v:
                        yield trial, {"check": "ladder", "n": n, "u": u, "v": v}
        return
    if suite == "complete":
        n_min, n_max = config.n_range
        for trial, n in enumerate(range(n_min, n_max + 1)):
            yield trial, {"check": "complete", "n": n}
        return

    for trial, graph, file_weights, rng in family_members(config):
        if suite in QUESTION_SUITES:
            for u, v in combinations(range(graph.vertex_count), 2):
                adjacent = graph.has_edge(u, v)
                cut_edge = adjacent and is_cut_edge(graph, u, v)
                if suite == "question2-search" and cut_edge:
                    continue
                yield trial, {
                    "check": "saw-pair",
                    "graph": graph.to_dict(),
                    "u": u,
                    "v": v,
                    "adjacent": adjacent,
                    "cut_edge": cut_edge,
                }
            continue

        if graph.vertex_count < 2:
            continue
        x, y = (int(w) for w in rng.choice(graph.vertex_count, size=2, replace=False))
        bunkbed = build_bunkbed(graph)
        if file_weights is not None:
            weights = file_weights
        else:
            # capacities may cut a post; resistances stay positive
            weights = random_symmetric_weights(rng, bunkbed, allow_zero_vertical=suite == "theorem1")
        instance = {"graph": graph.to_dict(), "weights": _weights_to_json(weights), "x": x, "y": y}
        if suite == "theorem1":
            yield trial, dict(instance, check="flow")
        else:
            for p in config.p_values:
                yield trial, dict(instance, check="presistance", p=p)


########################################################################################################################
# Evaluation
########################################################################################################################


def evaluate_instance(instance: Dict[str, Any], trial_time_cap: Optional[float] = None) -> Tuple[Dict[str, Any], str]:
    """
    Recomputes the quantities and the verdict of one instance.

    Walk enumerations that run past `trial_time_cap` give an inconclusive verdict, as do p-resistance solves that do
    not converge.
    """
    check = instance["check"]
    try:
        if check == "flow":
            return _evaluate_flow(instance)
        if check == "presistance":
            return _evaluate_presistance(instance)
        if check == "ladder":
            return _evaluate_ladder(instance, trial_time_cap)
        if check == "complete":
            return _evaluate_complete(instance, trial_time_cap)
        if check == "saw-pair":
            return _evaluate_saw_pair(instance, trial_time_cap)
    except TimeBudgetExceeded:
        log.warning("Instance %s ran past its time cap", _describe(instance))
        return {"reason": "time cap"}, INCONCLUSIVE
    except NotConverged as error:
        log.warning("Instance %s did not converge: %s", _describe(instance), error)
        return {"reason": "not converged"}, INCONCLUSIVE
    raise ValueError("Unknown check {!r}".format(check))


def _describe(instance: Dict[str, Any]) -> str:
    return instance_digest(instance)[:12]


def _evaluate_flow(instance: Dict[str, Any]) -> Tuple[Dict[str, Any], str]:
    base = BaseGraph.from_dict(instance["graph"])
    weights = [parse_rational(w) for w in instance["weights"]]
    x, y = instance["x"], instance["y"]
    report = verify_flow_inequality(base, weights, x, y)
    quantities = {"mf00": format_rational(report.mf00), "mf01": format_rational(report.mf01)}
    holds = report.holds

    bunkbed = build_bunkbed(base)
    if bunkbed.vertex_count <= ORACLE_MAX_VERTICES:
        network = CapacitatedNetwork(bunkbed, tuple(weights), WeightRole.CAPACITY)
        s, t = bunkbed.vertex(x, 0), bunkbed.vertex(y, 1)
        flow_value = max_flow(network, s, t).value
        cut_value = min_cut_brute_force(network, s, t).value
        potential_value = min_binary_potential_value(network, s, t)
        quantities["min_cut01"] = format_rational(cut_value)
        quantities["min_potential01"] = format_rational(potential_value)
        holds = holds and flow_value == cut_value == potential_value
    return quantities, HOLDS if holds else VIOLATED


def _evaluate_presistance(instance: Dict[str, Any]) -> Tuple[Dict[str, Any], str]:
    base = BaseGraph.from_dict(instance["graph"])
    resistances = [parse_rational(w) for w in instance["weights"]]
    report = verify_p_resistance_inequality(base, resistances, instance["x"], instance["y"], instance["p"])
    return {"r00": report.r00, "r01": report.r01}, HOLDS if report.holds else VIOLATED


def _evaluate_ladder(instance: Dict[str, Any], trial_time_cap: Optional[float]) -> Tuple[Dict[str, Any], str]:
    report = ladder_pair_report(instance["n"], instance["u"], instance["v"], time_limit=trial_time_cap)
    quantities = {
        "total_v0": str(report.total_v0),
        "total_v1": str(report.total_v1),
        "s5_v0": str(report.s5_v0),
        "s5_v1": str(report.s5_v1),
        "predicted": report.predicted,
        "observed": report.observed,
    }
    return quantities, HOLDS if report.agrees else VIOLATED


def _evaluate_complete(instance: Dict[str, Any], trial_time_cap: Optional[float]) -> Tuple[Dict[str, Any], str]:
    n = instance["n"]
    result = census(complete_graph(n), 0, 1, time_limit=trial_time_cap)
    quantities = result.to_dict()
    if n == 2:
        expected = (0, 0)
        relation_holds = result.total_v0 == result.total_v1
    else:
        expected = (closed_form_A(n), closed_form_B(n))
        relation_holds = result.total_v0 < result.total_v1
    quantities["A"], quantities["B"] = str(expected[0]), str(expected[1])
    holds = result.paired_classes_agree() and result.s5 == expected and relation_holds
    if not holds:
        log.error("Complete graph K_%d x K2 disagrees with the closed forms: %s", n, quantities)
    return quantities, HOLDS if holds else VIOLATED


def _evaluate_saw_pair(instance: Dict[str, Any], trial_time_cap: Optional[float]) -> Tuple[Dict[str, Any], str]:
    base = BaseGraph.from_dict(instance["graph"])
    result = census(base, instance["u"], instance["v"], time_limit=trial_time_cap)
    quantities = result.to_dict()
    if result.total_v0 > result.total_v1:
        log.warning("Candidate counterexample %s: %s", _describe(instance), quantities)
        return quantities, VIOLATED
    return quantities, HOLDS


def _evaluate_task(
    instance: Dict[str, Any], trial_time_cap: Optional[float], record_runtime: bool, deadline: Optional[float] = None
) -> Tuple[Dict[str, Any], str, Optional[float]]:
    start = time.perf_counter()
    if deadline is not None:
        # walk enumerations stop at the run deadline even without a trial cap
        remaining = max(0.0, deadline - time.monotonic())
        trial_time_cap = remaining if trial_time_cap is None else min(trial_time_cap, remaining)
    quantities, verdict = evaluate_instance(instance, trial_time_cap)
    return quantities, verdict, (time.perf_counter() - start) if record_runtime else None


########################################################################################################################
# Runs
########################################################################################################################


class _RecordWriter:
    """Appends the manifest and then one record per line, flushing after each line."""

    def __init__(self, path: Optional[Union[str, Path]], config: ExperimentConfig):
        self.handle = None
        if path is not None:
            self.handle = open(path, "w", newline="\n")
            self.write(canonical_json(manifest(config)))

    def write(self, line: str) -> None:
        if self.handle is not None:
            self.handle.write(line + "\n")
            self.handle.flush()

    def close(self) -> None:
        if self.handle is not None:
            self.handle.close()


def _evaluations(
    config: ExperimentConfig, instances: List[Dict[str, Any]], deadline: Optional[float]
) -> Iterator[Tuple[Dict[str, Any], str, Optional[float]]]:
    """
    Evaluates instances in order, sequentially or in a process pool, stopping at the deadline.

    Every task also receives the deadline, so a running walk enumeration ends with the run instead of holding a
    worker after the budget is spent.
    """
    exceeded = "Run exceeded its time budget of {} s".format(config.time_budget)
    if config.workers <= 1:
        for instance in instances:
            if deadline is not None and time.monotonic() > deadline:
                raise TimeBudgetExceeded(exceeded)
            evaluation = _evaluate_task(instance, config.trial_time_cap, config.record_runtime, deadline)
            if deadline is not None and time.monotonic() > deadline:
                raise TimeBudgetExceeded(exceeded)
            yield evaluation
        return

    pool = ProcessPoolExecutor(max_workers=config.workers)
    finished = False
    try:
        futures = [
            pool.submit(_evaluate_task, instance, config.trial_time_cap, config.record_runtime, deadline)
            for instance in instances
        ]
        for future in futures:
            timeout = None if deadline is None else max(0.0, deadline - time.monotonic())
            evaluation = future.result(timeout=timeout)
            if deadline is not None and time.monotonic() > deadline:
                raise TimeBudgetExceeded(exceeded)
            yield evaluation
        finished = True
    except FutureTimeout:
        raise TimeBudgetExceeded(exceeded) from None
    finally:
        pool.shutdown(wait=finished, cancel_futures=not finished)


def run_suite(config: ExperimentConfig, out: Optional[Union[str, Path]] = None) -> SuiteResult:
    """
    Runs a suite and persists its records.

    Args:
        config: the experiment.
        out: JSON-lines file receiving the manifest and the records, written as records arrive.

    Returns:
        SuiteResult: records in instance order and their verdict summary.

    Raises:
        TimeBudgetExceeded: when `config.time_budget` runs out; the exception carries the records completed so far,
            which are also on disk.
    """
    log.info("Running suite %s on family %s", config.suite, config.family)
    deadline = None if config.time_budget is None else time.monotonic() + config.time_budget
    instances = list(build_instances(config))
    log.info("%d instance(s) to evaluate", len(instances))

    records: List[ResultRecord] = []
    writer = _RecordWriter(out, config)
    try:
        evaluations = _evaluations(config, [instance for _, instance in instances], deadline)
        for index, (quantities, verdict, runtime) in enumerate(evaluations):
            trial, instance = instances[index]
            record = ResultRecord(
                id=len(records),
                suite=config.suite,
                trial=trial,
                digest=instance_digest(instance),
                instance=instance,
                quantities=quantities,
                verdict=verdict,
                runtime=runtime,
            )
            log.debug("Record %d (trial %d): %s", record.id, trial, verdict)
            if verdict == VIOLATED and config.suite in THEOREM_SUITES:
                log.error("Suite %s violated on record %d: %s", config.suite, record.id, record.to_json())
            writer.write(record.to_json())
            records.append(record)
    except TimeBudgetExceeded as error:
        log.warning("Suite %s stopped after %d of %d records", config.suite, len(records), len(instances))
        raise TimeBudgetExceeded(str(error), records=records) from None
    finally:
        writer.close()

    summary = summarize(records)
    log.info("Suite %s finished:\n%s", config.suite, summary)
    return SuiteResult(records, summary)


def question_search(
    which: str,
    family: Dict[str, Any],
    seed: int = 0,
    trials: Optional[int] = None,
    time_budget: Optional[float] = None,
    trial_time_cap: Optional[float] = None,
    workers: int = 1,
    out: Optional[Union[str, Path]] = None,
) -> SuiteResult:
    """
    Compares `|S(u0, v0)|` with `|S(u0, v1)|` over every pair of every family member, flagging pairs where the
    count towards v0 is larger as candidate counterexamples (verdict "violated").

    Args:
        which: "q1" (every pair) or "q2" (pairs that are not cut-edges; non-adjacent pairs included and marked).
        family: family mapping as in `ExperimentConfig`.
    """
    suites = {"q1": "question1-search", "q2": "question2-search"}
    if which.lower() not in suites:
        raise ConfigError("Unknown question {!r}, expected q1 or q2".format(which))
    config = ExperimentConfig(
        suite=suites[which.lower()],
        family=family,
        seed=seed,
        trials=trials,
        time_budget=time_budget,
        trial_time_cap=trial_time_cap,
        workers=workers,
    )
    result = run_suite(config, out)
    if result.violations:
        log.warning("%d candidate counterexample(s) found", len(result.violations))
    return result


########################################################################################################################
# Replay
########################################################################################################################


def load_records(path: Union[str, Path]) -> Tuple[Optional[Dict[str, Any]], List[ResultRecord]]:
    """Reads a records file into its manifest (None if absent) and its records."""
    header, records = None, []
    with open(path) as handle:
        for line in handle:
            if not line.strip():
                continue
            data = json.loads(line)
            if data.get("manifest"):
                header = data
            else:
                records.append(ResultRecord.from_dict(data))
    return header, records


def _same_quantities(recorded: Dict[str, Any], recomputed: Dict[str, Any], check: str) -> bool:
    if check != "presistance":
        return recorded == recomputed
    if recorded.keys() != recomputed.keys():
        return False
    for key, value in recorded.items():
        other = recomputed[key]
        if isinstance(value, float) and isinstance(other, (int, float)):
            if not math.isclose(value, other, rel_tol=REPLAY_REL_TOL, abs_tol=REPLAY_REL_TOL):
                return False
        elif value != other:
            return False
    return True


def replay(path: Union[str, Path], record_id: int, trial_time_cap: Optional[float] = None) -> ReplayResult:
    """
    Recomputes one record from its stored instance.

    Exact checks must reproduce the recorded quantities identically; p-resistance values must agree within 1e-8
    relative.

    Raises:
        RecordNotFound: if no record has this id.
        Mismatch: if the digest does not match the instance, or the recomputed quantities or verdict differ.
    """
    _, records = load_records(path)
    matches = [r for r in records if r.id == record_id]
    if not matches:
        raise RecordNotFound("No record {} in {}".format(record_id, path))
    record = matches[0]

    if instance_digest(record.instance) != record.digest:
        raise Mismatch("Record {} digest does not match its instance".format(record_id))
    quantities, verdict = evaluate_instance(record.instance, trial_time_cap)
    if verdict != record.verdict or not _same_quantities(record.quantities, quantities, record.instance["check"]):
        raise Mismatch(
            "Record {} replays to {} {} instead of {} {}".format(
                record_id, verdict, quantities, record.verdict, record.quantities
            )
        )
    log.info("Record %d replayed identically", record_id)
    return ReplayResult(record, quantities, verdict)
