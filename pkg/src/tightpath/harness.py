"""Config-driven experiment runner.

A run fixes one host instance, then executes independent trials whose
colourings derive deterministically from (seed, trial index).  Small
instances are cross-checked against the brute-force oracle; every
success row re-validates its path offline.  Reports are append-only per
trial and byte-identical across reruns once timing fields are stripped.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .colourers import (
    all_blue,
    all_red,
    cluster_mixer,
    colour_connector_killer,
    derive_seed,
    uniform_random,
)
from .connectors import ClusterFamily
from .expander import ExpanderParams, sample_expander
from .graph import Graph, complete_graph, cycle_graph
from .hypergraph import (
    Hypergraph3,
    TightPath3,
    TwoColoring,
    brute_force_longest_mono_tight_path,
    validate_tight_path,
)
from .pipeline import PipelineParams, derive_host_hypergraph, extract_mono_tight_path
from .textio import parse_graph

COLOURERS = ("all_blue", "all_red", "uniform_random", "connector_killer", "cluster_mixer")


@dataclass
class ExperimentConfig:
    """One batch: instance source, colouring strategy, trial count."""

    params: PipelineParams
    instance: dict
    colourer: str
    trials: int
    seed: int
    colourer_args: dict = field(default_factory=dict)
    oracle_cap: int = 12
    report_path: Optional[str] = None

    def validate(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.oracle_cap > 15:
            raise ValueError("oracle_cap must be <= 15")
        if self.colourer not in COLOURERS:
            raise ValueError(f"unknown colourer {self.colourer!r}; pick from {COLOURERS}")
        if "kind" not in self.instance:
            raise ValueError("instance needs a 'kind' field")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        return cls(
            params=PipelineParams.from_dict(data["params"]),
            instance=data["instance"],
            colourer=data["colourer"],
            trials=data["trials"],
            seed=data["seed"],
            colourer_args=data.get("colourer_args", {}),
            oracle_cap=data.get("oracle_cap", 12),
            report_path=data.get("report_path"),
        )


def build_instance(instance: dict) -> Graph:
    kind = instance["kind"]
    if kind == "cycle":
        return cycle_graph(instance["num_vertices"])
    if kind == "complete":
        return complete_graph(instance["num_vertices"])
    if kind == "expander":
        params = ExpanderParams(
            eps=Fraction(instance.get("eps", "1/5")),
            a=instance.get("a", 1),
            b=instance["b"],
            seed=instance.get("seed", 0),
        )
        return sample_expander(params, instance["n"])
    if kind == "file":
        return parse_graph(Path(instance["path"]).read_text())
    raise ValueError(f"unknown instance kind {kind!r}")


def _make_colouring(
    name: str,
    h: Hypergraph3,
    cluster_map: list[int],
    t_prime: int,
    seed: int,
    args: dict,
) -> TwoColoring:
    if name == "all_blue":
        return all_blue(h)
    if name == "all_red":
        return all_red(h)
    if name == "uniform_random":
        return uniform_random(h, args.get("p_blue", 0.5), seed)
    if name == "cluster_mixer":
        return cluster_mixer(h, cluster_map, seed)
    if name == "connector_killer":
        origins = sorted(set(cluster_map))
        family = ClusterFamily(
            role=args.get("role", "blue"),
            clusters={
                o: tuple(v for v, org in enumerate(cluster_map) if org == o) for o in origins
            },
        )
        return colour_connector_killer(h, family, seed)
    raise ValueError(f"unknown colourer {name!r}")


@dataclass
class RunReport:
    meta: dict
    rows: list = field(default_factory=list)
    aggregate: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict:
        def strip(obj):
            if isinstance(obj, dict):
                return {k: strip(v) for k, v in obj.items() if k not in ("timings", "seconds")}
            if isinstance(obj, list):
                return [strip(x) for x in obj]
            return obj

        data = {"meta": self.meta, "rows": self.rows, "aggregate": self.aggregate}
        return data if include_timings else strip(data)

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), sort_keys=True, indent=2)


def run_experiment(config: ExperimentConfig) -> RunReport:
    """Execute the batch.  On hosts at or below ``oracle_cap`` vertices
    every trial is also compared against the brute-force longest
    monochromatic tight path; a pipeline success longer than the oracle
    would be recorded (and is asserted against in the tests)."""
    config.validate()
    params = config.params
    g = build_instance(config.instance)
    gk, h = derive_host_hypergraph(g, params)
    cluster_map = list(h.cluster_map) if h.cluster_map is not None else []
    report = RunReport(
        meta={
            "instance": config.instance,
            "colourer": config.colourer,
            "colourer_args": config.colourer_args,
            "trials": config.trials,
            "seed": config.seed,
            "params": params.to_dict(),
            "host_vertices": h.num_vertices,
            "host_triples": h.num_triples,
        }
    )
    use_oracle = h.num_vertices <= config.oracle_cap
    for trial in range(config.trials):
        tseed = derive_seed(config.seed, trial)
        colouring = _make_colouring(
            config.colourer, h, cluster_map, params.t_prime, tseed, config.colourer_args
        )
        start = time.perf_counter()
        outcome = extract_mono_tight_path(g, params, colouring, host=(gk, h))
        elapsed = time.perf_counter() - start
        row: dict = {
            "trial": trial,
            "trial_seed": tseed,
            "ok": outcome.ok,
            "role": outcome.role,
            "seconds": elapsed,
        }
        if outcome.ok:
            revalidated = bool(
                validate_tight_path(h, colouring, outcome.path, outcome.colour)
            )
            row.update(
                {
                    "colour": outcome.colour,
                    "length": len(outcome.path),
                    "branch": outcome.branch,
                    "path": list(outcome.path.vertices),
                    "validator_pass": revalidated,
                }
            )
        else:
            row.update(
                {
                    "failure_stage": outcome.failure.stage,
                    "failure_hypothesis": outcome.failure.hypothesis,
                    "failure_message": outcome.failure.message,
                }
            )
        if use_oracle:
            oracle_colour, oracle_path = brute_force_longest_mono_tight_path(
                h, colouring, cap=h.num_vertices
            )
            row["oracle_length"] = len(oracle_path)
            row["oracle_colour"] = oracle_colour
            if outcome.ok:
                row["oracle_dominates"] = len(outcome.path) <= len(oracle_path)
        report.rows.append(row)

    successes = [r for r in report.rows if r["ok"]]
    failures = [r for r in report.rows if not r["ok"]]
    taxonomy: dict[str, int] = {}
    for r in failures:
        taxonomy[r["failure_hypothesis"]] = taxonomy.get(r["failure_hypothesis"], 0) + 1
    branches: dict[str, int] = {}
    for r in successes:
        branches[r["branch"]] = branches.get(r["branch"], 0) + 1
    report.aggregate = {
        "successes": len(successes),
        "failures": len(failures),
        "branches": branches,
        "failure_taxonomy": taxonomy,
        "validator_all_pass": all(r.get("validator_pass", False) for r in successes),
        "oracle_violations": sum(
            1 for r in report.rows if r.get("oracle_dominates") is False
        ),
    }
    if config.report_path:
        Path(config.report_path).write_text(report.to_json())
    return report
