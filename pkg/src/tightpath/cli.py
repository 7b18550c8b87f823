"""Command-line interface.

Subcommands: sample, certify, colour, extract, experiment, validate.
Exit codes: 0 success, 2 hypothesis failure (or a failed check),
3 hard fault (an invariant the proofs guarantee was violated),
4 I/O or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .colourers import all_blue, all_red, cluster_mixer, colour_connector_killer, uniform_random
from .connectors import ClusterFamily
from .expander import ExpanderParams, certify_p1, sample_expander
from .faults import HardFault, HypothesisFailure
from .graph import blow_up, graph_power
from .harness import ExperimentConfig, run_experiment
from .hypergraph import triangles_to_hypergraph, validate_tight_path
from .pipeline import PipelineParams, extract_mono_tight_path
from . import textio

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_HARD_FAULT = 3
EXIT_CONFIG = 4


def _load_params(path: str, strict: bool = False) -> PipelineParams:
    data = json.loads(Path(path).read_text())
    if strict:
        data["strict_constants"] = True
    return PipelineParams.from_dict(data)


def _cmd_sample(args) -> int:
    params = _load_params(args.params)
    expander = ExpanderParams(
        eps=params.eps, a=params.a if args.a is None else args.a, b=args.b, seed=args.seed
    )
    g = sample_expander(expander, args.n)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "host.graph").write_text(textio.format_graph(g))
    gk = graph_power(g, params.k)
    gb, _ = blow_up(gk, params.t_prime)
    (out / "power_blowup.graph").write_text(textio.format_graph(gb))
    h = triangles_to_hypergraph(gb)
    (out / "host.h3").write_text(textio.format_hypergraph(h))
    print(
        f"sampled {g.num_vertices} vertices ({g.num_edges} edges); "
        f"blow-up {gb.num_vertices} vertices; {h.num_triples} triples -> {out}"
    )
    return EXIT_OK


def _cmd_certify(args) -> int:
    g = textio.parse_graph(Path(args.graph).read_text())
    cert = certify_p1(
        g, Fraction(args.eps), args.n, mode=args.mode, trials=args.trials, seed=args.seed
    )
    payload = {
        "mode": cert.mode,
        "passed": cert.passed,
        "set_size": cert.set_size,
        "lambda2_bound": cert.lambda2_bound,
        "threshold": cert.threshold,
        "trials": cert.trials,
        "violations": cert.violations,
    }
    text = json.dumps(payload, indent=2)
    if args.report:
        Path(args.report).write_text(text)
    print(text)
    return EXIT_OK if cert.passed else EXIT_HYPOTHESIS


def _cmd_colour(args) -> int:
    h = textio.parse_hypergraph(Path(args.hypergraph).read_text())
    cluster_map = None
    if args.blowup:
        gb = textio.parse_graph(Path(args.blowup).read_text())
        cluster_map = gb.vertex_labels
    if args.colourer == "all_blue":
        colouring = all_blue(h)
    elif args.colourer == "all_red":
        colouring = all_red(h)
    elif args.colourer == "uniform_random":
        colouring = uniform_random(h, args.p_blue, args.seed)
    elif args.colourer == "cluster_mixer":
        if cluster_map is None:
            raise ValueError("cluster_mixer needs --blowup for the cluster map")
        colouring = cluster_mixer(h, cluster_map, args.seed)
    elif args.colourer == "connector_killer":
        if cluster_map is None:
            raise ValueError("connector_killer needs --blowup for the cluster map")
        origins = sorted(set(cluster_map))
        family = ClusterFamily(
            role="blue",
            clusters={
                o: tuple(v for v, org in enumerate(cluster_map) if org == o) for o in origins
            },
        )
        colouring = colour_connector_killer(h, family, args.seed)
    else:
        raise ValueError(f"unknown colourer {args.colourer}")
    Path(args.out).write_text(textio.format_colouring(colouring))
    print(f"coloured {h.num_triples} triples -> {args.out}")
    return EXIT_OK


def _cmd_extract(args) -> int:
    params = _load_params(args.params, strict=args.strict_constants)
    g = textio.parse_graph(Path(args.graph).read_text())
    from .pipeline import derive_host_hypergraph

    gk, h = derive_host_hypergraph(g, params)
    colouring = textio.parse_colouring(Path(args.colouring).read_text(), h)
    outcome = extract_mono_tight_path(
        g, params, colouring, tie_break=args.tie_break, host=(gk, h)
    )
    if args.report:
        Path(args.report).write_text(json.dumps(outcome.report, indent=2, default=str))
    if outcome.ok:
        print(f"{outcome.colour} tight path of {len(outcome.path)} vertices ({outcome.branch} branch)")
        if args.out:
            Path(args.out).write_text(textio.format_tight_path(outcome.path, outcome.colour))
        return EXIT_OK
    print(
        f"hypothesis failure at {outcome.failure.stage}: "
        f"{outcome.failure.hypothesis} -- {outcome.failure.message}"
    )
    return EXIT_HYPOTHESIS


def _cmd_experiment(args) -> int:
    data = json.loads(Path(args.config).read_text())
    if args.report:
        data["report_path"] = args.report
    if args.oracle_cap is not None:
        data["oracle_cap"] = args.oracle_cap
    config = ExperimentConfig.from_dict(data)
    report = run_experiment(config)
    agg = report.aggregate
    print(
        f"{agg['successes']} successes / {agg['failures']} failures over "
        f"{len(report.rows)} trials; branches {agg['branches']}; "
        f"oracle violations {agg['oracle_violations']}"
    )
    if config.report_path:
        print(f"report -> {config.report_path}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    h = textio.parse_hypergraph(Path(args.hypergraph).read_text())
    colouring = textio.parse_colouring(Path(args.colouring).read_text(), h)
    path, colour = textio.parse_tight_path(Path(args.path).read_text())
    result = validate_tight_path(h, colouring, path, colour)
    if result:
        print(f"valid {colour} tight path of {len(path)} vertices")
        return EXIT_OK
    print(f"invalid: {result.violation}")
    return EXIT_HYPOTHESIS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tightpath",
        description="Monochromatic tight-path machinery: sampling, certification, extraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="emit expander, blow-up, and hypergraph files")
    p.add_argument("--params", required=True, help="pipeline params JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, required=True, help="expander scale (a*n vertices)")
    p.add_argument("--b", type=int, required=True, help="regular degree (even, >= 4)")
    p.add_argument("--a", type=int, default=None, help="override the params' a")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("certify", help="expansion certificate for a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", required=True, help='rational, e.g. "1/5"')
    p.add_argument("--n", type=int, required=True, help="scale: sets of size ceil(eps*n)")
    p.add_argument("--mode", choices=("spectral", "sampled"), default="spectral")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("colour", help="apply a colouring strategy to a hypergraph file")
    p.add_argument("--hypergraph", required=True)
    p.add_argument(
        "--colourer",
        required=True,
        choices=("all_blue", "all_red", "uniform_random", "cluster_mixer", "connector_killer"),
    )
    p.add_argument("--p-blue", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--blowup", default=None, help="blow-up graph file carrying cluster labels")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_colour)

    p = sub.add_parser("extract", help="run the extraction pipeline on files")
    p.add_argument("--graph", required=True, help="base graph file")
    p.add_argument("--params", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--tie-break", choices=("red", "blue"), default="blue")
    p.add_argument("--strict-constants", action="store_true")
    p.add_argument("--report", default=None)
    p.add_argument("--out", default=None, help="write the tight path file here")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("experiment", help="config-driven batch of trials")
    p.add_argument("--config", required=True)
    p.add_argument("--report", default=None)
    p.add_argument("--oracle-cap", type=int, default=None)
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("validate", help="re-check a tight path file")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--colouring", required=True)
    p.add_argument("--path", required=True)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HardFault as exc:
        print(f"hard fault: {exc}", file=sys.stderr)
        return EXIT_HARD_FAULT
    except HypothesisFailure as exc:
        print(f"hypothesis failure ({exc.kind}): {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
