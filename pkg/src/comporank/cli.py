"""Batch command-line client.

Exit codes form the retry-loop contract for scripts:
  0  success (weights all consistent / a winner was retained)
  1  input or validation error
  2  a comparison matrix failed the consistency check
  3  pipeline finished but no component satisfied the needs (search again)

Report JSON on stdout is byte-stable: rerunning the same command on the same
inputs prints the same bytes, and `rank --format json` output equals the
/api/rank response body (plus a trailing newline). Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

from .catalog import load_catalog
from .errors import ComporankError, InconsistentMatrix
from .jsonfmt import dumps_canonical, format_float
from .pipeline import (
    NeedsSpec,
    report_to_dict,
    run_pipeline,
    sensitivity_sweep,
    sweep_to_dict,
)
from .quality_model import (
    DEFAULT_CR_THRESHOLD,
    check_consistency,
    load_criteria,
    resolve_model,
)
from .scoring import ScoringParams

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONSISTENT = 2
EXIT_NO_WINNER = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="comporank",
        description="Select the best reusable component from a catalog.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_weights = sub.add_parser("weights", help="derive criterion weights and check consistency")
    p_weights.add_argument("-c", "--criteria", required=True, help="criteria config JSON")
    p_weights.add_argument("--cr-threshold", type=float, default=DEFAULT_CR_THRESHOLD)
    p_weights.add_argument("--format", choices=("json", "table"), default="json")

    p_rank = sub.add_parser("rank", help="run the full selection pipeline")
    _add_needs_args(p_rank)
    p_rank.add_argument("--alpha", type=float, default=0.5,
                        help="cost/time blend, 1 = cost only (default 0.5)")

    p_sens = sub.add_parser("sensitivity", help="sweep alpha and report winner stability")
    _add_needs_args(p_sens)
    p_sens.add_argument("--alpha-steps", type=int, default=21,
                        help="uniform grid size over [0,1]; 1 means alpha=0.5")

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--addr", default="127.0.0.1:8000", help="HOST:PORT")
    p_serve.add_argument("--catalog", default=None, help="catalog JSON served at /api/catalog")
    p_serve.add_argument("--ui", default=None, help="static directory for the web UI")
    return parser


def _add_needs_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-c", "--criteria", required=True, help="criteria config JSON")
    p.add_argument("-k", "--catalog", required=True, help="catalog JSON")
    p.add_argument("--threshold", type=float, default=0.0,
                   help="minimum score a candidate must reach (default 0)")
    p.add_argument("--require", default="",
                   help="comma-separated service tags the component must provide")
    p.add_argument("--cost-cap", type=float, default=None)
    p.add_argument("--time-cap", type=float, default=None)
    p.add_argument("--cr-threshold", type=float, default=DEFAULT_CR_THRESHOLD)
    p.add_argument("--format", choices=("json", "table"), default="json")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "weights":
            return cmd_weights(args)
        if args.command == "rank":
            return cmd_rank(args)
        if args.command == "sensitivity":
            return cmd_sensitivity(args)
        if args.command == "serve":
            return cmd_serve(args)
    except InconsistentMatrix as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ComporankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    raise AssertionError(f"unhandled command {args.command}")


def cmd_weights(args) -> int:
    tree, matrices = load_criteria(args.criteria)
    resolved = resolve_model(tree, matrices)
    verdicts = {
        node_id: check_consistency(wv, args.cr_threshold)
        for node_id, wv in resolved.nodes.items()
    }
    payload = {
        "leaves": dict(resolved.leaf_weights),
        "consistency": {
            node_id: {"lambda_max": wv.lambda_max, "cr": wv.consistency_ratio}
            for node_id, wv in resolved.nodes.items()
        },
    }
    if args.format == "json":
        print(dumps_canonical(payload))
    else:
        print(f"{'leaf':<24} weight")
        for leaf_id, w in resolved.leaf_weights.items():
            print(f"{leaf_id:<24} {format_float(w)}")
        print()
        print(f"{'node':<24} {'lambda_max':<14} {'CR':<14} verdict")
        for node_id, wv in resolved.nodes.items():
            verdict = "ok" if verdicts[node_id].accepted else "inconsistent"
            print(f"{node_id:<24} {format_float(wv.lambda_max):<14} "
                  f"{format_float(wv.consistency_ratio):<14} {verdict}")
    if any(not v.accepted for v in verdicts.values()):
        bad = ", ".join(n for n, v in verdicts.items() if not v.accepted)
        print(f"inconsistent matrices: {bad}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def _needs_from_args(args, alpha: float) -> NeedsSpec:
    tree, matrices = load_criteria(args.criteria)
    required = frozenset(t for t in args.require.split(",") if t)
    params = ScoringParams(
        alpha=alpha,
        cost_cap=args.cost_cap,
        time_cap=args.time_cap,
        satisfaction_threshold=args.threshold,
    )
    return NeedsSpec(required_services=required, tree=tree, matrices=matrices,
                     params=params, cr_threshold=args.cr_threshold)


def cmd_rank(args) -> int:
    needs = _needs_from_args(args, args.alpha)
    catalog = load_catalog(args.catalog)
    report = run_pipeline(catalog, needs)
    if args.format == "json":
        print(dumps_canonical(report_to_dict(report)))
    else:
        _print_report_table(report)
    if report.winner is None:
        print(f"advisory: {report.advisory}", file=sys.stderr)
        return EXIT_NO_WINNER
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    if args.alpha_steps < 1:
        print("error: --alpha-steps must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    if args.alpha_steps == 1:
        alphas = [0.5]
    else:
        alphas = [i / (args.alpha_steps - 1) for i in range(args.alpha_steps)]
    needs = _needs_from_args(args, alphas[0])
    catalog = load_catalog(args.catalog)
    sweep = sensitivity_sweep(catalog, needs, alphas)
    if args.format == "json":
        print(dumps_canonical(sweep_to_dict(sweep)))
    else:
        print(f"{'alpha':<10} {'winner':<20} top_score")
        for alpha, report in sweep.entries:
            top = format_float(report.rankings[0].score) if report.rankings else "-"
            print(f"{format_float(alpha):<10} {report.winner or '-':<20} {top}")
        print()
        print("stability intervals:")
        for s in sweep.stability:
            print(f"  [{format_float(s.alpha_start)}, {format_float(s.alpha_end)}] "
                  f"-> {s.winner or '-'}")
    return EXIT_OK


def _print_report_table(report) -> None:
    print(f"{'rank':<6} {'component':<20} {'quality':<16} {'penalty':<16} score")
    for i, b in enumerate(report.rankings):
        print(f"{i + 1:<6} {b.component_id:<20} {format_float(b.quality_term):<16} "
              f"{format_float(b.penalty_term):<16} {format_float(b.score)}")
    if report.rejected:
        print()
        print(f"{'rejected':<20} {'stage':<14} reason")
        for r in report.rejected:
            print(f"{r.component_id:<20} {r.stage:<14} {r.reason}")
    print()
    print(f"winner: {report.winner or '-'}")


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.addr.rpartition(":")
    if not host or not port.isdigit():
        print(f"error: --addr must be HOST:PORT, got '{args.addr}'", file=sys.stderr)
        return EXIT_ERROR
    app = create_app(catalog_path=args.catalog, ui_dir=args.ui)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
