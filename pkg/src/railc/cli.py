"""Command-line interface.

Subcommands: ``analyze`` prints a design's convergence report, ``run``
executes a configured campaign, ``compare`` forces compare mode, ``demo``
runs the built-in constrained scenario end to end.  Exit codes: 0 success,
2 when a run precondition fails or the adaptation becomes infeasible, 1 on
any other error.  Set ``RAILC_LOG`` (debug/info/warning) for verbosity.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .analysis import gamma_hat_certificate
from .errors import AssumptionViolated, InfeasibleAdaptation, RailcError
from .harness import (
    ExperimentConfig,
    campaign_report_text,
    demo_config,
    load_config,
    run_campaign,
    synthesize_design,
)

__all__ = ["cli_main", "main"]

log = logging.getLogger(__name__)


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    from .harness import config_from_dict

    data = dict(cfg.data)
    if getattr(args, "out", None) is not None:
        data["output"] = args.out
    if getattr(args, "trials", None) is not None:
        data["trials"] = args.trials
    if getattr(args, "seed", None) is not None:
        data["seed"] = args.seed
    return config_from_dict(data)


def _cmd_analyze(args) -> int:
    cfg = load_config(args.config)
    design = synthesize_design(cfg)
    cert = gamma_hat_certificate(cfg.lifted.P, design.L, design.Q)
    print(design.report.to_text())
    print(f"scale_robust_monotonic2 = {str(cert.sufficient).lower()}")
    print(f"certificate_gamma2 = {cert.gamma2!r}")
    print(f"certificate_pqp_inv_norm2 = {cert.pqp_inv_norm2!r}")
    return 0


def _run_and_report(cfg: ExperimentConfig) -> int:
    result = run_campaign(cfg)
    for label, summary in (("railc", result.railc), ("conventional", result.conventional)):
        if summary is None:
            continue
        final = summary.per_trial[-1].norm_e2 if summary.per_trial else float("nan")
        print(
            f"{label}: {len(summary.per_trial)} records, {summary.violations} violations, "
            f"final ||e||_2 = {final:.6g}, {summary.halt_reason}"
        )
    if cfg.out_dir is not None:
        print(f"outputs written to {cfg.out_dir}")
    if result.infeasible:
        summary = result.railc
        print(
            f"error: adaptation infeasible at trial {summary.halt_trial} "
            f"(deficit {summary.halt_deficit:.6g})",
            file=sys.stderr,
        )
        return 2
    return 0


def _cmd_run(args, force_mode: str | None = None) -> int:
    cfg = load_config(args.config)
    cfg = _apply_overrides(cfg, args)
    if force_mode is not None and cfg.mode != force_mode:
        data = dict(cfg.data)
        data["mode"] = force_mode
        from .harness import config_from_dict

        cfg = config_from_dict(data)
    return _run_and_report(cfg)


def _cmd_demo(args) -> int:
    out = args.out if args.out is not None else "railc_demo"
    cfg = demo_config(out_dir=out, trials=args.trials, seed=args.seed)
    return _run_and_report(cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="railc",
        description="Lifted-system iterative learning control with reference "
        "adaptation for output constraints.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="print the convergence report of a config's design")
    p_analyze.add_argument("config", help="path to a YAML experiment config")
    p_analyze.set_defaults(func=_cmd_analyze)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory (overrides the config)")
    common.add_argument("--trials", type=int, help="trial count (overrides the config)")
    common.add_argument("--seed", type=int, help="seed (overrides the config)")

    p_run = sub.add_parser("run", parents=[common], help="execute a configured campaign")
    p_run.add_argument("config", help="path to a YAML experiment config")
    p_run.set_defaults(func=_cmd_run)

    p_compare = sub.add_parser(
        "compare", parents=[common], help="run conventional and adapted campaigns side by side"
    )
    p_compare.add_argument("config", help="path to a YAML experiment config")
    p_compare.set_defaults(func=lambda args: _cmd_run(args, force_mode="compare"))

    p_demo = sub.add_parser(
        "demo", parents=[common], help="run the built-in constrained pendulum scenario"
    )
    p_demo.set_defaults(func=_cmd_demo)
    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("RAILC_LOG", "warning").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def cli_main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AssumptionViolated, InfeasibleAdaptation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RailcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - unexpected internal failure
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))
