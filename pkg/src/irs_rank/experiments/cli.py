"""Command line entry point.

Exit codes: 0 on success, 2 for config/usage errors, 1 for runtime errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from ..deployment import ue_linesearch
from ..errors import ConfigError
from ..geometry import SceneConfig
from .config import ExperimentSpec, Scenario, parse_config
from .csvio import records_to_csv
from .scenarios import run, with_elements


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed {text} does not fit in 64 bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irs-rank", description="IRS-aided 2x2 MIMO rank-improvement experiments."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="scenario file ([scene]/[experiment])")
    common.add_argument("--seed", type=_u64, help="master seed (u64)")
    common.add_argument("--out", type=Path, help="CSV destination (default: stdout)")
    common.add_argument("--workers", type=int, help="worker threads for sweep points")
    common.add_argument("--mc-draws", type=int, help="random-phase draws (rate-cdf)")
    common.add_argument("--n", type=int, dest="n_elements", help="IRS element count N")
    sub = parser.add_subparsers(dest="command", required=True)
    for scenario in Scenario:
        sub.add_parser(scenario.value, parents=[common], help=f"run the {scenario.value} scenario")
    return parser


def _resolve(args) -> tuple[SceneConfig, ExperimentSpec]:
    scenario = Scenario(args.command)
    if args.config is not None:
        cfg, spec = parse_config(args.config)
        if spec.scenario not in (Scenario.SINGLE, scenario):
            raise ConfigError(
                f"{args.config}: config is for {spec.scenario.value}, not {scenario.value}"
            )
    else:
        cfg, spec = SceneConfig(), ExperimentSpec()
    overrides = {"scenario": scenario}
    if spec.sweep is not None and spec.scenario is not scenario:
        overrides["sweep"] = None
    for name in ("seed", "workers", "mc_draws", "n_elements"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.out is not None:
        overrides["output_path"] = args.out
    try:
        return cfg, dataclasses.replace(spec, **overrides)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg, spec = _resolve(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        records = run(cfg, spec)
        text = records_to_csv(spec.scenario, records)
        if spec.output_path is None:
            sys.stdout.write(text)
        else:
            spec.output_path.write_text(text, encoding="utf-8", newline="")
        if spec.scenario is Scenario.RATE_VS_UE_Y:
            sweep = spec.resolved_sweep().values
            step = sweep[1] - sweep[0] if len(sweep) > 1 else 0.01
            best = ue_linesearch(
                with_elements(cfg, spec.resolved_elements()), "y", sweep[0], sweep[-1], step
            )
            print(f"high-SNR rate peaks at y_u = {best.position:.4f} m "
                  f"({best.rate:.4f} bit/s/Hz)", file=sys.stderr)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
