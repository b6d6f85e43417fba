"""Command line entry points.

``dcho run`` simulates one (config, strategy, seed) and writes its CSVs;
``dcho compare`` runs all three strategies over a seed list and writes the
combined summary plus per-run files.  Exit codes: 0 success, 1 usage,
2 configuration problem, 3 runtime failure.
"""

import argparse
import sys

import numpy as np

from .config import load_default_scenario, parse_config
from .engine import run
from .errors import ConfigError
from .hdma import STRATEGY_NAMES
from .metrics import compute_metrics, write_run_csvs, write_summary


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this CLI reserves 2 for config."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seed_value(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("seeds must be non-negative")
    return value


def _parse_seed_list(tokens) -> list:
    seeds = []
    for token in tokens:
        for part in token.split(","):
            if part:
                seeds.append(_seed_value(part))
    return seeds


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="dcho",
        description="Dual-connectivity SN handover strategy simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one strategy on one seed")
    p_run.add_argument("--config", help="scenario JSON (default: packaged scenario)")
    p_run.add_argument("--hdma", required=True, choices=STRATEGY_NAMES,
                       help="handover decision strategy")
    p_run.add_argument("--seed", type=_seed_value,
                       help="RNG seed (default: scenario seed)")
    p_run.add_argument("--out", default="results", help="output directory")

    p_cmp = sub.add_parser("compare",
                           help="run all three strategies over a seed list")
    p_cmp.add_argument("--config", help="scenario JSON (default: packaged scenario)")
    p_cmp.add_argument("--seeds", nargs="+", required=True,
                       help="seed list, space or comma separated")
    p_cmp.add_argument("--out", default="results", help="output directory")
    return parser


def _load(config_path):
    if config_path is None:
        return load_default_scenario()
    return parse_config(config_path)


def _fmt(x) -> str:
    return "%.6g" % float(x)


def cmd_run(config_path, strategy: str, seed, out_dir) -> int:
    scenario = _load(config_path)
    if seed is None:
        seed = scenario.seed
    output = run(scenario, strategy, seed)
    metrics = compute_metrics(output)
    write_run_csvs(out_dir, output, metrics)
    write_summary(out_dir, [(strategy, seed, metrics)])
    print(f"{strategy}: handovers={metrics.handover_count}"
          f" mean_sinr_db={_fmt(metrics.mean_sinr_db)}"
          f" mean_throughput_bps={_fmt(metrics.mean_throughput_bps)}")
    return 0


def cmd_compare(config_path, seeds, out_dir) -> int:
    scenario = _load(config_path)
    rows = []
    for seed in seeds:
        for strategy in STRATEGY_NAMES:
            output = run(scenario, strategy, seed)
            metrics = compute_metrics(output)
            write_run_csvs(out_dir, output, metrics)
            rows.append((strategy, seed, metrics))
    write_summary(out_dir, rows)

    header = ("strategy", "mean_handovers", "mean_ping_pongs",
              "mean_sinr_db", "mean_throughput_bps")
    print(("{:<10}" + "{:>20}" * 4).format(*header))
    for strategy in STRATEGY_NAMES:
        ms = [m for s, _, m in rows if s == strategy]
        line = (
            strategy,
            _fmt(np.mean([m.handover_count for m in ms])),
            _fmt(np.mean([m.ping_pong_count for m in ms])),
            _fmt(np.mean([m.mean_sinr_db for m in ms])),
            _fmt(np.mean([m.mean_throughput_bps for m in ms])),
        )
        print(("{:<10}" + "{:>20}" * 4).format(*line))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seeds = None
    if args.command == "compare":
        try:
            seeds = _parse_seed_list(args.seeds)
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
        if not seeds:
            parser.error("--seeds requires at least one seed")
    try:
        if args.command == "run":
            return cmd_run(args.config, args.hdma, args.seed, args.out)
        return cmd_compare(args.config, seeds, args.out)
    except ConfigError as exc:
        print(f"dcho: config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"dcho: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
