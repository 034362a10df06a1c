"""Command-line entry point.

Exit codes: 0 success, 1 configuration/validation error, 2 usage error.
Every output is rendered in memory first and then written atomically, so a
failing run leaves no partial files behind.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from .config import ConfigError, load_flow_config, load_reference_levels, load_registry, load_system_config, resolve
from .report import (
    aggregation_series,
    emit_series,
    flow_templates,
    frontier,
    hops_series,
    render_comparison,
    render_frontier,
    render_references,
    render_report,
    render_table,
    sweep_mission_time,
)
from .workload import estimate

log = logging.getLogger("orbitcarbon")


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def config_path(arg: str) -> str:
    """Accept a config path with or without its ``.toml`` suffix."""
    path = Path(arg)
    if not path.exists() and not path.suffix and path.with_suffix(".toml").exists():
        return str(path.with_suffix(".toml"))
    return arg


def _stems(paths: Sequence[str]) -> str:
    return "+".join(Path(p).stem for p in paths)


def _systems(args):
    registry = load_registry(*args.registry, strict=args.strict)

    def load(path):
        return resolve(load_system_config(path, strict=args.strict), registry)

    # estimation is pure; order of results follows the command line
    with ThreadPoolExecutor() as pool:
        futures = [pool.submit(load, p) for p in args.configs]
    systems, errors = [], []
    for fut in futures:
        try:
            systems.append(fut.result())
        except ConfigError as exc:
            errors.append(exc)
    if errors:
        raise _Errors(errors)
    return systems


class _Errors(Exception):
    def __init__(self, errors):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors


def cmd_report(args) -> dict[Path, str]:
    out = {}
    for system in _systems(args):
        est = estimate(system)
        out[args.out_dir / f"{system.name}-report.md"] = render_report(est)
        out[args.out_dir / f"{system.name}-table.csv"] = render_table([est])
    return out


def cmd_table(args) -> dict[Path, str]:
    estimates = [estimate(s) for s in _systems(args)]
    _print_wide_table(estimates)
    return {args.out_dir / f"{_stems(args.configs)}-table.csv": render_table(estimates)}


def cmd_compare(args) -> dict[Path, str]:
    estimates = [estimate(s) for s in _systems(args)]
    return {args.out_dir / f"{_stems(args.configs)}-compare.md": render_comparison(estimates)}


def cmd_sweep(args) -> dict[Path, str]:
    if args.steps < 2:
        raise ConfigError("<command line>", None, "--steps", "a sweep needs at least 2 steps")
    if not 0 < args.start < args.stop <= 50:
        raise ConfigError("<command line>", None, "--from/--to",
                          "mission times must satisfy 0 < from < to <= 50 years")
    step = (args.stop - args.start) / (args.steps - 1)
    years = [args.start + i * step for i in range(args.steps - 1)] + [args.stop]
    series = sweep_mission_time(_systems(args), years)
    stem = _stems(args.configs)
    out = {args.out_dir / f"{stem}-sweep-{panel}.csv": emit_series(s) for panel, s in series.items()}
    if args.references or args.bundled_references:
        levels = load_reference_levels(args.references)
        out[args.out_dir / f"{stem}-sweep-references.csv"] = render_references(levels)
    return out


def cmd_frontier(args) -> dict[Path, str]:
    registry = load_registry(*args.registry, strict=args.strict)
    out = {}
    for path in args.configs:
        flow = load_flow_config(path, registry=registry, strict=args.strict)
        templates = flow_templates(flow)
        cells = frontier(flow)
        out[args.out_dir / f"{flow.name}-frontier.csv"] = render_frontier(
            flow.aggregation_grid, flow.hop_grid, cells)
        out[args.out_dir / f"{flow.name}-hops.csv"] = emit_series(hops_series(flow, templates))
        out[args.out_dir / f"{flow.name}-aggregation.csv"] = emit_series(aggregation_series(flow, templates))
    return out


def _print_wide_table(estimates) -> None:
    labels = [e.system.technology.label for e in estimates]
    print(f"{'component':<14} {'SCI':<4} " + " ".join(f"{l:>12}" for l in labels))
    for i, row in enumerate(estimates[0].rows):
        for part in ("M", "O+M"):
            vals = []
            for e in estimates:
                split = e.rows[i].split
                vals.append((split.embodied if part == "M" else split.total).magnitude)
            name = row.component if part == "M" else f"  {row.unit}"
            print(f"{name:<14} {part:<4} " + " ".join(f"{v:>12.4g}" for v in vals))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", type=Path, default=argparse.SUPPRESS,
                        help="directory for output files (default: current directory)")
    common.add_argument("--registry", action="append", default=argparse.SUPPRESS, metavar="FILE",
                        help="extra launch technology registry file (repeatable)")
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=argparse.SUPPRESS,
                        help="reject unknown config keys (default) or only warn")

    parser = argparse.ArgumentParser(
        prog="orbitcarbon", parents=[common],
        description="Carbon intensity of computing systems on Earth and in low-Earth orbit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", parents=[common], help="per-system report and component table")
    p.add_argument("configs", nargs="+", metavar="CONFIG", type=config_path)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("table", parents=[common], help="combined component table")
    p.add_argument("configs", nargs="+", metavar="CONFIG", type=config_path)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", parents=[common], help="side-by-side comparison report")
    p.add_argument("configs", nargs="+", metavar="CONFIG", type=config_path)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", parents=[common], help="intensities against mission time")
    p.add_argument("--param", choices=["mission-time"], default="mission-time")
    p.add_argument("--from", dest="start", type=float, default=1.0, help="first mission time (yrs)")
    p.add_argument("--to", dest="stop", type=float, default=20.0, help="last mission time (yrs)")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--references", metavar="FILE", help="also emit reference energy levels from FILE")
    p.add_argument("--bundled-references", action="store_true",
                   help="also emit the bundled placeholder reference energy levels")
    p.add_argument("configs", nargs="+", metavar="CONFIG", type=config_path)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("frontier", parents=[common], help="orbit vs ground placement of data aggregation")
    p.add_argument("configs", nargs="+", metavar="FLOW_CONFIG", type=config_path)
    p.set_defaults(func=cmd_frontier)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.out_dir = getattr(args, "out_dir", Path("."))
    args.registry = getattr(args, "registry", [])
    args.strict = getattr(args, "strict", True)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        outputs = args.func(args)
    except _Errors as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
        return 1
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in sorted(outputs):
        write_atomic(path, outputs[path])
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
