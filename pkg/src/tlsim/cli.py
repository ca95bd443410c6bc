"""Command line: ``tlsim validate PATH`` and ``tlsim run PATH... [--out DIR]``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ParseError, ValidationError
from .quantization import tradeoff_table
from .scenario import BUNDLED, load_scenario, resolve_path
from .simengine import Scenario, SimReport, run

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2

PAIR_COLUMNS = [
    "source", "target", "label_axis", "domain_axis", "solution_axis", "class",
    "jobs", "bits", "total_theta", "similarity", "p_tl", "t_tl", "eta", "tau", "positive",
]
UTILIZATION_COLUMNS = ["link", "bin", "bin_start", "bits"]
QUANTIZATION_COLUMNS = [
    "scheme", "bits_per_weight", "parameter_count", "payload_bits", "payload_ratio", "accuracy", "accuracy_retuned",
]
CONFLICT_COLUMNS = ["node", "resource", "agents", "net_opposition"]


@dataclass(frozen=True)
class RunConfig:
    scenario_path: Path
    output_dir: Path
    format: str = "csv"
    seed_override: int | None = None
    validate_only: bool = False


def _write_csv(path: Path, columns: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def quantization_rows(scenario: Scenario) -> list[dict]:
    quant = scenario.quantization
    if quant.accuracy is None:
        return []
    count = quant.parameter_count or max((a.task.parameter_count for a in scenario.agents.values()), default=0)
    if count <= 0:
        return []
    return tradeoff_table(quant.accuracy, count)


def write_reports(report: SimReport, scenario: Scenario, out: Path, fmt: str) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "json":
        path = out / "report.json"
        text = json.dumps(report.to_dict(scenario.utilization_bin), indent=2, sort_keys=True)
        path.write_text(text + "\n", encoding="utf-8")
        written.append(path)
    else:
        path = out / "report.csv"
        _write_csv(path, PAIR_COLUMNS, [p.to_dict() for p in report.pairs])
        written.append(path)
        path = out / "conflicts.csv"
        _write_csv(
            path,
            CONFLICT_COLUMNS,
            [
                {"node": c.node, "resource": c.resource, "agents": ";".join(c.agents), "net_opposition": c.net_opposition}
                for c in report.conflicts
            ],
        )
        written.append(path)
    path = out / "utilization.csv"
    _write_csv(path, UTILIZATION_COLUMNS, report.utilization_rows(scenario.utilization_bin))
    written.append(path)
    path = out / "quantization.csv"
    _write_csv(path, QUANTIZATION_COLUMNS, quantization_rows(scenario))
    written.append(path)
    return written


def run_command(config: RunConfig) -> int:
    try:
        scenario = load_scenario(config.scenario_path)
    except FileNotFoundError:
        print(f"error: cannot read {config.scenario_path}", file=sys.stderr)
        return EXIT_IO
    except (ParseError, ValidationError) as exc:
        print(f"error: {config.scenario_path}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if config.validate_only:
        return EXIT_OK
    if config.seed_override is not None:
        scenario = replace(scenario, seed=config.seed_override)
    report = run(scenario)
    try:
        write_reports(report, scenario, config.output_dir, config.format)
    except OSError as exc:
        print(f"error: cannot write reports to {config.output_dir}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    t = report.totals
    print(
        f"{scenario.name}: {len(report.pairs)} pairs, {t['jobs']} jobs, "
        f"theta={t['theta']:.6g}, positive={t['positive_pairs']} -> {config.output_dir}"
    )
    return EXIT_OK


def _validate_command(path: Path) -> int:
    try:
        load_scenario(path)
    except FileNotFoundError:
        print(f"error: cannot read {path}", file=sys.stderr)
        return EXIT_IO
    except ParseError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        for field_path, message in exc.issues:
            print(f"{path}: {field_path}: {message}", file=sys.stderr)
        return EXIT_INVALID
    print(f"{path}: ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlsim", description="Transfer-learning orchestration simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a scenario file and list every problem")
    v.add_argument("path")

    r = sub.add_parser("run", help="simulate one or more scenarios and write reports")
    r.add_argument("paths", nargs="+", metavar="path", help=f"scenario file or bundled name {list(BUNDLED)}")
    r.add_argument("--out", default="out", help="output directory (default: ./out)")
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    r.add_argument("--jobs", type=int, default=1, help="scenarios to run in parallel")
    r.add_argument("--validate-only", action="store_true")

    sub.add_parser("list", help="list bundled scenarios")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name in BUNDLED:
            print(name)
        return EXIT_OK
    if args.command == "validate":
        return _validate_command(resolve_path(args.path))

    paths = [resolve_path(p) for p in args.paths]
    out = Path(args.out)
    configs = [
        RunConfig(p, out if len(paths) == 1 else out / p.stem, args.format, args.seed, args.validate_only)
        for p in paths
    ]
    if args.jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            codes = list(pool.map(run_command, configs))
    else:
        codes = [run_command(c) for c in configs]
    return max(codes)


if __name__ == "__main__":
    sys.exit(main())
