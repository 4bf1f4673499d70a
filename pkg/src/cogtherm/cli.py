"""Command-line entry point.

Exit codes: 0 success, 1 usage or parse error, 2 numerical or domain error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cognition, szilard
from .cognition import DEFAULT_TEMPERATURE, ThermalContext
from .dynamics import integrate, write_trajectory_csv
from .errors import CogthermError, ScenarioError
from .scenario import Scenario, format_scenario, load_scenario

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2


@dataclass
class RunReport:
    scenario: Scenario
    paths: list[Path] = field(default_factory=list)
    report: str = ""


def run(scenario: Scenario, out_dir=None, n_jobs: int = 1) -> RunReport:
    """Execute the sections present in ``scenario`` and write outputs.

    Writes ``trajectory.csv`` for a dynamics section, ``ledger.csv`` for a
    szilard section, and always ``report.txt``. On failure every file written
    so far is removed before the error propagates.
    """
    out = Path(out_dir if out_dir is not None else scenario.output_dir or ".")
    out.mkdir(parents=True, exist_ok=True)
    result = RunReport(scenario)
    try:
        lines = ["# scenario"] + [f"# {line}" for line in format_scenario(scenario).splitlines()]
        if scenario.dynamics is not None:
            d = scenario.dynamics
            traj = integrate(d.structure(), d.inputs, dt=d.dt, t_end=d.t_end)
            path = out / "trajectory.csv"
            result.paths.append(path)
            write_trajectory_csv(traj, path)
        lines += cognition.report_lines(ThermalContext(scenario.temperature))
        if scenario.szilard is not None:
            z = scenario.szilard
            config = szilard.EngineConfig(
                ThermalContext(z.temperature), z.epsilon, z.cycles, z.seed
            )
            ledger = szilard.run_ensemble(config, n_jobs=n_jobs)
            path = out / "ledger.csv"
            result.paths.append(path)
            szilard.write_ledger_csv(ledger, path)
            lines += szilard.summary_lines(ledger)
        result.report = "\n".join(lines) + "\n"
        path = out / "report.txt"
        result.paths.append(path)
        path.write_text(result.report)
    except BaseException:
        for p in result.paths:
            if p.exists():
                p.unlink()
        raise
    return result


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_kelvin(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"temperature must be > 0 K, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cogtherm", description="Learning dynamics, Landauer bounds and a Szilard engine.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser(
        "simulate",
        help="run a scenario file",
        description=f"Run a scenario file. The report temperature defaults to {DEFAULT_TEMPERATURE:g} K "
        "when the scenario has no [szilard] section.",
    )
    sim.add_argument("--scenario", required=True, help="scenario file")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--jobs", type=int, default=1, help="worker processes for the Szilard ensemble")

    rep = sub.add_parser("report", help="print the Landauer report block")
    rep.add_argument(
        "--temperature",
        type=_positive_kelvin,
        default=DEFAULT_TEMPERATURE,
        help=f"absolute temperature in K (default {DEFAULT_TEMPERATURE:g})",
    )

    cap = sub.add_parser("capacity", help="information rate of a K -> K + dK transition")
    cap.add_argument("--k", type=float, required=True, help="prior knowledge state K > 0")
    cap.add_argument("--dk", type=float, required=True, help="change dK, with 1 + dK/K > 0")
    cap.add_argument("--d", type=float, required=True, help="matching affinity in (0, 1]")
    cap.add_argument("--dt", type=float, required=True, help="duration > 0")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            sys.stdout.write(cognition.report(args.temperature))
        elif args.command == "capacity":
            rate = cognition.capacity(args.k, args.dk, args.d, args.dt)
            bound = cognition.capacity_lower_bound(args.k, args.dk, args.dt)
            print(f"capacity_nat_per_time={cognition.format_sig(rate)}")
            print(f"capacity_bit_per_time={cognition.format_sig(cognition.nats_to_bits(rate))}")
            print(f"lower_bound_nat_per_time={cognition.format_sig(bound)}")
        else:
            if not os.path.isfile(args.scenario):
                print(f"cogtherm: error: --scenario: no such file {args.scenario!r}", file=sys.stderr)
                return EXIT_USAGE
            scenario = load_scenario(args.scenario)
            result = run(scenario, args.out, n_jobs=args.jobs)
            sys.stdout.write(result.report)
    except ScenarioError as exc:
        where = getattr(args, "scenario", "")
        print(f"cogtherm: {where}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CogthermError as exc:
        print(f"cogtherm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
