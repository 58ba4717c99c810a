import argparse
import logging
import math
import sys

from application.trajectory.trajectory_service import max_q_time
from cli.bootstrap import Bootstrap
from domain.entities.controller_kind import ControllerKind
from domain.errors import SimulationError
from infrastructure.config.scenario_config import load_config

logger = logging.getLogger(__name__)

COMMANDS = ("simulate", "tune", "campaign", "sensitivity", "pareto", "linearize", "margins", "synth-traj")

# Subcommands that fan out many runs and draw a progress bar
_LONG_RUNNING = {"campaign", "sensitivity", "margins"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvc",
        description="Launcher TVC attitude-control simulator, Monte-Carlo campaigns and stability margins",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON scenario file (defaults are used when omitted)")
    common.add_argument("--out", default="results", help="output directory for CSV artifacts (default: results)")
    common.add_argument("--set", dest="overrides", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override one configuration value (repeatable, value parsed as JSON)")
    common.add_argument("--controller", choices=[k.value for k in ControllerKind],
                        help="shortcut for --set controller.kind=...")
    common.add_argument("--delta", type=float, help="uncertainty scale of the corner cases (campaign.delta)")
    common.add_argument("--workers", type=int, help="worker processes (campaign.workers)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("simulate", parents=[common], help="one closed-loop run, writes telemetry.csv")
    sub.add_parser("tune", parents=[common], help="print the gain schedule of a controller")
    sub.add_parser("campaign", parents=[common], help="corner-case Monte-Carlo campaign")
    sub.add_parser("sensitivity", parents=[common], help="campaign over the gyro-noise x delay grid")
    sub.add_parser("pareto", parents=[common], help="bandwidth trade-off sweeps and equal-error calibration")
    sub.add_parser("linearize", parents=[common], help="linearize the INDI closed loop at one instant")
    sub.add_parser("margins", parents=[common], help="margins of every corner case along the flight")
    synth = sub.add_parser("synth-traj", parents=[common], help="write the synthetic reference trajectory")
    synth.add_argument("--duration", type=float, default=80.0, help="window length in seconds (default: 80)")
    synth.add_argument("--file", default="trajectory.csv", help="file name inside --out (default: trajectory.csv)")
    return parser


def _overrides(args) -> list:
    overrides = list(args.overrides)
    if args.controller:
        overrides.append(f"controller.kind=\"{args.controller}\"")
    if args.delta is not None:
        overrides.append(f"campaign.delta={args.delta!r}")
    if args.workers is not None:
        overrides.append(f"campaign.workers={args.workers}")
    return overrides


def _fmt(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "n/a"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def _run(args) -> int:
    config = load_config(args.config, _overrides(args))
    bs = Bootstrap(out_dir=args.out, max_workers=config.campaign.workers,
                   show_progress=args.command in _LONG_RUNNING)
    case_ids = config.campaign.case_ids

    if args.command == "synth-traj":
        path = bs.writer.path(args.file)
        table = bs.synth_trajectory.execute(path, args.duration)
        print(f"Wrote {len(table)} trajectory points to {path}")
        return 0

    table = bs.factory.table(config)
    scenario = bs.factory.scenario(config, table)

    if args.command == "simulate":
        log, metrics = bs.simulate.execute(scenario)
        print(f"Simulated {len(log)} samples ({scenario.controller.value})")
        print(f"  rms theta_err  = {_fmt(metrics.rms_theta_err)} rad")
        print(f"  rms beta_rate  = {_fmt(metrics.rms_beta_rate)} rad/s")
        print(f"  max |Q alpha|  = {_fmt(metrics.max_abs_Qalpha)} Pa rad")

    elif args.command == "tune":
        frame, deps = bs.tune.execute(scenario.controller, table, scenario.tuning)
        print(f"Gain schedule for {scenario.controller.value} ({len(frame)} nodes)")
        print(frame.to_string(index=False, float_format=lambda v: f"{v:.6g}"))
        print(f"Model parameters: {', '.join(deps['parameters'])}")
        print(f"Measurements:     {', '.join(deps['measurements'])}")

    elif args.command == "campaign":
        frame = bs.campaign.execute(scenario, config.campaign.delta, case_ids)
        ok = frame[~frame["diverged"]]
        print(f"{len(frame)} runs, {len(frame) - len(ok)} diverged")
        if len(ok):
            print(f"  max rms theta_err = {_fmt(ok['rms_theta_err_rad'].max())} rad")
            print(f"  max rms beta_rate = {_fmt(ok['rms_beta_rate_rad_s'].max())} rad/s")

    elif args.command == "sensitivity":
        _, summary = bs.sensitivity.execute(scenario, config.campaign.delta, case_ids)
        print(summary.to_string(index=False, float_format=lambda v: f"{v:.4g}"))

    elif args.command == "pareto":
        _, summary = bs.pareto.execute(scenario)
        print(summary.to_string(index=False, float_format=lambda v: f"{v:.4g}"))

    elif args.command == "linearize":
        lin = config.linearization
        t = lin.time if lin.time is not None else max_q_time(table)
        system, margins = bs.linearize.execute(scenario, t, lin.channel, bs.factory.linearization_options(config),
                                               bs.factory.omega_grid(config))
        print(f"Linearized {system.n_states}-state closed loop at t={t:.2f} s ({lin.channel})")
        print(f"  PM = {_fmt(margins.phase_margin)} deg at {_fmt(margins.omega_gc)} rad/s")
        print(f"  GM = {_fmt(margins.gain_margin)} dB at {_fmt(margins.omega_pc)} rad/s")

    elif args.command == "margins":
        lin = config.linearization
        artifacts = bs.margins.execute(scenario, config.campaign.delta, lin.channel,
                                       bs.factory.linearization_options(config), bs.factory.omega_grid(config),
                                       lin.spacing, case_ids)
        print(artifacts["margin_budget.csv"].to_string(index=False, float_format=lambda v: f"{v:.4g}"))

    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return _run(args)
    except (SimulationError, OSError) as exc:
        logger.debug("command failed", exc_info=True)
        print(f"tvc {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
