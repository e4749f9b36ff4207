"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 unreachable target, 4 scenario replay violation.
"""

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import calibration as cal
from .core import RobotGeometry, MaterialParams, load_config
from .errors import (ConfigError, DomainError, FitError, IngestError, TransitionError,
                     UnreachableError, ValidationError, UnitError)
from .kinematics import Robot, backbone, bend_angle_table, pressures_for
from .length_control import LengthErrorModel
from .planner import PlanRequest, plan, plans_to_csv, tip_dispersion
from .scenario import bundled_names, bundled_scenario, load_scenario, run_scenario, scenario_text
from .stiffness import default_curve
from .svg import write_svg

EXIT_OK, EXIT_INPUT, EXIT_UNREACHABLE, EXIT_REPLAY = 0, 2, 3, 4
INPUT_ERRORS = (ConfigError, DomainError, FitError, IngestError, ValidationError, UnitError,
                OSError)

TABLE_LENGTHS_CM = (0, 5, 10, 15, 20, 25, 30)
TABLE_PRESSURES_KPA = (50, 100, 150, 200, 250)
FRAME_NOTE = ("# frame: z along the undeformed body (vertical axis of the reach plots), "
              "x in the bend plane of chamber group 1")


def g4(x):
    return f"{x:.4g}"


def _existing(path, what):
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"{what} not found: {path}")
    return p


def build_robot(args):
    if args.config:
        geom, mat = load_config(_existing(args.config, "config file"))
    else:
        geom, mat = RobotGeometry(), MaterialParams()
    curve = default_curve(max_length=geom.spine_max_length)
    model = None
    if args.calibration:
        d = Path(args.calibration)
        if not d.is_dir():
            raise FileNotFoundError(f"calibration directory not found: {d}")
        if (d / "curve.csv").is_file():
            curve = cal.curve_from_csv((d / "curve.csv").read_text(encoding="utf-8"),
                                       max_length=geom.spine_max_length)
        if (d / "fit.csv").is_file():
            model = cal.model_from_csv((d / "fit.csv").read_text(encoding="utf-8"))
    if model is None:
        model = cal.anchored_model(geom, mat, curve, with_reach=args.reach_anchored).model
    return Robot(geom, mat, curve, model)


def cmd_calibrate(args):
    if not (args.spine_csv or args.bending_csv):
        raise DomainError("give --spine-csv and/or --bending-csv")
    if args.config:
        geom, mat = load_config(_existing(args.config, "config file"))
    else:
        geom, mat = RobotGeometry(), MaterialParams()
    out = Path(args.out)
    curve = default_curve(max_length=geom.spine_max_length)
    if args.spine_csv:
        records = cal.ingest_force_deflection(_existing(args.spine_csv, "spine CSV"))
    if args.bending_csv:
        bending = cal.ingest_bending(_existing(args.bending_csv, "bending CSV"))
    out.mkdir(parents=True, exist_ok=True)

    if args.spine_csv:
        samples = cal.estimate_moduli(records, spine_radius=geom.spine_radius)
        curve = cal.curve_from_samples(samples, max_length=geom.spine_max_length)
        (out / "curve.csv").write_text(cal.curve_to_csv(curve), encoding="utf-8")
        print("spine moduli (loading branch):")
        gaps = cal.hysteresis_gap(records, spine_radius=geom.spine_radius)
        for s in samples:
            gap = gaps.get(s.length)
            extra = f"  unloading gap {gap:+.2%}" if gap is not None else ""
            print(f"  {g4(s.length * 100)} cm  {g4(s.modulus / 1000)} kPa{extra}")
    if args.bending_csv:
        fit = cal.fit_actuation(bending, geom, mat, curve)
        (out / "fit.csv").write_text(cal.fit_to_csv(fit), encoding="utf-8")
        report = cal.residual_report(fit)
        (out / "fit_report.txt").write_text(report, encoding="utf-8")
        print(report, end="")
    return EXIT_OK


def cmd_simulate(args):
    robot = build_robot(args)
    if args.table:
        table = bend_angle_table(robot.geom, robot.mat, robot.curve, robot.model,
                                 [L / 100 for L in TABLE_LENGTHS_CM],
                                 [P * 1000 for P in TABLE_PRESSURES_KPA])
        print("spine_length_cm," + ",".join(str(p) for p in TABLE_PRESSURES_KPA))
        for L, row in zip(TABLE_LENGTHS_CM, table):
            print(f"{L}," + ",".join(repr(float(v)) for v in row))
        return EXIT_OK
    if args.spine_cm is None or args.pressure_kpa is None:
        raise DomainError("--spine-cm and --pressure-kpa are required unless --table is given")
    phi = math.radians(args.phi_deg)
    p = pressures_for(args.pressure_kpa * 1000, phi)
    cfg = robot.config(args.spine_cm / 100, p)
    tip = robot.tip(args.spine_cm / 100, p)
    print(FRAME_NOTE)
    print(f"pressures_kpa = {g4(p.p1 / 1000)} {g4(p.p2 / 1000)} {g4(p.p3 / 1000)}")
    print(f"theta_deg = {g4(math.degrees(cfg.bend_angle))}")
    print(f"phi_deg = {g4(math.degrees(cfg.bend_plane))}")
    print("tip_cm = " + " ".join(g4(float(x) * 100 + 0.0) for x in tip.position))
    if args.svg:
        pts = backbone(cfg)
        r = np.hypot(pts[:, 0], pts[:, 1])
        write_svg(args.svg, [np.column_stack([r, pts[:, 2]]) * 100],
                  [f"spine {g4(args.spine_cm)} cm, {g4(args.pressure_kpa)} kPa"])
    return EXIT_OK


def cmd_plan(args):
    robot = build_robot(args)
    angle = None
    if args.angle_deg is not None:
        angle = (math.radians(args.angle_deg), math.radians(args.angle_tol_deg))
    req = PlanRequest(tuple(x / 100 for x in args.target_cm), tolerance=args.tol_mm / 1000,
                      angle_constraint=angle, pressure_max=args.pressure_max_kpa * 1000,
                      precompensate=args.precompensate)
    try:
        result = plan(req, robot)
    except UnreachableError as exc:
        print(f"unreachable: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    print(FRAME_NOTE)
    print(f"spine_length_cm = {g4(result.spine_length * 100)}"
          + (" (interpolated)" if result.interpolated else ""))
    print("pressures_kpa = " + " ".join(g4(p / 1000) for p in result.pressures))
    print("tip_cm = " + " ".join(g4(float(x) * 100 + 0.0) for x in result.predicted_tip))
    print(f"tip_error_mm = {g4(result.tip_error * 1000)}")
    print(f"theta_deg = {g4(math.degrees(result.bend_angle))}")
    print("commands: " + "; ".join(
        " ".join([c.name, *c.script_args()]) for c in result.command_sequence))
    if args.dispersion:
        std = tip_dispersion(result, robot)
        print("tip_std_mm = " + " ".join(g4(s * 1000) for s in std))
    if args.csv:
        Path(args.csv).write_text(plans_to_csv([result]), encoding="utf-8")
    if args.emit_scenario:
        Path(args.emit_scenario).write_text(scenario_text(result.command_sequence),
                                            encoding="utf-8")
    return EXIT_OK


def cmd_run_scenario(args):
    robot = build_robot(args)
    if Path(args.scenario).is_file():
        scenario = load_scenario(args.scenario)
    elif args.scenario in bundled_names():
        scenario = bundled_scenario(args.scenario)
    else:
        raise FileNotFoundError(f"scenario not found: {args.scenario} "
                                f"(bundled: {', '.join(bundled_names())})")
    length_model = LengthErrorModel.ideal() if args.ideal_length else LengthErrorModel()
    try:
        log = run_scenario(scenario, robot, seed=args.seed, length_model=length_model)
    except TransitionError as exc:
        print(f"replay violation in {scenario.name}: {exc}", file=sys.stderr)
        return EXIT_REPLAY
    text = log.to_csv()
    if args.log:
        with open(args.log, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        tips = np.array([r.tip for r in log.rows]) * 100
        write_svg(args.svg, [tips[:, [0, 2]]], [f"{scenario.name} tip path"])
    return EXIT_OK


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="geometry/material key = value file")
    common.add_argument("--calibration", metavar="DIR",
                        help="directory holding fit.csv and/or curve.csv from 'calibrate'")
    common.add_argument("--reach-anchored", action="store_true",
                        help="without --calibration, also fit the built-in tip reach anchors")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="vcspine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", parents=[common], help="fit spine moduli and actuation")
    p.add_argument("--spine-csv", help="length_cm,force_n,deflection_cm,phase")
    p.add_argument("--bending-csv",
                   help="spine_length_cm,pressure_kpa,bend_angle_deg[,tip_x_cm,tip_y_cm]")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("simulate", parents=[common], help="forward bend for one configuration")
    p.add_argument("--spine-cm", type=float)
    p.add_argument("--pressure-kpa", type=float, help="net pressure along the bend plane")
    p.add_argument("--phi-deg", type=float, default=0.0)
    p.add_argument("--table", action="store_true", help="bend-angle grid as CSV")
    p.add_argument("--svg", help="write the bend profile drawing here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plan", parents=[common], help="inverse configuration for a tip target")
    p.add_argument("--target-cm", type=float, nargs=3, required=True, metavar=("X", "Y", "Z"))
    p.add_argument("--angle-deg", type=float)
    p.add_argument("--angle-tol-deg", type=float, default=1.0)
    p.add_argument("--tol-mm", type=float, default=5.0)
    p.add_argument("--pressure-max-kpa", type=float, default=250.0)
    p.add_argument("--precompensate", action="store_true",
                   help="shorten the grow command by the expected overshoot")
    p.add_argument("--dispersion", action="store_true",
                   help="report tip scatter under the growth error model")
    p.add_argument("--csv", help="write the plan as CSV")
    p.add_argument("--emit-scenario", help="write the command sequence as a scenario script")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("run-scenario", parents=[common], help="replay a scenario script")
    p.add_argument("--scenario", required=True, help="script path or bundled name")
    p.add_argument("--log", help="trajectory CSV output (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ideal-length", action="store_true", help="disable growth error")
    p.add_argument("--svg", help="write the tip path drawing here")
    p.set_defaults(func=cmd_run_scenario)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
