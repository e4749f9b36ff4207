"""Timed command scripts replayed through the pneumatic workflow, the length
model and the kinematics.

Script format, one command per line (lengths in cm, pressures in kPa)::

    t0.0 start_grow
    t1.0 grow_to 20
    t5.0 jam
    t6.0 set_pressures 250 0 0
    t8.0 wait
"""

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import DomainError, IngestError, TransitionError
from .kinematics import GroupPressures, forward_kinematics
from .length_control import LengthErrorModel, simulate_growth
from .pneumatics import LOG_HEADER, Event, PneumaticController, may_change_length

EVENT_COMMANDS = {"start_grow": Event.START_GROW, "jam": Event.JAM, "release": Event.RELEASE}
COMMANDS = (*EVENT_COMMANDS, "grow_to", "set_pressures", "wait")
_ARITY = {"grow_to": 1, "set_pressures": 3}


@dataclass(frozen=True)
class Command:
    """A scenario command.  ``grow_to`` takes metres, ``set_pressures`` pascals."""

    name: str
    args: tuple = ()

    def __post_init__(self):
        if self.name not in COMMANDS:
            raise DomainError(f"unknown command {self.name!r}")
        if len(self.args) != _ARITY.get(self.name, 0):
            raise DomainError(f"{self.name} takes {_ARITY.get(self.name, 0)} arguments")

    def script_args(self):
        if self.name == "grow_to":
            return [repr(float(self.args[0]) * 100)]
        if self.name == "set_pressures":
            return [repr(float(p) / 1000) for p in self.args]
        return []


@dataclass(frozen=True)
class TimedCommand:
    t: float
    command: Command
    line: int = 0


@dataclass(frozen=True)
class Scenario:
    name: str
    steps: tuple
    log_path: str = None

    def __post_init__(self):
        ts = [s.t for s in self.steps]
        if any(b < a for a, b in zip(ts, ts[1:])):
            raise DomainError("scenario timestamps must be nondecreasing")


def parse_scenario(text, name="scenario"):
    steps = []
    last_t = -math.inf
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2 or not parts[0].startswith("t"):
            raise IngestError(f"expected 't<seconds> <command> [args]', got {raw.strip()!r}",
                              lineno)
        try:
            t = float(parts[0][1:])
        except ValueError:
            raise IngestError(f"bad timestamp {parts[0]!r}", lineno) from None
        if t < last_t:
            raise IngestError(f"timestamp {t} goes backwards", lineno)
        last_t = t
        cmd, args = parts[1], parts[2:]
        if cmd not in COMMANDS:
            raise IngestError(f"unknown command {cmd!r}", lineno)
        if len(args) != _ARITY.get(cmd, 0):
            raise IngestError(f"{cmd} takes {_ARITY.get(cmd, 0)} arguments, got {len(args)}",
                              lineno)
        try:
            values = [float(a) for a in args]
        except ValueError:
            raise IngestError(f"non-numeric argument in {args}", lineno) from None
        if cmd == "grow_to":
            values = [values[0] / 100]
        elif cmd == "set_pressures":
            values = [v * 1000 for v in values]
        steps.append(TimedCommand(t, Command(cmd, tuple(values)), lineno))
    return Scenario(name, tuple(steps))


def load_scenario(path):
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), name=path.stem)


def bundled_scenario(name):
    text = resources.files("vcspine").joinpath("scenarios", f"{name}.txt").read_text(
        encoding="utf-8")
    return parse_scenario(text, name=name)


def bundled_names():
    root = resources.files("vcspine").joinpath("scenarios")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".txt"))


def scenario_text(commands, dt=1.0, t0=0.0):
    """Render commands as a script with evenly spaced timestamps."""
    lines = []
    for i, cmd in enumerate(commands):
        lines.append(" ".join([f"t{t0 + i * dt!r}", cmd.name, *cmd.script_args()]))
    return "\n".join(lines) + "\n"


def replay_events(commands):
    """Run commands through the state machine only; raises TransitionError on violation."""
    ctl = PneumaticController()
    for i, cmd in enumerate(commands, start=1):
        if cmd.name in EVENT_COMMANDS:
            try:
                ctl.fire(EVENT_COMMANDS[cmd.name])
            except TransitionError as exc:
                raise TransitionError(exc.state, exc.event, line=i) from None
        elif cmd.name == "grow_to" and not may_change_length(ctl.state):
            raise TransitionError(ctl.state.value, "grow_to", line=i)
    return ctl.state


LOG_COLUMNS = LOG_HEADER + [
    "spine_length_cm", "jammed_length_cm", "p1_kpa", "p2_kpa", "p3_kpa",
    "theta_deg", "phi_deg", "tip_x_cm", "tip_y_cm", "tip_z_cm",
]


@dataclass
class TrajectoryRow:
    t: float
    state: str
    valves: tuple
    setpoint: float
    spine_length: float
    jammed_length: float
    pressures: tuple
    theta: float
    phi: float
    tip: tuple

    def csv_fields(self):
        f = repr
        return [f(float(self.t)), self.state,
                *("open" if v else "closed" for v in self.valves),
                f(self.setpoint / 1000), f(self.spine_length * 100),
                f(self.jammed_length * 100), *(f(p / 1000) for p in self.pressures),
                f(math.degrees(self.theta)), f(math.degrees(self.phi)),
                *(f(float(x) * 100) for x in self.tip)]


@dataclass
class TrajectoryLog:
    rows: list = field(default_factory=list)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(LOG_COLUMNS)
        for row in self.rows:
            w.writerow(row.csv_fields())
        return buf.getvalue()

    def column(self, name):
        return [getattr(r, name) for r in self.rows]


def run_scenario(scenario, robot, seed=0, length_model=None, pressure_limit=300e3):
    """Replay ``scenario`` and return its TrajectoryLog.

    Only a jammed spine stiffens the body; while idle or growing it is treated
    as limp.  Each ``grow_to`` draws its realized length from the growth model
    with seed ``seed + line``, clipped to the spine's travel.
    """
    length_model = LengthErrorModel() if length_model is None else length_model
    geom = robot.geom
    ctl = PneumaticController()
    grown = 0.0
    pressures = GroupPressures(limit=pressure_limit)
    log = TrajectoryLog()
    for step in scenario.steps:
        cmd = step.command
        if cmd.name in EVENT_COMMANDS:
            try:
                ctl.fire(EVENT_COMMANDS[cmd.name])
            except TransitionError as exc:
                raise TransitionError(exc.state, exc.event, line=step.line) from None
        elif cmd.name == "grow_to":
            if not may_change_length(ctl.state):
                raise TransitionError(ctl.state.value, "grow_to", line=step.line)
            target = cmd.args[0]
            if not (0 <= target <= geom.spine_max_length):
                raise DomainError(f"line {step.line}: grow_to {target * 100} cm outside "
                                  f"[0, {geom.spine_max_length * 100}] cm")
            if target == 0:
                grown = 0.0
            else:
                g = simulate_growth(target, length_model, seed + step.line,
                                    max_length=geom.spine_max_length)
                grown = min(g.realized, geom.spine_max_length)
        elif cmd.name == "set_pressures":
            try:
                pressures = GroupPressures(*cmd.args, limit=pressure_limit)
            except DomainError as exc:
                raise DomainError(f"line {step.line}: {exc}") from None

        jammed = grown if ctl.state.value == "jammed" else 0.0
        cfg = robot.config(jammed, pressures)
        tip = forward_kinematics(cfg, geom)
        log.rows.append(TrajectoryRow(step.t, ctl.state.value, ctl.valves.as_tuple(),
                                      ctl.setpoint.pressure, grown, jammed, tuple(pressures),
                                      cfg.bend_angle, cfg.bend_plane, tuple(tip.position)))
    return log
