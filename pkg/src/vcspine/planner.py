"""Inverse configuration: target tip position -> spine length and pressures.

A coarse forward sweep over (spine length, pressure magnitude, bend plane)
seeds a derivative-free coordinate descent.  The same sweep doubles as a
brute-force workspace sample for tests.
"""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnreachableError
from .kinematics import max_magnitude, planar_shape, pressures_for
from .length_control import LengthErrorModel, simulate_growth
from .scenario import Command
from .stiffness import rigidity_profile

DEFAULT_SPINE_GRID = tuple(np.round(np.arange(0.0, 0.3001, 0.05), 10))


@dataclass(frozen=True)
class PlanRequest:
    target: tuple
    tolerance: float = 0.005
    angle_constraint: tuple = None  # (bend angle rad, tolerance rad)
    pressure_max: float = 250e3
    spine_grid: tuple = DEFAULT_SPINE_GRID
    pressure_steps: int = 11
    phi_steps: int = 24
    refine_spine: bool = True
    precompensate: bool = False

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if len(self.target) != 3:
            raise DomainError("target must be (x, y, z)")
        if not len(self.spine_grid) or self.pressure_steps < 2 or self.phi_steps < 1:
            raise DomainError("search grids must be nonempty")
        if not self.pressure_max > 0:
            raise DomainError("pressure_max must be positive")


@dataclass(frozen=True)
class Plan:
    spine_length: float
    pressures: object
    predicted_tip: np.ndarray
    tip_error: float
    bend_angle: float
    command_sequence: tuple
    interpolated: bool = False

    def csv_row(self):
        return [repr(float(self.spine_length) * 100), *(repr(float(p) / 1000) for p in self.pressures),
                *(repr(float(x) * 100) for x in self.predicted_tip),
                repr(float(self.tip_error) * 1000)]


PLAN_HEADER = ["spine_length_cm", "p1_kpa", "p2_kpa", "p3_kpa",
               "tip_x_cm", "tip_y_cm", "tip_z_cm", "tip_error_mm"]


def plans_to_csv(plans):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(PLAN_HEADER)
    for p in plans:
        w.writerow(p.csv_row())
    return buf.getvalue()


def command_sequence(spine_length, pressures, bias_factor=None):
    """Commands that take the robot from idle (no spine) to the given configuration.

    With ``bias_factor`` the grow command is scaled down to cancel the
    expected growth overshoot.
    """
    set_p = Command("set_pressures", tuple(float(p) for p in pressures))
    if spine_length <= 0:
        return (set_p,)
    commanded = spine_length / bias_factor if bias_factor else spine_length
    return (Command("start_grow"), Command("grow_to", (float(commanded),)), Command("jam"), set_p)


class _Evaluator:
    """Fast tip evaluation for (spine length, pressure magnitude, bend plane)."""

    def __init__(self, robot):
        self.robot = robot
        self.geom = robot.geom
        self._cache = {}

    def segments(self, L_s):
        segs = self._cache.get(L_s)
        if segs is None:
            prof = rigidity_profile(self.geom, self.robot.mat, self.robot.curve, L_s,
                                    self.robot.model.rigidity_scale)
            segs = tuple((s.length, s.rigidity) for s in prof)
            if len(self._cache) < 4096:
                self._cache[L_s] = segs
        return segs

    def shape(self, L_s, magnitude):
        M = self.robot.model.moment_gain * magnitude
        return planar_shape([(l, M / ei) for l, ei in self.segments(L_s)])

    def tip(self, L_s, magnitude, phi):
        r, z, a = self.shape(L_s, magnitude)
        return np.array([r * math.cos(phi), r * math.sin(phi), z]), a


@dataclass(frozen=True)
class CloudPoint:
    spine_length: float
    pressure: float
    phi: float
    position: np.ndarray
    bend_angle: float


def workspace_cloud(robot, spine_grid, pressure_grid, phi_grid, pressure_limit=300e3):
    """Forward-evaluate every grid point; pressure is the net magnitude along phi.

    Points needing a group above ``pressure_limit`` are skipped.
    """
    ev = _Evaluator(robot)
    out = []
    for L_s in spine_grid:
        for P in pressure_grid:
            r, z, a = ev.shape(L_s, P)
            for phi in phi_grid:
                if P > max_magnitude(phi, pressure_limit) * (1 + 1e-12):
                    continue
                pos = np.array([r * math.cos(phi), r * math.sin(phi), z])
                out.append(CloudPoint(float(L_s), float(P), float(phi), pos, a))
    return out


def _objective_factory(ev, request):
    target = np.asarray(request.target, dtype=float)
    weight = 10.0 * ev.geom.body_length  # metres per radian of angle violation

    def objective(x):
        L_s, s, phi = x
        pos, a = ev.tip(L_s, s, phi)
        err = float(np.linalg.norm(pos - target))
        pen = 0.0
        if request.angle_constraint is not None:
            theta, tol = request.angle_constraint
            pen = weight * max(0.0, abs(a - theta) - tol)
        return err + pen, err, a, pos

    return objective


def _clip(x, geom, pmax, refine_spine, L0):
    L_s, s, phi = x
    L_s = min(max(L_s, 0.0), geom.spine_max_length) if refine_spine else L0
    phi = math.remainder(phi, 2 * math.pi)
    s = min(max(s, 0.0), max_magnitude(phi, pmax))
    return (L_s, s, phi)


def _refine(objective, x0, steps, geom, pmax, refine_spine, max_iter=200, min_step=1e-5):
    L0 = x0[0]
    x = _clip(x0, geom, pmax, refine_spine, L0)
    fx = objective(x)
    steps = list(steps)
    if not refine_spine:
        steps[0] = 0.0
    # metres of tip motion per unit of each coordinate, for the stopping rule
    scale = (1.0, geom.body_length / pmax, geom.body_length)
    for _ in range(max_iter):
        improved = False
        for i in range(3):
            if steps[i] == 0.0:
                continue
            for sign in (1.0, -1.0):
                trial = list(x)
                trial[i] += sign * steps[i]
                trial = _clip(trial, geom, pmax, refine_spine, L0)
                ft = objective(trial)
                if ft[0] < fx[0]:
                    x, fx, improved = trial, ft, True
                    break
        if not improved:
            steps = [s * 0.5 for s in steps]
            if max(s * k for s, k in zip(steps, scale)) < min_step:
                break
    return x, fx


def plan(request, robot, n_seeds=4):
    """Find spine length and group pressures putting the tip at ``request.target``."""
    geom = robot.geom
    target = np.asarray(request.target, dtype=float)
    dist = float(np.linalg.norm(target))
    if dist > geom.body_length:
        raise UnreachableError("target lies outside the body-length sphere",
                               dist - geom.body_length)
    pmax = request.pressure_max
    ev = _Evaluator(robot)
    objective = _objective_factory(ev, request)

    spine_grid = [L for L in request.spine_grid if 0 <= L <= geom.spine_max_length]
    if not spine_grid:
        raise DomainError("spine grid has no lengths within the spine travel")
    p_grid = np.linspace(0.0, pmax, request.pressure_steps)
    phi_grid = np.linspace(-math.pi, math.pi, request.phi_steps, endpoint=False)
    # aim the bend plane at the target as an extra seed column
    if math.hypot(target[0], target[1]) > 1e-12:
        phi_grid = np.append(phi_grid, math.atan2(target[1], target[0]))

    cloud = workspace_cloud(robot, spine_grid, p_grid, phi_grid, pressure_limit=pmax)
    scored = sorted(((objective((c.spine_length, c.pressure, c.phi)), i)
                     for i, c in enumerate(cloud)), key=lambda t: (t[0][0], t[1]))
    best_grid = scored[0][0][1]
    if best_grid > 10 * request.tolerance:
        raise UnreachableError("no grid configuration within 10x tolerance", best_grid)

    d_L = (spine_grid[1] - spine_grid[0]) / 2 if len(spine_grid) > 1 else 0.0
    steps = (d_L if d_L > 0 else 0.025, pmax / (request.pressure_steps - 1) / 2,
             2 * math.pi / request.phi_steps / 2)

    seeds, seen = [], set()
    for _, i in scored:
        c = cloud[i]
        key = c.spine_length
        if key in seen:
            continue
        seen.add(key)
        phi = c.phi
        # the bend plane is degenerate for a straight body; face the target instead
        if c.pressure == 0 and math.hypot(target[0], target[1]) > 1e-12:
            phi = math.atan2(target[1], target[0])
        seeds.append((c.spine_length, c.pressure, phi))
        if len(seeds) == n_seeds:
            break

    candidates = []
    for seed in seeds:
        x, (f, err, a, pos) = _refine(objective, seed, steps, geom, pmax, request.refine_spine)
        pressures = pressures_for(x[1], x[2], limit=pmax)
        candidates.append((f, err, x, a, pos, pressures))

    def rank(c):
        f, err, x, _, _, pressures = c
        # errors within a micrometre count as ties
        return (round(f, 6), x[0], pressures.total)

    candidates.sort(key=rank)
    f, err, x, a, pos, pressures = candidates[0]
    feasible = err <= request.tolerance
    if request.angle_constraint is not None:
        theta, tol = request.angle_constraint
        feasible = feasible and abs(a - theta) <= tol + 1e-9
    if not feasible:
        raise UnreachableError("no configuration meets the tolerance", err)

    L_s = float(x[0])
    bias = LengthErrorModel().bias_factor if request.precompensate else None
    commands = command_sequence(L_s, pressures, bias_factor=bias)
    sample_lengths = [s.length for s in robot.curve.samples]
    interpolated = L_s > 0 and not any(math.isclose(L_s, s, abs_tol=1e-9)
                                       for s in sample_lengths)
    return Plan(L_s, pressures, pos, err, a, commands, interpolated)


def tip_dispersion(plan_, robot, length_model=None, n=500, seed=0):
    """Std (m, per axis) of the planned tip when the spine length follows the growth model."""
    length_model = LengthErrorModel() if length_model is None else length_model
    if plan_.spine_length <= 0:
        return np.zeros(3)
    commanded = plan_.spine_length
    for cmd in plan_.command_sequence:
        if cmd.name == "grow_to":
            commanded = cmd.args[0]
    tips = []
    for i in range(n):
        g = simulate_growth(commanded, length_model, seed + i,
                            max_length=robot.geom.spine_max_length)
        L = min(g.realized, robot.geom.spine_max_length)
        tips.append(robot.tip(L, plan_.pressures).position)
    return np.std(np.array(tips), axis=0, ddof=1)
