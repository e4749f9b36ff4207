"""CSV ingestion and model fitting.

Two fits live here:

* spine moduli from tip force/deflection pairs (loading branch only), and
* the actuation model (moment gain ``c``, silicone rigidity scale ``beta``)
  from measured bend angles and, optionally, tip reach/height.

For angle-only data the bend angle is ``c * P * sum(len_i / EI_i(beta))``, so
``c`` has a closed form for each ``beta`` and the fit reduces to a scalar
search over ``beta``.  ``beta`` is only identifiable when the records cover
more than one spine length; otherwise it is pinned to 1.
"""

import csv
import enum
import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import least_squares, minimize_scalar

from .beam import modulus_from_tip
from .errors import FitError, IngestError, ValidationError, VCSpineError
from .kinematics import ActuationModel, GroupPressures, bend_config, planar_shape
from .stiffness import StiffnessCurve, StiffnessSample, rigidity_profile

log = logging.getLogger(__name__)


class Phase(enum.Enum):
    LOADING = "loading"
    UNLOADING = "unloading"


@dataclass(frozen=True)
class ForceDeflectionRecord:
    spine_length: float
    force: float
    deflection: float
    phase: Phase

    def __post_init__(self):
        if not (self.spine_length > 0):
            raise ValidationError("spine_length must be positive", "spine_length")
        if not self.force >= 0:
            raise ValidationError(f"force must be nonnegative, got {self.force}", "force")
        if not self.deflection >= 0:
            raise ValidationError(f"deflection must be nonnegative, got {self.deflection}",
                                  "deflection")


@dataclass(frozen=True)
class BendingRecord:
    spine_length: float
    pressure: float
    bend_angle: float
    tip_x: float = None  # horizontal reach in the bend plane
    tip_y: float = None  # height along the body axis

    def __post_init__(self):
        if not self.spine_length >= 0:
            raise ValidationError("spine_length must be nonnegative", "spine_length")
        if not self.pressure >= 0:
            raise ValidationError(f"pressure must be nonnegative, got {self.pressure}",
                                  "pressure")
        if not (0 <= self.bend_angle <= math.pi):
            raise ValidationError(f"bend_angle {self.bend_angle} outside [0, pi]",
                                  "bend_angle")


# Measured single-group bends at 250 kPa (spine 0 cm and 30 cm).
MEASURED_BEND_ANCHORS = (
    BendingRecord(0.0, 250e3, math.radians(65.64)),
    BendingRecord(0.30, 250e3, math.radians(41.50)),
)
# Same two configurations with their measured horizontal tip reach.
MEASURED_REACH_ANCHORS = (
    BendingRecord(0.0, 250e3, math.radians(65.64), tip_x=0.2087),
    BendingRecord(0.30, 250e3, math.radians(41.50), tip_x=0.1051),
)


# --------------------------------------------------------------------------
# ingestion

FORCE_HEADER = ["length_cm", "force_n", "deflection_cm", "phase"]
BENDING_HEADER = ["spine_length_cm", "pressure_kpa", "bend_angle_deg", "tip_x_cm", "tip_y_cm"]


def _rows(text, header, required):
    reader = csv.reader(io.StringIO(text))
    try:
        got = [h.strip() for h in next(reader)]
    except StopIteration:
        raise IngestError("file is empty, expected a header row", 1) from None
    if got[:required] != header[:required] or any(h not in header for h in got):
        raise IngestError(f"expected header {','.join(header)}, got {','.join(got)}", 1)
    for rowno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(got):
            raise IngestError(f"expected {len(got)} fields, got {len(row)}", rowno)
        yield rowno, dict(zip(got, (c.strip() for c in row)))


def _num(value, rowno, name):
    try:
        x = float(value)
    except ValueError:
        raise IngestError(f"{name}: {value!r} is not a number", rowno) from None
    if not math.isfinite(x):
        raise IngestError(f"{name} is not finite", rowno)
    return x


def parse_force_deflection(text):
    records = []
    for rowno, row in _rows(text, FORCE_HEADER, 4):
        try:
            phase = Phase(row["phase"].lower())
        except ValueError:
            raise IngestError(f"phase must be loading or unloading, got {row['phase']!r}",
                              rowno) from None
        try:
            records.append(ForceDeflectionRecord(
                _num(row["length_cm"], rowno, "length_cm") / 100,
                _num(row["force_n"], rowno, "force_n"),
                _num(row["deflection_cm"], rowno, "deflection_cm") / 100,
                phase))
        except ValidationError as exc:
            raise ValidationError(f"row {rowno}: {exc}", exc.field) from None
    return records


def ingest_force_deflection(path):
    return parse_force_deflection(Path(path).read_text(encoding="utf-8"))


def parse_bending(text):
    records = []
    for rowno, row in _rows(text, BENDING_HEADER, 3):
        tips = {}
        for key, name in (("tip_x_cm", "tip_x"), ("tip_y_cm", "tip_y")):
            if row.get(key):
                tips[name] = _num(row[key], rowno, key) / 100
        try:
            records.append(BendingRecord(
                _num(row["spine_length_cm"], rowno, "spine_length_cm") / 100,
                _num(row["pressure_kpa"], rowno, "pressure_kpa") * 1000,
                math.radians(_num(row["bend_angle_deg"], rowno, "bend_angle_deg")),
                **tips))
        except ValidationError as exc:
            raise ValidationError(f"row {rowno}: {exc}", exc.field) from None
    return records


def ingest_bending(path):
    return parse_bending(Path(path).read_text(encoding="utf-8"))


# --------------------------------------------------------------------------
# spine moduli

def _modulus_groups(records, spine_radius, phase):
    groups = {}
    for rec in records:
        groups.setdefault(rec.spine_length, [])
        if rec.phase is not phase:
            continue
        if rec.deflection == 0 or rec.force == 0:
            log.warning("skipping zero-load/zero-deflection record at L=%g m", rec.spine_length)
            continue
        groups[rec.spine_length].append(
            modulus_from_tip(rec.force, rec.spine_length, spine_radius, rec.deflection))
    return groups


def estimate_moduli(records, spine_radius=0.029):
    """Average loading-branch modulus per spine length, sorted by length."""
    groups = _modulus_groups(records, spine_radius, Phase.LOADING)
    if not groups:
        raise FitError("no force/deflection records")
    samples = []
    for L in sorted(groups):
        if not groups[L]:
            raise FitError(f"no usable loading records at spine length {L} m")
        samples.append(StiffnessSample(L, float(np.mean(groups[L]))))
    return samples


def hysteresis_gap(records, spine_radius=0.029):
    """Relative loading/unloading modulus gap per length (lengths lacking either are omitted)."""
    load = _modulus_groups(records, spine_radius, Phase.LOADING)
    unload = _modulus_groups(records, spine_radius, Phase.UNLOADING)
    out = {}
    for L in sorted(load):
        if load[L] and unload.get(L):
            a, b = np.mean(load[L]), np.mean(unload[L])
            out[L] = float((b - a) / a)
    return out


def curve_from_samples(samples, max_length=0.30):
    return StiffnessCurve(tuple(samples), max_length=max(max_length, samples[-1].length))


# --------------------------------------------------------------------------
# actuation fit

@dataclass(frozen=True)
class Residual:
    record: BendingRecord
    predicted_angle: float
    angle_error: float
    predicted_x: float
    predicted_y: float

    @property
    def x_error(self):
        return None if self.record.tip_x is None else self.predicted_x - self.record.tip_x

    @property
    def y_error(self):
        return None if self.record.tip_y is None else self.predicted_y - self.record.tip_y


@dataclass(frozen=True)
class FitResult:
    moment_gain: float
    rigidity_scale: float
    residuals: tuple
    rms_error: float
    rigidity_scale_fixed: bool = False

    @property
    def model(self):
        return ActuationModel(self.moment_gain, self.rigidity_scale)

    @property
    def tip_rms_error(self):
        errs = [e for r in self.residuals for e in (r.x_error, r.y_error) if e is not None]
        return float(np.sqrt(np.mean(np.square(errs)))) if errs else None


def _predict(rec, c, beta, geom, mat, curve):
    model = ActuationModel(c, beta)
    cfg = bend_config(geom, mat, curve, model, rec.spine_length,
                      GroupPressures(rec.pressure, 0.0, 0.0, limit=max(rec.pressure, 1.0)))
    r, z, a = planar_shape(cfg.curvatures)
    return a, r, z


def _residual_vector(params, records, geom, mat, curve, fixed_beta):
    c = math.exp(params[0])
    beta = fixed_beta if fixed_beta is not None else math.exp(params[1])
    out = []
    for rec in records:
        a, r, z = _predict(rec, c, beta, geom, mat, curve)
        out.append(a - rec.bend_angle)
        # tip errors enter as radian-equivalents (divided by body length)
        if rec.tip_x is not None:
            out.append((r - rec.tip_x) / geom.body_length)
        if rec.tip_y is not None:
            out.append((z - rec.tip_y) / geom.body_length)
    return np.array(out)


def _compliance(rec, beta, geom, mat, curve):
    return rigidity_profile(geom, mat, curve, rec.spine_length, beta).compliance


def _gain_for(records, beta, geom, mat, curve):
    """Least-squares moment gain for angle residuals at fixed beta."""
    g = np.array([r.pressure * _compliance(r, beta, geom, mat, curve) for r in records])
    th = np.array([r.bend_angle for r in records])
    return float(g @ th / (g @ g))


def fit_actuation(records, geom, mat, curve, fix_rigidity_scale=None):
    """Fit (moment gain, rigidity scale) to bending records.

    ``fix_rigidity_scale`` pins beta to the given value.  Beta is pinned to 1
    automatically when every actuated record shares one spine length.
    """
    records = list(records)
    if not records:
        raise FitError("no bending records")
    actuated = [r for r in records if r.pressure > 0]
    if not actuated or all(r.bend_angle == 0 for r in actuated):
        raise FitError("moment gain is unidentifiable: no record has both pressure and bend")

    fixed = fix_rigidity_scale
    if fixed is None and len({r.spine_length for r in actuated}) < 2:
        log.info("records cover a single spine length; rigidity scale fixed at 1")
        fixed = 1.0
    has_tips = any(r.tip_x is not None or r.tip_y is not None for r in records)

    try:
        if fixed is not None:
            c = _gain_for(records, fixed, geom, mat, curve)
            beta = fixed
            if has_tips:
                sol = least_squares(_residual_vector, [math.log(c)],
                                    args=(records, geom, mat, curve, fixed),
                                    xtol=1e-15, ftol=1e-15, gtol=1e-15)
                c = math.exp(sol.x[0])
        else:
            def profile_cost(log_beta):
                b = math.exp(log_beta)
                c = _gain_for(records, b, geom, mat, curve)
                res = _residual_vector([math.log(c), log_beta], records, geom, mat, curve, None)
                return float(res @ res)

            seed = minimize_scalar(profile_cost, bounds=(math.log(1e-3), math.log(1e3)),
                                   method="bounded", options={"xatol": 1e-10})
            b0 = math.exp(seed.x)
            c0 = _gain_for(records, b0, geom, mat, curve)
            sol = least_squares(_residual_vector, [math.log(c0), seed.x],
                                args=(records, geom, mat, curve, None),
                                xtol=1e-15, ftol=1e-15, gtol=1e-15)
            c, beta = math.exp(sol.x[0]), math.exp(sol.x[1])
            _, sv, _ = np.linalg.svd(sol.jac)
            if sv[-1] <= 1e-10 * sv[0]:
                raise FitError("rigidity scale is unidentifiable from these records")
    except VCSpineError as exc:
        if isinstance(exc, FitError):
            raise
        raise FitError(f"model evaluation failed during fit: {exc}") from exc

    residuals = []
    for rec in records:
        a, r, z = _predict(rec, c, beta, geom, mat, curve)
        residuals.append(Residual(rec, a, a - rec.bend_angle, r, z))
    rms = float(np.sqrt(np.mean([res.angle_error ** 2 for res in residuals])))
    return FitResult(c, beta, tuple(residuals), rms, rigidity_scale_fixed=fixed is not None)


def anchored_model(geom, mat, curve, with_reach=False):
    """Actuation model fitted to the built-in measured anchors."""
    records = MEASURED_REACH_ANCHORS if with_reach else MEASURED_BEND_ANCHORS
    return fit_actuation(records, geom, mat, curve)


def residual_report(fit):
    lines = [
        f"moment gain c    = {fit.moment_gain:.6g} N m/Pa",
        f"rigidity scale   = {fit.rigidity_scale:.6g}"
        + (" (fixed)" if fit.rigidity_scale_fixed else ""),
        "",
        f"{'spine_cm':>9} {'p_kpa':>8} {'meas_deg':>9} {'pred_deg':>9} {'err_deg':>8} {'rel_err':>8}",
    ]
    for r in fit.residuals:
        rec = r.record
        rel = r.angle_error / rec.bend_angle if rec.bend_angle else float("nan")
        lines.append(f"{rec.spine_length * 100:9.4g} {rec.pressure / 1000:8.4g} "
                     f"{math.degrees(rec.bend_angle):9.4f} {math.degrees(r.predicted_angle):9.4f} "
                     f"{math.degrees(r.angle_error):8.4f} {rel:8.2%}")
    tip_rows = [r for r in fit.residuals if r.x_error is not None or r.y_error is not None]
    if tip_rows:
        lines += ["", f"{'spine_cm':>9} {'p_kpa':>8} {'axis':>4} {'meas_cm':>9} {'pred_cm':>9} "
                      f"{'err_cm':>8} {'rel_err':>8}"]
        for r in tip_rows:
            for axis, meas, pred, err in (("x", r.record.tip_x, r.predicted_x, r.x_error),
                                          ("y", r.record.tip_y, r.predicted_y, r.y_error)):
                if meas is None:
                    continue
                lines.append(f"{r.record.spine_length * 100:9.4g} {r.record.pressure / 1000:8.4g} "
                             f"{axis:>4} {meas * 100:9.4f} {pred * 100:9.4f} {err * 100:8.4f} "
                             f"{err / meas if meas else float('nan'):8.2%}")
    lines += ["", f"rms angle error  = {math.degrees(fit.rms_error):.4g} deg"]
    if fit.tip_rms_error is not None:
        lines.append(f"rms tip error    = {fit.tip_rms_error * 100:.4g} cm")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# export / import

def fit_to_csv(fit):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["parameter", "value"])
    w.writerow(["moment_gain_nm_per_pa", repr(fit.moment_gain)])
    w.writerow(["rigidity_scale", repr(fit.rigidity_scale)])
    w.writerow(["rigidity_scale_fixed", int(fit.rigidity_scale_fixed)])
    w.writerow(["rms_error_rad", repr(fit.rms_error)])
    return buf.getvalue()


def model_from_csv(text):
    values = {}
    for rowno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if rowno == 1:
            if row != ["parameter", "value"]:
                raise IngestError("expected header parameter,value", 1)
            continue
        if len(row) != 2:
            raise IngestError("expected 2 fields", rowno)
        values[row[0]] = row[1]
    try:
        return ActuationModel(float(values["moment_gain_nm_per_pa"]),
                              float(values.get("rigidity_scale", 1.0)))
    except KeyError:
        raise IngestError("missing moment_gain_nm_per_pa") from None


def curve_to_csv(curve):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["length_cm", "modulus_kpa"])
    for s in curve.samples:
        w.writerow([repr(s.length * 100), repr(s.modulus / 1000)])
    return buf.getvalue()


def curve_from_csv(text, max_length=0.30):
    samples = []
    for rowno, row in _rows(text, ["length_cm", "modulus_kpa"], 2):
        samples.append(StiffnessSample(_num(row["length_cm"], rowno, "length_cm") / 100,
                                       _num(row["modulus_kpa"], rowno, "modulus_kpa") * 1000))
    if not samples:
        raise IngestError("stiffness curve file has no samples")
    return curve_from_samples(samples, max_length)
