"""Pressure -> moment -> piecewise-constant-curvature shape -> tip pose.

Frame: z runs along the undeformed body, x lies in the bend plane of chamber
group 1 (phi = 0).  The bending moment is taken as uniform along the body, so
each rigidity segment bends as a circular arc with curvature M / EI.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .stiffness import rigidity_profile

DEFAULT_PRESSURE_LIMIT = 300e3
GROUP_ANGLES = tuple(2 * math.pi * k / 3 for k in range(3))


@dataclass(frozen=True)
class GroupPressures:
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0
    limit: float = DEFAULT_PRESSURE_LIMIT

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            v = getattr(self, name)
            if not (0.0 <= v <= self.limit):
                raise DomainError(f"{name} = {v} Pa outside [0, {self.limit}]")

    def __iter__(self):
        return iter((self.p1, self.p2, self.p3))

    @property
    def total(self):
        return self.p1 + self.p2 + self.p3


@dataclass(frozen=True)
class ActuationModel:
    """Calibrated pressure-to-moment gain and silicone rigidity scale."""

    moment_gain: float
    rigidity_scale: float = 1.0

    def __post_init__(self):
        if not self.moment_gain > 0:
            raise DomainError(f"moment gain must be positive, got {self.moment_gain}")
        if not self.rigidity_scale > 0:
            raise DomainError(f"rigidity scale must be positive, got {self.rigidity_scale}")


@dataclass(frozen=True)
class BendConfig:
    spine_length: float
    pressures: GroupPressures
    moment: float
    bend_plane: float
    curvatures: tuple  # ((segment length, curvature), ...) from the base
    bend_angle: float


@dataclass(frozen=True)
class TipPose:
    position: np.ndarray
    tangent: np.ndarray

    @property
    def reach(self):
        """Horizontal distance from the body axis, in the bend plane."""
        return float(math.hypot(self.position[0], self.position[1]))


def pressure_vector(p):
    v = np.zeros(2)
    for pk, a in zip(p, GROUP_ANGLES):
        v += pk * np.array([math.cos(a), math.sin(a)])
    return v


def effective_moment(p, model):
    """Net bending moment (N m) and bend-plane angle (rad) from group pressures."""
    if not isinstance(p, GroupPressures):
        p = GroupPressures(*p)
    v = pressure_vector(p)
    mag = float(np.hypot(v[0], v[1]))
    # equal pressures cancel up to rounding
    if mag <= 1e-9 * max(p.total, 1.0):
        return 0.0, 0.0
    return model.moment_gain * mag, float(math.atan2(v[1], v[0]))


def pressures_for(magnitude, phi, limit=DEFAULT_PRESSURE_LIMIT):
    """Cheapest group pressures whose net vector has ``magnitude`` along ``phi``.

    Uses the two groups bracketing ``phi``.  Raises DomainError if that needs
    a group above ``limit``.
    """
    if magnitude < 0:
        raise DomainError("pressure magnitude must be nonnegative")
    sector = 2 * math.pi / 3
    phi = phi % (2 * math.pi)
    k = min(int(phi // sector), 2)
    d = phi - k * sector
    a = magnitude * math.sin(sector - d) / math.sin(sector)
    b = magnitude * math.sin(d) / math.sin(sector)
    out = [0.0, 0.0, 0.0]
    out[k] = max(a, 0.0)
    out[(k + 1) % 3] = max(b, 0.0)
    # absorb rounding at the feasibility boundary
    out = [min(x, limit) if x <= limit * (1 + 1e-12) else x for x in out]
    return GroupPressures(*out, limit=limit)


def max_magnitude(phi, limit):
    """Largest net pressure magnitude reachable along ``phi`` with groups <= limit."""
    sector = 2 * math.pi / 3
    d = (phi % (2 * math.pi)) % sector
    return limit * math.sin(sector) / max(math.sin(sector - d), math.sin(d))


def bend_config(geom, mat, curve, model, L_s, p):
    if not isinstance(p, GroupPressures):
        p = GroupPressures(*p)
    M, phi = effective_moment(p, model)
    profile = rigidity_profile(geom, mat, curve, L_s, model.rigidity_scale)
    curvatures = tuple((seg.length, M / seg.rigidity) for seg in profile)
    theta = sum(l * k for l, k in curvatures)
    return BendConfig(L_s, p, M, phi, curvatures, theta)


def _arc(l, k):
    """Local (dx, dz, dtheta) of a planar arc of length l and curvature k."""
    t = k * l
    # 1 - cos t = 2 sin^2(t/2) keeps the small-angle limit well conditioned
    dx = l * 0.5 * t * np.sinc(t / (2 * np.pi)) ** 2
    dz = l * np.sinc(t / np.pi)
    return dx, dz, t


def planar_shape(curvatures, points_per_segment=0):
    """Compose arcs in the bend plane.

    Returns (r, z, angle) at the tip; with ``points_per_segment > 0`` also
    returns an array of intermediate (r, z) points along the backbone.
    """
    r = z = a = 0.0
    pts = [(0.0, 0.0)]
    for l, k in curvatures:
        if points_per_segment:
            for s in np.linspace(0, l, points_per_segment + 1)[1:]:
                dx, dz, _ = _arc(s, k)
                pts.append((r + dx * math.cos(a) + dz * math.sin(a),
                            z - dx * math.sin(a) + dz * math.cos(a)))
        dx, dz, t = _arc(l, k)
        r, z = r + dx * math.cos(a) + dz * math.sin(a), z - dx * math.sin(a) + dz * math.cos(a)
        a += t
    if points_per_segment:
        return float(r), float(z), float(a), np.array(pts)
    return float(r), float(z), float(a)


def forward_kinematics(config, geom=None):
    r, z, a = planar_shape(config.curvatures)
    c, s = math.cos(config.bend_plane), math.sin(config.bend_plane)
    position = np.array([r * c, r * s, z])
    tangent = np.array([math.sin(a) * c, math.sin(a) * s, math.cos(a)])
    return TipPose(position, tangent)


def backbone(config, points_per_segment=50):
    """3D backbone points from base to tip, shape (n, 3)."""
    *_, pts = planar_shape(config.curvatures, points_per_segment)
    c, s = math.cos(config.bend_plane), math.sin(config.bend_plane)
    return np.column_stack([pts[:, 0] * c, pts[:, 0] * s, pts[:, 1]])


def bend_angle_table(geom, mat, curve, model, lengths, pressures):
    """Bend angle in degrees for single-group actuation on a (length x pressure) grid."""
    table = np.zeros((len(lengths), len(pressures)))
    for i, L_s in enumerate(lengths):
        for j, P in enumerate(pressures):
            cfg = bend_config(geom, mat, curve, model, L_s, GroupPressures(P, 0.0, 0.0))
            table[i, j] = math.degrees(cfg.bend_angle)
    return table


@dataclass(frozen=True)
class Robot:
    """Geometry, materials, spine curve and calibrated actuation bundled together."""

    geom: object
    mat: object
    curve: object
    model: ActuationModel

    def config(self, L_s, p):
        return bend_config(self.geom, self.mat, self.curve, self.model, L_s, p)

    def tip(self, L_s, p):
        return forward_kinematics(self.config(L_s, p), self.geom)
