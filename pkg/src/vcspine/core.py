"""Geometry, material constants, unit conversion and config loading.

Everything inside the package is SI (m, Pa, N, rad).  Centimetres, kPa and
degrees only appear at file and command-line boundaries, via :func:`convert`.
"""

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError, UnitError, ValidationError

# unit -> (dimension, factor to SI)
_UNITS = {
    "m": ("length", 1.0),
    "cm": ("length", 0.01),
    "Pa": ("pressure", 1.0),
    "kPa": ("pressure", 1000.0),
    "rad": ("angle", 1.0),
    "deg": ("angle", math.pi / 180.0),
    "N": ("force", 1.0),
}


def convert(value, from_unit, to_unit):
    """Convert ``value`` between two units of the same dimension.

    >>> convert(250, "kPa", "Pa")
    250000.0
    """
    try:
        dim_a, fa = _UNITS[from_unit]
        dim_b, fb = _UNITS[to_unit]
    except KeyError as exc:
        raise UnitError(f"unknown unit {exc.args[0]!r}") from None
    if dim_a != dim_b:
        raise UnitError(f"cannot convert {from_unit} ({dim_a}) to {to_unit} ({dim_b})")
    if from_unit == to_unit:
        return float(value)
    return value * fa / fb


@dataclass(frozen=True)
class RobotGeometry:
    body_length: float = 0.40
    outer_radius: float = 0.05
    channel_radius: float = 0.029
    chamber_count: int = 9
    group_count: int = 3
    spine_radius: float = 0.029
    spine_max_length: float = 0.30

    def __post_init__(self):
        for name in ("body_length", "outer_radius", "channel_radius",
                     "spine_radius", "spine_max_length"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValidationError(f"{name} must be a positive length, got {v}", name)
        for name in ("chamber_count", "group_count"):
            v = getattr(self, name)
            if int(v) != v or v <= 0:
                raise ValidationError(f"{name} must be a positive integer, got {v}", name)
        if self.channel_radius >= self.outer_radius:
            raise ValidationError("channel_radius must be smaller than outer_radius",
                                  "channel_radius")
        if self.spine_radius > self.channel_radius:
            raise ValidationError("spine_radius cannot exceed channel_radius", "spine_radius")
        if self.spine_max_length > self.body_length:
            raise ValidationError("spine_max_length cannot exceed body_length",
                                  "spine_max_length")
        if self.chamber_count % self.group_count:
            raise ValidationError("chamber_count must be divisible by group_count",
                                  "chamber_count")

    @property
    def body_second_moment(self):
        """Second moment of the hollow silicone annulus, m^4."""
        return math.pi * (self.outer_radius ** 4 - self.channel_radius ** 4) / 4

    @property
    def spine_second_moment(self):
        return math.pi * self.spine_radius ** 4 / 4


@dataclass(frozen=True)
class MaterialParams:
    neo_hookean_c1: float = 42_500.0
    # None -> 6 * c1, the incompressible small-strain limit
    body_modulus: float = None
    glass_bubble_density: float = 200.0

    def __post_init__(self):
        if not self.neo_hookean_c1 > 0:
            raise ValidationError("neo_hookean_c1 must be positive", "neo_hookean_c1")
        if self.body_modulus is None:
            object.__setattr__(self, "body_modulus", 6.0 * self.neo_hookean_c1)
        if not self.body_modulus > 0:
            raise ValidationError("body_modulus must be positive", "body_modulus")
        if not self.glass_bubble_density > 0:
            raise ValidationError("glass_bubble_density must be positive",
                                  "glass_bubble_density")


# config suffix -> unit understood by convert()
_SUFFIX_UNITS = {"_cm": "cm", "_m": "m", "_kpa": "kPa", "_pa": "Pa"}
_KEY_RE = re.compile(r"^[a-z][a-z0-9_]*$")

_LENGTH_KEYS = {"body_length", "outer_radius", "channel_radius", "spine_radius",
                "spine_max_length"}
_PRESSURE_KEYS = {"neo_hookean_c1", "body_modulus"}
_INT_KEYS = {"chamber_count", "group_count"}
_PLAIN_KEYS = {"glass_bubble_density"}


def _split_key(key):
    for suffix, unit in _SUFFIX_UNITS.items():
        if key.endswith(suffix):
            return key[: -len(suffix)], unit
    return key, None


def parse_config(text):
    """Parse ``key = value`` config text into geometry and material records."""
    geom_kw, mat_kw = {}, {}
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (s.strip() for s in line.partition("="))
        if not _KEY_RE.match(key):
            raise ConfigError(f"bad key {key!r}", lineno)
        base, unit = _split_key(key)
        if base in seen:
            raise ConfigError(f"{base} already set on line {seen[base]}", lineno)
        seen[base] = lineno
        try:
            number = float(value)
        except ValueError:
            raise ConfigError(f"value for {key} is not a number: {value!r}", lineno) from None

        if base in _LENGTH_KEYS:
            if unit not in (None, "m", "cm"):
                raise ConfigError(f"{key}: {base} is a length", lineno)
            geom_kw[base] = convert(number, unit or "m", "m")
        elif base in _PRESSURE_KEYS:
            if unit not in (None, "Pa", "kPa"):
                raise ConfigError(f"{key}: {base} is a pressure", lineno)
            mat_kw[base] = convert(number, unit or "Pa", "Pa")
        elif base in _INT_KEYS and unit is None:
            if number != int(number):
                raise ConfigError(f"{key} must be an integer", lineno)
            geom_kw[base] = int(number)
        elif base in _PLAIN_KEYS and unit is None:
            mat_kw[base] = number
        else:
            raise ConfigError(f"unknown key {key!r}", lineno)

    return RobotGeometry(**geom_kw), MaterialParams(**mat_kw)


def load_config(path):
    """Read a config file; missing keys fall back to the built-in defaults."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_config(text)
