"""Idle -> Growing -> Jammed pneumatic workflow of the spine box.

Valve roles: v1 vents to atmosphere, v2 feeds the pressure regulator, v3
connects the upper (pressurised) volume, v4 connects the vacuum pump.
"""

import enum
from dataclasses import dataclass

from .errors import TransitionError


class SystemState(enum.Enum):
    IDLE = "idle"
    GROWING = "growing"
    JAMMED = "jammed"


class Event(enum.Enum):
    START_GROW = "start_grow"
    JAM = "jam"
    RELEASE = "release"


OPEN, CLOSED = True, False


@dataclass(frozen=True)
class ValveConfig:
    v1: bool
    v2: bool
    v3: bool
    v4: bool

    def as_tuple(self):
        return (self.v1, self.v2, self.v3, self.v4)


_VALVES = {
    SystemState.IDLE: ValveConfig(v1=OPEN, v2=CLOSED, v3=OPEN, v4=CLOSED),
    SystemState.GROWING: ValveConfig(v1=CLOSED, v2=OPEN, v3=OPEN, v4=CLOSED),
    SystemState.JAMMED: ValveConfig(v1=OPEN, v2=CLOSED, v3=CLOSED, v4=OPEN),
}

# gauge pressures, Pa
_SETPOINTS = {
    SystemState.IDLE: 0.0,
    SystemState.GROWING: 10e3,
    SystemState.JAMMED: -70e3,
}
SENSOR_RANGE = (-100e3, 100e3)

_TRANSITIONS = {
    (SystemState.IDLE, Event.START_GROW): SystemState.GROWING,
    (SystemState.GROWING, Event.JAM): SystemState.JAMMED,
    (SystemState.JAMMED, Event.RELEASE): SystemState.IDLE,
}


@dataclass(frozen=True)
class RegulatorSetpoint:
    pressure: float

    @property
    def box_pressure(self):
        return self.pressure if self.pressure > 0 else 0.0

    @property
    def vacuum(self):
        return self.pressure if self.pressure < 0 else 0.0


def valve_config(state):
    return _VALVES[SystemState(state)]


def setpoint(state):
    return RegulatorSetpoint(_SETPOINTS[SystemState(state)])


def step(state, event):
    """Next state, or TransitionError if the workflow does not allow ``event`` here."""
    state, event = SystemState(state), Event(event)
    try:
        return _TRANSITIONS[(state, event)]
    except KeyError:
        raise TransitionError(state.value, event.value) from None


def may_change_length(state):
    return SystemState(state) is SystemState.GROWING


class PneumaticController:
    """Mutable single-owner wrapper that tracks the current state."""

    def __init__(self, state=SystemState.IDLE):
        self.state = SystemState(state)

    def fire(self, event):
        self.state = step(self.state, event)
        return self.state

    @property
    def valves(self):
        return valve_config(self.state)

    @property
    def setpoint(self):
        return setpoint(self.state)

    def log_row(self, t):
        """Values for a ``t_s,state,v1,v2,v3,v4,setpoint_kpa`` log row."""
        v = self.valves.as_tuple()
        return [repr(float(t)), self.state.value,
                *("open" if x else "closed" for x in v),
                repr(self.setpoint.pressure / 1000.0)]


LOG_HEADER = ["t_s", "state", "v1", "v2", "v3", "v4", "setpoint_kpa"]
