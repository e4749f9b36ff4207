import itertools

import pytest

from vcspine.errors import TransitionError
from vcspine.pneumatics import (Event, PneumaticController, SystemState, may_change_length,
                                setpoint, step, valve_config)

ALLOWED = {
    (SystemState.IDLE, Event.START_GROW): SystemState.GROWING,
    (SystemState.GROWING, Event.JAM): SystemState.JAMMED,
    (SystemState.JAMMED, Event.RELEASE): SystemState.IDLE,
}


@pytest.mark.parametrize("state,event", list(itertools.product(SystemState, Event)))
def test_transition_table(state, event):
    if (state, event) in ALLOWED:
        assert step(state, event) is ALLOWED[(state, event)]
    else:
        with pytest.raises(TransitionError) as exc:
            step(state, event)
        assert exc.value.state == state.value and exc.value.event == event.value


def test_valves():
    assert valve_config("idle").as_tuple() == (True, False, True, False)
    assert valve_config("growing").as_tuple() == (False, True, True, False)
    assert valve_config("jammed").as_tuple() == (True, False, False, True)


@pytest.mark.parametrize("state", list(SystemState))
def test_valve_invariants(state):
    v = valve_config(state)
    # pressure feed and vacuum never open together
    assert not (v.v2 and v.v4)
    # venting while feeding pressure would waste the supply
    assert not (v.v1 and v.v2)


def test_setpoints():
    assert setpoint("idle").pressure == 0
    assert setpoint("growing").pressure == 10e3
    assert setpoint("jammed").pressure == -70e3
    assert setpoint("jammed").vacuum == -70e3 and setpoint("jammed").box_pressure == 0


def test_controller_cycle():
    ctl = PneumaticController()
    for ev in (Event.START_GROW, Event.JAM, Event.RELEASE) * 2:
        ctl.fire(ev)
    assert ctl.state is SystemState.IDLE
    assert ctl.log_row(1.5) == ["1.5", "idle", "open", "closed", "open", "closed", "0.0"]


def test_only_growing_changes_length():
    assert [may_change_length(s) for s in SystemState] == [False, True, False]
