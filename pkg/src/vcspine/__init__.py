"""Modelling, calibration and planning for a soft continuum robot whose
curvature is set by a growing, vacuum-jammed inner spine.
"""

from .core import MaterialParams, RobotGeometry, convert, load_config
from .errors import (ConfigError, DomainError, FitError, IngestError, TransitionError,
                     UnitError, UnreachableError, ValidationError, VCSpineError)
from .kinematics import (ActuationModel, BendConfig, GroupPressures, Robot, TipPose,
                         bend_angle_table, bend_config, effective_moment, forward_kinematics)
from .stiffness import StiffnessCurve, default_curve, modulus_at, rigidity_profile


def default_robot(with_reach=False):
    """Default geometry and moduli with the actuation fitted to the built-in anchors."""
    from .calibration import anchored_model

    geom, mat, curve = RobotGeometry(), MaterialParams(), default_curve()
    return Robot(geom, mat, curve, anchored_model(geom, mat, curve, with_reach).model)


__version__ = "0.1.0"
