"""Rotational Weingarten surfaces in the homogeneous spaces E(kappa, tau).

The package builds the canonical rotational example of an elliptic
Weingarten relation by integrating its profile ODE from the axis,
classifies the result and checks it against closed forms and
finite-difference oracles.
"""
from .classes import (ConstantH, ConstantKe, FForm, GeneralPhi, PrescribedH, PrescribedKe,
                      WeingartenClass, ellipticity_check, umbilic_constant)
from .errors import (ConfigError, DomainError, MaxSExceeded, ParseError, WeingartenError)
from .expr import parse_expr
from .solver import (BLOWUP, CYLINDER, ENTIRE, INCONCLUSIVE, SPHERE, CanonicalExample,
                     SolveConfig, integrate_canonical, monotonicity_check)
from .space import SpaceParams, gauss_K, metric_at

__version__ = "0.1.0"

__all__ = [
    "BLOWUP", "CYLINDER", "ENTIRE", "INCONCLUSIVE", "SPHERE",
    "CanonicalExample", "ConfigError", "ConstantH", "ConstantKe", "DomainError", "FForm",
    "GeneralPhi", "MaxSExceeded", "ParseError", "PrescribedH", "PrescribedKe", "SolveConfig",
    "SpaceParams", "WeingartenClass", "WeingartenError", "ellipticity_check", "gauss_K",
    "integrate_canonical", "metric_at", "monotonicity_check", "parse_expr", "umbilic_constant",
]
