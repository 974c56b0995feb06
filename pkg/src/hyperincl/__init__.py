"""Verified interval enclosures of matrix inverses by hyper-power iterations."""

from .errors import (
    ConvergenceConditionError,
    DimensionError,
    DivisionByZeroError,
    EmptyIntersectionError,
    HyperInclError,
    NoConvergenceError,
    NoInitialEnclosureError,
    ParseError,
    PreconditionError,
    ScalarOverflowError,
)
from .hyperpower import (
    FAST6,
    HORNER6,
    HP3,
    EnclosureRun,
    InitConfig,
    Method,
    ProductCounter,
    Scaling,
    Termination,
    build_initial_enclosure,
    enclose_pseudo_inverse,
    run,
    step_fast6,
    step_general,
    step_horner6,
    step_hp3,
    verify_convergence_condition,
)
from .interval import Interval
from .matrix import IntervalMatrix, NormKind, PointMatrix, format_matrix, parse_matrix
from .scalar import BigFloat, ExactRational, HardwareFloat, Rounding

__version__ = "0.1.0"
