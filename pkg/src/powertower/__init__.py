"""The infinite power tower ``x**x**x**...`` as a discrete dynamical system."""
from ._backend import name as backend_name
from .analysis import (
    ConvergenceClass,
    ScanRow,
    TwoCycle,
    bifurcation_scan,
    classify,
    cycle_for_x,
    cycle_from_p,
    parity_limits,
    region_scan,
    tangency,
)
from .core import (
    E_TO_INV_E,
    E_TO_MINUS_E,
    CurvePoint,
    finite_tower,
    g,
    g_inflections,
    g_prime,
    hyperop,
    tower_step,
)
from .dynamics import (
    IterationConfig,
    IterationOutcome,
    IterationTrace,
    Outcome,
    StabilityClass,
    cobweb_trace,
    double_step_derivative,
    in_double_region,
    iterate_double_step,
    iterate_tower,
    stability_of,
)
from .errors import ConvergenceError, DomainError, PreconditionError
from .lambertw import Branch, lambert_w, tower_fixed_point, tower_fixed_point_repulsive, w_series
from .series import PowerSeries, compose, euler_ln_series, revert, w_exp_w_series

__version__ = "0.1.0"
