"""Numerical checks around large values and moments of zeta on the critical line."""

__version__ = "0.1.0"

from ._accel import backend_name
from .errors import (
    BudgetError,
    CapacityError,
    ConvergenceError,
    CoverageError,
    DomainError,
    HypothesisError,
    ParameterError,
    PoleError,
    ZeroTableError,
    ZetaMomentsError,
)
from .explicit_formula import ZeroTable, f_function, hadamard_check, lemma1_check, load_zeros, zero_term_coefficient
from .majorant import LAMBDA0, MajorantParams, majorant_bound, majorant_scan, regime_params, solve_lambda0
from .meanvalue import PrimeCoeffs, diagonal_bound, diagonal_sum, polynomial_moment, power_expand
from .primes import PrimeTable, sieve, von_mangoldt
from .statistics import (
    TGrid,
    empirical_measure,
    moment_direct,
    moment_via_measure,
    reference_bounds,
    scan,
    selberg_compare,
    theorem_bound,
)
from .zeta_eval import critical_point, log_abs_zeta, theta, z_function, zeta_euler_maclaurin, zeta_riemann_siegel
