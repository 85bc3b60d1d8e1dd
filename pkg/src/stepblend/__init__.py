"""Smooth step functions, blend-to-zero operators, and smooth transitions.

Construct the classical smooth step families (incomplete-Beta, rational,
expo-rational, Fabius, trigonometric) as differentiable-function handles
with exact jets, combine them through the flat-ends algebra, build
leftward/rightward blend-to-zero operators from them, and assemble
verified smooth transitions between arbitrary functions.
"""

from .functions import (
    UNBOUNDED,
    EndpointJet,
    Interval,
    SmoothFunction,
    StepOrders,
    min_order,
    restrict,
)
from .jets import (
    Jet,
    differentiate,
    jet_add,
    jet_compose,
    jet_cos,
    jet_div,
    jet_elementary,
    jet_exp,
    jet_ipow,
    jet_mul,
    jet_sin,
    jet_sub,
)
from .step_functions import (
    TrigCoefficients,
    beta_polynomial,
    beta_step,
    expo_rational_step,
    fabius,
    fabius_table,
    ode_forcing_constant,
    ode_residual,
    rational_step,
    trig_coefficients,
    trig_step,
)
from .flat_ends import (
    ExtendedStep,
    MonotonicityReport,
    StepValidationReport,
    SymmetryReport,
    affine_transform,
    change_of_interval,
    extend_step_to_line,
    lincomb,
    monotonicity_check,
    product,
    symmetry_check,
    to_staircase,
    validate_symmetric_step,
)
from .hermite import (
    HermiteSpec,
    hermite_interpolant,
    hermite_oracle,
    hermite_xi_polynomial,
    polynomial_on,
)
from .operators import (
    BlendOperator,
    BlendReport,
    apply,
    complement,
    hermite_blend,
    linearity_check,
    multiplicative_blend,
    step_carrier,
    verify_blend,
)
from .transitions import (
    PiecewiseTransition,
    SeamReport,
    seam_report,
    transition_from_blends,
    transition_from_single,
    transition_hermite,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureRule,
    Rational,
    binomial_alternating_sum,
    binomial_identity_check,
    fd_tolerance,
    finite_difference_jet,
    fornberg_weights,
    integrate,
    sampled_to_jet,
)
from . import catalog

__version__ = "0.1.0"
