"""semiflow: symbolic-numeric toolkit for one-parameter semigroup actions,
singular evolution operators, and semi-symmetries of PDEs."""

from .expr import (
    Binary,
    Const,
    Deriv,
    EvalDomainError,
    Expr,
    ExprError,
    ParseError,
    UnboundVariableError,
    Unary,
    Var,
    diff,
    evaluate,
    free_vars,
    parse_expr,
    simplify,
    substitute,
    substitute_many,
    to_text,
)
from .maps import SmoothMap, compose, finite_diff, identity_map, map_from_exprs, scalar_map
from .grids import Axis, SamplingGrid, grid1d, grid2d
from .report import VerificationReport, Witness, deviation
from .actions import (
    DichotomyResult,
    PreconditionError,
    TimeAction,
    classify_samples,
    composition_check,
    dichotomy_classify,
    identity_check,
    injectivity_probe,
    noninvertibility_witness_sqrt,
)
from .enforcing import (
    BranchMismatchError,
    BranchSelector,
    MediatorFunction,
    bump_map,
    cuberoot_group_action,
    diffeo_classifier,
    diffeo_time_set,
    homotopy_action,
    k_action_relation_check,
    limit_ic_check,
    mediator,
    milder_action,
    milder_branch_for,
    ode_residual_explicit,
    ode_residual_homotopy,
    ode_residual_milder,
    one_sided_quotients,
    sqrt_action,
    sqrt_branch_for,
    sqrt_mediator,
    square_map,
)
from .reduction import (
    EvolutionOp,
    IntegrationError,
    OdeSystem,
    RecoverySettings,
    Trajectory,
    augment_system,
    first_component_check,
    flow_vs_closed_form,
    gls_one_time_op,
    gls_slice,
    gls_time_action,
    gls_two_time,
    gls_two_time_op,
    integrate_flow,
    one_time_law_check,
    quadratic_one_time_op,
    quadratic_slice,
    quadratic_system,
    quadratic_two_time_op,
    recover_evolution,
    recover_evolution_detailed,
    two_time_law_check,
    ystar_branch,
)
from .semisym import (
    ParametricFunction,
    PdeResidual,
    act,
    canonical_parametric,
    constrained_symmetry_scan,
    is_graph,
    pde_from_text,
    regraph,
    residual_max,
    rotation_map,
    rotation_xu_map,
    semi_symmetry_check,
    translation_wave,
    vertical_map,
)
from .evolution_pde import (
    ParamFlow,
    SolitonFamily,
    burgers_pde,
    burgers_residual,
    burgers_soliton,
    heat_flow_demo,
    heat_kernel,
    param_flow_check,
    soliton_param_flow,
    soliton_translation_check,
)

__version__ = "0.1.0"
