"""Convolution and involution on homogeneous spaces G/H.

Exact finite-group backend (Gaussian rationals throughout) and a quadrature
backend for S^2 = SO(3)/SO(2).
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    FormatError,
    GridError,
    GroupConstructionError,
    HomconvError,
    HypothesisError,
    InvariantError,
    MeasureError,
    NormError,
    SubgroupError,
)
from .scalars import QQi, SurdSum
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    build_group,
    double_cosets,
    is_normal,
    is_subgroup,
    make_subgroup,
    modular_function,
    parse_subgroup,
)
from .cosets import CosetSpace, act, build_cosets, q_map
from .measures import (
    QuotientMeasure,
    RhoFunction,
    invariant_measure,
    make_rho,
    measure_from_rho,
    translation_factor,
    verify_rho,
)
from .transfer import (
    GFunction,
    QuotientFunction,
    kernel_basis,
    lift,
    lp_norm,
    p_h,
    t_h,
    t_h_r,
    weil_check,
)
from .algebra import (
    convolve_via_any_lift,
    covariance_check,
    group_convolve,
    left_translate,
    module_action,
    quotient_convolve,
    right_identity,
)
from .involution import (
    a1_involution,
    ap_space,
    group_involution,
    lr_involution,
    p_set_check,
    rl_involution,
    star_probe,
)
