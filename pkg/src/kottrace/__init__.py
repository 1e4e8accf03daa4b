"""Exact polynomials for twisted compact traces of Kottwitz functions."""

__version__ = "0.1.0"

from .exactpoly import AffineExp, HalfInt, LaurentPoly, QuadSurd, poly_add, poly_eval_signed, poly_mul
from .heckefun import (
    CompositionData,
    ConstantTermExpansion,
    ExtendedComposition,
    constant_term,
    kottwitz_dispatch,
    satake_f_gu,
    satake_phi,
    truncated_constant_term,
    truncated_constant_term_levi,
)
from .traceeval import (
    GlobalInput,
    SignedHeckeMatrix,
    SteinbergProductRep,
    TraceResult,
    hecke_matrix,
    parity_relation_check,
    point_count,
    steinberg_shortcut,
    twisted_compact_trace,
)
from .weylcomb import (
    Permutation,
    enumerate_G_PQ,
    enumerate_G_theta_PQ,
    epsilon_p_theta,
    inversions,
    min_double_coset_rep,
    theta_conjugate,
    theta_stable_parabolics,
)
from .zelring import (
    Multisegment,
    Segment,
    SpehSpec,
    elementary_operations,
    enumerate_C_theta,
    is_fully_steinberg,
    is_linked,
    poset_below,
    precedes,
    reduce_to_theta_type,
    rho_multisegment,
    speh_multisegment,
    theta_dual,
)
