"""geomchar: characters of reductive Lie groups by two geometric routes.

Fixed-point/local-coefficient formulas and cycle-integral formulas,
cross-validated at desk scale: compact groups of small rank (A1, A2, B2,
G2) for the Weyl and Kirillov formulas, SL(2,R) in full for discrete
series, principal series, characteristic-cycle integrals, and coherent
continuation.
"""
from .compact_char import character_by_weight_sum, dimension, weight_multiplicities, weyl_character
from .coherent import CoherentFamily, translate, verify_coherence, weights_of_findim
from .cycle_integral import (
    TestFunction,
    default_battery,
    fourier,
    integrate_character_cycle,
    kirillov_su2_check,
    rossmann_orbit_integral,
)
from .eigendist import (
    CASIMIR,
    InvariantPolynomial,
    LocalExpression,
    check_symmetry,
    evaluate_algebra,
    evaluate_group,
    make_expression,
    pair_algebra,
    verify_eigendistribution,
)
from .fixed_point import (
    ContractionChoice,
    admissible_contraction_choices,
    coefficient_table,
    discrete_series_expression,
    euler_coefficient,
    induced_expression,
)
from .lie_core import RootSystem, Weight, WeylElement, act, build_root_system, enumerate_weyl, rho, sign
from .orbit_geom import (
    CotangentPoint,
    Cycle,
    conormal_circle_cycle,
    d_log_f,
    dlogf_graph_cycle,
    f_lambda,
    lambda_x,
    moment,
    omega_orbit_cycle,
    su2_orbit_cycle,
    tau_lambda,
    twisted_moment,
    vector_field,
)
from .real_structure import (
    CartanElement,
    CartanSubgroup,
    FlagOrbit,
    LocalSystemParam,
    StandardSheafDescriptor,
    classify_cartans,
    classify_element,
    compact_element,
    enumerate_orbits,
    local_system_params,
    split_element,
    standard_sheaf,
)

__version__ = "0.1.0"
