"""Exact Castelnuovo-Mumford regularity, reductions and asymptotic regularity of powers."""

__version__ = "0.1.0"

from .poly import GF, QQ, NEG_INF, FieldElement, Monomial, Polynomial, Ring, monomial_compare, parse_polynomial
from .groebner import (
    Ideal,
    colon_irrelevant,
    colon_poly,
    contains,
    eliminate,
    ideal_equal,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    normal_form,
    reduced_groebner,
)
from .hilbert import (
    HilbertSeries,
    a_invariant_pair,
    degree_invariants,
    hilbert_function,
    hilbert_series_quotient,
    krull_dimension,
)
from .regularity import (
    CoordinateChange,
    RegularityCertificate,
    apply_change,
    is_filter_regular_step,
    random_coordinate_change,
    regularity_cyclic,
    regularity_ideal,
)
from .reductions import (
    ExperimentReport,
    ReductionWitness,
    fit_linear_tail,
    is_reduction,
    reg_powers,
    rho,
    run_experiment,
    truncate_ideal,
)
from .newton import (
    NewtonRegion,
    check_closure_stability,
    closure_experiment,
    closure_of_power,
    integral_closure_monomial,
    newton_region,
)
