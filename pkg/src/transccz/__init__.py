"""Qudit and qubit CSS codes with transversal CCZ from multiplication-property codes."""

from .codes import (
    EXCEEDED,
    LinearCode,
    ag_param_bounds,
    contains_all_ones,
    dual,
    has_mult_property,
    hermitian_code,
    min_distance,
    mult_property_witness,
    puncture,
    rs_code,
    shorten,
    star_power_code,
)
from .css import QuditCssCode, basis_state_coset, build_css, logical_paulis, pivot_form
from .embed import (
    Mfe,
    Rmfe,
    expand_code,
    find_self_dual_basis,
    mfe3,
    mfe_verify,
    qubitize_css,
    rmfe_search,
    rmfe_trivial,
)
from .errors import BudgetExceededError, HypothesisError
from .field import FieldBasis, FieldElem, FieldSpec, make_field
from .linalg import Mat
from .msd import MsdPlan, empirical_exponent, estimate, simulate
from .qubitize import (
    CczSchedule,
    PipelineResult,
    QubitCssCode,
    f_from_rmfe,
    q3_distance,
    run_pipeline,
    step1,
    step2,
    step3,
    verify_pipeline,
)
from .transversal import (
    PhaseGateSpec,
    ccz_spec,
    check_triple_conditions,
    logical_phase,
    physical_phase,
    verify_transversal,
)

__version__ = "0.1.0"
