"""Numerical toolkit for quantum channels in a superposition of cyclic
causal orders: brute-force switch arithmetic, closed forms, heralded
decompositions, capacities and thresholds."""

from ._backend import kernel_backend
from .channels import (
    ChoiOperator,
    KrausChannel,
    KrausMap,
    UnitaryBasis,
    adjoint_channel,
    apply,
    apply_choi,
    apply_matrix,
    choi_distance,
    choi_to_kraus,
    completely_depolarizing,
    compose,
    depolarizing,
    e0_channel,
    e0_identity_weight,
    e1_channel,
    e1_choi,
    ensure_rng,
    haar_state,
    haar_unitary,
    identity_channel,
    kraus_to_choi,
    random_channel,
    random_density,
    randomize_kraus,
    tensor_channels,
    weyl_basis,
)
from .errors import ConventionError, DimensionMismatchError, KrausBudgetError
from .info import (
    CapacityReport,
    NogoReport,
    PPTVerdict,
    UnotFidelity,
    capacity_asymptotic,
    classical_capacity,
    depolarizing_min_entropy,
    fidelity_functional_exact,
    fidelity_functional_mc,
    lambda_max,
    min_output_entropy_numeric,
    n2_nogo_check,
    ppt_check,
    s_min_e0_closed,
    s_min_e1_closed,
    two_way_capacity_positive,
    uniform_basis_holevo,
    unot_fidelity,
)
from .linalg import (
    DensityOperator,
    eig_hermitian,
    partial_trace,
    partial_transpose,
    tensor,
    von_neumann_entropy,
)
from .protocol import ProtocolRun, heralded_error, run_protocol
from .switch import (
    HeraldedBranch,
    HeraldedDecomposition,
    PartialSwitchN2,
    PermSet,
    SwitchSpec,
    c_pi_pi_prime,
    coherent_branch_probability,
    cyclic_perms,
    depolarizing_switch,
    effective_channel_bruteforce,
    effective_channel_closed_form,
    heralded_decomposition,
    is_cyclic_set,
    lambda_prime,
    n2_jeff_closed_form,
    n2_intermediate_via_adjoint,
    n2_with_controlled,
    n2_with_intermediate,
    order_kraus,
    partial_switch_n2,
    uniform_control,
)

__version__ = "0.1.0"
