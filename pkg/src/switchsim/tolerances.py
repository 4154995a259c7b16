"""Central numerical-policy table.

Everything derives from a single Hermiticity knob so the whole package can be
tightened or loosened in one place.
"""

HERMITIAN_ATOL = 1e-10

# matrix level
EIG_HERMITICITY_ATOL = 1e2 * HERMITIAN_ATOL      # eigensolver input precondition
EIG_RECONSTRUCTION_RTOL = 10 * HERMITIAN_ATOL    # relative Frobenius error of V diag(w) V^dag
DENSITY_TRACE_ATOL = HERMITIAN_ATOL
DENSITY_EIG_FLOOR = -HERMITIAN_ATOL

# channel level
KRAUS_COMPLETENESS_ATOL = 10 * HERMITIAN_ATOL    # Frobenius norm of sum K^dag K - I
CHOI_PSD_FLOOR = -10 * HERMITIAN_ATOL
CHOI_MARGINAL_ATOL = 10 * HERMITIAN_ATOL
KRAUS_RANK_CUTOFF = HERMITIAN_ATOL               # Choi eigenvalues below this yield no Kraus term
UNITARY_ATOL = HERMITIAN_ATOL
BASIS_ORTHOGONALITY_ATOL = 10 * HERMITIAN_ATOL

# switch construction and analysis
ORACLE_ATOL = 10 * HERMITIAN_ATOL                # closed form vs brute force agreement
PPT_EIG_FLOOR = -HERMITIAN_ATOL
BRANCH_PROB_CUTOFF = 1e-2 * HERMITIAN_ATOL       # heralded branches below this are dropped
DEFAULT_KRAUS_BUDGET = 10**6
