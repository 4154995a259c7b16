"""Information-theoretic quantities and thresholds.

Entropies and capacities are reported in bits (``base`` parameters default
to 2).  The classical capacity of the cyclic-switch effective channel has the
single-letter form

    capacity = log2(d) - (1 - p) * S_min(E0) - p * S_min(E1),

with p the universal-NOT branch weight and the two minimum output entropies
available in closed form; the numeric minimiser here exists to cross-check
those closed forms, not to replace them.  Entanglement checks are PPT-based:
exact for the isotropic Choi states of the depolarising branch, a necessary
condition elsewhere (reported as such; no separability certifier is
attempted).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log2
from typing import NamedTuple

import numpy as np

from . import channels as ch
from . import switch as sw
from .errors import ConventionError
from .linalg import partial_transpose, von_neumann_entropy
from .tolerances import ORACLE_ATOL, PPT_EIG_FLOOR


@dataclass(frozen=True)
class CapacityReport:
    N: int
    d: int
    p: float
    s_min_e0: float
    s_min_e1: float
    capacity: float
    asymptote: float


@dataclass(frozen=True)
class PPTVerdict:
    min_pt_eigenvalue: float
    is_ppt: bool
    dims: tuple[int, int]


def depolarizing_min_entropy(lam: float, d: int) -> float:
    """Minimum output entropy (bits) of a partially depolarising channel.

    A pure input yields one eigenvalue lam + (1-lam)/d and d-1 eigenvalues
    (1-lam)/d, and depolarising channels attain their minimum on products of
    pure states, so the single-letter value is exact.  Ranges from log2(d)
    at lam = 0 down to 0 at lam = 1.
    """
    a = lam + (1.0 - lam) / d
    b = (1.0 - lam) / d
    out = 0.0
    if a > 0.0:
        out -= a * log2(a)
    if b > 0.0:
        out -= (d - 1) * b * log2(b)
    return out


def s_min_e0_closed(N: int, d: int) -> float:
    """Minimum output entropy (bits) of the depolarising heralded branch."""
    return depolarizing_min_entropy(ch.e0_identity_weight(N, d), d)


def s_min_e1_closed(d: int) -> float:
    """Minimum output entropy (bits) of the universal-NOT branch: a pure
    input yields one eigenvalue 1/(d+1) and d-1 eigenvalues d/(d^2-1)."""
    return -(1.0 / (d + 1)) * log2(1.0 / (d + 1)) - (d / (d + 1)) * log2(d / (d * d - 1.0))


def capacity_asymptotic(d: int) -> float:
    """Large-order limit of the capacity (bits): log2(d+1)/d^2
    - (1 - 1/d) log2(1 - 1/d^2) - (1/d) log2(1 + 1/d).  Decreasing in d and
    vanishing as d grows."""
    return (
        log2(d + 1.0) / (d * d)
        - (1.0 - 1.0 / d) * log2(1.0 - 1.0 / (d * d))
        - (1.0 / d) * log2(1.0 + 1.0 / d)
    )


def classical_capacity(N: int, d: int) -> CapacityReport:
    """Single-letter classical capacity of the N-order cyclic switch of
    completely depolarising channels, assembled from the closed forms."""
    if N < 2 or d < 2:
        raise ValueError(f"need N >= 2 and d >= 2, got N={N}, d={d}")
    p = sw.coherent_branch_probability(N, d)
    s0 = s_min_e0_closed(N, d)
    s1 = s_min_e1_closed(d)
    return CapacityReport(
        N=N,
        d=d,
        p=p,
        s_min_e0=s0,
        s_min_e1=s1,
        capacity=log2(d) - (1.0 - p) * s0 - p * s1,
        asymptote=capacity_asymptotic(d),
    )


def uniform_basis_holevo(choi: ch.ChoiOperator, base: float = 2.0) -> float:
    """Holevo quantity of the uniform ensemble of computational-basis inputs
    pushed through the channel encoded by ``choi``.

    For the switch effective channel the control-entropy contributions cancel
    between the two terms and this equals the reported capacity.
    """
    d = choi.dim_in
    outs = []
    for x in range(d):
        e = np.zeros((d, d), dtype=np.complex128)
        e[x, x] = 1.0
        outs.append(ch.apply_choi(choi, e))
    avg = sum(outs) / d
    return von_neumann_entropy(avg, base) - sum(von_neumann_entropy(o, base) for o in outs) / d


# ---------------------------------------------------------------------------
# numeric minimum output entropy


def _pure_output_entropy(kraus_stack: np.ndarray, x: np.ndarray, base: float) -> float:
    d = kraus_stack.shape[2]
    v = x[:d] + 1j * x[d:]
    n = np.linalg.norm(v)
    if n < 1e-12:
        return np.inf
    w = kraus_stack @ (v / n)
    rho = np.einsum("ki,kj->ij", w, w.conj())
    return von_neumann_entropy(rho, base)


def min_output_entropy_numeric(
    c: ch.KrausChannel,
    restarts: int = 32,
    seed=None,
    base: float = 2.0,
    step_tol: float = 1e-7,
) -> float:
    """Upper bound on the minimum output entropy by multi-start coordinate
    search over pure inputs (concavity restricts the minimiser to pure
    states).  The closed forms remain the ground truth; this is the
    cross-check."""
    if restarts < 1:
        raise ValueError("need at least one restart")
    rng = ch.ensure_rng(seed)
    stack = np.stack(c.kraus)
    best = np.inf
    for _ in range(restarts):
        x = rng.standard_normal(2 * c.dim_in)
        f = _pure_output_entropy(stack, x, base)
        step = 0.5
        while step > step_tol:
            improved = False
            for i in range(x.size):
                for s in (step, -step):
                    y = x.copy()
                    y[i] += s
                    fy = _pure_output_entropy(stack, y, base)
                    if fy < f - 1e-15:
                        x, f = y, fy
                        improved = True
            if not improved:
                step /= 2.0
        best = min(best, f)
    return float(best)


# ---------------------------------------------------------------------------
# PPT and thresholds


def ppt_check(choi: ch.ChoiOperator) -> PPTVerdict:
    """Minimum eigenvalue of the partial transpose over the input subsystem
    of a state-convention Choi matrix."""
    if choi.convention != "state":
        raise ConventionError("PPT thresholds are defined on the state-convention Choi")
    pt = partial_transpose(choi.matrix, (choi.dim_out, choi.dim_in), subsystem=1)
    wmin = float(np.linalg.eigvalsh((pt + pt.conj().T) / 2.0)[0])
    return PPTVerdict(
        min_pt_eigenvalue=wmin,
        is_ppt=wmin >= PPT_EIG_FLOOR,
        dims=(choi.dim_out, choi.dim_in),
    )


def two_way_capacity_positive(N: int, d: int) -> bool:
    """Whether the depolarising heralded branch can distribute entanglement
    (two-way assisted quantum capacity positive): exactly when N > d + 1,
    i.e. when its isotropic Choi state is entangled."""
    if N < 2 or d < 2:
        raise ValueError(f"need N >= 2 and d >= 2, got N={N}, d={d}")
    return N > d + 1


def lambda_max(d: int) -> float:
    """Largest identity weight at which switching two partially depolarising
    channels still improves on one of them: (d sqrt(d^2+8) - d^2 - 2) over
    (2 (d^2 - 1)).  Always below the entanglement threshold 1/(d+1)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return (d * np.sqrt(d * d + 8.0) - d * d - 2.0) / (2.0 * (d * d - 1.0))


# ---------------------------------------------------------------------------
# fidelity functional


class UnotFidelity(NamedTuple):
    exact: float
    mc_estimate: float
    mc_stderr: float


def fidelity_functional_exact(c: ch.KrausMap) -> float:
    """Haar-average input-output fidelity of a channel: for a trace-preserving
    map this is (1 + <Phi+| C |Phi+>)/(d + 1) with C the operator-convention
    Choi matrix."""
    d = c.dim_in
    choi = ch.kraus_to_choi(c, "operator").matrix
    phi = ch.max_entangled_ket(d)
    overlap = float(np.real(phi.conj() @ choi @ phi))
    return (1.0 + overlap) / (d + 1.0)


def fidelity_functional_mc(c: ch.KrausMap, samples: int, seed=None) -> tuple[float, float]:
    """Monte Carlo estimate (mean, standard error) of the Haar-average
    input-output fidelity."""
    rng = ch.ensure_rng(seed)
    vals = np.empty(samples)
    for i in range(samples):
        psi = ch.haar_state(c.dim_in, rng)
        out = ch.apply_matrix(c, np.outer(psi, psi.conj()))
        vals[i] = np.real(psi.conj() @ out @ psi)
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(samples))


def unot_fidelity(d: int, mc_samples: int = 2000, seed=None) -> UnotFidelity:
    """Output fidelity of the universal-NOT branch on pure inputs: exactly
    1/(d+1) for every pure state, plus a Monte Carlo cross-estimate."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    mean, err = fidelity_functional_mc(ch.e1_channel(d), mc_samples, seed)
    return UnotFidelity(exact=1.0 / (d + 1.0), mc_estimate=mean, mc_stderr=err)


# ---------------------------------------------------------------------------
# two-order no-go verification


@dataclass(frozen=True)
class NogoReport:
    """Randomised verification that the two-order switch cannot carry quantum
    data: every sampled effective channel must be PPT, and the structural
    identities (adjoint composition, joint control-target form, controlled
    pairs) must hold.  PPT here is the necessary condition actually checked;
    separability itself is not certified."""

    trials: int
    dims: tuple[int, ...]
    max_identity_deviation: float
    min_pt_eigenvalue: float
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def n2_nogo_check(trials: int, seed=None, dims: tuple[int, ...] = (2, 3)) -> NogoReport:
    """Drive ``trials`` random two-order scenarios per dimension.

    Each trial draws a control state, an intermediate channel and a
    controlled pair, then checks: (a) the effective Choi states are PPT,
    (b) the bare switch matches its joint control-target closed form,
    (c) the direct and adjoint-composed constructions agree.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    root = np.random.SeedSequence(seed)
    failures: list[str] = []
    max_dev = 0.0
    min_pt = np.inf

    for d in dims:
        e_plus = sw.e_plus_choi(d).as_state()
        e_minus = sw.e_minus_choi(d).as_state()
        for name, choi in (("e-plus", e_plus), ("e-minus", e_minus)):
            verdict = ppt_check(choi)
            min_pt = min(min_pt, verdict.min_pt_eigenvalue)
            if not verdict.is_ppt:
                failures.append(f"{name} branch not PPT at d={d}")

    trial_seeds = root.spawn(trials)
    for t, ss in enumerate(trial_seeds):
        rng = np.random.default_rng(ss)
        where = f"trial {t}, root seed {seed!r}"
        for d in dims:
            omega = ch.random_density(2, rng)
            if t % 2 == 0:
                r = ch.KrausChannel(d, d, (ch.haar_unitary(d, rng),))
            else:
                r = ch.random_channel(d, d, rng)
            r2 = ch.random_channel(d, d, rng)

            direct = sw.n2_with_intermediate(r, omega)
            via_adj = sw.n2_intermediate_via_adjoint(r, omega)
            dev = ch.choi_distance(direct, via_adj)
            max_dev = max(max_dev, dev)
            if dev > ORACLE_ATOL:
                failures.append(f"adjoint identity off by {dev:.3e} ({where}, d={d})")

            dep = ch.completely_depolarizing(d)
            bare_spec = sw.SwitchSpec(2, d, (dep, dep), omega)
            bare = sw.effective_channel_bruteforce(bare_spec)
            jeff = sw.n2_jeff_closed_form(omega, d)
            dev = ch.choi_distance(bare, jeff)
            max_dev = max(max_dev, dev)
            if dev > ORACLE_ATOL:
                failures.append(f"joint closed form off by {dev:.3e} ({where}, d={d})")

            controlled = sw.n2_with_controlled(r, r2, omega)
            for name, choi in (("intermediate", direct), ("controlled", controlled)):
                verdict = ppt_check(choi.as_state())
                min_pt = min(min_pt, verdict.min_pt_eigenvalue)
                if not verdict.is_ppt:
                    failures.append(f"{name} effective channel not PPT ({where}, d={d})")
    return NogoReport(
        trials=trials,
        dims=tuple(dims),
        max_identity_deviation=max_dev,
        min_pt_eigenvalue=float(min_pt),
        failures=tuple(failures),
    )
