"""The quantum switch of N channels over a permutation set.

The effective channel seen across the switch maps a d-dimensional input to
the joint (control x output) system,

    rho  ->  sum_{p, q} omega_pq |p><q| (x) C_pq(rho),

where omega is the control state in the permutation basis and C_pq sums, over
all Kraus multi-indices, the ordered product along permutation p acting from
the left against the ordered product along permutation q from the right.  The
brute-force path streams those multi-indices into a Choi matrix through the
selected kernel backend; the closed form assembles the known two-branch
heralded decomposition for completely depolarising inputs and the uniform
control state.  Agreement of the two is the package's central oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import channels as ch
from ._backend import kernels
from .errors import ConventionError, DimensionMismatchError, KrausBudgetError
from .linalg import (
    DensityOperator,
    as_cmatrix,
    dagger,
    max_entangled_ket,
    partial_trace,
    tensor,
    uniform_ket,
)
from .tolerances import BRANCH_PROB_CUTOFF, DEFAULT_KRAUS_BUDGET

_CTRL_EIG_CUTOFF = 1e-14


@dataclass(frozen=True)
class PermSet:
    """An ordered list of permutations of {0..N-1}, each a bijection."""

    N: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        for p in perms:
            if sorted(p) != list(range(self.N)):
                raise ValueError(f"{p} is not a permutation of 0..{self.N - 1}")
        object.__setattr__(self, "perms", perms)

    def __len__(self) -> int:
        return len(self.perms)


def cyclic_perms(N: int) -> PermSet:
    """The N cyclic shifts a -> (a + k) mod N, with the identity (k = 0) first."""
    if N < 2:
        raise ValueError(f"need at least 2 orders, got {N}")
    return PermSet(N, tuple(tuple((a + k) % N for a in range(N)) for k in range(N)))


def is_cyclic_set(ps: PermSet) -> bool:
    """Whether the set equals the full cyclic group {a -> a + k} in some order."""
    want = {tuple((a + k) % ps.N for a in range(ps.N)) for k in range(ps.N)}
    return len(ps) == ps.N and set(ps.perms) == want


def uniform_control(N: int) -> np.ndarray:
    """|e0><e0| with |e0> the balanced superposition of the N order labels."""
    e0 = uniform_ket(N)
    return np.outer(e0, e0.conj())


@dataclass(frozen=True)
class SwitchSpec:
    """One switch instance: N channels of dimension d, a control state over
    the permutation basis, and the permutation set itself."""

    N: int
    d: int
    channels: tuple[ch.KrausChannel, ...]
    control: np.ndarray
    perms: PermSet = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.perms is None:
            object.__setattr__(self, "perms", cyclic_perms(self.N))
        if len(self.channels) != self.N:
            raise DimensionMismatchError(
                f"{len(self.channels)} channels supplied for N = {self.N}"
            )
        for c in self.channels:
            if (c.dim_in, c.dim_out) != (self.d, self.d):
                raise DimensionMismatchError(
                    f"channel with dims {c.dim_in}->{c.dim_out}; every slot must be "
                    f"{self.d}->{self.d}"
                )
        if self.perms.N != self.N:
            raise DimensionMismatchError("permutation set size does not match N")
        control = DensityOperator(self.control, (len(self.perms),)).matrix
        object.__setattr__(self, "control", control)

    @property
    def kraus_term_count(self) -> int:
        return math.prod(len(c.kraus) for c in self.channels)


def depolarizing_switch(N: int, d: int, lam: float = 0.0) -> SwitchSpec:
    """N identical partially depolarising channels, cyclic orders, uniform control."""
    c = ch.depolarizing(d, lam)
    return SwitchSpec(N, d, (c,) * N, uniform_control(N), cyclic_perms(N))


def order_kraus(spec: SwitchSpec, perm, j) -> np.ndarray:
    """Ordered product of one Kraus operator per channel along a permutation.

    Position a of the product (leftmost is a = 0) holds channel perm[a] with
    Kraus index j[perm[a]]; the leftmost factor is the last one applied to the
    input state's left.
    """
    perm = tuple(int(x) for x in perm)
    j = tuple(int(x) for x in j)
    if len(j) != spec.N:
        raise IndexError(f"multi-index of length {len(j)}, expected {spec.N}")
    for i, c in enumerate(spec.channels):
        if not 0 <= j[i] < len(c.kraus):
            raise IndexError(f"Kraus index {j[i]} out of range for channel {i}")
    out = spec.channels[perm[0]].kraus[j[perm[0]]]
    for a in range(1, spec.N):
        out = out @ spec.channels[perm[a]].kraus[j[perm[a]]]
    return out


def coherent_branch_probability(N: int, d: int) -> float:
    """Weight (N - 1)(d^2 - 1)/(N d^2) of the universal-NOT branch in the
    heralded decomposition; its complement never drops below 1/d^2."""
    return (N - 1) * (d * d - 1) / (N * d * d)


# ---------------------------------------------------------------------------
# kernel plumbing


def _stack_collections(collections):
    ops = np.ascontiguousarray(
        np.concatenate([np.stack(c) for c in collections]), dtype=np.complex128
    )
    offsets = np.zeros(len(collections) + 1, dtype=np.intp)
    np.cumsum([len(c) for c in collections], out=offsets[1:])
    return ops, offsets


def _control_vectors(control: np.ndarray) -> np.ndarray:
    """Rows sqrt(q_v) w_v^T of the control eigendecomposition, negligible
    eigenvalues dropped."""
    w, v = np.linalg.eigh(control)
    cols = [np.sqrt(w[i]) * v[:, i] for i in range(w.size) if w[i] > _CTRL_EIG_CUTOFF]
    return np.ascontiguousarray(np.stack(cols), dtype=np.complex128)


def _check_budget(slot_sizes, budget: int) -> None:
    required = math.prod(int(s) for s in slot_sizes)
    if required > budget:
        raise KrausBudgetError(required, budget)


def _run_switch_kernel(collections, slot_sizes, chains, control, d: int, budget: int) -> np.ndarray:
    """Run the streaming kernel for branch chains [(slot, collection), ...]."""
    _check_budget(slot_sizes, budget)
    ops, offsets = _stack_collections(collections)
    chain_slots = np.ascontiguousarray([[s for s, _ in c] for c in chains], dtype=np.intp)
    chain_colls = np.ascontiguousarray([[k for _, k in c] for c in chains], dtype=np.intp)
    ctrl = _control_vectors(control)
    n_branches = len(chains)
    size = n_branches * d * d
    out = np.zeros((size, size), dtype=np.complex128)
    kernels.accumulate_switch_choi(
        ops,
        offsets,
        np.ascontiguousarray(slot_sizes, dtype=np.intp),
        chain_slots,
        chain_colls,
        ctrl,
        out,
    )
    return out


def effective_channel_bruteforce(
    spec: SwitchSpec, budget: int = DEFAULT_KRAUS_BUDGET
) -> ch.ChoiOperator:
    """Choi matrix (operator convention) of the d -> control (x) d channel,
    accumulated term by term over all Kraus multi-indices.

    Works for arbitrary channels, control states and permutation sets; the
    total multi-index count must stay within ``budget``.
    """
    collections = [list(c.kraus) for c in spec.channels]
    slot_sizes = np.array([len(c) for c in collections], dtype=np.intp)
    chains = [[(p[a], p[a]) for a in range(spec.N)] for p in spec.perms.perms]
    out = _run_switch_kernel(collections, slot_sizes, chains, spec.control, spec.d, budget)
    M = len(spec.perms)
    return ch.ChoiOperator(out, spec.d, M * spec.d, "operator").validate_channel()


def c_pi_pi_prime(
    spec: SwitchSpec, pi, pi2, budget: int = DEFAULT_KRAUS_BUDGET
) -> ch.ChoiOperator:
    """Choi matrix of the cross-order map rho -> sum_j A_j rho B_j^dag, where
    A_j and B_j are the ordered products along the two permutations.

    For distinct cyclic permutations of completely depolarising channels this
    collapses to 1/d^2 times the identity map's Choi matrix; for equal ones,
    to the white-noise channel's.  The map is generally not trace preserving,
    so no channel validation is applied.
    """
    pi = tuple(int(x) for x in pi)
    pi2 = tuple(int(x) for x in pi2)
    for p in (pi, pi2):
        if p not in spec.perms.perms:
            raise ValueError(f"permutation {p} is not part of the switch instance")
    collections = [list(c.kraus) for c in spec.channels]
    slot_sizes = np.array([len(c) for c in collections], dtype=np.intp)
    _check_budget(slot_sizes, budget)
    ops, offsets = _stack_collections(collections)
    a_slots = np.ascontiguousarray(pi, dtype=np.intp)
    b_slots = np.ascontiguousarray(pi2, dtype=np.intp)
    out = np.zeros((spec.d * spec.d, spec.d * spec.d), dtype=np.complex128)
    kernels.accumulate_pair_choi(
        ops,
        offsets,
        np.ascontiguousarray(slot_sizes, dtype=np.intp),
        a_slots,
        a_slots.copy(),
        b_slots,
        b_slots.copy(),
        out,
    )
    return ch.ChoiOperator(out, spec.d, spec.d, "operator")


def effective_channel_closed_form(N: int, d: int) -> ch.ChoiOperator:
    """Closed-form Choi matrix of the cyclic switch of N completely
    depolarising channels with the uniform control state: a mixture of the
    two heralded branch channels flagged by orthogonal control states."""
    if N < 2 or d < 2:
        raise ValueError(f"need N >= 2 and d >= 2, got N={N}, d={d}")
    p = coherent_branch_probability(N, d)
    rho0 = uniform_control(N)
    rho1 = (np.eye(N) - rho0) / (N - 1)
    c0 = ch.kraus_to_choi(ch.e0_channel(N, d)).matrix
    c1 = ch.e1_choi(d).matrix
    m = (1.0 - p) * tensor(rho0, c0) + p * tensor(rho1, c1)
    return ch.ChoiOperator(m, d, N * d, "operator").validate_channel()


# ---------------------------------------------------------------------------
# heralded decomposition


@dataclass(frozen=True)
class HeraldedBranch:
    probability: float
    control_state: DensityOperator
    channel: ch.KrausChannel


@dataclass(frozen=True)
class HeraldedDecomposition:
    """Branches flagged by orthogonal control outcomes; probabilities sum to 1
    minus the weight of any branches dropped below the probability cutoff."""

    branches: tuple[HeraldedBranch, ...]
    omitted: tuple[int, ...] = ()


def heralded_decomposition(choi: ch.ChoiOperator, N: int, d: int) -> HeraldedDecomposition:
    """Split a d -> N (x) d effective channel by measuring the control in
    {uniform superposition, its complement}.

    Returns, per outcome, the heralding probability, the post-measurement
    control state, and the normalised conditional channel on the target.
    Branches with probability below ``BRANCH_PROB_CUTOFF`` are omitted and
    their index recorded in ``omitted``.
    """
    if choi.convention != "operator":
        raise ConventionError("heralded decomposition expects an operator-convention Choi")
    if choi.dim_out != N * d or choi.dim_in != d:
        raise DimensionMismatchError(
            f"Choi with dims {choi.dim_out}x{choi.dim_in} is not a d -> N*d channel "
            f"for N={N}, d={d}"
        )
    p0 = uniform_control(N)
    projectors = (p0, np.eye(N) - p0)
    branches = []
    omitted = []
    eye_target = np.eye(d * d)
    for b, proj in enumerate(projectors):
        big = tensor(proj, eye_target)
        cb = big @ choi.matrix @ big
        prob = float(np.trace(cb).real) / d
        if prob < BRANCH_PROB_CUTOFF:
            omitted.append(b)
            continue
        ctrl = partial_trace(cb, (N, d, d), keep=0)
        ctrl = ctrl / np.trace(ctrl).real
        cond = partial_trace(cb, (N, d, d), keep=(1, 2)) / prob
        channel = ch.choi_to_kraus(ch.ChoiOperator(cond, d, d, "operator"))
        branches.append(
            HeraldedBranch(prob, DensityOperator(ctrl, (N,)), channel)
        )
    return HeraldedDecomposition(tuple(branches), tuple(omitted))


# ---------------------------------------------------------------------------
# the two-order switch with intermediate operations


def _n2_spec(d: int, omega) -> SwitchSpec:
    dep = ch.completely_depolarizing(d)
    return SwitchSpec(2, d, (dep, dep), as_cmatrix(omega), cyclic_perms(2))


def n2_with_intermediate(
    r: ch.KrausChannel, omega, budget: int = DEFAULT_KRAUS_BUDGET
) -> ch.ChoiOperator:
    """Two completely depolarising channels in superposed orders with the
    channel ``r`` applied between the two time slots, built by direct
    brute-force expansion.

    Each Kraus term is |0><0| (x) C_j R_k C'_l + |1><1| (x) C'_l R_k C_j; the
    control starts in ``omega``.
    """
    d = r.dim_in
    if r.dim_out != d:
        raise DimensionMismatchError("intermediate operation must preserve the dimension")
    spec = _n2_spec(d, omega)
    collections = [list(spec.channels[0].kraus), list(spec.channels[1].kraus), list(r.kraus)]
    slot_sizes = np.array([len(c) for c in collections], dtype=np.intp)
    chains = [
        [(0, 0), (2, 2), (1, 1)],
        [(1, 1), (2, 2), (0, 0)],
    ]
    out = _run_switch_kernel(collections, slot_sizes, chains, spec.control, d, budget)
    return ch.ChoiOperator(out, d, 2 * d, "operator").validate_channel()


def n2_intermediate_via_adjoint(
    r: ch.KrausChannel, omega, budget: int = DEFAULT_KRAUS_BUDGET
) -> ch.ChoiOperator:
    """Same channel as :func:`n2_with_intermediate`, built instead by
    post-composing the bare two-order switch with (id on control) (x) adjoint
    of ``r`` on the target output."""
    d = r.dim_in
    base = effective_channel_bruteforce(_n2_spec(d, omega), budget=budget)
    size = 2 * d * d
    out = np.zeros((size, size), dtype=np.complex128)
    for k in r.kraus:
        g = tensor(tensor(np.eye(2), dagger(k)), np.eye(d))
        out += g @ base.matrix @ dagger(g)
    return ch.ChoiOperator(out, d, 2 * d, "operator").validate_channel()


def n2_with_controlled(
    r: ch.KrausChannel,
    r2: ch.KrausChannel,
    omega,
    budget: int = DEFAULT_KRAUS_BUDGET,
) -> ch.ChoiOperator:
    """Two-order switch with a controlled intermediate pair: the branch with
    channel order (1, 2) receives ``r``, the swapped branch ``r2``, with a
    shared Kraus index."""
    d = r.dim_in
    if (r2.dim_in, r2.dim_out) != (r.dim_in, r.dim_out) or r.dim_out != d:
        raise DimensionMismatchError("controlled pair must share the target dimension")
    ka, kb = list(r.kraus), list(r2.kraus)
    zero = np.zeros((d, d), dtype=np.complex128)
    while len(ka) < len(kb):
        ka.append(zero)
    while len(kb) < len(ka):
        kb.append(zero)
    spec = _n2_spec(d, omega)
    collections = [list(spec.channels[0].kraus), list(spec.channels[1].kraus), ka, kb]
    slot_sizes = np.array([len(collections[0]), len(collections[1]), len(ka)], dtype=np.intp)
    chains = [
        [(0, 0), (2, 2), (1, 1)],
        [(1, 1), (2, 3), (0, 0)],
    ]
    out = _run_switch_kernel(collections, slot_sizes, chains, spec.control, d, budget)
    return ch.ChoiOperator(out, d, 2 * d, "operator").validate_channel()


def e_plus_choi(d: int) -> ch.ChoiOperator:
    """Choi matrix of rho -> (d I + rho)/(d^2 + 1), the positive-parity
    two-order branch; coincides with the N = 2 depolarising branch."""
    phi = max_entangled_ket(d)
    m = (d * np.eye(d * d) + d * np.outer(phi, phi.conj())) / (d * d + 1.0)
    return ch.ChoiOperator(m, d, d, "operator").validate_channel()


def e_minus_choi(d: int) -> ch.ChoiOperator:
    """Choi matrix of rho -> (d I - rho)/(d^2 - 1), the negative-parity
    two-order branch; equals the universal-NOT branch."""
    phi = max_entangled_ket(d)
    m = (d * np.eye(d * d) - d * np.outer(phi, phi.conj())) / (d * d - 1.0)
    return ch.ChoiOperator(m, d, d, "operator").validate_channel()


def n2_jeff_closed_form(omega, d: int) -> ch.ChoiOperator:
    """Closed form of the bare two-order switch for an arbitrary control
    state: the positive branch keeps the control, the negative branch
    conjugates it by Z = diag(1, -1)."""
    omega = as_cmatrix(omega)
    z = np.diag([1.0, -1.0]).astype(np.complex128)
    p_plus = (d * d + 1) / (2 * d * d)
    p_minus = (d * d - 1) / (2 * d * d)
    m = p_plus * tensor(omega, e_plus_choi(d).matrix) + p_minus * tensor(
        z @ omega @ z, e_minus_choi(d).matrix
    )
    return ch.ChoiOperator(m, d, 2 * d, "operator").validate_channel()


# ---------------------------------------------------------------------------
# two partially depolarising channels in superposed orders


def lambda_prime(lam: float, d: int) -> float:
    """Identity weight of the positive heralded branch when two channels of
    identity weight ``lam`` are switched: (lam^2 + (1-lam)^2/(2 d^2)) over
    (1 - (1-lam)^2 (d^2-1)/(2 d^2))."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"identity weight must lie in [0, 1], got {lam}")
    q = (1.0 - lam) ** 2
    num = lam * lam + q / (2.0 * d * d)
    den = 1.0 - q * (d * d - 1.0) / (2.0 * d * d)
    return num / den


@dataclass(frozen=True)
class PartialSwitchN2:
    lambda_prime: float
    heralded_plus: ch.KrausChannel
    heralded_minus: ch.KrausChannel
    weights: tuple[float, float]


def partial_switch_n2(lam: float, d: int) -> PartialSwitchN2:
    """Heralded decomposition of the two-order switch of two partially
    depolarising channels with identity weight ``lam``.

    The plus branch is again partially depolarising with identity weight
    ``lambda_prime(lam, d)``; the minus branch is the universal-NOT channel
    with weight (1 - lam)^2 (d^2 - 1)/(2 d^2).
    """
    lp = lambda_prime(lam, d)
    w_minus = (1.0 - lam) ** 2 * (d * d - 1.0) / (2.0 * d * d)
    return PartialSwitchN2(
        lambda_prime=lp,
        heralded_plus=ch.depolarizing(d, lp),
        heralded_minus=ch.e1_channel(d),
        weights=(1.0 - w_minus, w_minus),
    )
