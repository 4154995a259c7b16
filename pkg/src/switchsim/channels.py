"""Channel representations and the named channels of the toolkit.

Channels are held as Kraus operator lists (:class:`KrausChannel`) or as Choi
matrices (:class:`ChoiOperator`).  The Choi matrix of a map ``C`` from a
``dim_in``- to a ``dim_out``-dimensional system is

    C_mat = sum_ij C(|i><j|) (x) |i><j|,

with the output factor first; the "operator" convention keeps trace
``dim_in``, the "state" convention divides by ``dim_in``.  Flattening a Kraus
operator row-major gives exactly its vectorisation in this index order, so
``C_mat = sum_k vec(K_k) vec(K_k)^dag``.

The module also builds the shift-and-clock (Weyl) unitary basis, the
partially depolarising family ``lam * id + (1 - lam) * white-noise``, and the
two channels heralded by the cyclic switch: a depolarising branch whose
identity weight grows with the number of superposed orders, and the
generalised universal-NOT branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConventionError, DimensionMismatchError
from .linalg import (
    DensityOperator,
    as_cmatrix,
    dagger,
    frobenius,
    max_entangled_ket,
)
from .tolerances import (
    BASIS_ORTHOGONALITY_ATOL,
    CHOI_MARGINAL_ATOL,
    CHOI_PSD_FLOOR,
    HERMITIAN_ATOL,
    KRAUS_COMPLETENESS_ATOL,
    KRAUS_RANK_CUTOFF,
    UNITARY_ATOL,
)

CONVENTIONS = ("operator", "state")


def ensure_rng(seed) -> np.random.Generator:
    """Accept a Generator, an int seed, or None (fresh entropy)."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class KrausMap:
    """A completely positive map given by a list of Kraus operators.

    Trace preservation is not required here; see :class:`KrausChannel` for
    the trace-preserving subtype.  Adjoints of channels, for instance, are
    unital rather than trace preserving.
    """

    dim_in: int
    dim_out: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.kraus:
            raise ValueError("at least one Kraus operator is required")
        ops = []
        for k in self.kraus:
            a = as_cmatrix(k)
            if a.shape != (self.dim_out, self.dim_in):
                raise DimensionMismatchError(
                    f"Kraus operator of shape {a.shape}, expected "
                    f"({self.dim_out}, {self.dim_in})"
                )
            ops.append(_freeze(a))
        object.__setattr__(self, "kraus", tuple(ops))

    def completeness_defect(self) -> float:
        """Frobenius norm of sum_k K_k^dag K_k - I."""
        s = sum(dagger(k) @ k for k in self.kraus)
        return frobenius(s - np.eye(self.dim_in))

    def __call__(self, m: np.ndarray) -> np.ndarray:
        return apply_matrix(self, m)


@dataclass(frozen=True)
class KrausChannel(KrausMap):
    """Trace-preserving KrausMap: sum_k K_k^dag K_k = I within tolerance."""

    def __post_init__(self):
        super().__post_init__()
        defect = self.completeness_defect()
        if defect > KRAUS_COMPLETENESS_ATOL:
            raise ValueError(
                f"Kraus operators are not trace preserving (defect {defect:.3e})"
            )


@dataclass(frozen=True)
class ChoiOperator:
    """Choi matrix with explicit input/output dimensions and convention.

    Construction checks only shape and finiteness: cross-order terms of the
    switch are legitimately represented by Choi matrices of non-trace-
    preserving maps.  Use :meth:`validate_channel` where the matrix is meant
    to represent an actual channel.
    """

    matrix: np.ndarray
    dim_in: int
    dim_out: int
    convention: str = "operator"

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ConventionError(f"unknown Choi convention {self.convention!r}")
        m = as_cmatrix(self.matrix)
        size = self.dim_out * self.dim_in
        if m.shape != (size, size):
            raise DimensionMismatchError(
                f"Choi matrix of shape {m.shape}, expected ({size}, {size})"
            )
        object.__setattr__(self, "matrix", _freeze(m))

    @property
    def subsystem_dims(self) -> tuple[int, int]:
        return (self.dim_out, self.dim_in)

    def as_state(self) -> "ChoiOperator":
        if self.convention == "state":
            return self
        return ChoiOperator(self.matrix / self.dim_in, self.dim_in, self.dim_out, "state")

    def as_operator(self) -> "ChoiOperator":
        if self.convention == "operator":
            return self
        return ChoiOperator(self.matrix * self.dim_in, self.dim_in, self.dim_out, "operator")

    def validate_channel(self) -> "ChoiOperator":
        """Check Hermiticity, positivity and the trace-preservation marginal."""
        m = self.matrix
        herm = float(np.max(np.abs(m - dagger(m))))
        if herm > 10 * HERMITIAN_ATOL:
            raise ValueError(f"Choi matrix is not Hermitian (deviation {herm:.3e})")
        wmin = float(np.linalg.eigvalsh((m + dagger(m)) / 2.0)[0])
        scale = 1.0 if self.convention == "state" else float(self.dim_in)
        if wmin < CHOI_PSD_FLOOR * scale:
            raise ValueError(f"Choi matrix is not PSD (min eigenvalue {wmin:.3e})")
        from .linalg import partial_trace  # local import to avoid cycle noise

        marginal = partial_trace(m, (self.dim_out, self.dim_in), keep=1)
        target = np.eye(self.dim_in) * (scale / self.dim_in)
        defect = float(np.max(np.abs(marginal - target)))
        if defect > CHOI_MARGINAL_ATOL:
            raise ValueError(
                f"Choi input marginal deviates from identity by {defect:.3e}"
            )
        return self


@dataclass(frozen=True)
class UnitaryBasis:
    """d^2 pairwise Hilbert-Schmidt-orthogonal unitaries: Tr[U_i^dag U_j] = d delta_ij."""

    d: int
    elements: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        d = self.d
        if len(self.elements) != d * d:
            raise ValueError(f"expected {d * d} basis elements, got {len(self.elements)}")
        ops = []
        for u in self.elements:
            a = as_cmatrix(u)
            if a.shape != (d, d):
                raise DimensionMismatchError(f"basis element of shape {a.shape}")
            if frobenius(dagger(a) @ a - np.eye(d)) > UNITARY_ATOL * d:
                raise ValueError("basis element is not unitary")
            ops.append(_freeze(a))
        gram = np.array([[np.trace(dagger(a) @ b) for b in ops] for a in ops])
        if np.max(np.abs(gram - d * np.eye(d * d))) > BASIS_ORTHOGONALITY_ATOL:
            raise ValueError("basis elements are not pairwise orthogonal")
        object.__setattr__(self, "elements", tuple(ops))


def weyl_basis(d: int) -> UnitaryBasis:
    """Shift-and-clock products X^a Z^b with X|k> = |k+1 mod d>, Z|k> = w^k |k>.

    Element ``a*d + b`` is X^a Z^b, so element 0 is the identity.
    """
    if d < 2:
        raise ValueError(f"basis dimension must be >= 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    elements = []
    for a in range(d):
        for b in range(d):
            u = np.zeros((d, d), dtype=np.complex128)
            for c in range(d):
                u[(c + a) % d, c] = omega ** (b * c)
            elements.append(u)
    return UnitaryBasis(d, tuple(elements))


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(d, d, (np.eye(d, dtype=np.complex128),))


def depolarizing(d: int, lam: float) -> KrausChannel:
    """Partially depolarising channel: rho -> lam * rho + (1 - lam) * I/d * Tr[rho].

    Kraus set over the Weyl basis: the identity element carries weight
    sqrt(lam + (1 - lam)/d^2), every other element sqrt((1 - lam)/d^2).
    ``lam = 0`` is the completely depolarising channel.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"identity weight must lie in [0, 1], got {lam}")
    basis = weyl_basis(d)
    w0 = np.sqrt(lam + (1.0 - lam) / d**2)
    wi = np.sqrt((1.0 - lam) / d**2)
    kraus = [w0 * basis.elements[0]]
    kraus.extend(wi * u for u in basis.elements[1:])
    return KrausChannel(d, d, tuple(kraus))


def completely_depolarizing(d: int) -> KrausChannel:
    return depolarizing(d, 0.0)


def e0_identity_weight(N: int, d: int) -> float:
    """Identity weight (N - 1)/(N - 1 + d^2) of the coherent heralded branch."""
    return (N - 1) / (N - 1 + d * d)


def e0_channel(N: int, d: int) -> KrausChannel:
    """Depolarising branch heralded by the uniform control outcome of the
    N-order cyclic switch; the depolarisation probability d^2/(N - 1 + d^2)
    vanishes as d^2/N."""
    if N < 2:
        raise ValueError(f"order count must be >= 2, got {N}")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return depolarizing(d, e0_identity_weight(N, d))


def e1_choi(d: int, convention: str = "operator") -> ChoiOperator:
    """Choi matrix d (I - |Phi+><Phi+|) / (d^2 - 1) of the universal-NOT branch."""
    phi = max_entangled_ket(d)
    m = (np.eye(d * d) - np.outer(phi, phi.conj())) * (d / (d**2 - 1.0))
    c = ChoiOperator(m, d, d, "operator").validate_channel()
    return c if convention == "operator" else c.as_state()


def e1_channel(d: int) -> KrausChannel:
    """Generalised universal NOT: rho -> (d * I - rho) / (d^2 - 1).

    The Kraus set (d^2 - 1 operators) comes from the eigendecomposition of
    its rank-deficient Choi matrix.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return choi_to_kraus(e1_choi(d))


def kraus_to_choi(c: KrausMap, convention: str = "operator") -> ChoiOperator:
    """Choi matrix sum_k vec(K_k) vec(K_k)^dag; "state" divides by dim_in."""
    if convention not in CONVENTIONS:
        raise ConventionError(f"unknown Choi convention {convention!r}")
    size = c.dim_out * c.dim_in
    m = np.zeros((size, size), dtype=np.complex128)
    for k in c.kraus:
        v = k.reshape(-1)
        m += np.outer(v, v.conj())
    if convention == "state":
        m /= c.dim_in
    return ChoiOperator(m, c.dim_in, c.dim_out, convention)


def choi_to_kraus(c: ChoiOperator) -> KrausChannel:
    """Extract a Kraus representation from a valid channel Choi matrix.

    Eigenvalues below ``KRAUS_RANK_CUTOFF`` are dropped, keeping rank-deficient
    channels (such as the universal-NOT branch) at their exact rank.
    """
    op = c.as_operator()
    op.validate_channel()
    w, v = np.linalg.eigh((op.matrix + dagger(op.matrix)) / 2.0)
    kraus = []
    for i in range(w.size):
        if w[i] > KRAUS_RANK_CUTOFF:
            kraus.append(np.sqrt(w[i]) * v[:, i].reshape(c.dim_out, c.dim_in))
    return KrausChannel(c.dim_in, c.dim_out, tuple(kraus))


def apply_matrix(c: KrausMap, m) -> np.ndarray:
    m = as_cmatrix(m)
    if m.shape != (c.dim_in, c.dim_in):
        raise DimensionMismatchError(
            f"operator of shape {m.shape} fed to a channel with input dimension {c.dim_in}"
        )
    out = np.zeros((c.dim_out, c.dim_out), dtype=np.complex128)
    for k in c.kraus:
        out += k @ m @ dagger(k)
    return out


def apply(c: KrausMap, rho: DensityOperator) -> DensityOperator:
    """sum_k K_k rho K_k^dag as a validated density operator."""
    return DensityOperator(apply_matrix(c, rho.matrix), (c.dim_out,))


def apply_choi(c: ChoiOperator, m) -> np.ndarray:
    """Act with the channel encoded by a Choi matrix.

    With entries C[(a,i),(b,j)] = <a| C(|i><j|) |b>, the output is the
    contraction sum_ij m_ij C(|i><j|).
    """
    m = as_cmatrix(m)
    if m.shape != (c.dim_in, c.dim_in):
        raise DimensionMismatchError(
            f"operator of shape {m.shape} fed to a Choi matrix with input dimension {c.dim_in}"
        )
    op = c.as_operator()
    t = op.matrix.reshape(c.dim_out, c.dim_in, c.dim_out, c.dim_in)
    return np.einsum("aibj,ij->ab", t, m)


def adjoint_channel(c: KrausMap) -> KrausMap:
    """The adjoint map rho -> sum_k K_k^dag rho K_k (unital, generally not TP)."""
    return KrausMap(c.dim_out, c.dim_in, tuple(dagger(k) for k in c.kraus))


def compose(a: KrausMap, b: KrausMap) -> KrausMap:
    """The map applying ``b`` first, then ``a``; Kraus products {A_i B_j}."""
    if b.dim_out != a.dim_in:
        raise DimensionMismatchError(
            f"cannot compose: inner dimensions {a.dim_in} and {b.dim_out} differ"
        )
    kraus = tuple(ka @ kb for ka in a.kraus for kb in b.kraus)
    cls = KrausChannel if isinstance(a, KrausChannel) and isinstance(b, KrausChannel) else KrausMap
    return cls(b.dim_in, a.dim_out, kraus)


def tensor_channels(a: KrausMap, b: KrausMap) -> KrausMap:
    """The product-system map with Kraus operators {A_i (x) B_j}."""
    kraus = tuple(np.kron(ka, kb) for ka in a.kraus for kb in b.kraus)
    cls = KrausChannel if isinstance(a, KrausChannel) and isinstance(b, KrausChannel) else KrausMap
    return cls(a.dim_in * b.dim_in, a.dim_out * b.dim_out, kraus)


def choi_distance(a: ChoiOperator, b: ChoiOperator) -> float:
    """Trace-norm distance of two Choi matrices of matching dims and convention."""
    if a.convention != b.convention:
        raise ConventionError(
            f"cannot compare Choi conventions {a.convention!r} and {b.convention!r}"
        )
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatchError("Choi matrices act on different spaces")
    diff = a.matrix - b.matrix
    return float(np.abs(np.linalg.eigvalsh((diff + dagger(diff)) / 2.0)).sum())


def channel_distance(a: KrausMap, b: KrausMap) -> float:
    return choi_distance(kraus_to_choi(a), kraus_to_choi(b))


# ---------------------------------------------------------------------------
# seeded random objects (Haar states, Haar unitaries, random channels)


def haar_state(d: int, rng) -> np.ndarray:
    """Haar-random pure state: normalised vector of iid complex Gaussians."""
    rng = ensure_rng(rng)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def haar_unitary(d: int, rng) -> np.ndarray:
    """Haar-random unitary via phase-fixed QR of a complex Ginibre matrix."""
    rng = ensure_rng(rng)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_density(d: int, rng, rank: int | None = None) -> np.ndarray:
    """Random full- or fixed-rank density matrix (Ginibre construction)."""
    rng = ensure_rng(rng)
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    m = g @ dagger(g)
    return m / np.trace(m).real


def random_channel(d: int, n_kraus: int, rng) -> KrausChannel:
    """Random CPTP map: Kraus blocks of a Haar isometry d -> d * n_kraus."""
    rng = ensure_rng(rng)
    z = rng.standard_normal((d * n_kraus, d)) + 1j * rng.standard_normal((d * n_kraus, d))
    q, _ = np.linalg.qr(z)
    kraus = tuple(q[i * d : (i + 1) * d, :] for i in range(n_kraus))
    return KrausChannel(d, d, kraus)


def randomize_kraus(c: KrausMap, rng) -> KrausMap:
    """An equivalent Kraus set: mix the operators by a Haar unitary on the index space."""
    rng = ensure_rng(rng)
    n = len(c.kraus)
    v = haar_unitary(n, rng)
    stack = np.stack(c.kraus)
    mixed = np.einsum("ij,jab->iab", v, stack)
    cls = KrausChannel if isinstance(c, KrausChannel) else KrausMap
    return cls(c.dim_in, c.dim_out, tuple(mixed))
