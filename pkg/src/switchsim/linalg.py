"""Dense complex linear algebra on labelled tensor factorisations.

All operators in this package are dense complex matrices of modest size
(nothing above a few hundred rows), stored row-major.  This module provides
the multi-subsystem primitives everything else builds on: Kronecker products,
partial trace, partial transpose, Hermitian eigendecomposition and the von
Neumann entropy, plus the validated density-operator container.

All functions are pure; returned arrays never alias their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log

import numpy as np

from .errors import DimensionMismatchError
from .tolerances import (
    DENSITY_EIG_FLOOR,
    DENSITY_TRACE_ATOL,
    EIG_HERMITICITY_ATOL,
    EIG_RECONSTRUCTION_RTOL,
    HERMITIAN_ATOL,
)


def as_cmatrix(m) -> np.ndarray:
    """Coerce to a fresh C-contiguous complex128 matrix, rejecting non-finite entries."""
    a = np.array(m, dtype=np.complex128, order="C")
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {a.ndim}")
    if not np.isfinite(a).all():
        raise ValueError("matrix contains NaN or Inf entries")
    return a


def _check_dims(m: np.ndarray, dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionMismatchError(f"subsystem dimensions must be >= 1, got {dims}")
    size = int(np.prod(dims))
    if m.shape != (size, size):
        raise DimensionMismatchError(
            f"matrix of shape {m.shape} does not match subsystem dimensions {dims}"
        )
    return dims


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def is_hermitian(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    return bool(np.max(np.abs(m - dagger(m))) <= atol)


def tensor(a, b) -> np.ndarray:
    """Kronecker product with ``a`` supplying the slower-varying block index."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def tensor_all(*mats) -> np.ndarray:
    out = as_cmatrix(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_cmatrix(m))
    return out


def partial_trace(m, dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists the subsystem dimensions of the square matrix ``m``;
    ``keep`` is a subsystem index or a set of indices.  Kept subsystems retain
    their original relative order, and the trace of the output equals the
    trace of the input.
    """
    m = as_cmatrix(m)
    dims = _check_dims(m, dims)
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = sorted(set(int(k) for k in keep))
    n = len(dims)
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatchError(f"keep indices {keep} out of range for {n} subsystems")
    if not keep:
        raise DimensionMismatchError("cannot trace out every subsystem")

    t = m.reshape(dims + dims)
    live = list(dims)
    for i in [i for i in range(n) if i not in keep][::-1]:
        t = np.trace(t, axis1=i, axis2=i + len(live))
        del live[i]
    size = int(np.prod(live))
    return np.ascontiguousarray(t.reshape(size, size))


def partial_transpose(m, dims, subsystem: int) -> np.ndarray:
    """Transpose only the indicated subsystem's indices; involutive."""
    m = as_cmatrix(m)
    dims = _check_dims(m, dims)
    n = len(dims)
    subsystem = int(subsystem)
    if subsystem < 0 or subsystem >= n:
        raise DimensionMismatchError(
            f"subsystem index {subsystem} out of range for {n} subsystems"
        )
    t = m.reshape(dims + dims)
    t = np.swapaxes(t, subsystem, subsystem + n)
    size = int(np.prod(dims))
    return np.ascontiguousarray(t.reshape(size, size))


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues ``w`` and a unitary ``V`` with
    ``m = V diag(w) V^dag``.  The input must be Hermitian within
    ``EIG_HERMITICITY_ATOL``; the reconstruction error is checked against
    ``EIG_RECONSTRUCTION_RTOL`` as a postcondition.
    """
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"matrix of shape {m.shape} is not square")
    if not is_hermitian(m, atol=EIG_HERMITICITY_ATOL):
        dev = float(np.max(np.abs(m - dagger(m))))
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    scale = max(frobenius(m), 1e-300)
    err = frobenius(m - (v * w) @ dagger(v)) / scale
    if err > EIG_RECONSTRUCTION_RTOL:
        raise ArithmeticError(f"eigendecomposition failed to reconstruct input ({err:.3e})")
    return w, v


def von_neumann_entropy(rho, base: float = 2.0) -> float:
    """Entropy -sum_i p_i log_base p_i of a density operator, with 0 log 0 = 0."""
    if base <= 1.0:
        raise ValueError(f"entropy base must exceed 1, got {base}")
    m = rho.matrix if isinstance(rho, DensityOperator) else as_cmatrix(rho)
    w = np.linalg.eigvalsh((m + dagger(m)) / 2.0)
    w = w[w > 0.0]
    if w.size == 0:
        return 0.0
    return float(-(w * np.log(w)).sum() / log(base))


@dataclass(frozen=True)
class DensityOperator:
    """Unit-trace positive-semidefinite operator on a labelled tensor factorisation."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = as_cmatrix(self.matrix)
        dims = _check_dims(m, self.dims)
        if not is_hermitian(m, atol=HERMITIAN_ATOL):
            dev = float(np.max(np.abs(m - dagger(m))))
            raise ValueError(f"density matrix is not Hermitian (max deviation {dev:.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > DENSITY_TRACE_ATOL:
            raise ValueError(f"density matrix trace {tr} is not 1")
        wmin = float(np.linalg.eigvalsh((m + dagger(m)) / 2.0)[0])
        if wmin < DENSITY_EIG_FLOOR:
            raise ValueError(f"density matrix has negative eigenvalue {wmin:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, ket, dims=None) -> "DensityOperator":
        v = np.asarray(ket, dtype=np.complex128).reshape(-1)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise ValueError("zero vector cannot be normalised to a pure state")
        v = v / n
        if dims is None:
            dims = (v.size,)
        return cls(np.outer(v, v.conj()), tuple(dims))


def basis_ket(d: int, i: int) -> np.ndarray:
    v = np.zeros(d, dtype=np.complex128)
    v[i] = 1.0
    return v


def uniform_ket(d: int) -> np.ndarray:
    """The balanced superposition of all basis states."""
    return np.full(d, 1.0 / np.sqrt(d), dtype=np.complex128)


def max_entangled_ket(d: int) -> np.ndarray:
    """sum_i |i>|i> / sqrt(d) on a d x d bipartition."""
    v = np.zeros(d * d, dtype=np.complex128)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return v


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.complex128) / d
