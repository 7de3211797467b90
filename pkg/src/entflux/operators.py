"""Finite-dimensional density-operator algebra.

Everything here reduces to eigendecompositions of Hermitian matrices:
entropies, relative entropy and trace distance are all spectral
quantities.  Logarithms are base 2 throughout (results in bits).

Subsystem structure is carried explicitly: a state over a composite
Hilbert space stores the list of subsystem dimensions, and all cuts and
partial traces refer to those indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
EIGVAL_CLIP_TOL = 1e-10
EIGVAL_CLIP_ERROR = 1e-8
SUPPORT_TOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace operator over labelled subsystems.

    data: complex square matrix of size prod(dims).
    dims: positive subsystem dimensions, fixed at construction; all
        index-based operations (cuts, partial traces) refer to these.
    labels: optional subsystem names, purely informational.
    """

    data: np.ndarray
    dims: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", dims)
        if any(d <= 0 for d in dims):
            raise ValueError(f"subsystem dimensions must be positive, got {dims}")
        n = int(np.prod(dims))
        if data.shape != (n, n):
            raise ValueError(f"matrix shape {data.shape} does not match dims {dims}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(dims):
                raise ValueError("labels length must match dims length")
            object.__setattr__(self, "labels", labels)
        herm_dev = np.max(np.abs(data - data.conj().T))
        if herm_dev > HERMITICITY_TOL:
            raise ValueError(f"matrix not Hermitian: max deviation {herm_dev:.3e}")
        tr = data.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {tr:.12f}")
        lo = float(np.linalg.eigvalsh(data)[0])
        if lo < -EIGVAL_CLIP_TOL:
            raise ValueError(f"matrix not positive semidefinite: min eigenvalue {lo:.3e}")

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending real spectrum, negatives clipped to 0 (clip > 1e-8 is an error)."""
        return _clipped_spectrum(self.data)


def _clipped_spectrum(mat: np.ndarray) -> np.ndarray:
    vals = np.linalg.eigvalsh(mat)
    worst = -float(vals.min()) if vals.size else 0.0
    if worst > EIGVAL_CLIP_ERROR:
        raise ValueError(f"negative eigenvalue {-worst:.3e} exceeds clip tolerance")
    return np.clip(vals, 0.0, None)


def pure_state(vec: Sequence[complex], dims: Sequence[int], labels=None) -> DensityMatrix:
    """|v><v| from an (unnormalised) state vector."""
    v = np.asarray(vec, dtype=complex).ravel()
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("zero vector has no associated state")
    v = v / nrm
    return DensityMatrix(np.outer(v, v.conj()), tuple(dims), labels)


def basis_state(index: int, dim: int) -> DensityMatrix:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return pure_state(v, (dim,))


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    n = int(np.prod(list(dims)))
    return DensityMatrix(np.eye(n, dtype=complex) / n, tuple(dims))


def max_entangled_vector(d: int) -> np.ndarray:
    """(1/sqrt(d)) sum_j |jj>, as a vector on dims (d, d)."""
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / math.sqrt(d)
    return v


def bell_pair(d: int = 2) -> DensityMatrix:
    return pure_state(max_entangled_vector(d), (d, d))


def ghz_state(parties: int, d: int = 2) -> DensityMatrix:
    v = np.zeros(d**parties, dtype=complex)
    for j in range(d):
        idx = sum(j * d**k for k in range(parties))
        v[idx] = 1.0
    return pure_state(v, (d,) * parties)


def random_density_matrix(dim: int, rng: np.random.Generator,
                          dims: Sequence[int] | None = None) -> DensityMatrix:
    """Full-rank Ginibre-random state."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    m /= m.trace().real
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m, tuple(dims) if dims is not None else (dim,))


def tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Kronecker product; left operand carries the most-significant indices."""
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = a.labels + b.labels
    return DensityMatrix(np.kron(a.data, b.data), a.dims + b.dims, labels)


def permute_subsystems(rho: DensityMatrix, perm: Sequence[int]) -> DensityMatrix:
    """Reorder subsystems so that new position k holds old subsystem perm[k]."""
    perm = list(perm)
    if sorted(perm) != list(range(len(rho.dims))):
        raise ValueError(f"invalid permutation {perm} for {len(rho.dims)} subsystems")
    arr = _permute_arr(rho.data, rho.dims, perm)
    dims = tuple(rho.dims[p] for p in perm)
    labels = tuple(rho.labels[p] for p in perm) if rho.labels is not None else None
    return DensityMatrix(arr, dims, labels)


def _permute_arr(mat: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    n = len(dims)
    t = mat.reshape(tuple(dims) * 2)
    t = t.transpose(list(perm) + [n + p for p in perm])
    size = int(np.prod(list(dims)))
    return t.reshape(size, size)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out all subsystems not in ``keep``; kept dims stay in original order."""
    keep = sorted(set(int(k) for k in keep))
    n = len(rho.dims)
    if not keep:
        raise ValueError("keep set must be non-empty")
    if keep[0] < 0 or keep[-1] >= n:
        raise IndexError(f"keep indices {keep} out of range for {n} subsystems")
    arr = _partial_trace_arr(rho.data, rho.dims, keep)
    dims = tuple(rho.dims[k] for k in keep)
    labels = tuple(rho.labels[k] for k in keep) if rho.labels is not None else None
    return DensityMatrix(arr, dims, labels)


def _partial_trace_arr(mat: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    dims = list(dims)
    n = len(dims)
    t = mat.reshape(tuple(dims) * 2)
    traced = [i for i in range(n) if i not in keep]
    for i in sorted(traced, reverse=True):
        t = np.trace(t, axis1=i, axis2=i + len(dims))
        dims.pop(i)
    size = int(np.prod(dims)) if dims else 1
    return t.reshape(size, size)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-sum(p log2 p) over the spectrum, with 0 log 0 = 0."""
    return _entropy_from_spectrum(rho.eigenvalues())


def _entropy_from_spectrum(vals: np.ndarray) -> float:
    vals = vals[vals > 0]
    if vals.size == 0:
        return 0.0
    return float(-np.sum(vals * np.log2(vals)))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr[rho (log2 rho - log2 sigma)] in bits; +inf outside sigma's support.

    The support condition is checked numerically: each eigenvector of rho
    with eigenvalue above 1e-12 must have sigma-expectation above 1e-12.
    """
    if rho.dims != sigma.dims:
        raise ValueError(f"dimension mismatch: {rho.dims} vs {sigma.dims}")
    return _relative_entropy_arr(rho.data, sigma.data)


def _relative_entropy_arr(rho: np.ndarray, sigma: np.ndarray) -> float:
    rvals, rvecs = np.linalg.eigh(rho)
    rvals = np.clip(rvals, 0.0, None)
    significant = rvals > SUPPORT_TOL
    if np.any(significant):
        vecs = rvecs[:, significant]
        sig_exp = np.real(np.einsum("ij,jk,ki->i", vecs.conj().T, sigma, vecs))
        if np.any(sig_exp <= SUPPORT_TOL):
            return math.inf
    svals, svecs = np.linalg.eigh(sigma)
    svals = np.clip(svals, 0.0, None)
    tr_rho_log_rho = float(np.sum(rvals[rvals > 0] * np.log2(rvals[rvals > 0])))
    weights = np.real(np.einsum("ij,jk,ki->i", svecs.conj().T, rho, svecs))
    pos = svals > 0
    tr_rho_log_sigma = float(np.sum(weights[pos] * np.log2(svals[pos])))
    return tr_rho_log_rho - tr_rho_log_sigma


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the trace norm of rho - sigma; in [0, 1] for states."""
    if rho.dims != sigma.dims:
        raise ValueError(f"dimension mismatch: {rho.dims} vs {sigma.dims}")
    return _trace_distance_arr(rho.data, sigma.data)


def _trace_distance_arr(rho: np.ndarray, sigma: np.ndarray) -> float:
    # rho - sigma is Hermitian, so singular values are |eigenvalues|
    diff = rho - sigma
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))
