"""Finite-dimensional channels as Kraus maps.

Covers the channel catalog (generalized-Pauli, dephasing, erasure,
depolarizing, raw Kraus lists and ancilla-wiring composites), Choi
matrices, teleportation-covariance checking against the Heisenberg-Weyl
group, an executable teleportation simulation over the Choi matrix, and
coherent-information lower bounds.

Teleportation unitaries are the d^2 Heisenberg-Weyl operators
W_(a,b) = X^a Z^b.  Global phases never matter here: covariance is
decided by comparing conjugated channels, not operators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .operators import (
    DensityMatrix,
    _partial_trace_arr,
    _permute_arr,
    _trace_distance_arr,
    max_entangled_vector,
    partial_trace,
    random_density_matrix,
    von_neumann_entropy,
)

CPTP_TOL = 1e-10
COVARIANCE_TOL = 1e-8
_N_PROBE_STATES = 10
_PROBE_SEED = 1729
_MAX_COVARIANCE_DIM = 16


# ---------------------------------------------------------------------------
# Heisenberg-Weyl operators
# ---------------------------------------------------------------------------

def shift_operator(d: int) -> np.ndarray:
    """X|k> = |k+1 mod d>."""
    x = np.zeros((d, d), dtype=complex)
    for k in range(d):
        x[(k + 1) % d, k] = 1.0
    return x


def clock_operator(d: int) -> np.ndarray:
    """Z|k> = exp(2 pi i k / d)|k>."""
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def heisenberg_weyl(d: int) -> list[np.ndarray]:
    """All d^2 operators X^a Z^b, indexed by (a, b) -> a*d + b."""
    x = shift_operator(d)
    z = clock_operator(d)
    xs = [np.linalg.matrix_power(x, a) for a in range(d)]
    zs = [np.linalg.matrix_power(z, b) for b in range(d)]
    return [xs[a] @ zs[b] for a in range(d) for b in range(d)]


def _hw_labels(d: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d) for b in range(d)]


def _conjugate_label(label: tuple[int, int], d: int) -> tuple[int, int]:
    # conj(X^a Z^b) = X^a Z^(-b), exactly another Heisenberg-Weyl element
    a, b = label
    return a, (d - b) % d


# ---------------------------------------------------------------------------
# Channels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KrausChannel:
    """CPTP map given by Kraus operators, with subsystem-structured ports.

    kraus_ops map prod(in_dims) -> prod(out_dims).  erasure_flags marks
    output subsystems whose top level is an erasure flag: the entry maps
    output index -> logical dimension d (subsystem dimension is d+1), and
    restricts teleportation corrections there to (Pauli on the d block)
    (+) identity on the flag level.
    """

    kraus_ops: tuple[np.ndarray, ...]
    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]
    name: str = "channel"
    erasure_flags: dict | None = None

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus_ops)
        object.__setattr__(self, "kraus_ops", ops)
        object.__setattr__(self, "in_dims", tuple(int(d) for d in self.in_dims))
        object.__setattr__(self, "out_dims", tuple(int(d) for d in self.out_dims))
        din = self.in_dim
        dout = self.out_dim
        for k in ops:
            if k.shape != (dout, din):
                raise ValueError(
                    f"Kraus operator shape {k.shape} does not map dim {din} to dim {dout}"
                )
        ksum = sum(k.conj().T @ k for k in ops)
        dev = np.max(np.abs(ksum - np.eye(din)))
        if dev > CPTP_TOL:
            raise ValueError(f"Kraus operators not trace preserving: deviation {dev:.3e}")

    @property
    def in_dim(self) -> int:
        return int(np.prod(self.in_dims))

    @property
    def out_dim(self) -> int:
        return int(np.prod(self.out_dims))


class ChoiMatrix(NamedTuple):
    """Choi state with the reference/output partition it represents."""

    state: DensityMatrix
    sender_indices: tuple[int, ...]
    receiver_indices: tuple[int, ...]


@dataclass
class CovarianceReport:
    """Outcome of the teleportation-covariance search.

    corrections maps a tuple of per-input Heisenberg-Weyl labels to the
    composed output correction unitary; correction_labels records the
    per-output-subsystem labels ("joint" modes store one label for the
    whole output).
    """

    mode: str
    covariant: bool
    worst_deviation: float
    corrections: dict
    correction_labels: dict


def identity_channel(d: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(d, dtype=complex),), (d,), (d,), name=f"identity(d={d})")


def pauli_channel(d: int, probs: Sequence[float]) -> KrausChannel:
    """Mixture of the d^2 Heisenberg-Weyl unitaries, probs indexed by a*d + b."""
    probs = _check_distribution(probs, d * d)
    ops = [math.sqrt(p) * w for p, w in zip(probs, heisenberg_weyl(d)) if p > 0]
    return KrausChannel(tuple(ops), (d,), (d,), name=f"pauli(d={d})")


def dephasing_channel(d: int, phase_probs: Sequence[float] | float) -> KrausChannel:
    """Applies i phase flips (Z^i) with probability P_i."""
    if np.isscalar(phase_probs):
        if d != 2:
            raise ValueError("scalar dephasing probability only defined for d=2")
        phase_probs = [1.0 - float(phase_probs), float(phase_probs)]
    probs = _check_distribution(phase_probs, d)
    z = clock_operator(d)
    ops = [math.sqrt(p) * np.linalg.matrix_power(z, i) for i, p in enumerate(probs) if p > 0]
    return KrausChannel(tuple(ops), (d,), (d,), name=f"dephasing(d={d})")


def depolarizing_channel(p: float, d: int = 2) -> KrausChannel:
    """rho -> (1-p) rho + p I/d, as a generalized-Pauli mixture."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability must be in [0,1], got {p}")
    probs = [p / d**2] * d**2
    probs[0] += 1.0 - p
    ch = pauli_channel(d, probs)
    return KrausChannel(ch.kraus_ops, ch.in_dims, ch.out_dims, name=f"depolarizing(p={p})")


def erasure_channel(d: int, p: float) -> KrausChannel:
    """Erases to the flag level |d> with probability p; output dimension d+1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability must be in [0,1], got {p}")
    embed = np.zeros((d + 1, d), dtype=complex)
    embed[:d, :] = np.eye(d)
    ops = []
    if p < 1.0:
        ops.append(math.sqrt(1.0 - p) * embed)
    if p > 0.0:
        for j in range(d):
            k = np.zeros((d + 1, d), dtype=complex)
            k[d, j] = math.sqrt(p)
            ops.append(k)
    return KrausChannel(tuple(ops), (d,), (d + 1,), name=f"erasure(d={d})",
                        erasure_flags={0: d})


def wiring_channel(unitary: np.ndarray, in_dims: Sequence[int],
                   ancilla_dims: Sequence[int], post_dims: Sequence[int],
                   keep: Sequence[int], name: str = "wiring") -> KrausChannel:
    """Fixed-ancilla isometry followed by a partial trace.

    The unitary acts on (inputs + ancillas prepared in |0>); its output
    space is reinterpreted as subsystems post_dims, of which ``keep`` are
    the channel outputs and the rest are traced out.
    """
    in_dims = tuple(int(d) for d in in_dims)
    ancilla_dims = tuple(int(d) for d in ancilla_dims)
    post_dims = tuple(int(d) for d in post_dims)
    keep = tuple(int(k) for k in keep)
    din = int(np.prod(in_dims))
    danc = int(np.prod(ancilla_dims)) if ancilla_dims else 1
    dtot = int(np.prod(post_dims))
    unitary = np.asarray(unitary, dtype=complex)
    if unitary.shape != (dtot, dtot) or din * danc != dtot:
        raise ValueError("unitary shape inconsistent with port dimensions")
    anc = np.zeros(danc, dtype=complex)
    anc[0] = 1.0
    isom = unitary @ np.kron(np.eye(din), anc.reshape(-1, 1))  # dtot x din
    traced = [i for i in range(len(post_dims)) if i not in keep]
    if not traced:
        ops = (isom,)
    else:
        # Kraus per traced-basis index: (<j|_traced (x) I_keep) V, with axes
        # arranged so kept subsystems keep their relative order.
        perm = list(keep) + traced
        t = isom.reshape(post_dims + (din,))
        t = t.transpose([post_dims.index if False else p for p in perm] + [len(post_dims)])
        dkeep = int(np.prod([post_dims[i] for i in keep]))
        dtr = int(np.prod([post_dims[i] for i in traced]))
        t = t.reshape(dkeep, dtr, din)
        ops = tuple(t[:, j, :] for j in range(dtr))
    out_dims = tuple(post_dims[i] for i in keep)
    return KrausChannel(ops, in_dims, out_dims, name=name)


def parallel_channel(a: KrausChannel, b: KrausChannel, name: str | None = None) -> KrausChannel:
    """a (x) b acting on side-by-side inputs."""
    ops = tuple(np.kron(ka, kb) for ka in a.kraus_ops for kb in b.kraus_ops)
    flags = {}
    if a.erasure_flags:
        flags.update(a.erasure_flags)
    if b.erasure_flags:
        flags.update({i + len(a.out_dims): d for i, d in b.erasure_flags.items()})
    return KrausChannel(ops, a.in_dims + b.in_dims, a.out_dims + b.out_dims,
                        name=name or f"{a.name}(x){b.name}",
                        erasure_flags=flags or None)


def make_channel(spec: dict) -> KrausChannel:
    """Build a catalog channel from a plain-dict spec (the CLI JSON form)."""
    if "type" not in spec:
        raise ValueError("channel spec missing 'type'")
    kind = spec["type"]
    if kind == "identity":
        return identity_channel(int(spec.get("d", 2)))
    if kind == "pauli":
        return pauli_channel(int(spec["d"]), spec["probs"])
    if kind == "dephasing":
        d = int(spec.get("d", 2))
        if "P" in spec:
            return dephasing_channel(d, spec["P"])
        return dephasing_channel(d, float(spec["p"]))
    if kind == "depolarizing":
        return depolarizing_channel(float(spec["p"]), int(spec.get("d", 2)))
    if kind == "erasure":
        return erasure_channel(int(spec.get("d", 2)), float(spec["p"]))
    if kind == "kraus":
        ops = [_complex_matrix(m) for m in spec["ops"]]
        return KrausChannel(tuple(ops), tuple(spec["in_dims"]), tuple(spec["out_dims"]),
                            name=spec.get("name", "kraus"))
    raise ValueError(f"unknown channel type {kind!r}")


def _complex_matrix(entries) -> np.ndarray:
    """Nested [[ [re, im], ... ], ...] lists to a complex matrix."""
    return np.array([[complex(e[0], e[1]) for e in row] for row in entries])


def _check_distribution(probs: Sequence[float], n: int) -> list[float]:
    probs = [float(p) for p in probs]
    if len(probs) != n:
        raise ValueError(f"expected {n} probabilities, got {len(probs)}")
    if any(p < -1e-12 or p > 1 + 1e-12 for p in probs):
        raise ValueError(f"probabilities must lie in [0,1]: {probs}")
    if abs(sum(probs) - 1.0) > 1e-10:
        raise ValueError(f"probabilities must sum to 1, got {sum(probs)}")
    return [min(max(p, 0.0), 1.0) for p in probs]


# ---------------------------------------------------------------------------
# Applying channels
# ---------------------------------------------------------------------------

def apply_channel(ch: KrausChannel, rho: DensityMatrix,
                  on: Sequence[int] | None = None) -> DensityMatrix:
    """sum_k K rho K^dag; with ``on`` given, the channel acts on those
    subsystems and the rest are identity-padded spectators.

    The returned subsystem order is (spectators in original order) +
    (channel outputs).
    """
    if on is None:
        if rho.dims != ch.in_dims and (rho.dim,) != (ch.in_dim,):
            raise ValueError(f"state dims {rho.dims} do not match channel input {ch.in_dims}")
        out = sum(k @ rho.data @ k.conj().T for k in ch.kraus_ops)
        return DensityMatrix(out, ch.out_dims)
    arr, dims = _apply_kraus_on(rho.data, rho.dims, ch, tuple(on))
    return DensityMatrix(arr, dims)


def _apply_kraus_on(mat: np.ndarray, dims: Sequence[int], ch: KrausChannel,
                    on: tuple[int, ...]) -> tuple[np.ndarray, tuple[int, ...]]:
    dims = tuple(dims)
    n = len(dims)
    if sorted(set(on)) != sorted(on) or any(i < 0 or i >= n for i in on):
        raise IndexError(f"invalid channel input indices {on}")
    if tuple(dims[i] for i in on) != ch.in_dims:
        raise ValueError(
            f"subsystems {on} have dims {tuple(dims[i] for i in on)}, "
            f"channel expects {ch.in_dims}")
    spect = [i for i in range(n) if i not in on]
    # Reorder so channel inputs sit at the end, flatten, act, reorder done.
    perm = spect + list(on)
    work = _permute_arr(mat, dims, perm)
    dspec = int(np.prod([dims[i] for i in spect])) if spect else 1
    din, dout = ch.in_dim, ch.out_dim
    work = work.reshape(dspec, din, dspec, din)
    out = np.zeros((dspec, dout, dspec, dout), dtype=complex)
    for k in ch.kraus_ops:
        tmp = np.einsum("oi,aibj->aobj", k, work)
        out += np.einsum("aobj,pj->aobp", tmp, k.conj())
    new_dims = tuple(dims[i] for i in spect) + ch.out_dims
    size = dspec * dout
    return out.reshape(size, size), new_dims


# ---------------------------------------------------------------------------
# Choi matrices
# ---------------------------------------------------------------------------

def choi_matrix(ch: KrausChannel) -> ChoiMatrix:
    """Send one half of a maximally entangled pair per input subsystem.

    Subsystem order of the result: all reference halves (senders) first,
    then all channel outputs (receivers).
    """
    m = len(ch.in_dims)
    vec = np.ones(1, dtype=complex)
    for d in ch.in_dims:
        vec = np.kron(vec, max_entangled_vector(d))
    pair_dims = tuple(itertools.chain.from_iterable((d, d) for d in ch.in_dims))
    psi = np.outer(vec, vec.conj())
    # reorder [A1, A'1, A2, A'2, ...] -> [A1, ..., Am, A'1, ..., A'm]
    perm = [2 * i for i in range(m)] + [2 * i + 1 for i in range(m)]
    psi = _permute_arr(psi, pair_dims, perm)
    ref_dims = ch.in_dims
    state = DensityMatrix(psi, ref_dims + ch.in_dims)
    on = tuple(range(m, 2 * m))
    out = apply_channel(ch, state, on=on)
    senders = tuple(range(m))
    receivers = tuple(range(m, m + len(ch.out_dims)))
    return ChoiMatrix(out, senders, receivers)


# ---------------------------------------------------------------------------
# Teleportation covariance
# ---------------------------------------------------------------------------

def _correction_candidates(ch: KrausChannel, mode: str):
    """Candidate output corrections: (labels, composed unitary) pairs.

    Factorized per output subsystem for broadcast/interference; a single
    Heisenberg-Weyl group on the whole output for point-to-point/mac.
    Erasure-flagged subsystems use (HW on the logical block) (+) 1.
    """
    def subsystem_group(i: int, d: int):
        flags = ch.erasure_flags or {}
        if i in flags:
            dl = flags[i]
            ops = []
            for w in heisenberg_weyl(dl):
                full = np.eye(d, dtype=complex)
                full[:dl, :dl] = w
                ops.append(full)
            return _hw_labels(dl), ops
        return _hw_labels(d), [w for w in heisenberg_weyl(d)]

    if mode in ("broadcast", "interference"):
        per_sub = [subsystem_group(i, d) for i, d in enumerate(ch.out_dims)]
        for combo in itertools.product(*(range(len(g[0])) for g in per_sub)):
            labels = tuple(per_sub[i][0][c] for i, c in enumerate(combo))
            mat = per_sub[i][1][combo[0]] if False else None
            full = np.ones((1, 1), dtype=complex)
            for i, c in enumerate(combo):
                full = np.kron(full, per_sub[i][1][c])
            yield labels, full
    elif mode in ("point-to-point", "mac"):
        if ch.erasure_flags and len(ch.out_dims) == 1 and 0 in ch.erasure_flags:
            labels, ops = subsystem_group(0, ch.out_dims[0])
        else:
            labels, ops = _hw_labels(ch.out_dim), heisenberg_weyl(ch.out_dim)
        for lab, op in zip(labels, ops):
            yield (lab,), op
    else:
        raise ValueError(f"unknown covariance mode {mode!r}")


def _probe_states(ch: KrausChannel) -> list[np.ndarray]:
    rng = np.random.default_rng(_PROBE_SEED + ch.in_dim)
    return [random_density_matrix(ch.in_dim, rng).data for _ in range(_N_PROBE_STATES)]


def check_covariance(ch: KrausChannel, mode: str) -> CovarianceReport:
    """Search Heisenberg-Weyl output corrections for every input
    teleportation unitary; covariant iff the worst residual trace
    distance over a fixed probe set is at most 1e-8.

    A non-covariant result is a valid report, not an error.
    """
    if ch.in_dim > _MAX_COVARIANCE_DIM:
        raise ValueError(f"input dimension {ch.in_dim} too large to enumerate (max 16)")
    probes = _probe_states(ch)
    outputs = [_kraus_apply_arr(ch, p) for p in probes]
    candidates = list(_correction_candidates(ch, mode))

    corrections: dict = {}
    labels_table: dict = {}
    worst = 0.0
    per_leg = [list(zip(_hw_labels(d), heisenberg_weyl(d))) for d in ch.in_dims]
    for combo in itertools.product(*per_leg):
        in_labels = tuple(lab for lab, _ in combo)
        u = np.ones((1, 1), dtype=complex)
        for _, w in combo:
            u = np.kron(u, w)
        conj_out = [_kraus_apply_arr(ch, u @ p @ u.conj().T) for p in probes]
        best_dev = math.inf
        best = None
        for out_labels, v in candidates:
            dev = 0.0
            for base, target in zip(outputs, conj_out):
                dev = max(dev, _trace_distance_arr(v @ base @ v.conj().T, target))
                if dev >= best_dev:
                    break
            if dev < best_dev:
                best_dev = dev
                best = (out_labels, v)
        corrections[in_labels] = best[1]
        labels_table[in_labels] = best[0]
        worst = max(worst, best_dev)
    return CovarianceReport(mode=mode, covariant=worst <= COVARIANCE_TOL,
                            worst_deviation=worst, corrections=corrections,
                            correction_labels=labels_table)


def _kraus_apply_arr(ch: KrausChannel, mat: np.ndarray) -> np.ndarray:
    return sum(k @ mat @ k.conj().T for k in ch.kraus_ops)


# ---------------------------------------------------------------------------
# Teleportation simulation
# ---------------------------------------------------------------------------

def teleport_simulate(ch: KrausChannel, rho_in: DensityMatrix,
                      report: CovarianceReport,
                      on: Sequence[int] | None = None) -> DensityMatrix:
    """Run the channel by teleporting through its Choi matrix.

    Tensors the input with the Choi state, projects each input leg with
    its reference half onto every generalized Bell outcome, applies the
    correction unitary from the covariance report, and averages the
    branches (outcomes are uniform, weight 1/d^2 per leg).
    """
    if not report.covariant:
        raise ValueError("teleportation simulation requires a covariant channel report")
    if on is None:
        if rho_in.dims != ch.in_dims and (rho_in.dim,) != (ch.in_dim,):
            raise ValueError(f"state dims {rho_in.dims} do not match channel input {ch.in_dims}")
        state = rho_in if rho_in.dims == ch.in_dims else DensityMatrix(rho_in.data, ch.in_dims)
        on = tuple(range(len(ch.in_dims)))
    else:
        state = rho_in
        on = tuple(on)
        if tuple(state.dims[i] for i in on) != ch.in_dims:
            raise ValueError("selected subsystems do not match channel input dims")

    choi = choi_matrix(ch)
    n_spec_total = len(state.dims)
    m = len(ch.in_dims)
    joint = np.kron(state.data, choi.state.data)
    joint_dims = state.dims + choi.state.dims

    bell_vecs = []
    for d in ch.in_dims:
        base = max_entangled_vector(d)
        ws = heisenberg_weyl(d)
        bell_vecs.append([np.kron(np.eye(d), w) @ base for w in ws])
    labels = [_hw_labels(d) for d in ch.in_dims]

    spect = [i for i in range(n_spec_total) if i not in on]
    out_dims = tuple(state.dims[i] for i in spect) + ch.out_dims
    out_size = int(np.prod(out_dims)) if out_dims else 1
    total = np.zeros((out_size, out_size), dtype=complex)

    d_out = ch.out_dim
    for outcome in itertools.product(*(range(d * d) for d in ch.in_dims)):
        arr, dims = joint, list(joint_dims)
        # project legs one at a time; indices shift as subsystems drop out
        for leg in range(m):
            in_idx = on[leg]
            ref_idx = n_spec_total + leg
            removed_in = sum(1 for j in on[:leg] if j < in_idx)
            removed_ref = leg  # earlier refs already projected
            i = in_idx - removed_in - removed_ref
            j = ref_idx - 2 * leg - (1 if in_idx < ref_idx else 0)
            # recompute positions directly from current dims bookkeeping
            arr, dims = _project_pair(arr, dims, _current_index(on, leg, n_spec_total)[0],
                                      _current_index(on, leg, n_spec_total)[1],
                                      bell_vecs[leg][outcome[leg]])
        in_label = tuple(_conjugate_label(labels[leg][outcome[leg]], ch.in_dims[leg])
                         for leg in range(m))
        if in_label not in report.corrections:
            raise KeyError(f"covariance report has no correction for input {in_label}")
        v = report.corrections[in_label]
        n_rem = len(dims)
        corr_targets = tuple(range(n_rem - len(ch.out_dims), n_rem))
        arr = _apply_unitary_on(arr, dims, v.conj().T, corr_targets, ch.out_dims)
        total += arr
    return DensityMatrix(total, out_dims)


def _current_index(on: tuple[int, ...], leg: int, n_state: int) -> tuple[int, int]:
    """Positions of (input leg, its reference) after earlier legs were projected.

    Projecting leg k removes state subsystem on[k] and reference k.  All
    state subsystems keep their relative order, references follow.
    """
    in_idx = on[leg]
    shift = sum(1 for k in range(leg) if on[k] < in_idx)
    cur_in = in_idx - shift
    cur_ref = (n_state - leg) + leg - leg  # n_state - leg state subsystems remain
    cur_ref = (n_state - leg)  # references start right after remaining state subsystems
    return cur_in, cur_ref


def _project_pair(arr: np.ndarray, dims: list[int], i: int, j: int,
                  vec: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """<v|_{ij} arr |v>_{ij}, removing subsystems i and j (i != j)."""
    n = len(dims)
    di, dj = dims[i], dims[j]
    t = arr.reshape(tuple(dims) * 2)
    v = vec.reshape(di, dj)
    t = np.tensordot(v.conj(), t, axes=([0, 1], [i, j]))
    # row axes i,j consumed; column axes shifted forward by 2... they sit at
    # positions (n-2)+i', so contract using original offsets minus removed rows
    t = np.tensordot(t, v, axes=([n - 2 + i, n - 2 + j], [0, 1]))
    new_dims = [d for k, d in enumerate(dims) if k not in (i, j)]
    size = int(np.prod(new_dims)) if new_dims else 1
    return t.reshape(size, size), new_dims


def _apply_unitary_on(arr: np.ndarray, dims: Sequence[int], u: np.ndarray,
                      targets: tuple[int, ...], target_dims: tuple[int, ...]) -> np.ndarray:
    dims = list(dims)
    n = len(dims)
    others = [i for i in range(n) if i not in targets]
    perm = others + list(targets)
    work = _permute_arr(arr, dims, perm)
    do = int(np.prod([dims[i] for i in others])) if others else 1
    dt = int(np.prod(target_dims))
    work = work.reshape(do, dt, do, dt)
    work = np.einsum("ab,ibjc,dc->iajd", u, work, u.conj())
    size = do * dt
    work = work.reshape(size, size)
    # undo the permutation
    permuted_dims = [dims[p] for p in perm]
    inv = np.argsort(perm)
    return _permute_arr(work, permuted_dims, list(inv))


# ---------------------------------------------------------------------------
# Coherent information
# ---------------------------------------------------------------------------

class CoherentInfo(NamedTuple):
    coherent: float
    reverse: float


def coherent_information(ch: KrausChannel, rho_in: DensityMatrix) -> CoherentInfo:
    """Both directed quantities from the channel's bipartite output.

    With omega = (I (x) E)(purification of rho_in):
    coherent I_C = S(B) - S(AB), reverse I_RC = S(A) - S(AB).
    """
    if rho_in.dim != ch.in_dim:
        raise ValueError(f"input dim {rho_in.dim} does not match channel {ch.in_dim}")
    vals, vecs = np.linalg.eigh(rho_in.data)
    vals = np.clip(vals, 0.0, None)
    d = rho_in.dim
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        if vals[i] > 0:
            psi += math.sqrt(vals[i]) * np.kron(_basis_vec(i, d), vecs[:, i])
    psi /= np.linalg.norm(psi)
    pure = DensityMatrix(np.outer(psi, psi.conj()), (d,) + ch.in_dims)
    omega = apply_channel(ch, pure, on=tuple(range(1, 1 + len(ch.in_dims))))
    s_ab = von_neumann_entropy(omega)
    s_a = von_neumann_entropy(partial_trace(omega, {0}))
    s_b = von_neumann_entropy(partial_trace(omega, set(range(1, len(omega.dims)))))
    return CoherentInfo(coherent=s_b - s_ab, reverse=s_a - s_ab)


def _basis_vec(i: int, d: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v
