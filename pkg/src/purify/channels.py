"""Noise channels in Kraus form, Choi operators, and Haar-moment operators.

Haar averages over pure states are evaluated exactly through symmetric-subspace
projectors, never by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import ComplexMatrix, SubsystemShape, partial_trace
from .permutations import sym_dim, symmetric_projector

TP_TOL = 1e-10
MOMENT_DIM_LIMIT = 4096


@dataclass(frozen=True)
class NoiseChannel:
    """Trace-preserving channel given by Kraus operators on C^d."""

    kraus: tuple[np.ndarray, ...]
    label: str = "custom"
    delta: float | None = None

    def __post_init__(self):
        ks = tuple(np.asarray(K, dtype=complex) for K in self.kraus)
        if not ks:
            raise ValueError("channel needs at least one Kraus operator")
        d = ks[0].shape[0]
        for K in ks:
            if K.shape != (d, d):
                raise ValueError(f"Kraus operators must all be {d}x{d}, got {K.shape}")
            K.setflags(write=False)
        comp = sum(K.conj().T @ K for K in ks)
        if np.linalg.norm(comp - np.eye(d)) > TP_TOL:
            raise ValueError("Kraus set is not trace-preserving")
        object.__setattr__(self, "kraus", ks)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


@dataclass(frozen=True)
class ChoiOperator:
    """Choi matrix sum_ij |i><j| (x) N(|i><j|); input factor first."""

    matrix: ComplexMatrix
    input_dim: int
    output_dim: int


@dataclass(frozen=True)
class MomentOperators:
    """Haar-averaged operators feeding the purification SDPs.

    q = (N^(x n) (x) id)(Pi_{n+1}) / D(n+1, d), channel on the first n factors;
    r = N^(x n)(Pi_n) / D(n, d) (x) I_d.  tr q = 1 and tr r = d.
    """

    q: ComplexMatrix
    r: ComplexMatrix
    n: int
    d: int


def _shift_clock(d: int) -> tuple[np.ndarray, np.ndarray]:
    X = np.zeros((d, d), dtype=complex)
    for j in range(d):
        X[(j + 1) % d, j] = 1.0
    Z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return X, Z


def depolarizing(d: int, delta: float) -> NoiseChannel:
    """rho -> (1-delta) rho + delta I/d, via the generalized-Pauli Kraus set."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    X, Z = _shift_clock(d)
    ks = []
    for a in range(d):
        Xa = np.linalg.matrix_power(X, a)
        for b in range(d):
            w = 1 - delta + delta / d**2 if (a, b) == (0, 0) else delta / d**2
            if w > 0.0:
                ks.append(np.sqrt(w) * Xa @ np.linalg.matrix_power(Z, b))
    return NoiseChannel(tuple(ks), label="depolarizing", delta=delta)


_PAULIS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_preset(delta: float, d: int = 2) -> NoiseChannel:
    """Fixed-weight Pauli channel: weights (1-0.75d, 0.1d, 0.2d, 0.45d) on I, X, Y, Z.

    d=4 is the two-qubit version with Kraus operators K_j (x) K_k.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    weights = [1 - 0.75 * delta, 0.1 * delta, 0.2 * delta, 0.45 * delta]
    single = [np.sqrt(w) * _PAULIS[p] for w, p in zip(weights, "IXYZ") if w > 0.0]
    if d == 2:
        ks = single
    elif d == 4:
        ks = [np.kron(a, b) for a in single for b in single]
    else:
        raise ValueError(f"pauli preset supports d in {{2, 4}}, got {d}")
    return NoiseChannel(tuple(ks), label="pauli", delta=delta)


def amplitude_damping(delta: float) -> NoiseChannel:
    """Qubit amplitude damping with decay probability delta."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must be in [0, 1], got {delta}")
    K0 = np.array([[1, 0], [0, np.sqrt(1 - delta)]], dtype=complex)
    K1 = np.array([[0, np.sqrt(delta)], [0, 0]], dtype=complex)
    return NoiseChannel((K0, K1), label="amplitude_damping", delta=delta)


def apply(ch: NoiseChannel, m: ComplexMatrix) -> ComplexMatrix:
    """Apply the channel to a single-subsystem operator."""
    if m.dims != (ch.dim,):
        raise ValueError(f"operator must live on a single C^{ch.dim} subsystem, got dims {m.dims}")
    out = sum(K @ m.entries @ K.conj().T for K in ch.kraus)
    return ComplexMatrix(m.shape, out)


def apply_to_subsystem(ch: NoiseChannel, m: ComplexMatrix, sub: int) -> ComplexMatrix:
    """Apply the channel to one tensor factor of a multipartite operator."""
    m.shape.check_index(sub)
    dims = m.dims
    d = dims[sub - 1]
    if d != ch.dim:
        raise ValueError(f"subsystem {sub} has dimension {d}, channel expects {ch.dim}")
    L = int(np.prod(dims[: sub - 1])) if sub > 1 else 1
    R = int(np.prod(dims[sub:])) if sub < len(dims) else 1
    T = m.entries.reshape(L, d, R, L, d, R)
    out = np.zeros_like(T)
    for K in ch.kraus:
        out += np.einsum("ab,lbrLBR,AB->larLAR", K, T, K.conj())
    return ComplexMatrix(m.shape, out.reshape(m.shape.total_dim, m.shape.total_dim))


def apply_tensor_power(ch: NoiseChannel, n: int, m: ComplexMatrix) -> ComplexMatrix:
    """Apply the channel independently to each of the n subsystems of m."""
    if m.dims != (ch.dim,) * n:
        raise ValueError(f"operator dims {m.dims} do not match {n} copies of C^{ch.dim}")
    out = m
    for s in range(1, n + 1):
        out = apply_to_subsystem(ch, out, s)
    return out


def choi(ch: NoiseChannel) -> ChoiOperator:
    d = ch.dim
    J = np.zeros((d * d, d * d), dtype=complex)
    for K in ch.kraus:
        v = K.T.reshape(-1)  # (I (x) K) applied to the unnormalized max-entangled vector
        J += np.outer(v, v.conj())
    return ChoiOperator(ComplexMatrix.of(J, (d, d)), input_dim=d, output_dim=d)


def apply_via_choi(j: ChoiOperator, rho: ComplexMatrix) -> ComplexMatrix:
    """Channel action recovered from the Choi matrix: tr_in[(rho^T (x) I) J]."""
    d_in, d_out = j.input_dim, j.output_dim
    if rho.dims != (d_in,):
        raise ValueError(f"input must live on C^{d_in}, got dims {rho.dims}")
    lifted = ComplexMatrix.of(np.kron(rho.entries.T, np.eye(d_out)), (d_in, d_out))
    prod = ComplexMatrix(lifted.shape, lifted.entries @ j.matrix.entries)
    return partial_trace(prod, keep=[2])


def moment_operators(ch: NoiseChannel, n: int) -> MomentOperators:
    """Exact Haar-moment operators for n noisy copies plus one reference system."""
    d = ch.dim
    if d ** (n + 1) > MOMENT_DIM_LIMIT:
        raise ValueError(f"d^(n+1) = {d**(n+1)} exceeds the dense budget {MOMENT_DIM_LIMIT}")
    q = symmetric_projector(n + 1, d)
    for s in range(1, n + 1):
        q = apply_to_subsystem(ch, q, s)
    q = q * (1.0 / sym_dim(n + 1, d))
    r_core = symmetric_projector(n, d)
    for s in range(1, n + 1):
        r_core = apply_to_subsystem(ch, r_core, s)
    r = ComplexMatrix.of(
        np.kron(r_core.entries / sym_dim(n, d), np.eye(d)), (d,) * (n + 1)
    )
    return MomentOperators(q=q, r=r, n=n, d=d)
