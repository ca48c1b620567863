"""Dense complex linear algebra over multipartite systems.

Operators carry an explicit subsystem shape (ordered local dimensions), so
partial traces and partial transposes can address individual tensor factors.
Subsystems are indexed 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

HERMITICITY_RTOL = 1e-10


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SubsystemShape:
    """Ordered local dimensions of a multipartite system."""

    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if not self.dims:
            raise ValueError("shape needs at least one subsystem")
        for d in self.dims:
            if d < 2:
                raise ValueError(f"local dimensions must be >= 2, got {d}")

    @property
    def total_dim(self) -> int:
        p = 1
        for d in self.dims:
            p *= d
        return p

    @property
    def num_subsystems(self) -> int:
        return len(self.dims)

    def check_index(self, k: int) -> None:
        if not 1 <= k <= len(self.dims):
            raise IndexError(f"subsystem index {k} out of range 1..{len(self.dims)}")


@dataclass(frozen=True)
class ComplexMatrix:
    """Square complex matrix with a subsystem shape; immutable after construction."""

    shape: SubsystemShape
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        D = self.shape.total_dim
        if e.shape != (D, D):
            raise ValueError(f"entries must be {D}x{D} for shape {self.shape.dims}, got {e.shape}")
        object.__setattr__(self, "entries", _freeze(e))

    @classmethod
    def of(cls, entries: np.ndarray, dims: Sequence[int]) -> "ComplexMatrix":
        return cls(SubsystemShape(tuple(dims)), np.array(entries, dtype=complex))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.shape.dims

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def dagger(self) -> "ComplexMatrix":
        return ComplexMatrix(self.shape, self.entries.conj().T)

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.dims != other.dims:
            raise ValueError(f"incompatible shapes {self.dims} vs {other.dims}")
        return ComplexMatrix(self.shape, self.entries @ other.entries)

    def __add__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.dims != other.dims:
            raise ValueError(f"incompatible shapes {self.dims} vs {other.dims}")
        return ComplexMatrix(self.shape, self.entries + other.entries)

    def __sub__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.dims != other.dims:
            raise ValueError(f"incompatible shapes {self.dims} vs {other.dims}")
        return ComplexMatrix(self.shape, self.entries - other.entries)

    def __mul__(self, scalar) -> "ComplexMatrix":
        return ComplexMatrix(self.shape, self.entries * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _freeze(np.asarray(self.eigenvalues, float)))
        object.__setattr__(self, "eigenvectors", _freeze(np.asarray(self.eigenvectors, complex)))


def identity(dims: Sequence[int]) -> ComplexMatrix:
    shape = SubsystemShape(tuple(dims))
    return ComplexMatrix(shape, np.eye(shape.total_dim, dtype=complex))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; left operand's subsystems come first."""
    return ComplexMatrix.of(np.kron(a.entries, b.entries), a.dims + b.dims)


def partial_trace(m: ComplexMatrix, keep: Iterable[int]) -> ComplexMatrix:
    """Trace out all subsystems not in `keep` (1-based indices).

    Kept subsystems stay in their original order; the total trace is preserved.
    """
    keep_set = sorted(set(int(k) for k in keep))
    if not keep_set:
        raise ValueError("keep must be a nonempty set of subsystem indices")
    for k in keep_set:
        m.shape.check_index(k)
    dims = m.dims
    n = len(dims)
    if len(keep_set) == n:
        return m
    T = m.entries.reshape(*dims, *dims)
    labels = list(range(2 * n))
    for j in range(1, n + 1):
        if j not in keep_set:
            labels[n + j - 1] = labels[j - 1]
    out = [labels[k - 1] for k in keep_set] + [labels[n + k - 1] for k in keep_set]
    res = np.einsum(T, labels, out)
    new_dims = tuple(dims[k - 1] for k in keep_set)
    D = int(np.prod(new_dims))
    return ComplexMatrix.of(res.reshape(D, D), new_dims)


def partial_transpose(m: ComplexMatrix, subsystems: Iterable[int]) -> ComplexMatrix:
    """Transpose the selected subsystems (1-based indices) in place."""
    subs = sorted(set(int(s) for s in subsystems))
    for s in subs:
        m.shape.check_index(s)
    dims = m.dims
    n = len(dims)
    T = m.entries.reshape(*dims, *dims)
    for s in subs:
        T = np.swapaxes(T, s - 1, n + s - 1)
    D = m.shape.total_dim
    return ComplexMatrix(m.shape, T.reshape(D, D))


def _require_hermitian(a: np.ndarray) -> np.ndarray:
    dev = np.linalg.norm(a - a.conj().T)
    if dev > HERMITICITY_RTOL * max(1.0, np.linalg.norm(a)):
        raise ValueError(f"matrix is not Hermitian: |M - M^dag|_F = {dev:.3e}")
    return (a + a.conj().T) / 2


def eig_hermitian(m: ComplexMatrix) -> HermitianSpectrum:
    """Eigendecomposition after a Hermiticity check and symmetrization."""
    h = _require_hermitian(m.entries)
    vals, vecs = np.linalg.eigh(h)
    return HermitianSpectrum(vals, vecs)


def min_eigenvalue(m: ComplexMatrix) -> float:
    h = _require_hermitian(m.entries)
    return float(np.linalg.eigvalsh(h)[0])


def max_eigenvalue(m: ComplexMatrix) -> float:
    h = _require_hermitian(m.entries)
    return float(np.linalg.eigvalsh(h)[-1])
