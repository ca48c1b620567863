"""Symmetric-group combinatorics and operator representations.

Permutation operators follow the convention P(c)|i_1 .. i_n> = |i_{c^-1(1)} ..
i_{c^-1(n)}>, which makes c -> P(c) a group homomorphism for the composition
(c1*c2)(x) = c1(c2(x)).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .linalg import ComplexMatrix

# n! * d^n elementary basis updates; (8,2) at 1.03e7 is the largest supported size
MAX_BASIS_OPS = 11_000_000


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n} in one-line notation: mapping[i-1] is the image of i."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.mapping)
        object.__setattr__(self, "mapping", m)
        if sorted(m) != list(range(1, len(m) + 1)):
            raise ValueError(f"not a bijection of 1..{len(m)}: {m}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        m = list(range(1, n + 1))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                m[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(m))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self*other)(x) = self(other(x))."""
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.mapping[other.mapping[i] - 1] for i in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.mapping):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, ascending length then smallest element, fixed points omitted."""
        seen: set[int] = set()
        out = []
        for s in range(1, self.n + 1):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            x = self(s)
            while x != s:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        out.sort(key=lambda c: (len(c), c))
        return tuple(out)

    def cycle_type(self) -> "CycleType":
        counts = [0] * self.n
        fixed = self.n
        for cyc in self.cycles():
            counts[len(cyc) - 1] += 1
            fixed -= len(cyc)
        counts[0] = fixed
        return CycleType(tuple(counts))

    def num_cycles(self) -> int:
        """Number of cycles including fixed points."""
        ct = self.cycle_type()
        return sum(ct.multiplicities)

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "(1)"
        sep = "" if self.n <= 9 else " "
        return "".join("(" + sep.join(str(x) for x in c) + ")" for c in cycs)


@dataclass(frozen=True)
class CycleType:
    """Multiplicities (v_1 .. v_n): v_j cycles of length j; sum j*v_j = n."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.multiplicities)
        object.__setattr__(self, "multiplicities", v)
        n = len(v)
        if sum(j * v[j - 1] for j in range(1, n + 1)) != n:
            raise ValueError(f"multiplicities {v} do not partition {n}")

    @property
    def n(self) -> int:
        return len(self.multiplicities)

    def class_size(self) -> int:
        n = self.n
        denom = 1
        for j, v in enumerate(self.multiplicities, start=1):
            denom *= j**v * math.factorial(v)
        return math.factorial(n) // denom


@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: CycleType
    size: int
    representative: Permutation


def sym_dim(n: int, d: int) -> int:
    """Dimension of the symmetric subspace of n d-level systems."""
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    return math.comb(n + d - 1, n)


def _check_budget(n: int, d: int) -> None:
    cost = math.factorial(n) * d**n
    if cost > MAX_BASIS_OPS:
        raise ValueError(
            f"n={n}, d={d} needs {cost:.2e} basis operations, over the {MAX_BASIS_OPS:.1e} budget"
        )


@lru_cache(maxsize=None)
def _digit_table(n: int, d: int) -> np.ndarray:
    idx = np.arange(d**n)
    return np.stack([(idx // d ** (n - k)) % d for k in range(1, n + 1)])


def _target_indices(c: Permutation, d: int) -> np.ndarray:
    """Column j of P(c) has its 1 at row _target_indices[j]."""
    n = c.n
    digits = _digit_table(n, d)
    inv = c.inverse().mapping
    powers = np.array([d ** (n - k) for k in range(1, n + 1)])
    return powers @ digits[np.array(inv) - 1]


def permutation_operator(c: Permutation, d: int) -> ComplexMatrix:
    """0/1 unitary representing c on (C^d)^(x n)."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    n = c.n
    D = d**n
    P = np.zeros((D, D), dtype=complex)
    P[_target_indices(c, d), np.arange(D)] = 1.0
    return ComplexMatrix.of(P, (d,) * n)


def symmetric_projector(n: int, d: int) -> ComplexMatrix:
    """Projector onto the symmetric subspace: average of all n! permutation operators."""
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    _check_budget(n, d)
    D = d**n
    acc = np.zeros((D, D))
    cols = np.arange(D)
    for mapping in itertools.permutations(range(1, n + 1)):
        acc[_target_indices(Permutation(mapping), d), cols] += 1.0
    return ComplexMatrix.of(acc / math.factorial(n), (d,) * n)


def _partitions(n: int) -> list[tuple[int, ...]]:
    """Integer partitions of n as ascending tuples."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, max_part: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(sorted(acc)))
            return
        for p in range(min(remaining, max_part), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(n, n, [])
    return sorted(set(out))


def conjugacy_classes(n: int) -> list[ConjugacyClass]:
    """All conjugacy classes of the degree-n symmetric group, smallest cycle types first."""
    if n < 1 or n > 12:
        raise ValueError(f"supported degree range is 1..12, got {n}")
    classes = []
    for part in _partitions(n):
        v = [0] * n
        for j in part:
            v[j - 1] += 1
        ct = CycleType(tuple(v))
        start = 1
        cycles = []
        for length in part:
            if length > 1:
                cycles.append(tuple(range(start, start + length)))
            start += length
        rep = Permutation.from_cycles(n, cycles)
        classes.append(ConjugacyClass(ct, ct.class_size(), rep))
    return classes


def class_representative_projector(n: int, d: int) -> ComplexMatrix:
    """Class-weighted sum (1/n!) sum_i |C_i| P(rep_i).

    Agrees with the symmetric projector inside tr[. rho^(x n)] for product
    states even though the operator itself differs for n >= 3.
    """
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    _check_budget(n, d)
    D = d**n
    acc = np.zeros((D, D), dtype=complex)
    for cls in conjugacy_classes(n):
        acc += cls.size * permutation_operator(cls.representative, d).entries
    return ComplexMatrix.of(acc / math.factorial(n), (d,) * n)
