"""The Hilbert A-module A^n and the coefficient space l2({H_j}).

Left-module convention: algebra elements act on the left of every
component, and ``inner(f, g) = sum_i f_i g_i^*`` is A-linear in its *first*
argument. Much of the frame literature uses the opposite convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import alg_norm, involution
from .errors import DimensionMismatch


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ModuleVector:
    """An element of A^n stored as an ``(n, k, k)`` complex array."""

    components: np.ndarray

    def __post_init__(self):
        c = _frozen(self.components)
        if c.ndim != 3 or c.shape[1] != c.shape[2] or c.shape[0] < 1:
            raise DimensionMismatch(f"expected (n, k, k) components, got {c.shape}")
        object.__setattr__(self, "components", c)

    @property
    def n(self) -> int:
        return self.components.shape[0]

    @property
    def k(self) -> int:
        return self.components.shape[1]

    @classmethod
    def zeros(cls, k: int, n: int) -> "ModuleVector":
        return cls(np.zeros((n, k, k), dtype=complex))

    @classmethod
    def basis(cls, k: int, n: int, i: int) -> "ModuleVector":
        """The vector with the algebra unit in slot ``i`` and zeros elsewhere."""
        c = np.zeros((n, k, k), dtype=complex)
        c[i] = np.eye(k)
        return cls(c)

    @classmethod
    def from_elements(cls, elements: Sequence[np.ndarray]) -> "ModuleVector":
        return cls(np.stack([np.asarray(e, dtype=complex) for e in elements]))

    def _check(self, other: "ModuleVector"):
        if self.components.shape != other.components.shape:
            raise DimensionMismatch(
                f"module shapes differ: {self.components.shape} vs {other.components.shape}"
            )

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._check(other)
        return ModuleVector(self.components + other.components)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        self._check(other)
        return ModuleVector(self.components - other.components)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(-self.components)

    def __mul__(self, scalar) -> "ModuleVector":
        return ModuleVector(self.components * complex(scalar))

    __rmul__ = __mul__

    def act(self, a: np.ndarray) -> "ModuleVector":
        """Left action ``a . f``."""
        return ModuleVector(np.einsum("pr,irq->ipq", a, self.components))

    def row_matrix(self) -> np.ndarray:
        """The ``k x nk`` matrix [f_1 ... f_n]; inner(f, g) = F G^*."""
        return np.concatenate(list(self.components), axis=1)

    def allclose(self, other: "ModuleVector", atol: float = 1e-10) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.components - other.components), initial=0.0) <= atol)


def inner(f: ModuleVector, g: ModuleVector) -> np.ndarray:
    f._check(g)
    # ascending-index reduction, fixed for reproducibility
    out = np.zeros((f.k, f.k), dtype=complex)
    for fi, gi in zip(f.components, g.components):
        out += fi @ involution(gi)
    return out


def module_norm(f: ModuleVector) -> float:
    return float(np.sqrt(alg_norm(inner(f, f))))


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """A finite sequence {g_j} with g_j in A^{d_j}."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise DimensionMismatch("coefficient sequence needs at least one block")
        k = blocks[0].k
        if any(b.k != k for b in blocks):
            raise DimensionMismatch("all blocks must share the algebra dimension k")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return self.blocks[0].k

    @property
    def dims(self) -> list[int]:
        return [b.n for b in self.blocks]

    @classmethod
    def zeros(cls, k: int, dims: Sequence[int]) -> "CoefficientSequence":
        return cls(tuple(ModuleVector.zeros(k, d) for d in dims))

    def flatten(self) -> ModuleVector:
        return ModuleVector(np.concatenate([b.components for b in self.blocks]))

    @classmethod
    def from_flat(cls, vec: ModuleVector, dims: Sequence[int]) -> "CoefficientSequence":
        if sum(dims) != vec.n:
            raise DimensionMismatch(f"dims {list(dims)} do not sum to n={vec.n}")
        edges = np.cumsum([0, *dims])
        return cls(tuple(ModuleVector(vec.components[a:b]) for a, b in zip(edges[:-1], edges[1:])))

    def _check(self, other: "CoefficientSequence"):
        if self.k != other.k or self.dims != other.dims:
            raise DimensionMismatch(
                f"sequence shapes differ: k={self.k}, dims={self.dims} vs k={other.k}, dims={other.dims}"
            )


def sequence_inner(g: CoefficientSequence, h: CoefficientSequence) -> np.ndarray:
    g._check(h)
    out = np.zeros((g.k, g.k), dtype=complex)
    for gj, hj in zip(g.blocks, h.blocks):
        out += inner(gj, hj)
    return out


def sequence_norm(g: CoefficientSequence) -> float:
    return float(np.sqrt(alg_norm(sequence_inner(g, g))))
