"""Seeded random instances: elements, operators, and commuting controlled systems."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .controlled import ControlledSystem, validate_control_pair
from .gframe import GFrameFamily, random_module_vector
from .operators import AdjointableOperator

__all__ = [
    "CommutingDesign",
    "random_element",
    "random_operator",
    "random_family",
    "random_module_vector",
    "random_design",
]


def random_element(rng: np.random.Generator, k: int) -> np.ndarray:
    return rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))


def random_operator(rng: np.random.Generator, k: int, n_out: int, n_in: int) -> AdjointableOperator:
    shape = (n_out, n_in, k, k)
    return AdjointableOperator(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def random_family(rng: np.random.Generator, k: int, n: int, J: int, dims: Optional[Sequence[int]] = None) -> GFrameFamily:
    dims = list(dims) if dims is not None else [int(d) for d in rng.integers(1, n + 1, size=J)]
    return GFrameFamily(tuple(random_operator(rng, k, d, n) for d in dims))


def _isometry_rows(rng, rows: int, cols: int) -> np.ndarray:
    """rows x cols with orthonormal rows (rows <= cols)."""
    z = rng.standard_normal((cols, rows)) + 1j * rng.standard_normal((cols, rows))
    q, _ = np.linalg.qr(z)
    return q.conj().T


@dataclass(frozen=True, eq=False)
class CommutingDesign:
    """Families Lambda_j with right matrices D_j W_j, where W_j has orthonormal rows.

    Every Lambda_j^* Lambda_j is then block diagonal (D_j D_j^*), as is
    Gamma_j^* Lambda_j for any two families sharing the W_j, so block-scalar
    controls diag(c_i I_k) commute with all of them.
    """

    k: int
    n: int
    W: tuple
    C: AdjointableOperator
    Cp: AdjointableOperator

    @property
    def dims(self) -> list[int]:
        return [w.shape[1] // self.k for w in self.W]

    def random_blocks(self, rng, kernel: bool = False, scale: float = 1.0) -> list:
        out = []
        for _ in self.W:
            blocks = [scale * random_element(rng, self.k) for _ in range(self.n)]
            if kernel:
                blocks[0] = np.zeros((self.k, self.k))
            out.append(blocks)
        return out

    def family(self, blocks) -> GFrameFamily:
        members = []
        for D_blocks, W in zip(blocks, self.W):
            D = np.zeros((self.n * self.k, self.n * self.k), dtype=complex)
            for i, b in enumerate(D_blocks):
                D[i * self.k:(i + 1) * self.k, i * self.k:(i + 1) * self.k] = b
            members.append(AdjointableOperator.from_right_matrix(D @ W, self.k))
        return GFrameFamily(tuple(members))

    def system(self, blocks, commutation: str = "member") -> ControlledSystem:
        return validate_control_pair(self.C, self.Cp, self.family(blocks), commutation=commutation)


def block_scalar_control(rng, k: int, n: int, low: float = 0.5, high: float = 2.0) -> AdjointableOperator:
    return AdjointableOperator.block_diag([c * np.eye(k) for c in rng.uniform(low, high, size=n)])


def random_design(
    rng: np.random.Generator,
    k: int,
    n: int,
    J: int,
    dims: Optional[Sequence[int]] = None,
    controls: str = "diag",
) -> CommutingDesign:
    if dims is None:
        dims = [int(d) for d in rng.integers(n, n + 3, size=J)]
    if any(d < n for d in dims):
        raise ValueError("commuting designs need d_j >= n")
    W = tuple(_isometry_rows(rng, n * k, d * k) for d in dims)
    if controls == "diag":
        C, Cp = block_scalar_control(rng, k, n), block_scalar_control(rng, k, n)
    elif controls == "identity":
        C = Cp = AdjointableOperator.identity(k, n)
    else:
        raise ValueError(f"unknown controls {controls!r}")
    return CommutingDesign(k, n, W, C, Cp)
