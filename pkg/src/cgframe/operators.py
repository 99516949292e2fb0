"""Adjointable A-linear operators between the modules A^m -> A^n.

An operator stores coefficients ``c[i][j]`` in A and acts by
``T(f)_i = sum_j f_j c[i][j]``; multiplying on the right keeps it left
A-linear, so every stored operator is adjointable by construction.

The faithful complex representation ``rep`` acts on components flattened in
C order (slot, row, column). Under it the module order and the PSD order
coincide: T >= 0 iff rep(T) is positive semidefinite, which is what makes
extreme eigenvalues the optimal operator-inequality constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance
from .errors import DimensionMismatch, NotModuleLinear, NotPositive
from .hmodule import ModuleVector


@dataclass(frozen=True, eq=False)
class AdjointableOperator:
    coeffs: np.ndarray  # (n_out, n_in, k, k)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 4 or c.shape[2] != c.shape[3] or min(c.shape) < 1:
            raise DimensionMismatch(f"expected (n_out, n_in, k, k) coefficients, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def k(self) -> int:
        return self.coeffs.shape[2]

    @property
    def n_out(self) -> int:
        return self.coeffs.shape[0]

    @property
    def n_in(self) -> int:
        return self.coeffs.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_out, self.n_in

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, k: int, n: int) -> "AdjointableOperator":
        return cls.scalar(k, n, 1.0)

    @classmethod
    def scalar(cls, k: int, n: int, value: complex) -> "AdjointableOperator":
        c = np.zeros((n, n, k, k), dtype=complex)
        for i in range(n):
            c[i, i] = value * np.eye(k)
        return cls(c)

    @classmethod
    def zeros(cls, k: int, n_out: int, n_in: int) -> "AdjointableOperator":
        return cls(np.zeros((n_out, n_in, k, k), dtype=complex))

    @classmethod
    def block_diag(cls, blocks: Sequence[np.ndarray]) -> "AdjointableOperator":
        """Diagonal operator f_i -> f_i b_i."""
        blocks = [np.asarray(b, dtype=complex) for b in blocks]
        n, k = len(blocks), blocks[0].shape[0]
        c = np.zeros((n, n, k, k), dtype=complex)
        for i, b in enumerate(blocks):
            c[i, i] = b
        return cls(c)

    @classmethod
    def from_right_matrix(cls, m: np.ndarray, k: int) -> "AdjointableOperator":
        """Operator acting by F -> F m on the row matrix F = [f_1 ... f_n]."""
        m = np.asarray(m, dtype=complex)
        n_in, n_out = m.shape[0] // k, m.shape[1] // k
        if (n_in * k, n_out * k) != m.shape:
            raise DimensionMismatch(f"right matrix shape {m.shape} not divisible by k={k}")
        return cls(m.reshape(n_in, k, n_out, k).transpose(2, 0, 1, 3))

    @classmethod
    def from_rep(
        cls, m: np.ndarray, k: int, n_out: int, n_in: int, tol: Tolerance = DEFAULT_TOL
    ) -> "AdjointableOperator":
        """Inverse of ``rep``; raises NotModuleLinear if ``m`` has no A-linear preimage."""
        m = np.asarray(m, dtype=complex)
        if m.shape != (n_out * k * k, n_in * k * k):
            raise DimensionMismatch(f"rep shape {m.shape} incompatible with k={k}, {n_out}x{n_in}")
        blocks = m.reshape(n_out, k, k, n_in, k, k)
        # rep block (i, j) is I_k (x) c_ij^T; read c_ij^T off its first diagonal sub-block
        c = blocks[:, 0, :, :, 0, :].transpose(0, 2, 3, 1)
        op = cls(c)
        residual = np.linalg.norm(op.rep - m, 2) if m.size else 0.0
        if residual > tol.eq_tol * max(1.0, np.linalg.norm(m, 2)):
            raise NotModuleLinear(f"matrix is not A-linear (residual {residual:.3e})")
        return op

    # -- algebra ------------------------------------------------------------

    def __call__(self, f: ModuleVector) -> ModuleVector:
        return apply_op(self, f)

    def __matmul__(self, other: "AdjointableOperator") -> "AdjointableOperator":
        return compose(self, other)

    def __add__(self, other: "AdjointableOperator") -> "AdjointableOperator":
        _same_shape(self, other)
        return AdjointableOperator(self.coeffs + other.coeffs)

    def __sub__(self, other: "AdjointableOperator") -> "AdjointableOperator":
        _same_shape(self, other)
        return AdjointableOperator(self.coeffs - other.coeffs)

    def __neg__(self) -> "AdjointableOperator":
        return AdjointableOperator(-self.coeffs)

    def __mul__(self, scalar) -> "AdjointableOperator":
        return AdjointableOperator(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    @property
    def H(self) -> "AdjointableOperator":
        return op_adjoint(self)

    @cached_property
    def rep(self) -> np.ndarray:
        return complex_representation(self)

    @cached_property
    def norm(self) -> float:
        return float(np.linalg.norm(self.rep, 2))

    def right_matrix(self) -> np.ndarray:
        """The ``n_in k x n_out k`` matrix M with T f = F M on row matrices."""
        n_out, n_in, k = self.n_out, self.n_in, self.k
        return self.coeffs.transpose(1, 2, 0, 3).reshape(n_in * k, n_out * k)


def _same_shape(s: AdjointableOperator, t: AdjointableOperator):
    if s.coeffs.shape != t.coeffs.shape:
        raise DimensionMismatch(f"operator shapes differ: {s.coeffs.shape} vs {t.coeffs.shape}")


def apply_op(T: AdjointableOperator, f: ModuleVector) -> ModuleVector:
    if f.n != T.n_in or f.k != T.k:
        raise DimensionMismatch(f"operator expects (n={T.n_in}, k={T.k}), got (n={f.n}, k={f.k})")
    return ModuleVector(np.einsum("jpr,ijrq->ipq", f.components, T.coeffs))


def compose(S: AdjointableOperator, T: AdjointableOperator) -> AdjointableOperator:
    """S after T. Right action reverses products: (ST)_ij = sum_l t_lj s_il."""
    if S.k != T.k or S.n_in != T.n_out:
        raise DimensionMismatch(f"cannot compose {S.shape} after {T.shape}")
    return AdjointableOperator(np.einsum("ljpr,ilrq->ijpq", T.coeffs, S.coeffs))


def op_adjoint(T: AdjointableOperator) -> AdjointableOperator:
    return AdjointableOperator(np.conj(T.coeffs).transpose(1, 0, 3, 2))


def complex_representation(T: AdjointableOperator) -> np.ndarray:
    k = T.k
    m = np.einsum("pP,ijrq->ipqjPr", np.eye(k), T.coeffs)
    return m.reshape(T.n_out * k * k, T.n_in * k * k)


def hstack(ops: Sequence[AdjointableOperator]) -> AdjointableOperator:
    """Row operator (g_1, ..., g_J) -> sum_j T_j g_j."""
    return AdjointableOperator(np.concatenate([op.coeffs for op in ops], axis=1))


def vstack(ops: Sequence[AdjointableOperator]) -> AdjointableOperator:
    """Column operator f -> (T_1 f, ..., T_J f)."""
    return AdjointableOperator(np.concatenate([op.coeffs for op in ops], axis=0))


def op_sum(ops: Sequence[AdjointableOperator]) -> AdjointableOperator:
    out = np.zeros_like(ops[0].coeffs)
    for op in ops:  # fixed ascending order
        out = out + op.coeffs
    return AdjointableOperator(out)


@dataclass(frozen=True)
class SpectralSummary:
    lambda_min: Optional[float]
    lambda_max: Optional[float]
    sigma_min: float
    is_hermitian: bool


def hermitian_residual(T: AdjointableOperator) -> float:
    m = T.rep
    return float(np.linalg.norm(m - m.conj().T, 2)) if m.shape[0] == m.shape[1] else np.inf


def rep_is_hermitian(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    return T.n_in == T.n_out and hermitian_residual(T) <= tol.eq_tol * max(1.0, T.norm)


def _eigvalsh(T: AdjointableOperator) -> np.ndarray:
    m = T.rep
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def spectral_bounds(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> SpectralSummary:
    sigma = np.linalg.svd(T.rep, compute_uv=False)
    sigma_min = float(sigma[-1])
    if rep_is_hermitian(T, tol):
        w = _eigvalsh(T)
        return SpectralSummary(float(w[0]), float(w[-1]), sigma_min, True)
    return SpectralSummary(None, None, sigma_min, False)


def in_gl_plus(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    if not rep_is_hermitian(T, tol):
        return False
    return bool(_eigvalsh(T)[0] > tol.inv_tol)


def commutator_residual(S: AdjointableOperator, T: AdjointableOperator) -> float:
    if S.n_in != S.n_out or S.coeffs.shape != T.coeffs.shape:
        raise DimensionMismatch(f"commutator needs equal square shapes, got {S.shape}, {T.shape}")
    return float(np.linalg.norm(S.rep @ T.rep - T.rep @ S.rep, 2))


def commutes(S: AdjointableOperator, T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    return commutator_residual(S, T) <= tol.eq_tol * (1.0 + S.norm * T.norm)


def bounded_below_constant(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> Optional[float]:
    """Largest m with <Tf, Tf> >= m <f, f>, or None if it is not above inv_tol."""
    r = T.rep
    m = float(np.linalg.eigvalsh(r.conj().T @ r)[0])
    return m if m > tol.inv_tol else None


def is_surjective(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> bool:
    return bounded_below_constant(op_adjoint(T), tol) is not None


def op_psd_sqrt(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> AdjointableOperator:
    return _hermitian_function(T, np.sqrt, tol, allow_zero=True)


def op_psd_inv_sqrt(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> AdjointableOperator:
    return _hermitian_function(T, lambda w: 1.0 / np.sqrt(w), tol, allow_zero=False)


def op_inverse_hermitian(T: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> AdjointableOperator:
    return _hermitian_function(T, lambda w: 1.0 / w, tol, allow_zero=False)


def _hermitian_function(T, fn, tol, allow_zero):
    if not rep_is_hermitian(T, tol):
        raise NotPositive("operator representation is not Hermitian")
    m = T.rep
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    if w[0] < -tol.psd_tol * max(1.0, abs(w[-1])):
        raise NotPositive(f"operator has negative eigenvalue {w[0]:.3e}")
    if not allow_zero and w[0] <= tol.inv_tol:
        raise NotPositive(f"operator is not invertible (lambda_min={w[0]:.3e})")
    w = np.clip(w, 0.0, None)
    f = (v * fn(w)) @ v.conj().T
    return AdjointableOperator.from_rep(0.5 * (f + f.conj().T), T.k, T.n_out, T.n_in, tol)
