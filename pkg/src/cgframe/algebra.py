"""The matrix C*-algebra M_k(C).

Algebra elements are plain ``(k, k)`` complex numpy arrays; the involution
is the conjugate transpose and the C*-norm is the spectral norm.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositive


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used for equality, positivity and invertibility."""

    eq_tol: float = 1e-10
    psd_tol: float = 1e-9
    inv_tol: float = 1e-8

    def __post_init__(self):
        for name in ("eq_tol", "psd_tol", "inv_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOL = Tolerance()


def element(entries) -> np.ndarray:
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"algebra element must be square, got shape {a.shape}")
    return a


def identity(k: int) -> np.ndarray:
    return np.eye(k, dtype=complex)


def involution(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


def alg_norm(a: np.ndarray) -> float:
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def hermitian_residual(a: np.ndarray) -> float:
    return alg_norm(a - involution(a))


def is_hermitian(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    return hermitian_residual(a) <= tol.eq_tol * max(1.0, alg_norm(a))


def is_positive(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """C*-positivity: Hermitian and spectrum in [-psd_tol, inf)."""
    if not is_hermitian(a, tol):
        return False
    h = 0.5 * (a + involution(a))
    return bool(np.linalg.eigvalsh(h)[0] >= -tol.psd_tol)


def psd_sqrt(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    if not is_positive(a, tol):
        raise NotPositive("element is not positive")
    w, v = np.linalg.eigh(0.5 * (a + involution(a)))
    r = (v * np.sqrt(np.clip(w, 0.0, None))) @ involution(v)
    return 0.5 * (r + involution(r))


def inverse(a: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= tol.inv_tol:
        raise np.linalg.LinAlgError(f"element not invertible (sigma_min={s[-1]:.3e})")
    return np.linalg.inv(a)
