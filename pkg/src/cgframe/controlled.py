"""(C, C')-controlled g-frames.

A controlled system pairs a g-frame family with two positive invertible
operators C, C' that commute with each other and with the family. Two
commutation regimes are supported:

``"member"``
    C and C' commute with every Lambda_j^* Lambda_j (the standing assumption
    under which the controlled operator factors as T T^*).
``"sum"``
    C and C' only commute with S_Lambda = sum_j Lambda_j^* Lambda_j. This is
    all the factorization S_(C,C') = C'S_Lambda C = (CC')^(1/2) S_Lambda (CC')^(1/2)
    actually uses, and it is what a spectral preconditioner C = S_Lambda^(-1/2)
    satisfies.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance
from .errors import CommutationViolated, DimensionMismatch, NotInGLPlus
from .gframe import GFrameFamily, gframe_operator, sample_norm_condition
from .hmodule import CoefficientSequence, ModuleVector, inner
from .operators import (
    AdjointableOperator,
    commutator_residual,
    commutes,
    compose,
    hstack,
    in_gl_plus,
    op_adjoint,
    op_psd_sqrt,
    op_sum,
    spectral_bounds,
    vstack,
)

COMMUTATION_MODES = ("member", "sum")
FRAME_CLASSES = ("frame", "tight", "parseval")


@dataclass(frozen=True, eq=False)
class ControlPair:
    C: AdjointableOperator
    Cp: AdjointableOperator
    root: AdjointableOperator  # (C C')^(1/2)


@dataclass(frozen=True, eq=False)
class ControlledSystem:
    family: GFrameFamily
    pair: ControlPair
    commutation: str = "member"

    @property
    def C(self) -> AdjointableOperator:
        return self.pair.C

    @property
    def Cp(self) -> AdjointableOperator:
        return self.pair.Cp


@dataclass(frozen=True)
class FrameBounds:
    A: float
    B: float
    cls: str

    @property
    def is_frame(self) -> bool:
        return self.cls in FRAME_CLASSES

    def as_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "class": self.cls}


def classify(A: float, B: float, tol: Tolerance = DEFAULT_TOL) -> FrameBounds:
    if B <= tol.inv_tol:
        cls = "none"
    elif A <= tol.inv_tol:
        cls = "bessel_only"
    elif abs(A - B) <= tol.eq_tol * B:
        cls = "parseval" if abs(B - 1.0) <= tol.eq_tol else "tight"
    else:
        cls = "frame"
    return FrameBounds(float(A), float(B), cls)


def commutation_residuals(C, Cp, F: GFrameFamily, commutation: str = "member") -> dict:
    """Raw commutator norms behind the standing assumption."""
    if commutation == "member":
        targets = [compose(op_adjoint(L), L) for L in F.members]
    else:
        targets = [gframe_operator(F)]
    return {
        "pair": commutator_residual(C, Cp),
        "C": [commutator_residual(C, t) for t in targets],
        "Cprime": [commutator_residual(Cp, t) for t in targets],
    }


def _require_commuting(X, Y, tol, what, index=None):
    if not commutes(X, Y, tol):
        res = commutator_residual(X, Y)
        where = "" if index is None else f" (member {index})"
        raise CommutationViolated(f"{what} do not commute{where}: residual {res:.3e}", index, res)


def validate_control_pair(
    C: AdjointableOperator,
    Cp: AdjointableOperator,
    F: GFrameFamily,
    tol: Tolerance = DEFAULT_TOL,
    commutation: str = "member",
) -> ControlledSystem:
    if commutation not in COMMUTATION_MODES:
        raise ValueError(f"commutation must be one of {COMMUTATION_MODES}, got {commutation!r}")
    for name, X in (("C", C), ("C'", Cp)):
        if X.k != F.k or X.shape != (F.n, F.n):
            raise DimensionMismatch(f"{name} must be a square operator on A^{F.n} over M_{F.k}")
        if not in_gl_plus(X, tol):
            raise NotInGLPlus(f"{name} is not positive invertible")
    _require_commuting(C, Cp, tol, "C and C'")
    if commutation == "member":
        for j, L in enumerate(F.members):
            LL = compose(op_adjoint(L), L)
            _require_commuting(C, LL, tol, "C and Lambda_j^* Lambda_j", j)
            _require_commuting(Cp, LL, tol, "C' and Lambda_j^* Lambda_j", j)
    else:
        S = gframe_operator(F)
        _require_commuting(C, S, tol, "C and S_Lambda")
        _require_commuting(Cp, S, tol, "C' and S_Lambda")
    root = op_psd_sqrt(compose(C, Cp), tol)
    return ControlledSystem(F, ControlPair(C, Cp, root), commutation)


def controlled_frame_operator(sys: ControlledSystem) -> AdjointableOperator:
    """S_(C,C') = sum_j C' Lambda_j^* Lambda_j C."""
    C, Cp = sys.C, sys.Cp
    return op_sum([compose(Cp, compose(op_adjoint(L), compose(L, C))) for L in sys.family.members])


def controlled_gram(F: GFrameFamily, root: AdjointableOperator) -> AdjointableOperator:
    """root S_F root: the T T^* form of F under the pair whose square root is ``root``."""
    return compose(root, compose(gframe_operator(F), root))


def controlled_sum(sys: ControlledSystem, f: ModuleVector) -> np.ndarray:
    """sum_j <Lambda_j C f, Lambda_j C' f>, evaluated term by term."""
    Cf, Cpf = sys.C(f), sys.Cp(f)
    out = np.zeros((f.k, f.k), dtype=complex)
    for L in sys.family.members:
        out += inner(L(Cf), L(Cpf))
    return out


def synthesis_operator(sys: ControlledSystem) -> AdjointableOperator:
    """{g_j} -> sum_j (CC')^(1/2) Lambda_j^* g_j as an operator on the stacked sequence."""
    return compose(sys.pair.root, hstack([op_adjoint(L) for L in sys.family.members]))


def analysis_operator(sys: ControlledSystem) -> AdjointableOperator:
    return vstack([compose(L, sys.pair.root) for L in sys.family.members])


def synthesis_apply(sys: ControlledSystem, g: CoefficientSequence) -> ModuleVector:
    F = sys.family
    if g.k != F.k or g.dims != F.dims:
        raise DimensionMismatch(f"sequence dims {g.dims} do not match family dims {F.dims}")
    acc = ModuleVector.zeros(F.k, F.n)
    for L, gj in zip(F.members, g.blocks):
        acc = acc + op_adjoint(L)(gj)
    return sys.pair.root(acc)


def analysis_apply(sys: ControlledSystem, f: ModuleVector) -> CoefficientSequence:
    F = sys.family
    if f.k != F.k or f.n != F.n:
        raise DimensionMismatch(f"vector shape (n={f.n}, k={f.k}) does not match family")
    rf = sys.pair.root(f)
    return CoefficientSequence(tuple(L(rf) for L in F.members))


def controlled_bounds(sys: ControlledSystem, tol: Tolerance = DEFAULT_TOL) -> FrameBounds:
    s = spectral_bounds(controlled_frame_operator(sys), tol)
    if not s.is_hermitian:
        # unreachable for validated systems; fall back to the T T^* form
        s = spectral_bounds(controlled_gram(sys.family, sys.pair.root), tol)
    return classify(s.lambda_min, s.lambda_max, tol)


def bessel_bound(sys: ControlledSystem, tol: Tolerance = DEFAULT_TOL) -> float:
    """Optimal Bessel constant; ||T_(C,C')|| equals its square root."""
    return max(0.0, controlled_bounds(sys, tol).B)


def check_norm_condition(
    sys: ControlledSystem, A: float, B: float, samples: int, seed, tol: Tolerance = DEFAULT_TOL
) -> bool:
    F = sys.family
    return sample_norm_condition(lambda f: controlled_sum(sys, f), F.k, F.n, A, B, samples, seed, tol)


def _extremes(T: AdjointableOperator, tol) -> tuple[float, float]:
    s = spectral_bounds(T, tol)
    if not s.is_hermitian:
        raise NotInGLPlus("operator representation is not Hermitian")
    return s.lambda_min, s.lambda_max


def c2_bound_transfer(
    A: float, B: float, C: AdjointableOperator, direction: str, tol: Tolerance = DEFAULT_TOL
) -> tuple[float, float]:
    """Move bounds between a g-frame and its C^2-controlled version.

    ``to_gframe``: (A, B) -> (A ||C||^-2, B ||C^-1||^2);
    ``to_controlled``: (A, B) -> (A ||C^-1||^-2, B ||C||^2).
    """
    if not in_gl_plus(C, tol):
        raise NotInGLPlus("C is not positive invertible")
    lo, hi = _extremes(C, tol)
    norm_c, norm_c_inv = hi, 1.0 / lo
    if direction == "to_gframe":
        return A / norm_c**2, B * norm_c_inv**2
    if direction == "to_controlled":
        return A / norm_c_inv**2, B * norm_c**2
    raise ValueError(f"unknown direction {direction!r}")


def controlled_transfer_bounds(A: float, B: float, pair: ControlPair, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Bounds for the controlled system implied by g-frame bounds (A, B).

    ``paper`` holds the norm-product constants (A, B) * ||C|| ||C'||; ``sound`` uses the spectrum
    of CC', which is valid whenever S_(C,C') = CC'S_Lambda with commuting factors.
    The norm-product lower constant is not valid for non-scalar controls.
    """
    product = compose(pair.C, pair.Cp)
    lo, hi = _extremes(product, tol)
    scale = pair.C.norm * pair.Cp.norm
    return {
        "paper": (A * scale, B * scale),
        "sound": (A * lo, B * hi),
    }


def telescoping_example(N: int) -> ControlledSystem:
    """H = C^N with Lambda_j f = (f_j / sqrt(j), ..., f_j / sqrt(j)) in C^j, C = 2, C' = 1/2.

    The controlled sum telescopes to sum_j |f_j|^2 = <f, f>.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    members = []
    for j in range(1, N + 1):
        c = np.zeros((j, N, 1, 1), dtype=complex)
        c[:, j - 1, 0, 0] = 1.0 / np.sqrt(j)
        members.append(AdjointableOperator(c))
    F = GFrameFamily(tuple(members))
    C = AdjointableOperator.scalar(1, N, 2.0)
    Cp = AdjointableOperator.scalar(1, N, 0.5)
    return validate_control_pair(C, Cp, F)


def norm_product_counterexample(eps: float = 0.1) -> ControlledSystem:
    """Coordinate frame on C^2 with C = C' = diag(1, eps).

    The optimal lower controlled bound is eps^2, while scaling the g-frame lower
    bound 1 by ||C|| ||C'|| claims 1.
    """
    F = coordinate_family(1, [1.0, 1.0])
    C = AdjointableOperator.block_diag([np.eye(1), eps * np.eye(1)])
    return validate_control_pair(C, C, F)


def coordinate_family(k: int, scales) -> GFrameFamily:
    """Lambda_j f = s_j f_j in A^1, j = 1..n (so S_Lambda = diag(|s_j|^2))."""
    n = len(scales)
    members = []
    for j, s in enumerate(scales):
        c = np.zeros((1, n, k, k), dtype=complex)
        c[0, j] = s * np.eye(k)
        members.append(AdjointableOperator(c))
    return GFrameFamily(tuple(members))


def identity_system(F: GFrameFamily) -> ControlledSystem:
    Id = AdjointableOperator.identity(F.k, F.n)
    return validate_control_pair(Id, Id, F)


def sound_transfer_contains(bounds: FrameBounds, transferred: tuple, tol: Tolerance = DEFAULT_TOL) -> bool:
    lo, hi = transferred
    slack = tol.eq_tol * max(1.0, bounds.B)
    return bool(lo <= bounds.A + slack and bounds.B <= hi + slack)
