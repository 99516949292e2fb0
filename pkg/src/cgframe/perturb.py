"""Perturbation of controlled g-frames and the mixed operator L_(C,C')."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance, is_positive
from .controlled import (
    ControlledSystem,
    FrameBounds,
    analysis_operator,
    bessel_bound,
    classify,
    controlled_bounds,
    controlled_frame_operator,
    controlled_gram,
    controlled_sum,
    synthesis_operator,
    validate_control_pair,
)
from .errors import CertificationError, CommutationViolated, SingularPencil
from .gframe import GFrameFamily, check_compatible, cross_operator, gframe_operator, random_module_vector
from .hmodule import inner
from .operators import (
    AdjointableOperator,
    commutator_residual,
    commutes,
    compose,
    is_surjective,
    op_adjoint,
    op_sum,
    spectral_bounds,
)


def _hermitian(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def pencil_max(numerator: AdjointableOperator, denominator: AdjointableOperator, tol: Tolerance = DEFAULT_TOL) -> float:
    """Largest mu with numerator <= mu * denominator, via denominator^(-1/2) whitening."""
    w, v = np.linalg.eigh(_hermitian(denominator.rep))
    if w[0] <= tol.inv_tol:
        raise SingularPencil(f"denominator operator is not invertible (lambda_min={w[0]:.3e})")
    whiten = v / np.sqrt(w)
    m = whiten.conj().T @ _hermitian(numerator.rep) @ whiten
    return max(0.0, float(np.linalg.eigvalsh(_hermitian(m))[-1]))


def _check_difference_commutation(sys: ControlledSystem, diff: GFrameFamily, tol):
    if sys.commutation == "member":
        targets = [(j, compose(op_adjoint(D), D)) for j, D in enumerate(diff.members)]
    else:
        targets = [(None, gframe_operator(diff))]
    for j, T in targets:
        for name, X in (("C", sys.C), ("C'", sys.Cp)):
            if not commutes(X, T, tol):
                res = commutator_residual(X, T)
                raise CommutationViolated(
                    f"{name} does not commute with the difference family (member {j}): residual {res:.3e}", j, res
                )


def difference_ratios(sysA: ControlledSystem, famB: GFrameFamily, tol: Tolerance = DEFAULT_TOL) -> tuple[float, float]:
    """Smallest M1, M2 with q_diff <= M1 q_Lambda and q_diff <= M2 q_Pi in the operator order.

    Each q is the controlled quadratic form f -> sum_j <X_j C f, X_j C' f>.
    """
    check_compatible(sysA.family, famB)
    diff = sysA.family - famB
    _check_difference_commutation(sysA, diff, tol)
    root = sysA.pair.root
    q_diff = controlled_gram(diff, root)
    q_lam = controlled_frame_operator(sysA)
    q_pi = controlled_gram(famB, root)
    return pencil_max(q_diff, q_lam, tol), pencil_max(q_diff, q_pi, tol)


@dataclass(frozen=True)
class PerturbedBounds:
    paper_lower: float
    paper_upper: float
    sound_lower: Optional[float]
    sound_upper: float


def perturbed_bounds(A1: float, B1: float, M1: float, M2: float) -> PerturbedBounds:
    """Bounds for the perturbed family implied by (A1, B1) and (M1, M2).

    The ``paper`` pair is A1/(1+M2), (1+M1)B1. The ``sound`` pair follows from
    the triangle inequality in l2: (1 - sqrt(M1))^2 A1 and (1 + sqrt(M1))^2 B1;
    the lower one exists only for M1 < 1.
    """
    if not (0 < A1 <= B1):
        raise ValueError(f"need 0 < A1 <= B1, got {A1}, {B1}")
    r = np.sqrt(M1)
    return PerturbedBounds(
        paper_lower=A1 / (1.0 + M2),
        paper_upper=(1.0 + M1) * B1,
        sound_lower=A1 * (1.0 - r) ** 2 if M1 < 1.0 else None,
        sound_upper=B1 * (1.0 + r) ** 2,
    )


@dataclass(frozen=True)
class PerturbationReport:
    M1: float
    M2: float
    paper_lower: float
    paper_upper: float
    sound_lower: Optional[float]
    sound_upper: float
    measured_bounds: FrameBounds
    paper_contains: bool
    sound_contains: Optional[bool]

    def as_dict(self) -> dict:
        return {
            "M1": self.M1,
            "M2": self.M2,
            "paper_lower": self.paper_lower,
            "paper_upper": self.paper_upper,
            "sound_lower": self.sound_lower,
            "sound_upper": self.sound_upper,
            "measured": self.measured_bounds.as_dict(),
            "paper_contains": self.paper_contains,
            "sound_contains": self.sound_contains,
        }


def _contains(lower, upper, b: FrameBounds, tol: Tolerance) -> bool:
    slack = tol.eq_tol * max(1.0, b.B)
    return bool((lower is None or lower <= b.A + slack) and b.B <= upper + slack)


def perturbation_report(sysA: ControlledSystem, famB: GFrameFamily, tol: Tolerance = DEFAULT_TOL) -> PerturbationReport:
    A1B1 = controlled_bounds(sysA, tol)
    M1, M2 = difference_ratios(sysA, famB, tol)
    pb = perturbed_bounds(A1B1.A, A1B1.B, M1, M2)
    s = spectral_bounds(controlled_gram(famB, sysA.pair.root), tol)
    measured = classify(s.lambda_min, s.lambda_max, tol)
    return PerturbationReport(
        M1=M1,
        M2=M2,
        paper_lower=pb.paper_lower,
        paper_upper=pb.paper_upper,
        sound_lower=pb.sound_lower,
        sound_upper=pb.sound_upper,
        measured_bounds=measured,
        paper_contains=_contains(pb.paper_lower, pb.paper_upper, measured, tol),
        sound_contains=None if pb.sound_lower is None else _contains(pb.sound_lower, pb.sound_upper, measured, tol),
    )


@dataclass(frozen=True, eq=False)
class MixedOperator:
    op: AdjointableOperator
    adjoint_formula: AdjointableOperator
    B1: float
    B2: float
    system_G: ControlledSystem = field(repr=False)

    @property
    def norm(self) -> float:
        return self.op.norm

    @property
    def norm_bound(self) -> float:
        return float(np.sqrt(self.B1 * self.B2))

    @property
    def adjoint_residual(self) -> float:
        return float(np.max(np.abs(self.adjoint_formula.rep - self.op.rep.conj().T), initial=0.0))


def mixed_operator(sysL: ControlledSystem, famG: GFrameFamily, tol: Tolerance = DEFAULT_TOL) -> MixedOperator:
    """L = sum_j C' Gamma_j^* Lambda_j C together with its adjoint sum_j C Lambda_j^* Gamma_j C'.

    Besides validating (C, C') against Gamma, C and C' must commute with
    sum_j Gamma_j^* Lambda_j; without that, ||L|| <= sqrt(B1 B2) fails for
    non-scalar controls (see tests/fixtures).
    """
    check_compatible(sysL.family, famG)
    sysG = validate_control_pair(sysL.C, sysL.Cp, famG, tol, sysL.commutation)
    cross = cross_operator(famG, sysL.family)
    for name, X in (("C", sysL.C), ("C'", sysL.Cp)):
        if not commutes(X, cross, tol):
            res = commutator_residual(X, cross)
            raise CommutationViolated(f"{name} does not commute with sum_j Gamma_j^* Lambda_j: residual {res:.3e}", None, res)
    C, Cp = sysL.C, sysL.Cp
    L = op_sum([compose(Cp, compose(op_adjoint(G), compose(Lm, C))) for G, Lm in zip(famG.members, sysL.family.members)])
    L_adj = op_sum([compose(C, compose(op_adjoint(Lm), compose(G, Cp))) for G, Lm in zip(famG.members, sysL.family.members)])
    return MixedOperator(L, L_adj, bessel_bound(sysL, tol), bessel_bound(sysG, tol), sysG)


def mixed_factorization(sysL: ControlledSystem, mixed: MixedOperator) -> AdjointableOperator:
    """P_(C,C') T^*_(C,C'): Gamma's synthesis after Lambda's analysis."""
    return compose(synthesis_operator(mixed.system_G), analysis_operator(sysL))


def surjectivity_transfer(
    sysL: ControlledSystem,
    famG: GFrameFamily,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed=0,
) -> Optional[float]:
    """Lower controlled bound of Gamma when L is surjective, else None.

    The returned m is lambda_min of S_Gamma,(C,C'), i.e. the bounded-below
    constant of Gamma's analysis operator; it is checked to be positive and
    checked in the PSD order on seeded random vectors.
    """
    mixed = mixed_operator(sysL, famG, tol)
    if not is_surjective(mixed.op, tol):
        return None
    sysG = mixed.system_G
    m = controlled_bounds(sysG, tol).A
    if m <= tol.inv_tol:
        raise CertificationError(f"L is surjective but Gamma has lower bound {m:.3e}")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        f = random_module_vector(rng, famG.k, famG.n)
        if not is_positive(controlled_sum(sysG, f) - m * inner(f, f), tol):
            raise CertificationError("lower bound m failed on a sample")
    return m
