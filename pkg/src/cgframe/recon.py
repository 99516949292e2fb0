"""Frame-operator inversion by Richardson iteration and control preconditioning."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance
from .controlled import (
    ControlledSystem,
    analysis_apply,
    controlled_bounds,
    controlled_frame_operator,
    synthesis_apply,
    validate_control_pair,
    identity_system,
)
from .errors import NotAFrame, NotConverged
from .gframe import GFrameFamily, gframe_operator, random_module_vector
from .hmodule import ModuleVector, module_norm
from .operators import AdjointableOperator, op_psd_inv_sqrt


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    final_residual: float
    contraction: float
    converged: bool
    residual_ratios: tuple = ()

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("residual_ratios")
        return d


def richardson_invert(
    S: AdjointableOperator,
    A: float,
    B: float,
    g: ModuleVector,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> tuple[ModuleVector, SolveReport]:
    """Solve S f = g with f <- f + 2/(A+B) (g - S f), starting from f = 0.

    Stops once the relative residual in module norm drops to ``tol``. The
    residual is propagated as r <- r - w S r so each step is a pure
    application of Id - w S and round-off stays relative to the current r.
    """
    if not (0 < A <= B):
        raise ValueError(f"need 0 < A <= B, got A={A}, B={B}")
    relax = 2.0 / (A + B)
    contraction = (B - A) / (B + A)
    f = ModuleVector.zeros(g.k, g.n)
    g_norm = module_norm(g)
    r = g
    r_norm = g_norm
    ratios = []
    it = 0
    while r_norm > tol * g_norm:
        if it >= max_iter:
            report = SolveReport(it, r_norm / g_norm, contraction, False, tuple(ratios))
            raise NotConverged(f"no convergence after {max_iter} iterations", report)
        f = f + relax * r
        r = r - relax * S(r)
        new_norm = module_norm(r)
        ratios.append(new_norm / r_norm)
        r_norm = new_norm
        it += 1
    final = r_norm / g_norm if g_norm > 0 else 0.0
    return f, SolveReport(it, final, contraction, True, tuple(ratios))


def reconstruct(
    sys: ControlledSystem, f: ModuleVector, tol: float = 1e-10, max_iter: int = 10_000, bounds_tol: Tolerance = DEFAULT_TOL
) -> tuple[ModuleVector, SolveReport]:
    """Recover f from g = T T^* f.

    The residual target is tightened by A/B so the recovery error, not just the
    residual, meets ``tol``.
    """
    fb = controlled_bounds(sys, bounds_tol)
    if not fb.is_frame:
        raise NotAFrame(f"system classifies as {fb.cls!r}")
    g = synthesis_apply(sys, analysis_apply(sys, f))
    S = controlled_frame_operator(sys)
    return richardson_invert(S, fb.A, fb.B, g, tol * fb.A / fb.B, max_iter)


def preconditioner(F: GFrameFamily, tol: Tolerance = DEFAULT_TOL) -> ControlledSystem:
    """Controlled system with C = C' = S_Lambda^(-1/2), so S_(C,C') = Id."""
    C = op_psd_inv_sqrt(gframe_operator(F), tol)
    return validate_control_pair(C, C, F, tol, commutation="sum")


@dataclass(frozen=True)
class PreconditioningReport:
    plain: dict
    controlled: dict

    def as_dict(self) -> dict:
        return {"plain": self.plain, "controlled": self.controlled}


def _run(sys: ControlledSystem, f: ModuleVector, tol: float, max_iter: int, bounds_tol: Tolerance) -> dict:
    fb = controlled_bounds(sys, bounds_tol)
    S = controlled_frame_operator(sys)
    g = S(f)
    x, rep = richardson_invert(S, fb.A, fb.B, g, tol, max_iter)
    return {
        "A": fb.A,
        "B": fb.B,
        "condition": fb.B / fb.A,
        "iters": rep.iterations,
        "contraction": rep.contraction,
        "final_residual": rep.final_residual,
        "recovery_error": module_norm(x - f) / module_norm(f),
    }


def preconditioning_report(
    F: GFrameFamily, tol: float = 1e-10, seed=0, max_iter: int = 100_000, bounds_tol: Tolerance = DEFAULT_TOL
) -> PreconditioningReport:
    """Richardson on S_Lambda vs. on the S_Lambda^(-1/2)-controlled operator, same seeded target."""
    plain = identity_system(F)
    fb = controlled_bounds(plain, bounds_tol)
    if not fb.is_frame:
        raise NotAFrame(f"family classifies as {fb.cls!r}")
    ctrl = preconditioner(F, bounds_tol)
    f = random_module_vector(np.random.default_rng(seed), F.k, F.n)
    return PreconditioningReport(
        plain=_run(plain, f, tol, max_iter, bounds_tol),
        controlled=_run(ctrl, f, tol, max_iter, bounds_tol),
    )
