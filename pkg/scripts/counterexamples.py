"""Small instances where the norm-product bound constants break, next to the sound replacements.

    python3 scripts/counterexamples.py
"""
import os
from dataclasses import dataclass

import numpy as np

from cgframe import serialize
from cgframe.controlled import (
    controlled_bounds,
    controlled_transfer_bounds,
    coordinate_family,
    identity_system,
    norm_product_counterexample,
    validate_control_pair,
)
from cgframe.errors import CommutationViolated
from cgframe.gframe import gframe_bounds
from cgframe.operators import AdjointableOperator
from cgframe.perturb import mixed_operator, perturbation_report

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "tests", "fixtures")


@dataclass
class Config:
    eps: float = 0.1  # second diagonal entry of C = C'
    scale: float = 0.5  # perturbed family = scale * Lambda


def transfer_demo(cfg: Config):
    sys_ = norm_product_counterexample(cfg.eps)
    fb = controlled_bounds(sys_)
    t = controlled_transfer_bounds(*gframe_bounds(sys_.family), sys_.pair)
    print("C = C' = diag(1, %g) on the coordinate frame of C^2" % cfg.eps)
    print(f"  measured           A = {fb.A:.4g}, B = {fb.B:.4g}")
    print(f"  norm-product pair  A = {t['paper'][0]:.4g}, B = {t['paper'][1]:.4g}")
    print(f"  spectral pair      A = {t['sound'][0]:.4g}, B = {t['sound'][1]:.4g}")


def perturbation_demo(cfg: Config):
    sys_ = identity_system(coordinate_family(1, [1.0, 2.0]))
    r = perturbation_report(sys_, sys_.family.scaled(cfg.scale))
    print(f"\nPi = {cfg.scale} * Lambda")
    print(f"  M1 = {r.M1:.4g}, M2 = {r.M2:.4g}")
    print(f"  measured             A = {r.measured_bounds.A:.4g}, B = {r.measured_bounds.B:.4g}")
    print(f"  A1/(1+M2), (1+M1)B1  = {r.paper_lower:.4g}, {r.paper_upper:.4g}  contains: {r.paper_contains}")
    print(f"  triangle-inequality  = {r.sound_lower:.4g}, {r.sound_upper:.4g}  contains: {r.sound_contains}")


def mixed_demo():
    lam = serialize.load_instance(os.path.join(FIXTURES, "mixed_lambda.json"))
    gam = serialize.load_instance(os.path.join(FIXTURES, "mixed_gamma.json"))
    C, Cp, F, G = lam.C, lam.Cp, lam.family, gam.family
    L = sum(
        (Cp @ Gj.H @ Lj @ C for Gj, Lj in zip(G.members, F.members)),
        AdjointableOperator.zeros(F.k, F.n, F.n),
    )
    B1 = controlled_bounds(validate_control_pair(C, Cp, F, commutation="sum")).B
    B2 = controlled_bounds(validate_control_pair(C, Cp, G, commutation="sum")).B
    print("\nmixed operator with Lambda = Id, Gamma = swap, non-commuting controls")
    print(f"  ||L|| = {L.norm:.4g}  vs  sqrt(B1 B2) = {np.sqrt(B1 * B2):.4g}")
    try:
        mixed_operator(lam.system(), G)
    except CommutationViolated as exc:
        print(f"  mixed_operator refuses the pair: {exc}")


def main():
    cfg = Config()
    transfer_demo(cfg)
    perturbation_demo(cfg)
    mixed_demo()


if __name__ == "__main__":
    main()
