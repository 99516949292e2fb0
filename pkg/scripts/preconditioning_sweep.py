"""Plain vs. S^(-1/2)-preconditioned Richardson iterations as the frame condition number grows.

    python3 scripts/preconditioning_sweep.py --k 2 --ratios 1 4 25 100 400
"""
import argparse
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from cgframe.controlled import coordinate_family
from cgframe.instances import random_family
from cgframe.recon import preconditioning_report


@dataclass
class SweepConfig:
    k: int = 2
    ratios: list = field(default_factory=lambda: [1.0, 4.0, 25.0, 100.0, 400.0])
    tol: float = 1e-10
    seed: int = 0
    random_trials: int = 5


def coordinate_rows(cfg: SweepConfig) -> list[dict]:
    rows = []
    for ratio in cfg.ratios:
        F = coordinate_family(cfg.k, [1.0, math.sqrt(ratio), 1.0, math.sqrt(ratio)])
        rep = preconditioning_report(F, tol=cfg.tol, seed=cfg.seed)
        rho = (ratio - 1) / (ratio + 1)
        predicted = 1 if rho == 0 else math.ceil(math.log(cfg.tol) / math.log(rho))
        rows.append({
            "B/A": ratio,
            "plain_iters": rep.plain["iters"],
            "predicted": predicted,
            "controlled_iters": rep.controlled["iters"],
            "controlled_error": rep.controlled["recovery_error"],
        })
    return rows


def random_rows(cfg: SweepConfig) -> list[dict]:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for _ in range(cfg.random_trials):
        F = random_family(rng, cfg.k, 4, 5)
        rep = preconditioning_report(F, tol=cfg.tol, seed=int(rng.integers(1 << 31)))
        rows.append({
            "condition": rep.plain["condition"],
            "plain_iters": rep.plain["iters"],
            "controlled_iters": rep.controlled["iters"],
        })
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=SweepConfig.k)
    p.add_argument("--ratios", type=float, nargs="+", default=None)
    p.add_argument("--tol", type=float, default=SweepConfig.tol)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--json", action="store_true", help="emit machine-readable output")
    args = p.parse_args()
    cfg = SweepConfig(k=args.k, tol=args.tol, seed=args.seed)
    if args.ratios:
        cfg.ratios = args.ratios
    result = {"config": asdict(cfg), "coordinate": coordinate_rows(cfg), "random": random_rows(cfg)}
    if args.json:
        print(json.dumps(result, indent=2))
        return
    print(f"{'B/A':>8} {'plain':>7} {'predicted':>9} {'precond':>7} {'error':>9}")
    for r in result["coordinate"]:
        print(f"{r['B/A']:8.1f} {r['plain_iters']:7d} {r['predicted']:9d} {r['controlled_iters']:7d} {r['controlled_error']:9.1e}")
    print("\nrandom frames (n=4, J=5)")
    for r in result["random"]:
        print(f"  condition {r['condition']:9.2f}  plain {r['plain_iters']:5d}  preconditioned {r['controlled_iters']}")


if __name__ == "__main__":
    main()
