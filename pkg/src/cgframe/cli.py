"""Command-line entry point.

Exit codes: 0 frame (incl. tight/Parseval), 2 Bessel only, 3 neither,
64 unreadable instance, 65 instance fails validation.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialize
from .controlled import (
    ControlledSystem,
    bessel_bound,
    commutation_residuals,
    controlled_bounds,
    controlled_frame_operator,
    controlled_transfer_bounds,
    sound_transfer_contains,
    telescoping_example,
)
from .errors import FrameError, NotAFrame
from .gframe import gframe_bounds
from .instances import random_design
from .operators import hermitian_residual
from .perturb import perturbation_report
from .recon import preconditioning_report
from .serialize import Instance, ParseError

EXIT_CODES = {"frame": 0, "tight": 0, "parseval": 0, "bessel_only": 2, "none": 3}
EXIT_PARSE = 64
EXIT_INVALID = 65


def _emit(obj):
    sys.stdout.write(serialize.dumps(obj))


def _load_system(path) -> tuple[Instance, ControlledSystem]:
    inst = serialize.load_instance(path)
    return inst, inst.system()


def cmd_example(args) -> int:
    sys_ = telescoping_example(args.n)
    text = serialize.save_instance(Instance(sys_.family, sys_.C, sys_.Cp), args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    design = random_design(rng, args.k, args.n, args.j, controls=args.controls)
    family = design.family(design.random_blocks(rng, kernel=args.kernel))
    text = serialize.save_instance(Instance(family, design.C, design.Cp), args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def cmd_check(args) -> int:
    inst, system = _load_system(args.path)
    tol = inst.tol
    fb = controlled_bounds(system, tol)
    S = controlled_frame_operator(system)
    gb = gframe_bounds(inst.family, tol)
    transfer = None
    if gb is not None:
        t = controlled_transfer_bounds(*gb, system.pair, tol)
        transfer = {
            "gframe": list(gb),
            "paper": list(t["paper"]),
            "sound": list(t["sound"]),
            "paper_contains": sound_transfer_contains(fb, t["paper"], tol),
            "sound_contains": sound_transfer_contains(fb, t["sound"], tol),
        }
    _emit({
        "class": fb.cls,
        "A": fb.A,
        "B": fb.B,
        "bessel_B": bessel_bound(system, tol),
        "selfadjoint_residual": hermitian_residual(S),
        "commutation_residuals": commutation_residuals(system.C, system.Cp, inst.family, system.commutation),
        "paper_vs_sound_transfer_bounds": transfer,
    })
    return EXIT_CODES[fb.cls]


def cmd_bounds(args) -> int:
    inst, system = _load_system(args.path)
    fb = controlled_bounds(system, inst.tol)
    gb = gframe_bounds(inst.family, inst.tol)
    out = fb.as_dict()
    out["gframe"] = None if gb is None else {"A": gb[0], "B": gb[1]}
    _emit(out)
    return EXIT_CODES[fb.cls]


def cmd_perturb(args) -> int:
    inst, system = _load_system(args.path)
    other = serialize.load_instance(args.other)
    report = perturbation_report(system, other.family, inst.tol)
    _emit(report.as_dict())
    return 0


def cmd_recon(args) -> int:
    inst = serialize.load_instance(args.path)
    try:
        report = preconditioning_report(inst.family, tol=args.tol, seed=args.seed, bounds_tol=inst.tol)
    except NotAFrame as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["none"]
    _emit(report.as_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cgframe", description="Controlled g-frames over M_k(C)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("example", help="write the truncated Parseval example")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("gen", help="write a seeded random commuting instance")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--j", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--controls", choices=["diag", "identity"], default="diag")
    s.add_argument("--kernel", action="store_true", help="give the family a common kernel")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_gen)

    for name, func, text in (
        ("check", cmd_check, "classify an instance and report residuals"),
        ("bounds", cmd_bounds, "optimal controlled and g-frame bounds"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("path")
        s.set_defaults(func=func)

    s = sub.add_parser("perturb", help="compare an instance with a perturbed family")
    s.add_argument("path")
    s.add_argument("other")
    s.set_defaults(func=cmd_perturb)

    s = sub.add_parser("recon", help="plain vs. preconditioned Richardson reconstruction")
    s.add_argument("path")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_recon)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FrameError as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
