import math

import numpy as np
import pytest

from cgframe.controlled import telescoping_example, controlled_bounds, coordinate_family, identity_system
from cgframe.errors import NotAFrame, NotConverged
from cgframe.gframe import gframe_bounds, gframe_operator
from cgframe.hmodule import ModuleVector, module_norm
from cgframe.instances import random_design, random_family
from cgframe.operators import AdjointableOperator
from cgframe.recon import preconditioner, preconditioning_report, reconstruct, richardson_invert
from oracles import rand_c


def rand_vec(rng, k, n):
    return ModuleVector(rand_c(rng, n, k, k))


def test_identity_solves_in_one_step(rng):
    g = rand_vec(rng, 2, 3)
    x, rep = richardson_invert(AdjointableOperator.identity(2, 3), 1.0, 1.0, g, tol=1e-12)
    assert rep.iterations == 1 and rep.converged and x.allclose(g, 0)


def test_richardson_matches_dense_solve(rng):
    F = random_family(rng, 2, 3, 4, dims=[3, 3, 3, 3])
    S = gframe_operator(F)
    A, B = gframe_bounds(F)
    g = rand_vec(rng, 2, 3)
    x, rep = richardson_invert(S, A, B, g, tol=1e-12, max_iter=100_000)
    direct = np.linalg.solve(S.rep, g.components.reshape(-1))
    np.testing.assert_allclose(x.components.reshape(-1), direct, atol=1e-8 * np.abs(direct).max())
    assert max(rep.residual_ratios) <= rep.contraction + 1e-12
    assert rep.contraction == pytest.approx((B - A) / (B + A))


def test_not_converged_carries_report(rng):
    F = random_family(rng, 1, 3, 3, dims=[3, 3, 3])
    A, B = gframe_bounds(F)
    with pytest.raises(NotConverged) as info:
        richardson_invert(gframe_operator(F), A, B, rand_vec(rng, 1, 3), tol=1e-14, max_iter=2)
    assert info.value.report.iterations == 2 and not info.value.report.converged


def test_telescoping_example_reconstructs_in_one_iteration(rng):
    sys_ = telescoping_example(8)
    f = rand_vec(rng, 1, 8)
    x, rep = reconstruct(sys_, f, tol=1e-10)
    assert rep.iterations == 1
    assert module_norm(x - f) <= 1e-10 * module_norm(f)


def test_reconstruct_identity_control_and_random_frame(rng):
    design = random_design(rng, 2, 3, 4)
    sys_ = design.system(design.random_blocks(rng))
    f = rand_vec(rng, 2, 3)
    tol = 1e-8
    x, rep = reconstruct(sys_, f, tol=tol)
    assert module_norm(x - f) < tol * module_norm(f)
    fb = controlled_bounds(sys_)
    rho = (fb.B - fb.A) / (fb.B + fb.A)
    assert rep.iterations <= math.ceil(math.log(tol * fb.A / fb.B) / math.log(rho))

    plain = identity_system(sys_.family)
    x, _ = reconstruct(plain, f, tol=tol)
    assert module_norm(x - f) < tol * module_norm(f)


def test_reconstruct_rejects_non_frames(rng):
    design = random_design(rng, 1, 3, 3)
    sys_ = design.system(design.random_blocks(rng, kernel=True))
    with pytest.raises(NotAFrame):
        reconstruct(sys_, rand_vec(rng, 1, 3))


def test_preconditioning_parseval_family():
    rep = preconditioning_report(coordinate_family(2, [1.0, 1.0, 1.0]), tol=1e-10)
    assert rep.plain["condition"] == pytest.approx(1.0)
    assert rep.controlled["condition"] == pytest.approx(1.0)
    assert rep.plain["iters"] == rep.controlled["iters"] == 1


def test_preconditioning_scaled_coordinates():
    F = coordinate_family(1, np.linspace(1.0, 10.0, 5))
    rep = preconditioning_report(F, tol=1e-10)
    assert rep.plain["condition"] == pytest.approx(100.0)
    assert rep.controlled["condition"] == pytest.approx(1.0, abs=1e-12)
    assert rep.controlled["iters"] == 1


def test_preconditioning_ill_conditioned_frame():
    F = coordinate_family(2, [1.0, 10.0, 1.0, 10.0])
    tol = 1e-10
    rep = preconditioning_report(F, tol=tol, seed=4)
    expected = math.ceil(math.log(tol) / math.log(99 / 101))
    assert abs(rep.plain["iters"] - expected) <= 1
    assert rep.controlled["iters"] == 1


def test_preconditioned_generic_frame_is_parseval(rng):
    for _ in range(10):
        F = random_family(rng, 2, 3, 4, dims=[2, 3, 2, 3])
        fb = controlled_bounds(preconditioner(F))
        assert fb.cls == "parseval"
        rep = preconditioning_report(F, tol=1e-10, seed=int(rng.integers(1 << 31)))
        assert rep.controlled["iters"] == 1
        assert rep.controlled["recovery_error"] <= 1e-10


def test_preconditioning_rejects_non_frame(rng):
    c = rand_c(rng, 2, 3, 1, 1)
    c[:, 0] = 0
    from cgframe.gframe import GFrameFamily

    with pytest.raises(NotAFrame):
        preconditioning_report(GFrameFamily((AdjointableOperator(c),)))
