import json
import math
import subprocess
import sys

import numpy as np
import pytest

from cgframe import serialize
from cgframe.cli import main
from cgframe.controlled import coordinate_family
from cgframe.gframe import GFrameFamily
from cgframe.instances import random_design
from cgframe.operators import AdjointableOperator
from cgframe.perturb import perturbation_report
from cgframe.serialize import Instance
from oracles import eig_extremes, rep


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, inst):
    path = tmp_path / name
    serialize.save_instance(inst, str(path))
    return path


def plain_instance(F):
    I = AdjointableOperator.identity(F.k, F.n)
    return Instance(F, I, I)


@pytest.mark.parametrize("N", [1, 4, 16])
def test_example_checks_parseval(tmp_path, capsys, N):
    path = tmp_path / "ex.json"
    assert run(capsys, "example", "--n", N, "--out", path)[0] == 0
    code, report = run(capsys, "check", path)
    assert code == 0 and report["class"] == "parseval"
    assert report["selfadjoint_residual"] <= 1e-12
    code, bounds = run(capsys, "bounds", path)
    assert code == 0
    assert abs(bounds["A"] - 1) <= 1e-12 and abs(bounds["B"] - 1) <= 1e-12


def test_example_to_stdout_roundtrips(capsys):
    main(["example", "--n", "3"])
    text = capsys.readouterr().out
    inst = serialize.instance_from_json(json.loads(text))
    assert serialize.dumps(serialize.instance_to_json(inst)) == text


def test_zero_family_is_none(tmp_path, capsys):
    F = GFrameFamily((AdjointableOperator.zeros(2, 2, 3), AdjointableOperator.zeros(2, 1, 3)))
    code, report = run(capsys, "check", write(tmp_path, "z.json", plain_instance(F)))
    assert code == 3 and report["class"] == "none"
    assert report["paper_vs_sound_transfer_bounds"] is None


def test_bessel_only_exit_code(tmp_path, capsys):
    design = random_design(np.random.default_rng(5), 1, 3, 3)
    F = design.family(design.random_blocks(np.random.default_rng(6), kernel=True))
    code, report = run(capsys, "check", write(tmp_path, "b.json", Instance(F, design.C, design.Cp)))
    assert code == 2 and report["class"] == "bessel_only"


def test_random_file_matches_oracle(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert run(capsys, "gen", "--k", 2, "--n", 3, "--j", 4, "--seed", 11, "--out", path)[0] == 0
    inst = serialize.load_instance(str(path))
    C, Cp = rep(inst.C.coeffs), rep(inst.Cp.coeffs)
    S = sum(Cp @ rep(L.coeffs).conj().T @ rep(L.coeffs) @ C for L in inst.family.members)
    lo, hi = eig_extremes(S)
    code, report = run(capsys, "check", path)
    assert code == 0
    assert report["A"] == pytest.approx(lo, abs=1e-9) and report["B"] == pytest.approx(hi, abs=1e-9)
    assert report["bessel_B"] == pytest.approx(hi, abs=1e-9)
    residuals = report["commutation_residuals"]
    assert max(max(v) if isinstance(v, list) else v for v in residuals.values()) <= 1e-10
    assert report["paper_vs_sound_transfer_bounds"]["sound_contains"] is True


def test_gen_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "gen", "--k", 2, "--seed", 3, "--out", a)
    run(capsys, "gen", "--k", 2, "--seed", 3, "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_reports_are_deterministic(tmp_path, capsys):
    path = tmp_path / "a.json"
    run(capsys, "gen", "--k", 2, "--seed", 3, "--out", path)
    outs = []
    for _ in range(2):
        main(["recon", str(path), "--seed", "9"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_roundtrip_byte_identical(tmp_path, capsys):
    path = tmp_path / "a.json"
    run(capsys, "gen", "--k", 3, "--n", 2, "--j", 3, "--seed", 1, "--out", path)
    text = path.read_text()
    again = serialize.save_instance(serialize.load_instance(str(path)), None)
    assert again == text


def test_parse_errors_exit_64(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", str(bad)]) == 64
    bad.write_text(json.dumps({"k": 1, "n": 2}))
    assert main(["bounds", str(bad)]) == 64
    assert main(["check", str(tmp_path / "missing.json")]) == 64


def test_validation_error_exit_65(tmp_path, capsys):
    F = coordinate_family(1, [1.0, 2.0])
    C = AdjointableOperator(np.array([[[[1.0]], [[1.0]]], [[[0.0]], [[1.0]]]], dtype=complex))
    assert main(["check", str(write(tmp_path, "v.json", Instance(F, C, C)))]) == 65


def test_perturb_identical_and_scaled(tmp_path, capsys):
    design = random_design(np.random.default_rng(2), 1, 3, 4)
    F = design.family(design.random_blocks(np.random.default_rng(3)))
    a = write(tmp_path, "a.json", Instance(F, design.C, design.Cp))
    half = write(tmp_path, "h.json", Instance(F.scaled(0.5), design.C, design.Cp))
    code, rep0 = run(capsys, "perturb", a, a)
    assert code == 0 and rep0["M1"] == pytest.approx(0, abs=1e-12) and rep0["M2"] == pytest.approx(0, abs=1e-12)
    code, r = run(capsys, "perturb", a, half)
    assert code == 0
    assert r["M1"] == pytest.approx(0.25, rel=1e-10) and r["M2"] == pytest.approx(1.0, rel=1e-10)
    assert r["sound_contains"] is True and r["paper_contains"] is False


def test_perturb_fields_match_module(tmp_path, capsys):
    rng = np.random.default_rng(8)
    design = random_design(rng, 2, 3, 3)
    F = design.family(design.random_blocks(rng))
    G = design.family(design.random_blocks(rng))
    inst = Instance(F, design.C, design.Cp)
    a = write(tmp_path, "a.json", inst)
    b = write(tmp_path, "b.json", Instance(G, design.C, design.Cp))
    _, r = run(capsys, "perturb", a, b)
    expected = json.loads(serialize.dumps(perturbation_report(inst.system(), G).as_dict()))
    assert r.keys() == expected.keys()
    for key, value in expected.items():
        if isinstance(value, float):
            assert r[key] == pytest.approx(value, rel=1e-12)
        elif isinstance(value, dict):
            assert r[key]["class"] == value["class"]
            assert r[key]["A"] == pytest.approx(value["A"], rel=1e-12)
            assert r[key]["B"] == pytest.approx(value["B"], rel=1e-12)
        else:
            assert r[key] == value


def test_perturb_shape_mismatch_exit_65(tmp_path, capsys):
    a = write(tmp_path, "a.json", plain_instance(coordinate_family(1, [1.0, 2.0])))
    b = write(tmp_path, "b.json", plain_instance(coordinate_family(1, [1.0, 2.0, 3.0])))
    assert main(["perturb", str(a), str(b)]) == 65


def test_recon_telescoping_example(tmp_path, capsys):
    path = tmp_path / "ex.json"
    run(capsys, "example", "--n", 8, "--out", path)
    code, r = run(capsys, "recon", path, "--seed", 1)
    assert code == 0 and r["controlled"]["iters"] == 1 and r["plain"]["iters"] >= 1


def test_recon_parseval_both_one(tmp_path, capsys):
    path = write(tmp_path, "p.json", plain_instance(coordinate_family(2, [1.0, 1.0])))
    _, r = run(capsys, "recon", path)
    assert r["plain"]["iters"] == r["controlled"]["iters"] == 1


def test_recon_ill_conditioned_matches_count_oracle(tmp_path, capsys):
    path = write(tmp_path, "ill.json", plain_instance(coordinate_family(1, [1.0, 10.0, 10.0])))
    tol = 1e-8
    code, r = run(capsys, "recon", path, "--seed", 2, "--tol", tol)
    assert code == 0
    assert abs(r["plain"]["iters"] - math.ceil(math.log(tol) / math.log(99 / 101))) <= 1
    assert r["controlled"]["iters"] == 1


def test_recon_non_frame_exit_3(tmp_path, capsys):
    F = GFrameFamily((AdjointableOperator.zeros(1, 1, 2),))
    assert main(["recon", str(write(tmp_path, "z.json", plain_instance(F)))]) == 3


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "cgframe", "example", "--n", "2"], capture_output=True, text=True, check=True
    ).stdout
    assert json.loads(out)["n"] == 2
