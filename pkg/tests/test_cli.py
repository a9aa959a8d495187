import json
import subprocess
import sys

import pytest

from qsf.cli import run


def load(path):
    return json.loads(path.read_text())


def test_center_reports_dimension(tmp_path):
    assert run(["center", "--n", "2", "--out", str(tmp_path)]) == 0
    report = load(tmp_path / "center_N2_b2_nup1.json")
    assert report["matrices"]["dimension"] == 11
    assert report["config"] == {"n": 2, "beta_exp": 2, "nu": 1}
    for check in report["checks"]:
        assert {"name", "paper_ref", "status", "residual_count", "runtime_ms"} <= set(check)
        assert check["status"] == "pass"
    assert (tmp_path / "center_N2_b2_nup1.md").read_text().startswith("# center report")


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        assert run(["sl2z", "--n", "1", "--beta-exp", "3", "--nu", "-1", "--out", str(out)]) == 0
    name = "sl2z_N1_b3_num1"
    assert (a / f"{name}.json").read_bytes() == (b / f"{name}.json").read_bytes()
    assert (a / f"{name}.md").read_bytes() == (b / f"{name}.md").read_bytes()


def test_parallel_run_matches_serial(tmp_path):
    serial, parallel = tmp_path / "s", tmp_path / "p"
    assert run(["modules", "--n", "1", "--out", str(serial)]) == 0
    assert run(["modules", "--n", "1", "--out", str(parallel), "--threads", "2"]) == 0
    name = "modules_N1_b1_nup1.json"
    assert (serial / name).read_bytes() == (parallel / name).read_bytes()


def test_parity_violation_exits_with_message(tmp_path, capsys):
    assert run(["verify", "--n", "2", "--beta-exp", "1", "--out", str(tmp_path)]) == 2
    assert "beta^4 = (-1)^N" in capsys.readouterr().err


def test_compare_rejects_other_configurations(tmp_path, capsys):
    assert run(["compare", "--n", "1", "--beta-exp", "5", "--out", str(tmp_path)]) == 2
    assert "beta = zeta8^N and nu = 1" in capsys.readouterr().err


def test_budget_exhaustion_fails_the_run(tmp_path):
    assert run(["verify", "--n", "3", "--max-seconds", "0.5", "--out", str(tmp_path)]) == 1
    report = load(tmp_path / "verify_N3_b3_nup1.json")
    assert [c["status"] for c in report["checks"]] == ["budget"]


def test_double_check_selection(tmp_path):
    assert run(["double", "--n", "2", "--beta-exp", "0", "--check", "rmatrix",
                "--out", str(tmp_path)]) == 0
    names = [c["name"] for c in load(tmp_path / "double_N2_b0_nup1.json")["checks"]]
    assert names == ["double_quasitriangular", "psi_rmatrix"]


def test_qhat_lemma(tmp_path):
    assert run(["qhat", "--n", "2", "--beta-exp", "0", "--check", "lemma",
                "--out", str(tmp_path)]) == 0


def test_bad_check_name(tmp_path):
    with pytest.raises(SystemExit):
        run(["qhat", "--check", "hopf", "--out", str(tmp_path)])


def test_verify_suite_selection_all_betas(tmp_path):
    assert run(["verify", "--n", "1", "--beta-exp", "all", "--suite", "ribbon",
                "--out", str(tmp_path)]) == 0
    assert len(list(tmp_path.glob("verify_N1_*.json"))) == 4


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qsf", "center", "--n", "1", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout


def test_timings_are_opt_in(tmp_path):
    assert run(["center", "--n", "1", "--out", str(tmp_path), "--timings"]) == 0
    report = load(tmp_path / "center_N1_b1_nup1.json")
    assert any(c["runtime_ms"] > 0 for c in report["checks"])


def test_full_suite_example(tmp_path):
    assert run(["verify", "--n", "1", "--beta-exp", "1", "--nu", "1", "--suite", "all",
                "--out", str(tmp_path)]) == 0


def test_all_accepts_odd_beta_for_odd_rank(tmp_path):
    assert run(["all", "--n", "1", "--beta-exp", "5", "--out", str(tmp_path)]) == 0
    report = load(tmp_path / "all_N1_b5_nup1.json")
    names = {c["name"] for c in report["checks"]}
    assert {"structures_built", "center", "theorem_ST", "twist_equivalence",
            "psi_algebra_isomorphism"} <= names
    # the comparison only applies to beta = zeta8^N
    assert "comparison" not in names
