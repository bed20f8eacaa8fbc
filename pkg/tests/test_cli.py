import json
import subprocess
import sys

import pytest

from a2m.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_wp_rational_exact(capsys):
    code, out, _ = run(capsys, "wp", "--z", "1/2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["p"] == "4" and data["dp"] == "-16" and data["ode_residual"] == 0


def test_wp_complex(capsys):
    code, out, _ = run(capsys, "wp", "--z", "0.3+0.2i", "--g2", "4", "--g3", "1", "--format", "json")
    assert code == 0
    re, im = json.loads(out)["p"]
    assert abs(re - 2.968127761324492) < 1e-12 and abs(im + 7.076174748014280) < 1e-12


@pytest.mark.parametrize("argv", [
    ["wp", "--z", "0"],
    ["wp", "--z", "abc"],
    ["wp", "--z", "0.5", "--g2", "3", "--g3", "1"],
    ["show", "--op", "L13", "--m", "3"],
    ["show", "--op", "L1", "--m", "0"],
    ["show", "--op", "nope"],
    ["commute", "--pair", "L1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("a2m: error:")


def test_show_text_grouped(capsys):
    code, out, _ = run(capsys, "show", "--op", "I")
    assert code == 0
    assert "414℘₁₂℘₁₃" in out.replace(" ", "")
    assert "highest symbol" in out


def test_show_json_roundtrip(capsys):
    code, out, _ = run(capsys, "show", "--op", "L12", "--m", "2", "--format", "json")
    data = json.loads(out)
    assert data["schema"] == 1 and data["m"] == "2"
    from a2m import catalog
    from a2m.operator_algebra import DiffOperator

    assert DiffOperator.from_json(data["terms"]) == catalog.build("L12", 2)


def test_commute_pass_and_expect(capsys):
    assert run(capsys, "commute", "--pair", "L1,L3", "--m", "3")[0] == 0
    assert run(capsys, "commute", "--pair", "L1,L13-perturbed")[0] == 1
    assert run(capsys, "commute", "--pair", "L1,L13-perturbed", "--expect", "fail")[0] == 0


def test_commute_numeric(capsys):
    code, out, _ = run(capsys, "commute", "--pair", "L2,L12", "--numeric", "--format", "json")
    assert code == 0
    reports = json.loads(out)["reports"]
    assert [r["verdict"] for r in reports] == ["pass", "pass"]


def test_commute_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    assert run(capsys, "commute", "--pair", "L1,L2", "--format", "json", "--out", str(path))[0] == 0
    assert json.loads(path.read_text())["reports"][0]["subject"] == "[L1,L2] m=2"


def test_separation(capsys):
    assert run(capsys, "separation", "--symbol", "L12", "--samples", "2", "--seeds", "1", "--expect", "fail")[0] == 0
    assert run(capsys, "separation", "--symbol", "L12", "--samples", "2", "--seeds", "1")[0] == 1
    assert run(capsys, "separation", "--symbol", "L4-amended", "--samples", "2", "--seeds", "1")[0] == 0


def test_suite_amended_small(capsys):
    code, out, _ = run(capsys, "suite", "--m", "1", "--variant", "amended")
    assert code == 0
    assert out.splitlines()[-1].endswith("0 mismatches")


@pytest.mark.slow
def test_suite_deterministic(tmp_path):
    outs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "a2m", "suite", "--seed", "7", "--format", "json"],
                              capture_output=True, timeout=600)
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["schema"] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "a2m", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "suite" in proc.stdout
