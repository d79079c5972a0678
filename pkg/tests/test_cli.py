import json
import os
from pathlib import Path

import pytest

from tregular.cli import main

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("TREGULAR_UPDATE_GOLDEN") == "1"

CASES = {
    "tpoly_036_3T21": ["tpoly", "--basis", "paravector:6", "--steps", "0,3,6", "--kappa", "2,1", "--scale", "3"],
    "tpoly_147_F2": ["tpoly", "--basis", "wh:6,6", "--steps", "1,4,7", "--degree", "2"],
    "verify_regular_fail": [
        "verify", "regular", "--steps", "3,6", "--source-steps", "0,3,6", "--kappa", "2,1", "--scale", "3",
    ],
    "verify_harmonic_pass": ["verify", "harmonic", "--steps", "0,3,6", "--kappa", "3,2"],
    "stem_extract_3T21": ["stem", "extract", "--steps", "0,3,6", "--kappa", "2,1", "--scale", "3"],
    "stem_dbar_tilde": ["stem", "op", "--op", "dbar-tilde", "--steps", "0,3,6", "--kappa", "2,1", "--scale", "3"],
    "fueter_T32_sigma2": [
        "fueter", "--steps", "0,3,6", "--kappa", "3,2", "--sigma", "2", "--certify",
    ],
    "fueter_T121_negative": [
        "fueter", "--basis", "wh:6,6", "--steps", "1,4,7", "--kappa", "1,2,1", "--negative-control",
    ],
    "suite_fueter_json": ["--json", "paper-suite", "--filter", "fueter"],
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = run(CASES[name], capsys)
    path = GOLDEN / f"{name}.txt"
    if UPDATE:
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")
    assert code == (1 if name.endswith("_fail") else 0)


def test_sexties_value(capsys):
    code, out, _ = run(["fueter", "--steps", "0,3,6", "--kappa", "3,2", "--sigma", "2"], capsys)
    assert code == 0 and out.strip() == "48 x0 + 16 x¹"


def test_verify_prints_residue(capsys):
    code, out, _ = run(CASES["verify_regular_fail"], capsys)
    assert code == 1
    assert out.splitlines() == ["FAIL regular over (3,6)", "residue: -12 x0 x²"]


def test_json_flag_either_side(capsys):
    argv = ["tpoly", "--steps", "0,3", "--basis", "wh:2,2", "--kappa", "2"]
    _, before, _ = run(["--json"] + argv, capsys)
    _, after, _ = run(argv + ["--json"], capsys)
    assert before == after
    data = json.loads(before)
    assert data["family"][0]["text"] == "x0^2 - ‖x¹‖² + 2 x0 x¹"


def test_filter_either_side(capsys):
    _, a, _ = run(["--filter", "stem.bessel*", "paper-suite"], capsys)
    _, b, _ = run(["paper-suite", "--filter", "stem.bessel*"], capsys)
    assert a == b and "1 passed, 0 failed, 1 checks" in a


def test_poly_json_input(tmp_path, capsys):
    _, out, _ = run(["--json", "tpoly", "--steps", "0,3,6", "--kappa", "2,1"], capsys)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(json.loads(out)["family"][0]["poly"]))
    code, out, _ = run(["verify", "regular", "--steps", "0,3,6", "--poly-json", str(path)], capsys)
    assert code == 0 and out.strip() == "PASS regular over (0,3,6)"


def test_stem_json_roundtrip(tmp_path, capsys):
    _, out, _ = run(["--json", "stem", "extract", "--steps", "0,3,6", "--kappa", "1,1"], capsys)
    path = tmp_path / "F.json"
    path.write_text(json.dumps(json.loads(out)["stem"]))
    code, induced, _ = run(["stem", "induce", "--stem-json", str(path)], capsys)
    _, direct, _ = run(["tpoly", "--steps", "0,3,6", "--kappa", "1,1"], capsys)
    assert code == 0
    assert direct.strip() == "T_(1,1) = " + induced.strip()


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["tpoly", "--steps", "0,3,6"],
        ["tpoly", "--steps", "0,3,6", "--kappa", "1"],
        ["tpoly", "--steps", "3,0", "--kappa", "1"],
        ["tpoly", "--steps", "0,3,6", "--basis", "paravector:5", "--kappa", "1,0"],
        ["verify", "regular", "--steps", "0,3,6", "--poly", "x0 +"],
        ["fueter", "--steps", "0,2,5", "--kappa", "1,0"],
        ["stem", "op", "--steps", "0,3,6", "--kappa", "1,0"],
        ["stem", "extract", "--steps", "0,3,6", "--kappa", "1,0", "--units", "e4;e5"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_certification_failure_exits_1(capsys):
    code, out, _ = run(["fueter", "--steps", "0,3,6", "--poly", "x0 x1"], capsys)
    assert code == 1 and out.startswith("FAIL stage 0")


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "tregular", "tpoly", "--steps", "0,3", "--kappa", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "T_(1) = x0 + x¹"
