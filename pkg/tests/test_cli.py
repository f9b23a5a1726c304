import json

import pytest

from core.errors import EXIT_OK, EXIT_USAGE
from main import create_application, main


def test_parser_includes_every_command():
    parser = create_application()
    for argv in (["verify", "errata"], ["weights", "-m", "2"], ["hwv-count", "-m", "2"],
                 ["spinor-orbit", "-m", "4"], ["dims", "-m", "2", "-k", "1"], ["bracket-table", "-m", "3"]):
        assert callable(parser.parse_args(argv).handler)


def test_verify_text(capsys):
    assert main(["verify", "orbits", "-m", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("== orbits")
    assert "FAIL" not in out


def test_verify_json(capsys):
    assert main(["verify", "corollary2", "-m", "3", "--out", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["suite"] == "corollary2"
    assert report["summary"]["fail"] == 0
    assert report["params"]["m"] == 3


def test_verify_to_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["verify", "errata", "--out", "json", "--output", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["suite"] == "errata"


def test_weights(capsys):
    assert main(["weights", "-m", "2", "--spec", "L+ L+", "--out", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["weight"] == ["1/2"]
    assert report["classification"] == "plus"
    assert report["direct"] == "plus"


def test_weights_enumerate(capsys):
    assert main(["weights", "-m", "2", "-k", "1", "--enumerate"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 16
    assert lines[0].startswith("L+ L+  k=1")


def test_hwv_count(capsys):
    assert main(["hwv-count", "-m", "4", "-k", "1", "--out", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"m": 4, "k": 1, "plus": 64, "minus": 64, "expected": 64}


def test_spinor_orbit_dot(capsys):
    assert main(["spinor-orbit", "-m", "4", "--out", "dot"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith('digraph "orbit" {')
    assert '"L+ L- L- L+"' in out


def test_dims(capsys):
    assert main(["dims", "-m", "2", "-k", "2", "--out", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["kernel_dirac"] == report["expected_dirac"] == 16
    assert report["kernel_laplacian"] == report["alternative_reading"] == 32


def test_bracket_table(capsys):
    assert main(["bracket-table", "-m", "3", "--max-degree", "1"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert "<not in span>" not in " ".join(lines)


@pytest.mark.parametrize("argv", [
    ["weights", "-m", "3", "--spec", "L+ L+"],
    ["weights", "-m", "2", "--spec", "L+ Q+"],
    ["weights", "-m", "2"],
    ["verify", "eq1", "--seed", "-1"],
    ["verify", "lemma1", "-m", "3"],
    ["verify", "orbits", "-m", "1"],
    ["dims", "-m", "9", "-k", "1"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_unknown_suite_is_rejected_by_the_parser():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "lemma99"])
    assert exc.value.code == EXIT_USAGE


def test_corollary1_with_long_options(capsys):
    assert main(["verify", "corollary1", "--m", "4", "--k", "2", "--out", "json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["summary"] == {"pass": 1, "fail": 0}


def test_spinor_orbit_from_start(capsys):
    assert main(["spinor-orbit", "--m", "4", "--start", "L+ L+ L+ L+", "--out", "dot"]) == EXIT_OK
    out = capsys.readouterr().out
    nodes = [line for line in out.splitlines() if line.strip().startswith('"') and "->" not in line]
    assert len(nodes) == 2
    assert '"L+ L+ L+ L+"' in out
    assert '"L+ L- L- L+"' in out


def test_weights_with_long_options(capsys):
    assert main(["weights", "--m", "4", "--k", "1", "--spec", "L+ L- L+ L+"]) == EXIT_OK
    assert "(3/2, 1/2)" in capsys.readouterr().out
