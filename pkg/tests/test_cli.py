import json
import subprocess
import sys

import pytest

from enriques_lattices.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_f2_count(capsys):
    code, out = run(capsys, "f2-count")
    assert code == 0 and out.out.startswith("527 nonzero isotropic")
    code, out = run(capsys, "f2-count", "--json")
    assert json.loads(out.out)["nonzero_isotropic"] == 527


def test_involution_action_a4(capsys):
    code, out = run(capsys, "involution-action", "--type", "A4", "--json")
    assert code == 0 and json.loads(out.out)["permutation"] == [3, 2, 1, 0]
    code, out = run(capsys, "involution-action", "--type", "A4")
    assert "a1->a4" in out.out


@pytest.mark.parametrize("argv", [
    ["lattice-info", "--e10"],
    ["lattice-info", "--type", "E8"],
    ["lattice-info", "--file", '{"rank": 2, "gram": [[0, 1], [1, 0]]}'],
    ["disc-group", "--type", "D5"],
    ["roots", "--type", "D4", "--list"],
    ["class-group"],
    ["class-group", "--type", "E6"],
    ["e10-reduce"],
    ["e10-reduce", "--vector", "[76, 153, 231, 195, 160, 126, 93, 61, 30, 115]"],
    ["e10-sigma", "--count", "2"],
    ["f2-orbit"],
    ["f2-orbit", "--gens", "sigma", "--vector", "[1, 0, 1, 0, 0, 0, 0, 0, 0, 0]"],
    ["ramification", "--gens", "none"],
    ["g0-check", "--sample", "reflection_pair", "--seed", "4"],
    ["word-search", "--length", "4"],
])
def test_subcommands_json(capsys, argv):
    code, out = run(capsys, *argv, "--json")
    assert code == 0
    json.loads(out.out)


def test_lattice_info_json(capsys):
    _, out = run(capsys, "lattice-info", "--e10", "--json")
    assert json.loads(out.out) == {"rank": 10, "determinant": -1, "is_even": True, "signature": [1, 9]}


def test_e10_reduce_schema(capsys):
    x = [0] * 10
    _, out = run(capsys, "e10-reduce", "--vector", json.dumps(x), "--json")
    assert json.loads(out.out) == {"word": [], "reduced": x, "steps": 0}


def test_e10_sigma_schema(capsys):
    _, out = run(capsys, "e10-sigma", "--count", "1", "--json")
    (row,) = json.loads(out.out)
    assert set(row) == {"f1", "f2", "matrix", "in_g0"} and row["in_g0"]


def test_ramification_value(capsys):
    _, out = run(capsys, "ramification", "--json")
    assert json.loads(out.out)["ramification_degree"] == 527


def test_g0_check_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"matrix": [[int(i == j) for j in range(10)] for i in range(10)]}))
    code, out = run(capsys, "g0-check", "--file", str(p), "--json")
    assert code == 0 and json.loads(out.out)["in_g0"] is True


def test_word_search_file_target(capsys, tmp_path):
    from enriques_lattices.coble import make_generator_set
    from enriques_lattices.lattice import isometry_to_json

    gens = make_generator_set(5, 1)
    p = tmp_path / "t.json"
    p.write_text(json.dumps(isometry_to_json(gens.word([1, 2]))))
    code, out = run(capsys, "word-search", "--file", str(p), "--json")
    res = json.loads(out.out)
    assert code == 0 and res["status"] == "found" and res["word"] == [1, 2]
    assert {"visited", "wall_time", "generators"} <= set(res)


@pytest.mark.parametrize("argv", [
    ["lattice-info", "--file", "{not json"],
    ["lattice-info", "--file", '{"gram": [[1, 2], [3, 4]]}'],
    ["lattice-info"],
    ["roots", "--type", "F4"],
    ["e10-reduce", "--vector", "[1, 2]"],
    ["g0-check", "--file", '{"matrix": [[1]]}'],
])
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2 and "error" in out.err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_all_failure_exit(capsys, monkeypatch):
    from enriques_lattices import checks

    monkeypatch.setattr(checks, "CHECKS", [checks.Check("broken", "-", lambda seed: (False, "no"))])
    code, out = run(capsys, "verify-all")
    assert code == 1 and "[FAIL] broken" in out.out


def test_verify_all_reproducible():
    cmd = [sys.executable, "-m", "enriques_lattices", "verify-all", "--json", "--seed", "3"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stdout.decode() + first.stderr.decode()
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)["checks"]
    from enriques_lattices.checks import CHECKS

    assert [r["check_name"] for r in report] == [c.name for c in CHECKS]
    assert all(r["status"] == "pass" for r in report)
