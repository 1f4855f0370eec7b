import json
import subprocess
import sys

import pytest

from netsubset.cli import run
from netsubset.constructions import generate_net
from netsubset.io import pointset_from_dict, pointset_to_dict
from netsubset.netcheck import is_net
from netsubset.grid import Params
from netsubset.patterns import Pattern


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def net_file(tmp_path):
    path = tmp_path / "net.json"
    path.write_text(json.dumps(pointset_to_dict(generate_net(2, 2, 2), 2, 2)))
    return str(path)


def test_verify_valid_net(capsys, net_file):
    code, out, _ = call(capsys, "verify", "--input", net_file, "--base", "2", "-m", "2")
    assert code == 0 and json.loads(out)["is_net"] is True


def test_verify_reports_witness(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"d": 2, "points": [[0.0, 0.0], [0.1, 0.1]]}))
    code, out, _ = call(capsys, "verify", "--input", str(path), "-b", "2", "-m", "1")
    data = json.loads(out)
    assert code == 0 and data["is_net"] is False
    assert data["witness"]["c"] == [1, 0] and data["witness"]["a"] == [0, 0]


def test_construct_nonexistence(capsys):
    code, out, err = call(capsys, "construct", "--base", "2", "-m", "2", "-d", "4")
    assert code == 1 and out == ""
    assert "cannot exist if m≥2 and d≥b+2" in err


def test_construct_roundtrip(capsys, tmp_path):
    code, out, _ = call(capsys, "construct", "-b", "3", "-m", "2", "-d", "3")
    assert code == 0
    points = pointset_from_dict(json.loads(out))
    assert is_net(points, Params(3, 2, 3))
    assert points.exact is not None


def test_bounds_example(capsys):
    code, out, _ = call(capsys, "bounds", "--base", "2", "-d", "2", "-m", "1", "-N", "4")
    data = json.loads(out)
    assert code == 0
    assert data["pz_lower"] == pytest.approx(0.601093, abs=1e-6)
    assert data["markov_upper"] == pytest.approx(0.859375, abs=1e-12)
    assert data["exact"] == pytest.approx(0.765625, abs=1e-12)


def test_thresholds(capsys):
    code, out, _ = call(capsys, "thresholds", "-b", "2", "-m", "2", "-d", "2", "--eps", "0.1")
    data = json.loads(out)
    assert data["sufficient_N"] == 25 and data["necessary_N"] == pytest.approx(8)


def test_patterns_subcommands(capsys):
    code, out, _ = call(capsys, "patterns", "enumerate", "-b", "2", "-m", "1", "-d", "2")
    pats = [Pattern.from_dict(p) for p in json.loads(out)]
    assert [p.cells for p in pats] == [((0, 0), (1, 1)), ((0, 1), (1, 0))]
    code, out, _ = call(capsys, "patterns", "count", "-b", "2", "-m", "2", "-d", "2")
    assert json.loads(out)["enumerated"] == 16
    code, out, _ = call(capsys, "patterns", "census", "-b", "2", "-m", "1", "-d", "3")
    assert code == 0 and json.loads(out)["A"] == 4


def test_find_and_discrepancy(capsys, net_file):
    code, out, _ = call(capsys, "find", "--input", net_file, "-b", "2", "-m", "2")
    data = json.loads(out)
    assert data["found"] and sorted(data["point_indices"]) == [0, 1, 2, 3]
    code, out, _ = call(capsys, "discrepancy", "--input", net_file)
    assert code == 0 and 0 < json.loads(out)["star_discrepancy"] <= 1


def test_sample_and_simulate_deterministic(capsys, tmp_path):
    outs = [call(capsys, "sample", "-d", "2", "-N", "5", "--seed", "4")[1] for _ in range(2)]
    assert outs[0] == outs[1] and len(json.loads(outs[0])["points"]) == 5
    args = ["simulate", "-b", "2", "-m", "1", "-d", "2", "-N", "4", "--trials", "300", "--seed", "9"]
    a, b = call(capsys, *args)[1], call(capsys, *args, "--threads", "2")[1]
    assert a == b and json.loads(a)["trials"] == 300
    csv_out = call(capsys, *args, "--format", "csv")[1]
    assert csv_out.startswith("b,m,d,N,trials,successes")


def test_sweep_csv_and_out_file(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = call(capsys, "sweep", "-b", "2", "-m", "1", "-d", "2", "-N", "2", "4",
                        "--trials", "200", "--seed", "1", "--out", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 3
    code, out, _ = call(capsys, "sweep", "-b", "2", "-m", "1", "-d", "2", "-N", "--trials", "5", "--seed", "1")
    assert code == 0 and out.count("\n") == 1


def test_usage_errors(capsys):
    assert run(["construct", "-b", "2", "-m", "1", "-d", "2", "--bogus"]) == 2
    assert run(["simulate", "-b", "2", "-m", "1", "-d", "2", "-N", "4", "--trials", "5"]) == 2  # no --seed
    assert run(["verify", "--input", "/nonexistent.json", "-b", "2", "-m", "1"]) == 1


def test_module_entry_point_byte_identical():
    cmd = [sys.executable, "-m", "netsubset", "simulate", "-b", "2", "-m", "1", "-d", "2",
           "-N", "3", "--trials", "50", "--seed", "5"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
