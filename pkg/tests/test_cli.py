import csv
import io
import json

import pytest

from susybi import cli
from susybi.builder import Superpotential, build_system
from susybi.verify import CHECKS, VerificationReport


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_morse(capsys):
    code, out, _ = run(capsys, "verify", "--model", "morse", "--nu", "0", "--levels", "6", "--depth", "12")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert [c["check"] for c in doc["checks"]] == list(CHECKS)


def test_verify_inline_negative_nu(capsys):
    code, out, _ = run(capsys, "verify", "--upsilon", "1/2,-3,2/7", "--nu", "-1/5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5 and all(r["status"] == "pass" for r in rows)


def test_verification_failure_exit_code(capsys, monkeypatch, tmp_path):
    def failing(system, P=None):
        return [VerificationReport("biorthonormality", {}, "fail", 1,
                                   [{"indices": {"k": 0}, "expected": 1, "actual": 2}])]

    monkeypatch.setattr(cli, "run_all", failing)
    target = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--model", "morse", "--output", str(target))
    assert code == 1
    assert json.loads(target.read_text())["status"] == "fail"


@pytest.mark.parametrize("argv", [
    ["build", "--model", "nosuch"],
    ["build", "--nu", "1/x"],
    ["build", "--nu", "-1/2", "--levels", "2"],
    ["build", "--upsilon", ""],
    ["build", "--model", "morse", "--K", "4"],
    ["frobnicate"],
    ["partition", "--nu-ladder", "0.5"],
    ["example", "nosuch"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_io_failure(capsys, tmp_path):
    code, _, err = run(capsys, "build", "--output", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "error" in err


def test_build_morse_level_one(capsys):
    code, out, _ = run(capsys, "build", "--model", "morse", "--levels", "1", "--depth", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["levels"][1]["chi"]["plus"] == ["1", "1"]
    assert doc["meta"]["trunc_policy"] == "pessimistic" and doc["meta"]["K"] == 1


def test_zero_superpotential(capsys):
    code, out, _ = run(capsys, "build", "--upsilon", "0", "--levels", "0", "--depth", "3")
    level = json.loads(out)["levels"][0]
    assert level["chi"]["plus"] == ["1"]
    assert level["psi"]["plus"] == ["1", "0", "0", "0"]


def test_output_is_deterministic(capsys):
    argv = ["build", "--model", "singular", "--levels", "3", "--depth", "6", "--nu", "1/3"]
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


@pytest.mark.parametrize("ring", ["rational", "float"])
def test_round_trip(ring):
    U = Superpotential((1, "-1/2", "1/3"))
    config = cli.RunConfig("build", upsilon=U.upsilon, N=3, J=5, ring=ring)
    system = build_system(cli.resolve_superpotential(config), cli.resolve_nu(config), 3, 5)
    text = cli.serialize_system(system)
    again = cli.parse_system(text)
    assert again == system
    assert cli.serialize_system(again) == text


def test_csv_rows(capsys):
    code, out, _ = run(capsys, "build", "--model", "morse", "--levels", "1", "--depth", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "sector", "kind", "exponent", "value"]
    assert ["1", "plus", "chi", "-1", "1"] in rows
    assert ["0", "minus", "psi", "2", "1/2"] in rows


def test_example_singular(capsys):
    code, out, _ = run(capsys, "example", "singular", "--n", "3", "--nu", "0")
    doc = json.loads(out)
    assert code == 0
    assert doc["chi_plus_at_one"] == "3/2"
    assert doc["two_chi_minus_slope_at_one"] == doc["minus_n_chi_plus_at_one"] == "-9/2"
    assert all(doc["checks"].values())


@pytest.mark.parametrize("name", ["morse", "bessel"])
def test_other_examples(capsys, name):
    code, out, _ = run(capsys, "example", name)
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_partition_ladder(capsys):
    code, out, _ = run(capsys, "partition", "--nu-ladder", "1e-2,1e-4,1e-6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    assert float(rows[0]["jump"]) == pytest.approx(0.3863186, abs=1e-6)
    assert abs(float(rows[-1]["Z_minus_limit"])) < 1e-5


def test_partition_single(capsys):
    code, out, _ = run(capsys, "partition", "--nu", "1/4")
    doc = json.loads(out)
    assert code == 0 and abs(doc["Z"] - doc["Z_direct"]) < 1e-11


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("SUSYBI_PRECISION", "10")
    code, _, err = run(capsys, "build", "--ring", "float")
    assert code == 2 and "50" in err
