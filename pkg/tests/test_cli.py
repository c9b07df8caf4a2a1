import json
import subprocess
import sys

import pytest

from sunpi.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from sunpi.kernels import THEOREM1, series_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_row1(capsys):
    code, out, _ = run(capsys, "eval", "--row", "1", "--digits", "30")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# sunpi eval --row 1 --digits 30"
    assert "value 1.169545201850514161858802075410" in out


def test_eval_row8(capsys):
    code, out, _ = run(capsys, "eval", "--row", "8")
    assert code == EXIT_OK
    assert "value 11.16441013229128900260436159083" in out


def test_eval_file_and_json(capsys, tmp_path):
    f = tmp_path / "th1.json"
    f.write_text(json.dumps(series_to_json(THEOREM1)))
    code, out, _ = run(capsys, "eval", str(f), "--json", "--digits", "20")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["items"][0]["terms_used"] > 0
    assert obj["items"][0]["value"].startswith("1.16954520185051416")


@pytest.mark.parametrize(
    "doc, field",
    [
        ({"kernel": {"x": "1/3", "y": "1/6"}, "weight": ["-1", "3"], "q": "1/2x"}, "q"),
        ({"kernel": {"x": "0", "y": "1/6"}, "weight": ["-1", "3"], "q": "1/2"}, "kernel"),
        ({"kernel": {"x": "1/3", "y": "1/6"}, "weight": "3n-1", "q": "1/2"}, "weight"),
        ({"kernel": {"x": "1/3", "y": "1/6"}, "weight": ["-1"], "q": "1/2", "alpha": {"q0": "0", "q1": "a", "d": 6}}, "alpha"),
    ],
)
def test_malformed_file_names_field(capsys, tmp_path, doc, field):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "eval", str(f))
    assert code == EXIT_USAGE
    assert field in err


def test_not_json(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{")
    code, _, _ = run(capsys, "eval", str(f))
    assert code == EXIT_USAGE


def test_divergent_series_is_usage_error(capsys, tmp_path):
    f = tmp_path / "div.json"
    f.write_text(json.dumps({"kernel": {"x": "1/3", "y": "1/6"}, "weight": ["1"], "q": "2"}))
    code, _, err = run(capsys, "eval", str(f))
    assert code == EXIT_USAGE and err


def test_verify_table_exit_status(capsys):
    code, out, _ = run(capsys, "verify-table")
    assert code == EXIT_FAIL
    assert out.strip().splitlines()[-1] == "6/9 pass"
    code, out, _ = run(capsys, "verify-table", "--row", "1")
    assert code == EXIT_OK and "PASS" in out


def test_verify_table_fixture(capsys):
    code, out, _ = run(capsys, "verify-table", "--row", "sun-incorrect-422")
    assert "sun-incorrect-422" in out
    assert code == (EXIT_OK if "PASS" in out else EXIT_FAIL)


def test_unknown_row_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--row", "42"])
    assert exc.value.code == EXIT_USAGE


def test_theorem2(capsys):
    code, out, _ = run(capsys, "theorem2")
    assert code == EXIT_OK
    assert "th2: weight 9*n^3 - 27*n^2 - 14*n - 2" in out
    assert "th2.2: weight 18*n^3 - 54*n^2 - 25*n - 5" in out
    with pytest.raises(SystemExit) as exc:
        main(["theorem2", "--which", "th3"])
    assert exc.value.code == EXIT_USAGE


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--lambda", "1/4", "--mu=-1/4", "--json")
    assert code == EXIT_OK
    item = json.loads(out)["items"][0]
    assert item["weight"] == ["-2", "-14", "-27", "9"]
    assert item["value"] == {"q0": "0", "q1": "-3/8", "d": 6, "pi_power": -1}


def test_recurrence_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "guess-recurrence", "--json")
    assert code == EXIT_OK
    rec = json.loads(out)["items"][0]["recurrence"]
    f = tmp_path / "rec.json"
    f.write_text(json.dumps(rec))
    code, _, _ = run(capsys, "verify-recurrence", "--recurrence-file", str(f), "--n-max", "60")
    assert code == EXIT_OK
    code, _, _ = run(capsys, "verify-recurrence", "--sequence", "lemma1", "--recurrence-file", str(f), "--n-max", "20")
    assert code == EXIT_FAIL
    code, _, _ = run(capsys, "guess-recurrence", "--order", "1", "--degree", "1")
    assert code == EXIT_FAIL


def test_identify(capsys):
    code, out, _ = run(capsys, "identify", "--row", "1")
    assert code == EXIT_OK and "relation (-27, 0, 2)" in out
    code, out, _ = run(capsys, "identify", "--value", "3.14159265358979323846264338327950288419716939937510582097494459", "--coeff-bound", "1000000")
    assert code == EXIT_FAIL


def test_congruence(capsys):
    code, out, _ = run(capsys, "congruence", "--pmin", "5", "--pmax", "13")
    assert code == EXIT_OK
    assert out.splitlines()[1:] == ["5, 20, 20, HOLDS", "7, 42, 42, HOLDS", "11, 110, 110, HOLDS", "13, 13, 13, HOLDS"]
    code, out, _ = run(capsys, "congruence", "--pmin", "14", "--pmax", "16")
    assert code == EXIT_OK and out.splitlines()[1:] == []
    with pytest.raises(SystemExit) as exc:
        main(["congruence", "--pmin", "20", "--pmax", "10"])
    assert exc.value.code == EXIT_USAGE


def test_p_check(capsys):
    code, out, _ = run(capsys, "p-check", "--z", "1/4")
    assert code == EXIT_OK and out.count("PASS") == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-table", "--digits", "30"],
        ["theorem2", "--json"],
        ["congruence", "--pmax", "41"],
        ["eval", "--row", "5", "--mode", "exact-rational", "--digits", "25"],
    ],
)
def test_reports_byte_identical(argv):
    cmd = [sys.executable, "-m", "sunpi", *argv]
    first = subprocess.run(cmd, capture_output=True, check=False).stdout
    second = subprocess.run(cmd, capture_output=True, check=False).stdout
    assert first and first == second
