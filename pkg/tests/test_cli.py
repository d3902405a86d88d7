import csv
import io

import pytest

from ezdiv.cli import main
from ezdiv.report import CSV_HEADER


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_ezd_check_noembdim(capsys):
    code, out, _ = _run(capsys, "--format", "csv", "ezd-check", "noembdim", "--element", "V")
    rows = _rows(out)
    assert code == 0 and rows[0] == CSV_HEADER
    assert rows[1][2:5] == ["partner", "-", "V"]


@pytest.mark.parametrize("element,partner", [("x^2", "x"), ("x", "x^2")])
def test_ezd_check_cube(capsys, element, partner):
    code, out, _ = _run(capsys, "ezd-check", "cube", "--element", element, "--format", "csv")
    assert code == 0
    assert _rows(out)[1][4] == partner


def test_ezd_check_failure_exit(capsys):
    code, out, _ = _run(capsys, "ezd-check", "squarezero2", "--element", "y")
    assert code == 1 and "failed" in out


def test_scan(capsys):
    code, out, _ = _run(capsys, "ezd-check", "fatpoint", "--scan", "--format", "csv")
    assert code == 0 and "partner x" in out


def test_lift_obstructed(capsys):
    code, out, _ = _run(capsys, "--format", "csv", "lift", "xquartic", "--x", "x^2", "--module", "k")
    rows = {r[2]: r[4] for r in _rows(out)[1:]}
    assert code == 0
    assert rows["status"] == "obstructed" and rows["class coordinates"] == "1"


def test_lift_free(capsys):
    code, out, _ = _run(capsys, "--format", "csv", "lift", "xquartic", "--x", "x^2", "--module", "r1", "-n", "4")
    rows = {r[2]: r[4] for r in _rows(out)[1:]}
    assert code == 0 and rows["status"] == "lifted"
    assert rows["Tor_4(M',R)"] == "0"


def test_resolve(capsys):
    code, out, _ = _run(capsys, "resolve", "squarezero2", "--residue-field", "-n", "6", "--format", "csv")
    rows = {r[2]: r[4] for r in _rows(out)[1:]}
    assert code == 0
    assert [rows[f"beta_{i}"] for i in range(7)] == [str(2**i) for i in range(7)]
    assert rows["growth"].startswith("exponential")


def test_resolve_over_quotient(capsys):
    code, out, _ = _run(capsys, "resolve", "cube", "--residue-field", "--over-quotient", "x^2", "-n", "6")
    assert code == 0 and "period" in out


def test_tor_and_ext(capsys):
    for cmd in ("tor", "ext"):
        code, out, _ = _run(capsys, cmd, "cube", "--x", "x^2", "--m", "r2", "--n", "k",
                            "--range", "1..4", "--format", "csv")
        assert code == 0
        over_s = [r[4] for r in _rows(out)[1:] if r[0].startswith(f"{cmd} over S")]
        assert over_s == ["2"] * 4


def test_ring_info(capsys):
    code, out, _ = _run(capsys, "ring-info", "noembdim", "--format", "csv")
    rows = {r[2]: r[4] for r in _rows(out)[1:]}
    assert code == 0 and rows["dim"] == "8" and rows["embedding dimension"] == "4"


def test_usage_errors(capsys):
    code, _, err = _run(capsys, "ring-info", "no-such-ring")
    assert code == 2 and "error" in err
    code, _, err = _run(capsys, "ezd-check", "cube", "--element", "x^^2")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["tor", "cube", "--x", "x^2", "--m", "k", "--n", "k", "--range", "3..1"])


def test_verify_is_deterministic(capsys):
    args = ["--format", "csv", "verify", "fatpoint", "--x", "x", "--seed", "3", "--random", "4"]
    code1, out1, _ = _run(capsys, *args)
    code2, out2, _ = _run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert _rows(out1)[0] == CSV_HEADER


def test_verify_single_suite(capsys):
    code, out, _ = _run(capsys, "verify", "cube", "--x", "x^2", "--suite", "lemma", "--random", "2")
    assert code == 0 and "overall: pass" in out
