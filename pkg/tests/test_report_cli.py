import contextlib
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from bundlechar.cli import main, parse_range
from bundlechar.report import SUITES, BundleReport, ReportConfig, point_cloud_csv, report, verify

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "scripts"))
from regen_golden import CASES, render  # noqa: E402


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_outputs(name):
    code, out = render(CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_report_7():
    rep = report(7)
    S = rep.sections
    assert S["genus"]["data"]["genus"] == 2
    assert S["trace_field"]["data"]["degree"] == 6
    assert S["dilatation"]["data"]["d"] == 6
    assert not rep.errors


def test_report_0_is_table_row():
    S = report(0).sections
    assert S["nonhyperbolic_table"]["status"] == "ok"
    assert all(r["max_residual"] <= 1e-10 for r in S["nonhyperbolic_table"]["data"])
    assert S["genus"]["status"] == "skipped" and S["dilatation"]["status"] == "skipped"


def test_report_minus_two_is_reduced():
    S = report(-2).sections
    (surf,) = S["reducible"]["data"]
    assert surf["dimension"] == 2
    assert "nonhyperbolic_table" not in S and "intersection_lattice" not in S
    assert S["genus"]["status"] == "skipped"


@pytest.mark.parametrize("n", [-7, 6, 1])
def test_report_is_deterministic(n):
    assert report(n).dumps() == report(n).dumps()


def test_report_json_round_trip_exact_fields():
    d = json.loads(report(6).dumps())
    from bundlechar.poly import IntPoly
    from bundlechar.variety import hyperelliptic_model

    assert IntPoly.from_json(d["sections"]["genus"]["data"]["model"]) == hyperelliptic_model(6)
    assert json.loads(json.dumps(d, sort_keys=True)) == d


def test_report_numeric_fields_carry_tol():
    S = report(10).sections
    for name in ("canonical", "extra_line", "discrete_faithful"):
        assert S[name]["data"]["tol"] == 1e-9
    assert S["alexander"]["data"]["tol"] == 1e-8
    for p in S["multiplicity_points"]["data"]["points"]:
        assert p["tol"] == 1e-9


def test_csv_point_cloud():
    text = point_cloud_csv(report(6).point_cloud())
    lines = text.splitlines()
    assert lines[0] == "tag,x_re,x_im,y_re,y_im,z_re,z_im"
    assert len(lines) > 10


def test_verify_examples():
    assert verify(range(-30, 31), ["identities"]).ok
    assert verify(range(3, 51), ["relation"]).ok
    assert verify(range(-8, 9), ["F-entries"]).ok


def test_verify_defaults_all_pass():
    out = verify()
    assert out.ok, [r for r in out.results if r.status == "fail"]
    assert out.seconds < 300
    assert {r.suite for r in out.results} == set(SUITES)


def test_verify_unknown_suite():
    with pytest.raises(KeyError):
        verify(range(3, 4), ["nope"])


def test_parse_range():
    assert parse_range("-3..3") == range(-3, 4)
    with pytest.raises(Exception):
        parse_range("3-4")


def test_cli_exit_codes(tmp_path):
    assert run(["verify", "--range", "-5..5", "--suite", "identities"])[0] == 0
    assert run(["verify", "--suite", "nope"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    code, out = run(["tracefield", "-n", "2"])
    assert code == 1


def test_cli_negative_values():
    code, out = run(["df", "-n", "-3"])
    assert code == 0 and json.loads(out)["count"] == 4
    code, out = run(["fillings", "-n", "0", "--k-range", "-1..1"])
    assert code == 0


def test_cli_report_files(tmp_path):
    j, c = tmp_path / "r.json", tmp_path / "r.csv"
    code, _ = run(["report", "-n", "7", "--json", str(j), "--csv", str(c)])
    assert code == 0
    assert json.loads(j.read_text())["n"] == 7
    assert c.read_text().startswith("tag,")


def test_cli_alexander():
    code, out = run(["alexander", "-n", "7", "--sample", "5"])
    assert code == 0 and json.loads(out)["oracle_max_deviation"] <= 1e-8


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bundlechar", "dilatation", "--range", "3..4"], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)[0]["d"] == 2
