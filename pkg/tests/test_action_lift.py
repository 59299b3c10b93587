import logging

import pytest

import helpers
from torus_variety_forms.common import report


@pytest.mark.parametrize(
    "name,args,line",
    [
        ("swap", ["--mobius", "0,1,1,0"], "Liftable, f = t^-2"),
        ("swap", ["--mobius", "2,0,0,1"], "Liftable, f = 1"),
        ("interval", ["--mobius=-1,1,0,1"], "NonTranslate at 0"),
        ("elliptic-one", ["--ec-translate", "(1,0)"], "NotPrincipal coord 0, obstruction (1,0)"),
        ("elliptic-one", ["--ec-neg"], "Liftable, f = sum of points = O"),
        ("elliptic-two", ["--ec-translate", "(1,0)"], "Liftable, f = sum of points = O"),
        ("trivial-punctured", ["--mobius", "0,1,1,0"], "Liftable, f = 1"),
    ],
)
def test_lift_text(capsys, name, args, line):
    path = helpers.get_datum_path(name)

    exit_code, stdout, stderr = helpers.run_main(
        ["lift", "--datum-file", str(path), *args], capsys
    )

    assert exit_code == 0
    assert stdout == f"lift:\n  {line}\n"
    assert stderr == ""


def test_lift_json(capsys):
    path = helpers.get_datum_path("swap")

    exit_code, stdout, _ = helpers.run_main(
        ["lift", "--datum-file", str(path), "--mobius", "0,1,1,0", "--format", "json"], capsys
    )

    assert exit_code == 0
    item = report.Report.from_json(stdout)
    assert item.arguments == {
        "datum_file": str(path),
        "kind": "mobius",
        "automorphism": "0,1,1,0",
    }
    assert item.result["verdict"] == "liftable"
    assert item.result["witness"] == ["t^-2"]
    assert item.result["difference"] == [{"0": -2, "inf": 2}]
    assert item.summary == ["Liftable, f = t^-2"]


@pytest.mark.parametrize(
    "name,args,exit_code,error_name",
    [
        ("swap", ["--ec-neg"], 2, "UnsupportedAutomorphism"),
        ("elliptic-one", ["--mobius", "0,1,1,0"], 2, "UnsupportedAutomorphism"),
        ("trivial-punctured", ["--mobius", "1,1,0,1"], 1, "NotAnAutomorphism"),
        ("swap", ["--mobius", "1,1,1,1"], 1, "NotAnAutomorphism"),
        ("swap", ["--mobius", "1,2"], 1, "DatumParseError"),
        ("elliptic-one", ["--ec-translate", "(1,1)"], 1, "PointNotOnCurve"),
        ("elliptic-one", ["--ec-translate", "(1,1"], 1, "DatumParseError"),
    ],
)
def test_lift_errors(capsys, caplog, name, args, exit_code, error_name):
    path = helpers.get_datum_path(name)

    actual, stdout, _ = helpers.run_main(["lift", "--datum-file", str(path), *args], capsys)

    assert actual == exit_code
    assert stdout == ""
    errors = [m for _, level, m in caplog.record_tuples if level == logging.ERROR]
    assert errors[0].startswith(f"{error_name}: ")
