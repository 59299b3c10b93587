import logging

import pytest

import helpers
from torus_variety_forms.common import report


def test_aut_punctured_line(capsys):
    path = helpers.get_datum_path("trivial-punctured")

    exit_code, stdout, stderr = helpers.run_main(["aut", "--datum-file", str(path)], capsys)

    assert exit_code == 0
    assert stderr == ""
    assert stdout.splitlines() == [
        "aut:",
        "  1 -> Aut_C(X) -> Aut(X) -> K -> 1",
        "  n = 1, Aut_C(X) = T x Lambda with Lambda = Z",
        "  units basis: t^-1",
        "  K = torus family fixing {0, inf} and the swap coset",
        "  mobius[1,0,0,1]: Liftable, f = 1",
        "  mobius[0,1,1,0]: Liftable, f = 1",
        "  mobius[0,1,1,0] acts on Lambda by [[-1]]",
    ]


@pytest.mark.parametrize(
    "name,lambda_line,k_line",
    [
        ("projective", "n = 1, Aut_C(X) = T x Lambda with Lambda = 0", "K = full-pgl2"),
        (
            "fixed-point",
            "n = 1, Aut_C(X) = T x Lambda with Lambda = Z^2",
            "K = finite group of order 2",
        ),
        (
            "elliptic-two",
            "n = 1, Aut_C(X) = T x Lambda with Lambda = 0",
            "K = translations by 2-torsion points (4) and [-1]",
        ),
    ],
)
def test_aut_summary(capsys, name, lambda_line, k_line):
    path = helpers.get_datum_path(name)

    exit_code, stdout, _ = helpers.run_main(["aut", "--datum-file", str(path)], capsys)

    assert exit_code == 0
    lines = [i.strip() for i in stdout.splitlines()]
    assert lambda_line in lines
    assert k_line in lines


def test_aut_json(capsys):
    path = helpers.get_datum_path("fixed-point")

    exit_code, stdout, _ = helpers.run_main(
        ["aut", "--datum-file", str(path), "--format", "json", "--seed", "7", "--spot-checks", "3"],
        capsys,
    )

    assert exit_code == 0
    item = report.Report.from_json(stdout)
    assert item.arguments == {"datum_file": str(path), "seed": 7, "spot_checks": 3}
    fiber = item.result["fiber_group"]
    assert fiber["lambda_rank"] == 2
    assert fiber["units"]["basis"] == ["t^-1 * (t - 1)", "t^-1"]
    assert fiber["k_action"] == [
        {"automorphism": "mobius[1,-1,0,-1]", "matrix": [[-1, -1], [0, 1]]}
    ]
    assert item.result["k_summary"] == "finite group of order 2"


def test_aut_spot_checks_are_seeded(capsys):
    path = helpers.get_datum_path("trivial-punctured")
    args = ["aut", "--datum-file", str(path), "--format", "json", "--seed", "11"]

    _, first, _ = helpers.run_main(args, capsys)
    _, second, _ = helpers.run_main(args, capsys)

    assert first == second
    assert report.Report.from_json(first).result["k"]["spot_checks"] == 20


def test_aut_invalid_spot_checks(capsys, caplog):
    path = helpers.get_datum_path("trivial-punctured")

    exit_code, stdout, _ = helpers.run_main(
        ["aut", "--datum-file", str(path), "--spot-checks", "-1"], capsys
    )

    assert exit_code == 1
    assert stdout == ""
    errors = [m for _, level, m in caplog.record_tuples if level == logging.ERROR]
    assert errors[0].startswith("InputError: ")
