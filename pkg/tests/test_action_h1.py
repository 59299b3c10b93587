import logging

import pytest

import helpers
from torus_variety_forms.common import report


@pytest.mark.parametrize(
    "matrix,lines",
    [
        (
            "[[-1]]",
            [
                "H^1 = Z/2, type (0,1,0)",
                "H^0 has rank 0, Tate H^0 has order 1",
                "brute force at bound 5: order 2",
            ],
        ),
        (
            "[[0,1],[1,0]]",
            [
                "H^1 = 1, type (0,0,1)",
                "H^0 has rank 1, Tate H^0 has order 1",
                "brute force at bound 5: order 1",
            ],
        ),
        (
            "[[1]]",
            [
                "H^1 = 1, type (1,0,0)",
                "H^0 has rank 1, Tate H^0 has order 2",
                "brute force at bound 5: order 1",
            ],
        ),
        (
            '[["-1", 0], [0, -1]]',
            [
                "H^1 = (Z/2)^2, type (0,2,0)",
                "H^0 has rank 0, Tate H^0 has order 1",
                "brute force at bound 5: order 4",
            ],
        ),
    ],
)
def test_h1_text(capsys, matrix, lines):
    exit_code, stdout, stderr = helpers.run_main(["h1", "--matrix", matrix], capsys)

    assert exit_code == 0
    assert stdout.splitlines() == ["h1:"] + [f"  {i}" for i in lines]
    assert stderr == ""


def test_h1_skips_brute_force_above_rank_five(capsys):
    rows = [[-int(i == j) for j in range(6)] for i in range(6)]

    exit_code, stdout, _ = helpers.run_main(["h1", "--matrix", str(rows)], capsys)

    assert exit_code == 0
    assert stdout.splitlines() == [
        "h1:",
        "  H^1 = (Z/2)^6, type (0,6,0)",
        "  H^0 has rank 0, Tate H^0 has order 1",
    ]


def test_h1_json(capsys):
    exit_code, stdout, _ = helpers.run_main(
        ["h1", "--matrix", "[[0,1],[1,0]]", "--format", "json"], capsys
    )

    assert exit_code == 0
    item = report.Report.from_json(stdout)
    assert item.command == "h1"
    assert item.arguments == {"matrix": [[0, 1], [1, 0]]}
    assert item.result["lattice"] == {"rank": 2, "sigma": [[0, 1], [1, 0]]}
    assert item.result["cohomology"]["type"] == [0, 0, 1]
    assert item.result["cohomology"]["h1_order"] == 1
    assert [i["bound"] for i in item.result["brute_force"]] == [5]


@pytest.mark.parametrize(
    "matrix,exit_code,error_name",
    [
        ("[[2]]", 2, "NotInvolution"),
        ("[[1,2]]", 2, "NotInvolution"),
        ("[[0,1],[-1,0]]", 2, "NotInvolution"),
        ("[1]", 1, "DatumParseError"),
        ("nope", 1, "DatumParseError"),
        ('{"a": 1}', 1, "DatumParseError"),
        ("[[1.5]]", 1, "DatumParseError"),
        ("[[true]]", 1, "DatumParseError"),
    ],
)
def test_h1_errors(capsys, caplog, matrix, exit_code, error_name):
    actual, stdout, _ = helpers.run_main(["h1", "--matrix", matrix], capsys)

    assert actual == exit_code
    assert stdout == ""
    errors = [m for _, level, m in caplog.record_tuples if level == logging.ERROR]
    assert errors[0].startswith(f"{error_name}: ")
