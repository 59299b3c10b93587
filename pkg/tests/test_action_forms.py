import logging

import pytest

import helpers
from torus_variety_forms.common import report
from torus_variety_forms.geometry import real_forms


def test_forms_punctured_line(capsys, caplog):
    path = helpers.get_datum_path("trivial-punctured")

    exit_code, stdout, stderr = helpers.run_main(["forms", "--datum-file", str(path)], capsys)

    assert exit_code == 0
    assert stderr == ""
    assert stdout.splitlines() == [
        "forms:",
        "  NotCertified, witness involution {0->inf, inf->0} with b = 1",
        "  K = torus family fixing {0, inf} and the swap coset",
        "  Lambda = Z, conjugation gives H^1 = 1",
        "  witness lattice: H^1 = Z/2, type (0,1,0)",
        "  brute force at bound 5: order 2",
        "  brute force at bound 7: order 2",
        "  mu classes for |n| <= 16: {even, odd}",
        "  phase: alpha = 3/5+4/5i, lambda = 8/5+4/5i with lambda / conj(lambda) = alpha",
        f"warning: {real_forms.SIGN_DISCREPANCY}",
    ]
    warnings = [m for _, level, m in caplog.record_tuples if level == logging.WARNING]
    assert warnings == [real_forms.SIGN_DISCREPANCY]


def test_forms_bound(capsys):
    path = helpers.get_datum_path("trivial-punctured")

    exit_code, stdout, _ = helpers.run_main(
        ["forms", "--datum-file", str(path), "--bound", "4"], capsys
    )

    assert exit_code == 0
    assert "  mu classes for |n| <= 4: {even, odd}" in stdout.splitlines()


@pytest.mark.parametrize("bound", ["0", "65"])
def test_forms_bound_out_of_range(capsys, caplog, bound):
    path = helpers.get_datum_path("trivial-punctured")

    exit_code, stdout, _ = helpers.run_main(
        ["forms", "--datum-file", str(path), "--bound", bound], capsys
    )

    assert exit_code == 1
    assert stdout == ""
    errors = [m for _, level, m in caplog.record_tuples if level == logging.ERROR]
    assert errors[0].startswith("InputError: ")


@pytest.mark.parametrize(
    "name,lines",
    [
        (
            "projective",
            ["FiniteCertified", "K = full-pgl2", "Lambda = 0, conjugation gives H^1 = 1"],
        ),
        ("fixed-point", ["FiniteCertified(inf)"]),
        ("circle", ["Lambda = Z, conjugation gives H^1 = Z/2"]),
    ],
)
def test_forms_verdicts(capsys, name, lines):
    path = helpers.get_datum_path(name)

    exit_code, stdout, _ = helpers.run_main(["forms", "--datum-file", str(path)], capsys)

    assert exit_code == 0
    actual = [i.strip() for i in stdout.splitlines()]
    for line in lines:
        assert line in actual


def test_forms_not_marked_real(capsys, caplog):
    caplog.set_level(logging.INFO)
    path = helpers.get_datum_path("swap")

    exit_code, stdout, _ = helpers.run_main(["forms", "--datum-file", str(path)], capsys)

    assert exit_code == 0
    assert stdout.splitlines()[1].startswith("  FiniteCertified")
    assert any("not marked real" in m for _, _, m in caplog.record_tuples)


def test_forms_unsupported_group(tmp_path, capsys, caplog):
    path = helpers.write_datum(
        tmp_path,
        "three",
        {
            "torus_rank": 1,
            "tail_cone": {"rays": [[1]]},
            "curve": {"type": "p1-minus", "punctures": ["0", "1", "inf"]},
            "coefficients": [],
            "real": {"enabled": True},
        },
    )

    exit_code, stdout, _ = helpers.run_main(["forms", "--datum-file", str(path)], capsys)

    assert exit_code == 2
    assert stdout == ""
    errors = [m for _, level, m in caplog.record_tuples if level == logging.ERROR]
    assert errors[0].startswith("UnsupportedError: ")


def test_forms_not_conjugation_stable(tmp_path, capsys, caplog):
    path = helpers.write_datum(
        tmp_path,
        "unstable",
        {
            "torus_rank": 1,
            "tail_cone": {"rays": [[1]]},
            "curve": {"type": "p1-minus", "punctures": ["i", "inf"]},
            "coefficients": [],
        },
    )

    check_code, _, _ = helpers.run_main(["check", "--datum-file", str(path)], capsys)
    forms_code, stdout, _ = helpers.run_main(["forms", "--datum-file", str(path)], capsys)

    assert check_code == 0
    assert forms_code == 1
    assert stdout == ""
    errors = [m for _, level, m in caplog.record_tuples if level == logging.ERROR]
    assert errors[0].startswith("NotConjugationStable: ")


def test_forms_json(capsys):
    path = helpers.get_datum_path("trivial-punctured")

    exit_code, stdout, _ = helpers.run_main(
        ["forms", "--datum-file", str(path), "--format", "json", "--bound", "8"], capsys
    )

    assert exit_code == 0
    item = report.Report.from_json(stdout)
    assert item.command == "forms"
    assert item.arguments == {
        "datum_file": str(path),
        "bound": 8,
        "seed": 0,
        "spot_checks": 20,
    }
    assert set(item.result) == {
        "verdict",
        "k",
        "lambda",
        "lambda_cohomology",
        "witness_lattice",
        "brute_force",
        "mu_classification",
        "phase",
        "summary",
    }
    assert item.result["lambda_cohomology"]["type"] == [1, 0, 0]
    assert [i["bound"] for i in item.result["brute_force"]] == [5, 7]
    assert item.warnings == (real_forms.SIGN_DISCREPANCY,)
