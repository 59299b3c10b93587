from fractions import Fraction

import pytest

from helpers import gaussian
from torus_variety_forms.common import errors
from torus_variety_forms.geometry import divisors, lifting, polyhedra, real_forms
from torus_variety_forms.geometry.curves import CurveModel
from torus_variety_forms.geometry.lattice import PermutationKind
from torus_variety_forms.geometry.projective import P1Point
from torus_variety_forms.geometry.real_forms import SkeletonElement, VerdictKind

RAY = polyhedra.canonicalize_cone([[1]])


def p(value) -> P1Point:
    return P1Point.parse(str(value))


def real_datum(punctures, coefficients=(), tail=RAY, rank=1):
    curve = CurveModel.p1_minus([p(i) for i in punctures])
    d = divisors.validate_datum(rank, tail, curve, list(coefficients))
    return real_forms.validate_real_datum(d)


def test_conjugation_permutation():
    curve = CurveModel.p1_minus([p("i"), p("-i"), p(0)])
    images = real_forms.conjugation_permutation(curve)
    assert images == {p("-i"): p("i"), p(0): p(0), p("i"): p("-i")}

    with pytest.raises(errors.NotConjugationStable):
        real_forms.conjugation_permutation(CurveModel.p1_minus([p("i")]))


def test_validate_real_datum_coefficients():
    shifted = polyhedra.point_polyhedron([1], RAY)
    real_datum(["inf"], [(p("1+i"), shifted), (p("1-i"), shifted)])

    with pytest.raises(errors.NotConjugationStable):
        real_datum(["inf"], [(p("1+i"), shifted)])

    with pytest.raises(errors.NotConjugationStable):
        real_datum(
            ["inf"],
            [(p("1+i"), shifted), (p("1-i"), polyhedra.point_polyhedron([2], RAY))],
        )


def test_validate_real_datum_elliptic(load_datum):
    d = load_datum("elliptic-one").datum
    assert real_forms.validate_real_datum(d).datum == d


@pytest.mark.parametrize(
    "name,sigma",
    [
        ("trivial-punctured", [[1]]),
        ("circle", [[-1]]),
        ("projective", []),
        ("fixed-point", [[1, 0], [0, 1]]),
    ],
)
def test_twisted_lambda(load_datum, name, sigma):
    twisted = real_forms.twisted_lambda(load_datum(name).real_datum())
    assert twisted.sigma.tolist() == sigma


def test_twisted_lambda_rank_two():
    tail = polyhedra.canonicalize_cone([[1, 0], [0, 1]])
    rd = real_datum(["i", "-i"], tail=tail, rank=2)
    assert real_forms.twisted_lambda(rd).sigma.tolist() == [[-1, 0], [0, -1]]


@pytest.mark.parametrize(
    "name,kind,text",
    [
        (
            "trivial-punctured",
            VerdictKind.NOT_CERTIFIED,
            "NotCertified, witness involution {0->inf, inf->0} with b = 1",
        ),
        (
            "circle",
            VerdictKind.NOT_CERTIFIED,
            "NotCertified, witness involution {-i->i, i->-i} with b = 1",
        ),
        ("projective", VerdictKind.FINITE_CERTIFIED, "FiniteCertified"),
        ("fixed-point", VerdictKind.FINITE_CERTIFIED, "FiniteCertified(inf)"),
        ("elliptic-two", VerdictKind.FINITE_CERTIFIED, "FiniteCertified"),
    ],
)
def test_finiteness_verdict(load_datum, name, kind, text):
    datum_file = load_datum(name)
    verdict = real_forms.finiteness_verdict(datum_file.real_datum())
    assert verdict.kind == kind
    assert str(verdict) == text


def test_finiteness_verdict_sign_discrepancy(load_datum):
    verdict = real_forms.finiteness_verdict(load_datum("trivial-punctured").real_datum())
    assert verdict.note == real_forms.SIGN_DISCREPANCY
    assert verdict.witness.kind == PermutationKind.NOT_PERMUTATION
    assert verdict.save_data()["witness"]["witness"] == {"0": "inf", "inf": "0"}


def test_finiteness_verdict_without_lifted_swap():
    rd = real_datum(
        [0, "inf"],
        [
            (p(1), polyhedra.point_polyhedron(["1/2"], RAY)),
            (p(2), polyhedra.point_polyhedron(["1/3"], RAY)),
        ],
    )
    k = lifting.lift_group(rd.datum)
    assert str(k) == "finite group of order 1"
    verdict = real_forms.finiteness_verdict(rd, k)
    assert verdict.kind == VerdictKind.FINITE_CERTIFIED
    assert str(verdict) == "FiniteCertified(0)"


def test_finiteness_verdict_unsupported():
    rd = real_datum([0, 1, "inf"])
    verdict = real_forms.finiteness_verdict(rd)
    assert verdict.kind == VerdictKind.UNSUPPORTED
    assert str(verdict).startswith("Unsupported: ")

    verdict = real_forms.finiteness_verdict(rd, cap=5)
    assert verdict.kind == VerdictKind.UNSUPPORTED
    assert "more than 5 elements" in verdict.reason


def test_finiteness_verdict_one_entry_per_coordinate():
    tail = polyhedra.canonicalize_cone([[1, 0], [0, 1]])
    rd = real_datum(["i", "-i", 0], tail=tail, rank=2)
    verdict = real_forms.finiteness_verdict(rd)
    assert len(verdict.evidence) == 2


def test_skeleton_group():
    h = SkeletonElement(3, -1)
    assert h * h.inverse() == SkeletonElement(0)
    assert h.is_involution
    assert not SkeletonElement(2).is_involution
    assert str(h) == "(3,-)"
    assert SkeletonElement(1).conjugate(real_forms.cocycle(0)) == real_forms.cocycle(2)
    assert SkeletonElement(1, -1).conjugate(real_forms.cocycle(0)) == real_forms.cocycle(2)


def test_skeleton_conjugator():
    assert real_forms.skeleton_conjugator(0, 1, 5) is None
    assert real_forms.skeleton_conjugator(0, 2, 5) == SkeletonElement(1)
    assert real_forms.skeleton_conjugator(0, 20, 5) is None


def test_mu_family_classify():
    classes = real_forms.mu_family_classify(16)
    assert len(classes.classes) == 2
    assert str(classes) == "{even, odd}"
    assert classes.classes[0][:3] == (0, 2, -2)
    assert classes.classes[1][:2] == (1, -1)
    assert len(classes.conjugators) == 31
    for representative, member, h in classes.conjugators:
        assert h.conjugate(real_forms.cocycle(representative)) == real_forms.cocycle(member)


@pytest.mark.parametrize("bound", [0, 65])
def test_mu_family_classify_bounds(bound):
    with pytest.raises(errors.InputError):
        real_forms.mu_family_classify(bound)


def test_solve_phase():
    alpha = real_forms.unit_circle_point()
    assert alpha.norm() == 1
    phase = real_forms.solve_phase(alpha)
    assert phase / phase.conjugate() == alpha
    assert real_forms.solve_phase(gaussian(-1)) == gaussian(0, 1)
    assert real_forms.solve_phase(gaussian(1)) == gaussian(2)

    with pytest.raises(errors.InputError):
        real_forms.solve_phase(gaussian(2))

    other = gaussian(Fraction(-3, 5), Fraction(4, 5))
    phase = real_forms.solve_phase(other)
    assert phase / phase.conjugate() == other
