import random
from fractions import Fraction

import pytest

import helpers
from torus_variety_forms.common import errors
from torus_variety_forms.geometry import curves, divisors, polyhedra, projective
from torus_variety_forms.geometry.curves import CurveModel
from torus_variety_forms.geometry.elliptic import ECPoint, EllipticCurve
from torus_variety_forms.geometry.projective import MobiusMap, P1Point

RAY = polyhedra.canonicalize_cone([[1]])
POINT = polyhedra.canonicalize_cone([], 1)
INF = P1Point.infinity()


def p(value) -> P1Point:
    return P1Point.parse(str(value))


def segment(low, high):
    return polyhedra.make_polyhedron([[low], [high]], POINT)


def shifted(value, tail=RAY):
    return polyhedra.point_polyhedron([value], tail)


def test_validate_datum_drops_neutral_coefficients():
    d = divisors.validate_datum(
        1, RAY, CurveModel.p1(), [(p(0), shifted(1)), (p(2), shifted(0))]
    )
    assert d.support == (p(0),)
    assert d.coefficient(p(2)) == polyhedra.cone_polyhedron(RAY)
    assert str(d) == "conv{(1)} + cone{(1)} (x) [0] on P1"


def test_validate_datum_errors():
    line = CurveModel.p1_minus([p(0), INF])

    with pytest.raises(errors.DimensionMismatch):
        divisors.validate_datum(0, RAY, line, [])

    with pytest.raises(errors.DimensionMismatch):
        divisors.validate_datum(2, RAY, line, [])

    with pytest.raises(errors.PointNotOnCurve):
        divisors.validate_datum(1, RAY, line, [(p(0), shifted(1))])

    with pytest.raises(errors.DuplicatePoint):
        divisors.validate_datum(1, RAY, line, [(p(1), shifted(1)), (p(1), shifted(2))])

    with pytest.raises(errors.TailMismatch):
        divisors.validate_datum(1, RAY, line, [(p(1), segment(0, 1))])

    tail = polyhedra.canonicalize_cone([[1, 0]])
    with pytest.raises(errors.DimensionMismatch):
        divisors.validate_datum(
            2, tail, line, [(p(1), polyhedra.point_polyhedron([0], POINT))]
        )


def test_bad_and_rigid_locus_classes():
    d = divisors.validate_datum(
        1,
        POINT,
        CurveModel.p1(),
        [
            (p(0), segment(0, 1)),
            (p(1), segment("1/2", "3/2")),
            (p(2), segment(0, 2)),
            (p(3), shifted(5, POINT)),
        ],
    )
    bad = divisors.bad_locus(d)
    assert str(bad) == "{0, 1} | {2}"
    assert bad.points == (p(0), p(1), p(2))
    assert bad.label(p(2)) == 1
    assert bad.label(p(3)) is None

    rigid = divisors.rigid_locus(d)
    assert str(rigid) == "{0} | {1} | {2}"


def test_rigid_locus_of_fractional_translates():
    d = divisors.validate_datum(
        1,
        RAY,
        CurveModel.p1(),
        [(p(0), shifted("1/2")), (p(1), shifted("3/2")), (p(2), shifted(4))],
    )
    assert divisors.bad_locus(d).classes == ()
    rigid = divisors.rigid_locus(d)
    assert rigid.classes == ((p(0), p(1)),)
    assert divisors.translate_vectors(d)[p(2)] == (4,)


def test_pullback_and_difference():
    d = divisors.validate_datum(1, RAY, CurveModel.p1(), [(p(0), shifted(1)), (INF, shifted(-1))])
    swap = MobiusMap.parse("0,1,1,0")
    pulled = divisors.pullback(swap, d)
    assert pulled.coefficient(INF) == shifted(1)
    assert pulled.coefficient(p(0)) == shifted(-1)

    result = divisors.difference(pulled, d)
    assert result.point is None
    assert str(result.divisor) == "(-2*(0) + 2*(inf))"

    found = divisors.plurifunction_witness(d.curve, result.divisor)
    assert [str(f) for f in found.functions] == ["t^-2"]
    assert divisors.witness_matches(d.curve, result.divisor, found.functions)

    wrong = curves.FactoredFunction.of([(p(0).value, 2)])
    assert not divisors.witness_matches(d.curve, result.divisor, [wrong])
    assert not divisors.witness_matches(d.curve, result.divisor, [])


def test_difference_stops_at_non_integral_translate():
    d1 = divisors.validate_datum(1, RAY, CurveModel.p1(), [(p(0), shifted("1/2"))])
    d2 = divisors.validate_datum(1, RAY, CurveModel.p1(), [(p(0), shifted(1))])
    result = divisors.difference(d1, d2)
    assert result.divisor is None
    assert result.point == p(0)

    other = divisors.validate_datum(1, POINT, CurveModel.p1(), [])
    with pytest.raises(errors.DimensionMismatch):
        divisors.difference(d1, other)


def test_plurifunction_witness_obstruction():
    curve = CurveModel.elliptic(EllipticCurve(Fraction(-1), Fraction(0)))
    divisor = curves.Divisor.of([(ECPoint.affine(0, 0), 1), (ECPoint.zero(), -1)])
    pd = divisors.PluriDivisor((curves.Divisor(), divisor))
    result = divisors.plurifunction_witness(curve, pd)
    assert result.functions is None
    assert result.coordinate == 1
    assert result.obstruction == "(0,0)"
    assert result.save_data() == {"coordinate": 1, "obstruction": "(0,0)"}
    assert divisors.PluriDivisor.zero(2).is_zero


def test_datum_save_data():
    d = divisors.validate_datum(1, RAY, CurveModel.p1_minus([p(0), INF]), [(p(1), shifted(2))])
    assert d.save_data() == {
        "torus_rank": 1,
        "tail_cone": {"rays": [[1]]},
        "curve": {"type": "p1-minus", "punctures": ["0", "inf"]},
        "coefficients": [{"point": "1", "vertices": [["2"]], "rays": [[1]]}],
    }


def random_bounded_datum(rng: random.Random) -> divisors.AHDatum:
    """A datum with bounded coefficients, some of them segments on the bad locus."""
    size = rng.randint(1, 5)
    points: set[P1Point] = set()
    while len(points) < size:
        points.add(helpers.random_p1_point(rng))
    items = []
    for point in sorted(points):
        low = Fraction(rng.randint(-6, 6), rng.randint(1, 2))
        if rng.random() < 0.5:
            items.append((point, segment(low, low + rng.randint(1, 3))))
        else:
            items.append((point, shifted(low, POINT)))
    return divisors.validate_datum(1, POINT, CurveModel.p1(), items)


@pytest.mark.parametrize("seed", range(30))
def test_pullback_is_a_right_action(seed):
    rng = random.Random(seed)
    d = random_bounded_datum(rng)
    family = projective.mobius_stabilizer([])
    psi, phi = family.random_member(rng), family.random_member(rng)

    assert divisors.pullback(MobiusMap.identity(), d) == d
    assert divisors.pullback(psi.compose(phi), d) == divisors.pullback(
        phi, divisors.pullback(psi, d)
    )


@pytest.mark.parametrize("seed", range(30))
def test_bad_locus_moves_with_the_pullback(seed):
    rng = random.Random(seed)
    d = random_bounded_datum(rng)
    psi = projective.mobius_stabilizer([]).random_member(rng)

    moved = divisors.bad_locus(divisors.pullback(psi, d))
    inverse = psi.inverse()
    expected = {inverse.apply(point) for point in divisors.bad_locus(d).points}
    assert set(moved.points) == expected
    assert len(moved.classes) == len(divisors.bad_locus(d).classes)
