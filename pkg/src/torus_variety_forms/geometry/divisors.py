"""Polyhedral divisors on curves, their bad locus, pullbacks and plurifunctions."""

import dataclasses
import logging
import typing

from torus_variety_forms.common import errors
from torus_variety_forms.geometry import curves, polyhedra
from torus_variety_forms.geometry.curves import CurveModel, Divisor, Point
from torus_variety_forms.geometry.polyhedra import Cone, Polyhedron

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class AHDatum:
    """A polyhedral divisor sum Delta_P (x) P with common tail cone.

    Points that are not listed carry the tail cone itself.
    Build instances with :func:`validate_datum`.
    """

    torus_rank: int
    tail: Cone
    curve: CurveModel
    coefficients: tuple[tuple[Point, Polyhedron], ...] = ()
    """Sorted (point, coefficient) pairs, without coefficients equal to the tail."""

    @property
    def support(self) -> tuple[Point, ...]:
        """The points with a coefficient other than the tail."""
        return tuple(p for p, _ in self.coefficients)

    def coefficient(self, point: Point) -> Polyhedron:
        """The coefficient at a point, the tail cone outside the support."""
        return dict(self.coefficients).get(point, polyhedra.cone_polyhedron(self.tail))

    def save_data(self) -> typing.Mapping:
        """Save the datum to a mapping."""
        return {
            "torus_rank": self.torus_rank,
            "tail_cone": dict(self.tail.save_data()),
            "curve": dict(self.curve.save_data()),
            "coefficients": [
                {"point": str(p), **coefficient.save_data()}
                for p, coefficient in self.coefficients
            ],
        }

    def __str__(self) -> str:
        if not self.coefficients:
            return f"0 on {self.curve}, tail {self.tail}"
        terms = " + ".join(f"{c} (x) [{p}]" for p, c in self.coefficients)
        return f"{terms} on {self.curve}"


def validate_datum(
    torus_rank: int,
    tail: Cone,
    curve: CurveModel,
    coefficients: typing.Iterable[tuple[Point, Polyhedron]],
) -> AHDatum:
    """Check and canonicalize a polyhedral divisor.

    Args:
        torus_rank: The rank n of the torus.
        tail: The common tail cone.
        curve: The base curve.
        coefficients: The (point, polyhedron) pairs.

    Returns:
        The datum, with coefficients equal to the tail cone dropped.

    Raises:
        DimensionMismatch: if a rank does not match.
        PointNotOnCurve: if a point is not on the curve.
        DuplicatePoint: if a point is listed twice.
        TailMismatch: if a coefficient has a different tail cone.
    """
    if torus_rank < 1:
        raise errors.DimensionMismatch(f"The torus rank must be at least 1, got {torus_rank}.")
    if tail.rank != torus_rank:
        raise errors.DimensionMismatch(
            f"The tail cone has rank {tail.rank}, expected {torus_rank}."
        )

    neutral = polyhedra.cone_polyhedron(tail)
    kept: dict[Point, Polyhedron] = {}
    for point, coefficient in coefficients:
        curve.check_point(point)
        if point in kept:
            raise errors.DuplicatePoint(f"Point {point} has two coefficients.")
        if coefficient.rank != torus_rank:
            raise errors.DimensionMismatch(
                f"The coefficient at {point} has rank {coefficient.rank}, expected {torus_rank}."
            )
        if coefficient.tail != tail:
            raise errors.TailMismatch(
                f"The coefficient at {point} has tail cone {coefficient.tail}, expected {tail}."
            )
        kept[point] = coefficient

    datum = AHDatum(
        torus_rank=torus_rank,
        tail=tail,
        curve=curve,
        coefficients=tuple(sorted((p, c) for p, c in kept.items() if c != neutral)),
    )
    logger.debug("Validated datum with support of size %s.", len(datum.coefficients))
    return datum


@dataclasses.dataclass(frozen=True)
class BadLocus:
    """Points with non-translate coefficients, grouped into translate classes."""

    classes: tuple[tuple[Point, ...], ...] = ()

    @property
    def points(self) -> tuple[Point, ...]:
        """All points of the locus, sorted."""
        return tuple(sorted(p for group in self.classes for p in group))

    def label(self, point: Point) -> typing.Optional[int]:
        """The index of the class containing the point."""
        for index, group in enumerate(self.classes):
            if point in group:
                return index
        return None

    def save_data(self) -> typing.Mapping:
        """Save the locus to a mapping."""
        return {"classes": [[str(p) for p in group] for group in self.classes]}

    def __str__(self) -> str:
        if not self.classes:
            return "{}"
        return " | ".join("{" + ", ".join(str(p) for p in g) + "}" for g in self.classes)


def _partition(
    d: AHDatum, points: typing.Iterable[Point], integral: bool
) -> BadLocus:
    groups: list[list[Point]] = []
    for point in points:
        for group in groups:
            shift = polyhedra.translate_of(d.coefficient(group[0]), d.coefficient(point))
            if shift is not None and (not integral or polyhedra.is_integral(shift)):
                group.append(point)
                break
        else:
            groups.append([point])
    return BadLocus(tuple(tuple(g) for g in groups))


def _translate_vector(d: AHDatum, point: Point) -> typing.Optional[polyhedra.RationalVector]:
    return polyhedra.translate_of(polyhedra.cone_polyhedron(d.tail), d.coefficient(point))


def bad_locus(d: AHDatum) -> BadLocus:
    """The points whose coefficient is not a translate of the tail cone."""
    bad = [p for p in d.support if _translate_vector(d, p) is None]
    return _partition(d, bad, integral=False)


def rigid_locus(d: AHDatum) -> BadLocus:
    """The points whose coefficient is not an integral translate of the tail cone.

    Classes group points whose coefficients are integral translates of each other.
    """
    rigid = []
    for point in d.support:
        shift = _translate_vector(d, point)
        if shift is None or not polyhedra.is_integral(shift):
            rigid.append(point)
    return _partition(d, rigid, integral=True)


def translate_vectors(d: AHDatum) -> dict[Point, polyhedra.RationalVector]:
    """The translate vector chi_P with Delta_P = chi_P + tail, for the good points."""
    result = {}
    for point in d.support:
        shift = _translate_vector(d, point)
        if shift is not None:
            result[point] = shift
    return result


def pullback(psi: curves.Automorphism, d: AHDatum) -> AHDatum:
    """The datum whose coefficient at P is the coefficient of d at psi(P)."""
    d.curve.check_automorphism(psi)
    inverse = psi.inverse()
    moved = tuple(
        sorted((d.curve.apply(inverse, p), c) for p, c in d.coefficients)  # type: ignore[arg-type]
    )
    return dataclasses.replace(d, coefficients=moved)


@dataclasses.dataclass(frozen=True)
class PluriDivisor:
    """An n-tuple of divisors on the curve, one per torus coordinate."""

    divisors: tuple[Divisor, ...]

    @classmethod
    def zero(cls, rank: int) -> "PluriDivisor":
        """The zero pluridivisor of the given rank."""
        return PluriDivisor(tuple(Divisor() for _ in range(rank)))

    @property
    def is_zero(self) -> bool:
        """Whether every coordinate divisor is zero."""
        return not any(self.divisors)

    def save_data(self) -> typing.Mapping:
        """Save the pluridivisor to a mapping."""
        return {"divisors": [dict(i.save_data()) for i in self.divisors]}

    def __str__(self) -> str:
        return "(" + "; ".join(str(i) for i in self.divisors) + ")"


@dataclasses.dataclass(frozen=True)
class DifferenceResult:
    """The plurifunction divisor d1 - d2, or the first point where none exists."""

    divisor: typing.Optional[PluriDivisor] = None
    point: typing.Optional[Point] = None


def difference(d1: AHDatum, d2: AHDatum) -> DifferenceResult:
    """Find the n divisors sum_P (v_P)_i P with Delta1_P = Delta2_P + v_P.

    Every translate v_P must be integral.
    """
    if (d1.curve, d1.torus_rank, d1.tail) != (d2.curve, d2.torus_rank, d2.tail):
        raise errors.DimensionMismatch("Can only compare data on the same curve and cone.")

    points = sorted(set(d1.support) | set(d2.support))
    terms: list[list[tuple[Point, int]]] = [[] for _ in range(d1.torus_rank)]
    for point in points:
        shift = polyhedra.translate_of(d2.coefficient(point), d1.coefficient(point))
        if shift is None or not polyhedra.is_integral(shift):
            logger.debug("The coefficients at %s are not integral translates.", point)
            return DifferenceResult(point=point)
        for index, value in enumerate(shift):
            terms[index].append((point, int(value)))

    return DifferenceResult(
        divisor=PluriDivisor(tuple(Divisor.of(items) for items in terms))
    )


@dataclasses.dataclass(frozen=True)
class WitnessResult:
    """A plurifunction with the given divisor, or the first coordinate that has none."""

    functions: typing.Optional[tuple[curves.Witness, ...]] = None
    coordinate: typing.Optional[int] = None
    obstruction: str = ""

    def save_data(self) -> typing.Mapping:
        """Save the result to a mapping."""
        if self.functions is not None:
            return {"functions": [str(f) for f in self.functions]}
        return {"coordinate": self.coordinate, "obstruction": self.obstruction}


def plurifunction_witness(curve: CurveModel, pd: PluriDivisor) -> WitnessResult:
    """Find a function for each coordinate divisor of pd."""
    functions = []
    for index, divisor in enumerate(pd.divisors):
        result = curves.is_principal(curve, divisor)
        if not result.principal:
            return WitnessResult(coordinate=index, obstruction=result.obstruction)
        functions.append(typing.cast(curves.Witness, result.witness))
    return WitnessResult(functions=tuple(functions))


def witness_matches(
    curve: CurveModel,
    pd: PluriDivisor,
    functions: typing.Sequence[curves.Witness],
) -> bool:
    """Recompute the divisor of every witness and compare it with pd."""
    if len(functions) != len(pd.divisors):
        return False
    for function, divisor in zip(functions, pd.divisors):
        if isinstance(function, curves.FactoredFunction):
            if curves.divisor_of(curve, function) != divisor:
                return False
        else:
            if function.divisor != divisor or divisor.degree != 0:
                return False
            total = curves.elliptic_sum(curve.require_curve(), divisor)
            if total.finite:
                return False
    return True
