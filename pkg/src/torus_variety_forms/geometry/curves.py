"""Models of the base curve: divisors, principality and the units lattice."""

import dataclasses
import enum
import logging
import typing

import sympy

from torus_variety_forms.common import errors
from torus_variety_forms.geometry import elliptic, lattice, projective
from torus_variety_forms.geometry.elliptic import ECPoint, EllipticCurve, EllipticMap
from torus_variety_forms.geometry.projective import GaussianRational, MobiusMap, P1Point

logger = logging.getLogger(__name__)

Point = typing.Union[P1Point, ECPoint]
Automorphism = typing.Union[MobiusMap, EllipticMap]


class CurveKind(enum.Enum):
    """The supported base curves."""

    P1 = "p1"
    P1_MINUS = "p1-minus"
    ELLIPTIC = "elliptic"


@dataclasses.dataclass(frozen=True)
class CurveModel:
    """The projective line, the projective line minus a finite set, or an elliptic curve.

    Build instances with the class methods.
    """

    kind: CurveKind
    punctures: tuple[P1Point, ...] = ()
    """The removed points S, sorted."""
    curve: typing.Optional[EllipticCurve] = None

    @classmethod
    def p1(cls) -> "CurveModel":
        """The projective line."""
        return CurveModel(CurveKind.P1)

    @classmethod
    def p1_minus(cls, punctures: typing.Iterable[P1Point]) -> "CurveModel":
        """The affine curve P1 minus S.

        Raises:
            DuplicatePoint: if a point is listed twice.
            InputError: if S is empty.
        """
        points = list(punctures)
        if not points:
            raise errors.InputError("The punctures of a 'p1-minus' curve must not be empty.")
        seen: set[P1Point] = set()
        for point in points:
            if point in seen:
                raise errors.DuplicatePoint(f"Puncture {point} is listed twice.")
            seen.add(point)
        return CurveModel(CurveKind.P1_MINUS, punctures=tuple(sorted(points)))

    @classmethod
    def elliptic(
        cls, curve: EllipticCurve, punctures: typing.Iterable[typing.Any] = ()
    ) -> "CurveModel":
        """An elliptic curve, which must not have removed points."""
        if list(punctures):
            raise errors.UnsupportedModel(
                "Elliptic curves with removed points are not supported."
            )
        return CurveModel(CurveKind.ELLIPTIC, curve=curve)

    @property
    def genus(self) -> int:
        """The genus of the compactified curve."""
        return 1 if self.kind == CurveKind.ELLIPTIC else 0

    @property
    def base_puncture(self) -> typing.Optional[P1Point]:
        """The distinguished puncture s0, the least element of S."""
        return self.punctures[0] if self.punctures else None

    def parse_point(self, text: str, path: str = "") -> Point:
        """Parse a point of this curve from text."""
        if self.kind == CurveKind.ELLIPTIC:
            return ECPoint.parse(text, path)
        return P1Point.parse(text, path)

    def check_point(self, point: typing.Any) -> Point:
        """Make sure the point lies on the curve.

        Raises:
            PointNotOnCurve: if it does not.
        """
        if self.kind == CurveKind.ELLIPTIC:
            if not isinstance(point, ECPoint):
                raise errors.PointNotOnCurve(f"Point {point} is not an elliptic point.")
            return self.require_curve().check(point)
        if not isinstance(point, P1Point):
            raise errors.PointNotOnCurve(f"Point {point} is not a point of P1.")
        if point in self.punctures:
            raise errors.PointNotOnCurve(f"Point {point} is a puncture of {self}.")
        return point

    def require_curve(self) -> EllipticCurve:
        """The elliptic curve, for elliptic models only."""
        if self.curve is None:
            raise errors.UnsupportedModel(f"The curve {self} is not elliptic.")
        return self.curve

    def check_automorphism(self, psi: typing.Any) -> Automorphism:
        """Make sure psi is an automorphism of this curve.

        Raises:
            NotAnAutomorphism: if psi has the wrong type or moves S off itself.
        """
        if self.kind == CurveKind.ELLIPTIC:
            if not isinstance(psi, EllipticMap):
                raise errors.UnsupportedAutomorphism(
                    f"Only translations and [-1] act on {self}, got {psi}."
                )
            if psi.curve != self.curve:
                raise errors.NotAnAutomorphism(f"{psi} is not an automorphism of {self}.")
            return psi
        if not isinstance(psi, MobiusMap):
            raise errors.UnsupportedAutomorphism(
                f"{psi} is not a Mobius map and cannot act on {self}."
            )
        if not psi.permutes(self.punctures):
            raise errors.NotAnAutomorphism(
                f"{psi} does not map the punctures of {self} onto themselves."
            )
        return psi

    def apply(self, psi: Automorphism, point: Point) -> Point:
        """The image of a point under psi."""
        return psi.apply(point)  # type: ignore[arg-type]

    def save_data(self) -> typing.Mapping:
        """Save the curve model to a mapping."""
        if self.kind == CurveKind.ELLIPTIC:
            return dict(self.require_curve().save_data())
        result: dict[str, typing.Any] = {"type": self.kind.value}
        if self.kind == CurveKind.P1_MINUS:
            result["punctures"] = [str(p) for p in self.punctures]
        return result

    def __str__(self) -> str:
        if self.kind == CurveKind.P1:
            return "P1"
        if self.kind == CurveKind.P1_MINUS:
            return "P1 - {" + ", ".join(str(p) for p in self.punctures) + "}"
        return f"E: {self.curve}"


@dataclasses.dataclass(frozen=True)
class Divisor:
    """A finite formal sum of points with nonzero integer multiplicities."""

    terms: tuple[tuple[typing.Any, int], ...] = ()
    """Sorted (point, multiplicity) pairs."""

    @classmethod
    def of(
        cls, items: typing.Union[typing.Mapping, typing.Iterable[tuple[typing.Any, int]]]
    ) -> "Divisor":
        """Build a divisor from (point, multiplicity) pairs, merging repeats."""
        pairs = items.items() if isinstance(items, typing.Mapping) else items
        totals: dict[typing.Any, int] = {}
        for point, count in pairs:
            totals[point] = totals.get(point, 0) + int(count)
        return Divisor(tuple(sorted((p, m) for p, m in totals.items() if m != 0)))

    @property
    def degree(self) -> int:
        """The sum of the multiplicities."""
        return sum(m for _, m in self.terms)

    @property
    def support(self) -> tuple[typing.Any, ...]:
        """The points with nonzero multiplicity."""
        return tuple(p for p, _ in self.terms)

    def multiplicity(self, point: typing.Any) -> int:
        """The multiplicity at a point, 0 outside the support."""
        return dict(self.terms).get(point, 0)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor.of(list(self.terms) + list(other.terms))

    def __neg__(self) -> "Divisor":
        return Divisor(tuple((p, -m) for p, m in self.terms))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def save_data(self) -> typing.Mapping:
        """Save the divisor to a mapping of point to multiplicity."""
        return {str(p): m for p, m in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{m}*({p})" for p, m in self.terms]
        return " + ".join(parts).replace("+ -", "- ")


def _factor_str(point: GaussianRational, exponent: int) -> str:
    if point.is_zero:
        base = "t"
    elif point.is_real and point.re < 0:
        base = f"(t + {-point.re})"
    elif point.is_real:
        base = f"(t - {point.re})"
    else:
        base = f"(t - ({point}))"
    return base if exponent == 1 else f"{base}^{exponent}"


@dataclasses.dataclass(frozen=True)
class FactoredFunction:
    """The rational function prod (t - p)^m on the projective line, up to a constant."""

    factors: tuple[tuple[GaussianRational, int], ...] = ()

    @classmethod
    def of(cls, items: typing.Iterable[tuple[GaussianRational, int]]) -> "FactoredFunction":
        """Build a function from (point, exponent) factors, merging repeats."""
        totals: dict[GaussianRational, int] = {}
        for point, exponent in items:
            totals[point] = totals.get(point, 0) + exponent
        return FactoredFunction(tuple(sorted((p, e) for p, e in totals.items() if e)))

    def save_data(self) -> typing.Mapping:
        """Save the function to a mapping."""
        return {"function": str(self)}

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(_factor_str(p, e) for p, e in self.factors)


@dataclasses.dataclass(frozen=True)
class EllipticCertificate:
    """The group law sum of a degree zero divisor on an elliptic curve, which is O."""

    divisor: Divisor
    total: ECPoint

    def save_data(self) -> typing.Mapping:
        """Save the certificate to a mapping."""
        return {"divisor": dict(self.divisor.save_data()), "sum": str(self.total)}

    def __str__(self) -> str:
        return f"sum of points = {self.total}"


Witness = typing.Union[FactoredFunction, EllipticCertificate]


@dataclasses.dataclass(frozen=True)
class PrincipalityResult:
    """Whether a divisor is principal, with a witness or an obstruction."""
    principal: bool
    witness: typing.Optional[Witness] = None
    obstruction: str = ""
    """The nonzero degree or the nonzero sum of points, when not principal."""

    def save_data(self) -> typing.Mapping:
        """Save the result to a mapping."""
        result: dict[str, typing.Any] = {"principal": self.principal}
        if self.witness is not None:
            result["witness"] = str(self.witness)
        if self.obstruction:
            result["obstruction"] = self.obstruction
        return result


def _line_function(curve: CurveModel, d: Divisor) -> FactoredFunction:
    """A function whose divisor on the curve is d.

    Points at infinity are absorbed by homogenization; on P1 - S the
    remaining degree is balanced at the puncture s0.
    """
    factors = [(p.value, m) for p, m in d.terms if not p.infinite]
    base = curve.base_puncture
    if curve.kind == CurveKind.P1_MINUS and base is not None and not base.infinite:
        factors.append((base.value, -d.degree))
    return FactoredFunction.of(factors)


def divisor_of(curve: CurveModel, function: FactoredFunction) -> Divisor:
    """The divisor of a factored function on P1 or P1 - S."""
    if curve.kind == CurveKind.ELLIPTIC:
        raise errors.UnsupportedModel("Factored functions live on the projective line.")
    terms = [(P1Point.finite(p), e) for p, e in function.factors]
    terms.append((P1Point.infinity(), -sum(e for _, e in function.factors)))
    return Divisor.of((p, m) for p, m in terms if p not in curve.punctures)


def elliptic_sum(curve: EllipticCurve, d: Divisor) -> ECPoint:
    """The group law sum of the points of d, counted with multiplicity."""
    total = ECPoint.zero()
    for point, count in d.terms:
        total = elliptic.ec_add(curve, total, elliptic.ec_mul(curve, count, point))
    return total


def is_principal(curve: CurveModel, d: Divisor) -> PrincipalityResult:
    """Decide whether d is the divisor of a rational function on the curve.

    Args:
        curve: The curve model.
        d: A divisor supported on the curve.

    Returns:
        The verdict with a witness function or group law certificate.
    """
    for point in d.support:
        curve.check_point(point)

    if curve.kind == CurveKind.ELLIPTIC:
        if d.degree != 0:
            return PrincipalityResult(False, obstruction=f"degree {d.degree}")
        total = elliptic_sum(curve.require_curve(), d)
        if total.finite:
            return PrincipalityResult(False, obstruction=str(total))
        return PrincipalityResult(True, witness=EllipticCertificate(d, total))

    if curve.kind == CurveKind.P1 and d.degree != 0:
        return PrincipalityResult(False, obstruction=f"degree {d.degree}")
    return PrincipalityResult(True, witness=_line_function(curve, d))


@dataclasses.dataclass(frozen=True)
class UnitsLattice:
    """The free abelian group of units modulo constants.

    For P1 - S the basis element j is the class of (t - s_j) / (t - s0),
    whose divisor is e_j - e_0.
    """

    rank: int
    punctures: tuple[P1Point, ...] = ()
    basis: tuple[FactoredFunction, ...] = ()

    def save_data(self) -> typing.Mapping:
        """Save the units lattice to a mapping."""
        return {"rank": self.rank, "basis": [str(f) for f in self.basis]}


def units_lattice(curve: CurveModel) -> UnitsLattice:
    """The lattice of units of the curve modulo constants, with a basis."""
    if curve.kind != CurveKind.P1_MINUS:
        return UnitsLattice(rank=0)
    base = curve.punctures[0]
    basis = tuple(
        _line_function(CurveModel.p1(), Divisor.of([(s, 1), (base, -1)]))
        for s in curve.punctures[1:]
    )
    return UnitsLattice(rank=len(basis), punctures=curve.punctures, basis=basis)


def permutation_unit_action(
    punctures: typing.Sequence[P1Point], images: typing.Mapping[P1Point, P1Point]
) -> sympy.ImmutableMatrix:
    """The matrix of a permutation of S on the basis e_j - e_0 of the units lattice.

    The class of e_j - e_0 goes to e_sigma(j) - e_sigma(0).

    Args:
        punctures: The sorted points of S; the first is s0.
        images: The permutation sigma of S.
    """
    ordered = list(punctures)
    if sorted(images.values()) != sorted(ordered) or set(images) != set(ordered):
        raise errors.NotAnAutomorphism("The images do not form a permutation of S.")
    index = {p: i for i, p in enumerate(ordered)}
    return lattice.sum_zero_action(tuple(index[images[p]] for p in ordered))


def induced_unit_action(curve: CurveModel, psi: Automorphism) -> sympy.ImmutableMatrix:
    """The matrix of psi on the units lattice of the curve.

    Raises:
        NotAnAutomorphism: if psi does not permute S.
    """
    curve.check_automorphism(psi)
    if curve.kind != CurveKind.P1_MINUS:
        return sympy.ImmutableMatrix(sympy.zeros(0, 0))
    images = {p: typing.cast(MobiusMap, psi).apply(p) for p in curve.punctures}
    return permutation_unit_action(curve.punctures, images)


def parse_automorphism(curve: CurveModel, text: str, kind: str) -> Automorphism:
    """Parse a command line automorphism literal.

    Args:
        curve: The curve it acts on.
        text: The literal, e.g. '0,1,1,0' or '(1,0)'.
        kind: One of 'mobius', 'ec-translate', 'ec-neg'.
    """
    if kind == "mobius":
        if curve.kind == CurveKind.ELLIPTIC:
            raise errors.UnsupportedAutomorphism(
                "Mobius maps do not act on an elliptic curve."
            )
        return curve.check_automorphism(projective.MobiusMap.parse(text, "--mobius"))
    if curve.kind != CurveKind.ELLIPTIC:
        raise errors.UnsupportedAutomorphism(
            f"Elliptic automorphisms do not act on {curve}."
        )
    elliptic_curve = curve.require_curve()
    if kind == "ec-neg":
        return EllipticMap.negation(elliptic_curve)
    if kind == "ec-translate":
        shift = elliptic_curve.check(ECPoint.parse(text, "--ec-translate"))
        return EllipticMap.translation(elliptic_curve, shift)
    raise ValueError(f"Unknown automorphism kind '{kind}'.")
