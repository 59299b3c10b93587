"""The projective line over the Gaussian rationals and its Mobius maps."""

import dataclasses
import enum
import itertools
import logging
import random
import re
import typing
from fractions import Fraction

from torus_variety_forms.common import errors

logger = logging.getLogger(__name__)

_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str, path: str = "") -> Fraction:
    """Parse a rational literal 'p/q' or 'p'.

    Args:
        text: The literal.
        path: The field path, used in error messages.

    Returns:
        The exact value.
    """
    value = str(text).strip()
    if not _RATIONAL_PATTERN.match(value):
        raise errors.DatumParseError(f"Invalid rational '{text}'.", path=path)
    try:
        return Fraction(value)
    except ZeroDivisionError as error:
        raise errors.DatumParseError(
            f"Invalid rational '{text}': zero denominator.", path=path
        ) from error


@dataclasses.dataclass(frozen=True, order=True)
class GaussianRational:
    """An exact element re + im*i of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value: typing.Any) -> "GaussianRational":
        """Coerce an int, Fraction or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(Fraction(value), Fraction(0))

    @classmethod
    def parse(cls, text: str, path: str = "") -> "GaussianRational":
        """Parse 're+imi', 're', 'imi', 'i' or '-i' with rational parts."""
        value = str(text).strip().replace(" ", "")
        if not value.endswith("i"):
            return GaussianRational(parse_rational(value, path))

        body = value[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            real_text, imag_text = body[:split], body[split:]
        else:
            real_text, imag_text = "0", body
        if imag_text in ("", "+", "-"):
            imag_text += "1"
        return GaussianRational(
            parse_rational(real_text, path), parse_rational(imag_text, path)
        )

    @property
    def is_zero(self) -> bool:
        """Whether both parts are zero."""
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        """Whether the imaginary part is zero."""
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        """The complex conjugate."""
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """The squared absolute value."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other: typing.Any) -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: typing.Any) -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: typing.Any) -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: typing.Any) -> "GaussianRational":
        other = GaussianRational.of(other)
        if other.is_zero:
            raise ZeroDivisionError("Division by zero in Q(i).")
        norm = other.norm()
        top = self * other.conjugate()
        return GaussianRational(top.re / norm, top.im / norm)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"


ZERO = GaussianRational()
ONE = GaussianRational(Fraction(1))


@dataclasses.dataclass(frozen=True, order=True)
class P1Point:
    """A point of the projective line, [value : 1] or the point at infinity [1 : 0].

    The field order makes points sort by (is infinity, re, im),
    so infinity comes last.
    """

    infinite: bool
    value: GaussianRational = ZERO

    @classmethod
    def finite(cls, value: typing.Any) -> "P1Point":
        """The finite point with the given value."""
        return P1Point(False, GaussianRational.of(value))

    @classmethod
    def infinity(cls) -> "P1Point":
        """The point at infinity."""
        return P1Point(True, ZERO)

    @classmethod
    def from_pair(cls, a: typing.Any, b: typing.Any) -> "P1Point":
        """Build the point [a : b] in canonical scaling."""
        a, b = GaussianRational.of(a), GaussianRational.of(b)
        if b.is_zero:
            if a.is_zero:
                raise errors.InputError("The pair [0 : 0] is not a point.")
            return cls.infinity()
        return cls.finite(a / b)

    @classmethod
    def parse(cls, text: str, path: str = "") -> "P1Point":
        """Parse 'inf' or a Gaussian rational."""
        value = str(text).strip()
        if value.casefold() in ("inf", "infinity", "oo"):
            return cls.infinity()
        return cls.finite(GaussianRational.parse(value, path))

    @property
    def pair(self) -> tuple[GaussianRational, GaussianRational]:
        """The homogeneous coordinates in canonical scaling."""
        if self.infinite:
            return ONE, ZERO
        return self.value, ONE

    def conjugate(self) -> "P1Point":
        """The complex conjugate point."""
        if self.infinite:
            return self
        return P1Point.finite(self.value.conjugate())

    def __str__(self) -> str:
        return "inf" if self.infinite else str(self.value)


@dataclasses.dataclass(frozen=True, order=True)
class MobiusMap:
    """A Mobius map t -> (a t + b) / (c t + d) with its first nonzero entry 1."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational

    @classmethod
    def create(
        cls, a: typing.Any, b: typing.Any, c: typing.Any, d: typing.Any
    ) -> "MobiusMap":
        """Build a map in canonical scaling.

        Raises:
            NotAnAutomorphism: if the determinant is zero.
        """
        entries = [GaussianRational.of(i) for i in (a, b, c, d)]
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if det.is_zero:
            raise errors.NotAnAutomorphism(
                f"The matrix {[str(i) for i in entries]} is singular."
            )
        lead = next(i for i in entries if not i.is_zero)
        return MobiusMap(*(i / lead for i in entries))

    @classmethod
    def identity(cls) -> "MobiusMap":
        """The identity map."""
        return cls.create(1, 0, 0, 1)

    @classmethod
    def parse(cls, text: str, path: str = "") -> "MobiusMap":
        """Parse 'a,b,c,d' with Gaussian rational entries."""
        parts = [i.strip() for i in str(text).split(",")]
        if len(parts) != 4:
            raise errors.DatumParseError(
                f"A Mobius map needs four entries 'a,b,c,d', got '{text}'.", path=path
            )
        entries = [GaussianRational.parse(i, path) for i in parts]
        return cls.create(*entries)

    @property
    def entries(self) -> tuple[GaussianRational, ...]:
        """The entries a, b, c, d."""
        return self.a, self.b, self.c, self.d

    @property
    def is_identity(self) -> bool:
        """Whether this is the identity."""
        return self == MobiusMap.identity()

    def apply(self, point: P1Point) -> P1Point:
        """The image of a point."""
        x, y = point.pair
        return P1Point.from_pair(self.a * x + self.b * y, self.c * x + self.d * y)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """The map self after other."""
        return MobiusMap.create(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        """The inverse map."""
        return MobiusMap.create(self.d, -self.b, -self.c, self.a)

    def permutes(self, points: typing.Iterable[P1Point]) -> bool:
        """Whether the map sends the set of points onto itself."""
        points = set(points)
        return {self.apply(p) for p in points} == points

    def save_data(self) -> typing.Mapping:
        """Save the map to a mapping."""
        return {"mobius": [str(i) for i in self.entries]}

    def __str__(self) -> str:
        return "mobius[" + ",".join(str(i) for i in self.entries) + "]"


def mobius_apply(m: MobiusMap, p: P1Point) -> P1Point:
    """The image of p under m."""
    return m.apply(p)


def _frame(p1: P1Point, p2: P1Point, p3: P1Point) -> MobiusMap:
    """The map sending 0, inf, 1 to p1, p2, p3."""
    (x1, y1), (x2, y2), (x3, y3) = p1.pair, p2.pair, p3.pair
    det = x2 * y1 - x1 * y2
    if det.is_zero:
        raise errors.InputError(f"Points {p1} and {p2} must be distinct.")
    scale_inf = (x3 * y1 - x1 * y3) / det
    scale_zero = (x2 * y3 - x3 * y2) / det
    return MobiusMap.create(
        scale_inf * x2, scale_zero * x1, scale_inf * y2, scale_zero * y1
    )


def mobius_from_points(
    source: typing.Sequence[P1Point], target: typing.Sequence[P1Point]
) -> MobiusMap:
    """The unique Mobius map sending three distinct points to three distinct points."""
    if len(set(source)) != 3 or len(set(target)) != 3:
        raise errors.InputError("Need exactly three distinct source and target points.")
    return _frame(*target).compose(_frame(*source).inverse())


class AutKind(enum.Enum):
    """The shape of a group of Mobius maps preserving a finite set."""

    FINITE = "finite"
    """An explicit finite list of maps."""
    TORUS = "torus"
    """Conjugate of {t -> a t}, fixing two points, plus a swap coset."""
    AFFINE = "affine"
    """Conjugate of {t -> a t + b}, fixing one point."""
    FULL = "full-pgl2"
    """All of PGL2."""


@dataclasses.dataclass(frozen=True)
class AutDescription:
    """The Mobius maps that permute a finite point set."""

    kind: AutKind
    points: tuple[P1Point, ...]
    maps: tuple[MobiusMap, ...] = ()
    """The elements, for the finite case."""
    conjugator: typing.Optional[MobiusMap] = None
    """Sends 0, inf to the two points (torus) or inf to the point (affine)."""
    swap: typing.Optional[MobiusMap] = None
    """A representative of the coset swapping the two points (torus)."""

    def member(
        self, scale: GaussianRational, shift: GaussianRational = ZERO
    ) -> MobiusMap:
        """A member of the parametric family (torus, affine) for the given parameters."""
        if self.kind == AutKind.TORUS:
            inner = MobiusMap.create(scale, 0, 0, 1)
        elif self.kind == AutKind.AFFINE:
            inner = MobiusMap.create(scale, shift, 0, 1)
        else:
            raise ValueError(f"No parametric family for kind '{self.kind.value}'.")
        conj = self.conjugator or MobiusMap.identity()
        return conj.compose(inner).compose(conj.inverse())

    def random_member(self, rng: random.Random) -> MobiusMap:
        """A random member of the group, with rational parameters."""
        if self.kind == AutKind.FINITE:
            return rng.choice(self.maps)
        if self.kind == AutKind.FULL:
            while True:
                entries = [_random_rational(rng) for _ in range(4)]
                if entries[0] * entries[3] != entries[1] * entries[2]:
                    return MobiusMap.create(*entries)
        scale = GaussianRational.of(_random_rational(rng, nonzero=True))
        return self.member(scale, GaussianRational.of(_random_rational(rng)))

    def save_data(self) -> typing.Mapping:
        """Save the description to a mapping."""
        result: dict[str, typing.Any] = {
            "kind": self.kind.value,
            "points": [str(p) for p in self.points],
        }
        if self.maps:
            result["maps"] = [str(m) for m in self.maps]
        if self.conjugator:
            result["conjugator"] = str(self.conjugator)
        if self.swap:
            result["swap"] = str(self.swap)
        return result


def _random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if value != 0 or not nonzero:
            return value


def mobius_stabilizer(points: typing.Iterable[P1Point]) -> AutDescription:
    """Describe the Mobius maps permuting a finite set S.

    For three or more points every candidate is determined by the images
    of three chosen points and then verified on all of S.
    """
    ordered = tuple(sorted(set(points)))
    count = len(ordered)

    if count == 0:
        return AutDescription(kind=AutKind.FULL, points=ordered)

    if count == 1:
        (point,) = ordered
        if point.infinite:
            conj = MobiusMap.identity()
        else:
            conj = MobiusMap.create(point.value, 1, 1, 0)
        return AutDescription(kind=AutKind.AFFINE, points=ordered, conjugator=conj)

    if count == 2:
        first, second = ordered
        (x0, y0), (x1, y1) = first.pair, second.pair
        conj = MobiusMap.create(x1, x0, y1, y0)
        swap = conj.compose(MobiusMap.create(0, 1, 1, 0)).compose(conj.inverse())
        return AutDescription(
            kind=AutKind.TORUS, points=ordered, conjugator=conj, swap=swap
        )

    frame = ordered[:3]
    found: list[MobiusMap] = []
    for images in itertools.permutations(ordered, 3):
        candidate = mobius_from_points(frame, images)
        if candidate.permutes(ordered) and candidate not in found:
            found.append(candidate)

    logger.debug("Found %s maps permuting %s points.", len(found), count)
    return AutDescription(kind=AutKind.FINITE, points=ordered, maps=tuple(found))
