"""Elliptic curves y^2 = x^3 + a x + b over Q: group law, torsion and automorphisms."""

import dataclasses
import logging
import math
import re
import typing
from fractions import Fraction

import sympy

from torus_variety_forms.common import errors
from torus_variety_forms.geometry import projective

logger = logging.getLogger(__name__)

_POINT_PATTERN = re.compile(r"^\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)$")


@dataclasses.dataclass(frozen=True, order=True)
class ECPoint:
    """A rational point: the neutral element O, or an affine point (x, y).

    O sorts before every affine point.
    """

    finite: bool
    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)

    @classmethod
    def zero(cls) -> "ECPoint":
        """The point at infinity O."""
        return ECPoint(False)

    @classmethod
    def affine(cls, x: typing.Any, y: typing.Any) -> "ECPoint":
        """The affine point (x, y)."""
        return ECPoint(True, Fraction(x), Fraction(y))

    @classmethod
    def parse(cls, text: str, path: str = "") -> "ECPoint":
        """Parse 'O' or '(x,y)' with rational coordinates."""
        value = str(text).strip()
        if value in ("O", "o"):
            return cls.zero()
        match = _POINT_PATTERN.match(value)
        if not match:
            raise errors.DatumParseError(
                f"Invalid elliptic curve point '{text}'.", path=path
            )
        return cls.affine(
            projective.parse_rational(match.group(1), path),
            projective.parse_rational(match.group(2), path),
        )

    def __str__(self) -> str:
        return f"({self.x},{self.y})" if self.finite else "O"


@dataclasses.dataclass(frozen=True)
class EllipticCurve:
    """The short Weierstrass curve y^2 = x^3 + a x + b."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise errors.InputError(
                f"The curve with a={self.a}, b={self.b} is singular."
            )

    @property
    def discriminant(self) -> Fraction:
        """The quantity 4a^3 + 27b^2."""
        return 4 * self.a**3 + 27 * self.b**2

    def contains(self, p: ECPoint) -> bool:
        """Whether the point satisfies the curve equation."""
        return not p.finite or p.y**2 == p.x**3 + self.a * p.x + self.b

    def check(self, p: ECPoint) -> ECPoint:
        """Return the point, or raise PointNotOnCurve."""
        if not self.contains(p):
            raise errors.PointNotOnCurve(f"Point {p} is not on {self}.")
        return p

    def save_data(self) -> typing.Mapping:
        """Save the curve to a mapping."""
        return {"type": "elliptic", "a": str(self.a), "b": str(self.b)}

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({self.a})x + ({self.b})"


def ec_neg(curve: EllipticCurve, p: ECPoint) -> ECPoint:
    """The inverse -p in the group law."""
    curve.check(p)
    return ECPoint.affine(p.x, -p.y) if p.finite else p


def ec_add(curve: EllipticCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    """Add two points with the chord-tangent law.

    Raises:
        PointNotOnCurve: if either point is not on the curve.
    """
    curve.check(p)
    curve.check(q)
    if not p.finite:
        return q
    if not q.finite:
        return p
    if p.x == q.x and p.y == -q.y:
        return ECPoint.zero()
    if p == q:
        slope = (3 * p.x**2 + curve.a) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x = slope**2 - p.x - q.x
    y = slope * (p.x - x) - p.y
    return ECPoint.affine(x, y)


def ec_sub(curve: EllipticCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    """The difference p - q in the group law."""
    return ec_add(curve, p, ec_neg(curve, q))


def ec_mul(curve: EllipticCurve, k: int, p: ECPoint) -> ECPoint:
    """The multiple [k]p, by double-and-add."""
    if k < 0:
        return ec_mul(curve, -k, ec_neg(curve, p))
    result = ECPoint.zero()
    addend = curve.check(p)
    while k:
        if k & 1:
            result = ec_add(curve, result, addend)
        addend = ec_add(curve, addend, addend)
        k >>= 1
    return result


def ec_order(curve: EllipticCurve, p: ECPoint, bound: int) -> typing.Optional[int]:
    """The order of p if it is at most bound, else None."""
    current = curve.check(p)
    for order in range(1, bound + 1):
        if not current.finite:
            return order
        current = ec_add(curve, current, p)
    return None


def ec_torsion(curve: EllipticCurve, order_bound: int = 12) -> list[ECPoint]:
    """The rational torsion subgroup, including O.

    The curve is rescaled to an integral model (x, y) -> (u^2 x, u^3 y).
    Candidates are integral points with y = 0 or y^2 dividing 4a^3 + 27b^2,
    each kept when its order is at most order_bound.

    >>> [str(p) for p in ec_torsion(EllipticCurve(Fraction(-1), Fraction(0)))]
    ['O', '(-1,0)', '(0,0)', '(1,0)']
    """
    scale = math.lcm(curve.a.denominator, curve.b.denominator)
    a_int, b_int = curve.a * scale**4, curve.b * scale**6
    if a_int.denominator != 1 or b_int.denominator != 1:
        raise errors.NonIntegralModel(f"Could not find an integral model for {curve}.")
    model = EllipticCurve(a_int, b_int)
    disc = abs(int(model.discriminant))

    heights = {0}
    for divisor in sympy.divisors(disc):
        root, exact = sympy.integer_nthroot(divisor, 2)
        if exact:
            heights.add(int(root))

    t = sympy.Symbol("t")
    points = [ECPoint.zero()]
    for height in sorted(heights):
        poly = sympy.Poly(
            t**3 + int(a_int) * t + int(b_int) - height**2, t, domain="ZZ"
        )
        for root in poly.ground_roots():
            for y in sorted({height, -height}):
                candidate = ECPoint.affine(int(root), y)
                if ec_order(model, candidate, order_bound) is not None:
                    points.append(
                        ECPoint.affine(
                            Fraction(int(root), scale**2), Fraction(y, scale**3)
                        )
                    )

    result = sorted(set(points))
    logger.debug("Curve %s has %s rational torsion points.", curve, len(result))
    return result


def _rational_sqrt(value: Fraction) -> typing.Optional[Fraction]:
    if value < 0:
        return None
    num, num_exact = sympy.integer_nthroot(value.numerator, 2)
    den, den_exact = sympy.integer_nthroot(value.denominator, 2)
    if not (num_exact and den_exact):
        return None
    return Fraction(int(num), int(den))


def _qq(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _division_polynomials(
    curve: EllipticCurve, count: int
) -> tuple[list[sympy.Poly], sympy.Poly]:
    """The polynomials h_0, ..., h_count in x, and 4(x^3 + a x + b).

    The division polynomial psi_n is h_n for odd n and 2y h_n for even n.
    """
    x = sympy.Symbol("x")
    a, b = _qq(curve.a), _qq(curve.b)

    def poly(expr: typing.Any) -> sympy.Poly:
        return sympy.Poly(expr, x, domain="QQ")

    four_f = poly(4 * (x**3 + a * x + b))
    sextic = x**6 + 5 * a * x**4 + 20 * b * x**3 - 5 * a**2 * x**2 - 4 * a * b * x
    h = {
        0: poly(0),
        1: poly(1),
        2: poly(1),
        3: poly(3 * x**4 + 6 * a * x**2 + 12 * b * x - a**2),
        4: poly(2 * (sextic - 8 * b**2 - a**3)),
    }

    def get(n: int) -> sympy.Poly:
        if n in h:
            return h[n]
        m = n // 2
        if n % 2 == 0:
            value = get(m) * (get(m + 2) * get(m - 1) ** 2 - get(m - 2) * get(m + 1) ** 2)
        elif m % 2 == 0:
            value = four_f**2 * get(m + 2) * get(m) ** 3 - get(m - 1) * get(m + 1) ** 3
        else:
            value = get(m + 2) * get(m) ** 3 - four_f**2 * get(m - 1) * get(m + 1) ** 3
        h[n] = value
        return value

    return [get(n) for n in range(count + 1)], four_f


def _prime_division_points(curve: EllipticCurve, p: int, target: ECPoint) -> list[ECPoint]:
    h, four_f = _division_polynomials(curve, p + 1)
    shift = sympy.Poly(sympy.Symbol("x") - _qq(target.x), sympy.Symbol("x"), domain="QQ")
    # x([p]s) = x - psi_{p-1} psi_{p+1} / psi_p^2
    if p % 2 == 0:
        equation = shift * four_f * h[p] ** 2 - h[p - 1] * h[p + 1]
    else:
        equation = shift * h[p] ** 2 - four_f * h[p - 1] * h[p + 1]

    found = []
    for root in equation.ground_roots():
        value = sympy.Rational(root)
        x_value = Fraction(int(value.p), int(value.q))
        y_value = _rational_sqrt(x_value**3 + curve.a * x_value + curve.b)
        if y_value is None:
            continue
        for y in sorted({y_value, -y_value}):
            candidate = ECPoint.affine(x_value, y)
            if ec_mul(curve, p, candidate) == target:
                found.append(candidate)
    return found


def division_points(curve: EllipticCurve, n: int, target: ECPoint) -> list[ECPoint]:
    """All rational points s with [n]s = target.

    The division is done one prime factor of n at a time, each step by the
    rational roots of a division polynomial equation.

    Args:
        curve: The curve.
        n: A nonzero multiplier.
        target: A point on the curve.

    Returns:
        The sorted solutions, empty when target is not divisible by n.

    >>> curve = EllipticCurve(Fraction(-1), Fraction(0))
    >>> [str(p) for p in division_points(curve, 2, ECPoint.zero())]
    ['O', '(-1,0)', '(0,0)', '(1,0)']
    """
    curve.check(target)
    if n == 0:
        raise errors.InputError("Cannot divide by zero on an elliptic curve.")
    if n < 0:
        return division_points(curve, -n, ec_neg(curve, target))
    if n == 1:
        return [target]
    if not target.finite:
        torsion = ec_torsion(curve, n)
        return [p for p in torsion if not ec_mul(curve, n, p).finite]

    prime = sympy.primefactors(n)[0]
    steps = _prime_division_points(curve, prime, target)
    result: set[ECPoint] = set()
    for step in steps:
        result.update(division_points(curve, n // prime, step))
    return sorted(result)


@dataclasses.dataclass(frozen=True)
class EllipticMap:
    """The automorphism P -> sign * P + shift of an elliptic curve."""

    curve: EllipticCurve
    sign: int
    shift: ECPoint

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise errors.UnsupportedAutomorphism(
                f"Only the automorphisms [1] and [-1] are supported, got [{self.sign}]."
            )
        self.curve.check(self.shift)

    @classmethod
    def translation(cls, curve: EllipticCurve, shift: ECPoint) -> "EllipticMap":
        """The translation p -> p + shift."""
        return EllipticMap(curve, 1, shift)

    @classmethod
    def negation(cls, curve: EllipticCurve) -> "EllipticMap":
        """The negation p -> -p."""
        return EllipticMap(curve, -1, ECPoint.zero())

    def apply(self, p: ECPoint) -> ECPoint:
        """The image of a point."""
        moved = p if self.sign == 1 else ec_neg(self.curve, p)
        return ec_add(self.curve, moved, self.shift)

    def compose(self, other: "EllipticMap") -> "EllipticMap":
        """The map self after other."""
        shift = other.shift if self.sign == 1 else ec_neg(self.curve, other.shift)
        return EllipticMap(
            self.curve, self.sign * other.sign, ec_add(self.curve, shift, self.shift)
        )

    def inverse(self) -> "EllipticMap":
        """The inverse map."""
        if self.sign == 1:
            return EllipticMap(self.curve, 1, ec_neg(self.curve, self.shift))
        return self

    @property
    def is_identity(self) -> bool:
        """Whether this is the identity."""
        return self.sign == 1 and not self.shift.finite

    def save_data(self) -> typing.Mapping:
        """Save the map to a mapping."""
        return {"sign": self.sign, "shift": str(self.shift)}

    def __str__(self) -> str:
        head = "P" if self.sign == 1 else "-P"
        if not self.shift.finite:
            return f"P -> {head}"
        return f"P -> {head} + {self.shift}"
