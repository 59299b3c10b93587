"""Exact rational convex geometry: cones and polyhedra in V-representation.

All coordinates are exact (:class:`fractions.Fraction` or int).
Redundancy and pointedness are decided by an exact feasibility check:
the equality constraints are eliminated with sympy's reduced row echelon
form, the remaining sign constraints with Fourier-Motzkin elimination.
"""

import dataclasses
import itertools
import logging
import math
import typing
from fractions import Fraction

import sympy

from torus_variety_forms.common import errors

logger = logging.getLogger(__name__)

RationalVector = tuple[Fraction, ...]
"""An element of N_Q, a tuple of exact rationals."""

IntegerVector = tuple[int, ...]


def rational_vector(values: typing.Iterable[typing.Any]) -> RationalVector:
    """Build a rational vector from ints, Fractions or rational strings."""
    return tuple(Fraction(i) for i in values)


def is_integral(v: typing.Iterable[Fraction]) -> bool:
    """Check whether every coordinate has denominator 1.

    >>> is_integral(rational_vector([-2, 3]))
    True
    >>> is_integral(rational_vector(["1/2"]))
    False
    """
    return all(Fraction(i).denominator == 1 for i in v)


def vector_str(v: typing.Iterable[typing.Any]) -> str:
    """Format a vector as '(a, b, ...)'."""
    return "(" + ", ".join(str(i) for i in v) + ")"


def _add(v: RationalVector, w: typing.Sequence[typing.Any]) -> RationalVector:
    return tuple(a + b for a, b in zip(v, w))


def _sub(v: RationalVector, w: typing.Sequence[typing.Any]) -> RationalVector:
    return tuple(a - b for a, b in zip(v, w))


def _to_fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _to_sympy(value: typing.Any) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _normalise(
    coeffs: tuple[Fraction, ...], bound: Fraction
) -> tuple[tuple[Fraction, ...], Fraction]:
    """Scale the inequality coeffs . t <= bound by a positive factor."""
    pivot = next((abs(c) for c in coeffs if c != 0), None)
    if pivot is None:
        return coeffs, Fraction(0) if bound >= 0 else Fraction(-1)
    return tuple(c / pivot for c in coeffs), bound / pivot


def _fourier_motzkin(
    system: typing.Iterable[tuple[tuple[Fraction, ...], Fraction]], count: int
) -> bool:
    """Decide whether the system of inequalities a . t <= c has a solution."""
    current = {_normalise(a, c) for a, c in system}
    for k in range(count):
        upper = [(a, c) for a, c in current if a[k] > 0]
        lower = [(a, c) for a, c in current if a[k] < 0]
        combined = {(a, c) for a, c in current if a[k] == 0}
        for (a_up, c_up), (a_low, c_low) in itertools.product(upper, lower):
            s_up, s_low = a_up[k], -a_low[k]
            coeffs = tuple(s_low * x + s_up * y for x, y in zip(a_up, a_low))
            combined.add(_normalise(coeffs, s_low * c_up + s_up * c_low))
        current = combined
        if any(c < 0 and not any(a) for a, c in current):
            return False
    return all(c >= 0 for _, c in current)


def _feasible(
    columns: typing.Sequence[typing.Sequence[typing.Any]],
    target: typing.Sequence[typing.Any],
    convex_count: int,
) -> bool:
    """Is target = sum y_j columns_j with y >= 0 and the first convex_count
    weights summing to 1?"""
    if not columns:
        return convex_count == 0 and all(t == 0 for t in target)

    width = len(columns)
    rows = [
        [_to_sympy(col[i]) for col in columns] + [_to_sympy(target[i])]
        for i in range(len(target))
    ]
    if convex_count:
        rows.append(
            [sympy.Integer(1)] * convex_count
            + [sympy.Integer(0)] * (width - convex_count)
            + [sympy.Integer(1)]
        )

    reduced, pivots = sympy.Matrix(rows).rref()
    if width in pivots:
        return False

    free = [j for j in range(width) if j not in pivots]
    system = []
    for row, _ in enumerate(pivots):
        coeffs = tuple(_to_fraction(reduced[row, f]) for f in free)
        system.append((coeffs, _to_fraction(reduced[row, width])))
    for index in range(len(free)):
        coeffs = tuple(Fraction(-1 if j == index else 0) for j in range(len(free)))
        system.append((coeffs, Fraction(0)))

    return _fourier_motzkin(system, len(free))


@dataclasses.dataclass(frozen=True, order=True)
class Cone:
    """A pointed rational polyhedral cone given by primitive generators.

    Build instances with :func:`canonicalize_cone`.
    """

    rank: int
    """The ambient rank n."""
    rays: tuple[IntegerVector, ...]
    """Primitive, irredundant, lexicographically sorted generators."""

    def save_data(self) -> typing.Mapping:
        """Save the cone to a mapping."""
        return {"rays": [list(r) for r in self.rays]}

    def __str__(self) -> str:
        if not self.rays:
            return "{0}"
        return "cone{" + ", ".join(vector_str(r) for r in self.rays) + "}"


@dataclasses.dataclass(frozen=True, order=True)
class Polyhedron:
    """A rational polyhedron conv(vertices) + tail.

    Build instances with :func:`make_polyhedron`.
    """

    vertices: tuple[RationalVector, ...]
    """Irredundant, lexicographically sorted vertices."""
    tail: Cone
    """The pointed tail (recession) cone."""

    @property
    def rank(self) -> int:
        """The ambient rank n."""
        return self.tail.rank

    def save_data(self) -> typing.Mapping:
        """Save the polyhedron to a mapping."""
        return {
            "vertices": [[str(i) for i in v] for v in self.vertices],
            "rays": [list(r) for r in self.tail.rays],
        }

    def __str__(self) -> str:
        verts = ", ".join(vector_str(v) for v in self.vertices)
        if not self.tail.rays:
            return "conv{" + verts + "}"
        return "conv{" + verts + "} + " + str(self.tail)


def _check_rank(vectors: typing.Iterable[typing.Sequence], rank: int) -> None:
    for vector in vectors:
        if len(vector) != rank:
            raise errors.DimensionMismatch(
                f"Expected a vector of length {rank}, got {vector_str(vector)}."
            )


def canonicalize_cone(
    raw_rays: typing.Iterable[typing.Sequence[int]], rank: typing.Optional[int] = None
) -> Cone:
    """Bring a list of integer generators into canonical form.

    Args:
        raw_rays: The generators.
        rank: The ambient rank, needed when there are no generators.

    Returns:
        The cone with primitive, deduplicated, irredundant, sorted generators.

    >>> canonicalize_cone([[1, 0], [0, 1], [1, 1]]).rays
    ((0, 1), (1, 0))
    """
    raw = [tuple(Fraction(i) for i in r) for r in raw_rays]
    if rank is None:
        if not raw:
            raise errors.DimensionMismatch("Cannot infer the rank of an empty cone.")
        rank = len(raw[0])
    if rank < 1:
        raise errors.DimensionMismatch(f"The rank must be at least 1, got {rank}.")
    _check_rank(raw, rank)

    primitive: set[IntegerVector] = set()
    for ray in raw:
        if not is_integral(ray):
            raise errors.DimensionMismatch(
                f"Cone generators must be integral, got {vector_str(ray)}."
            )
        ints = [int(i) for i in ray]
        divisor = math.gcd(*ints)
        if divisor == 0:
            continue
        primitive.add(tuple(i // divisor for i in ints))

    rays = sorted(primitive)
    if len(rays) > 1:
        for ray in rays:
            if _feasible(rays, tuple(-i for i in ray), 0):
                raise errors.NotPointed(
                    f"The cone generated by {[list(r) for r in rays]} contains a line."
                )

    kept = list(rays)
    for ray in rays:
        others = [r for r in kept if r != ray]
        if others and _feasible(others, ray, 0):
            kept = others

    return Cone(rank=rank, rays=tuple(sorted(kept)))


def make_polyhedron(
    vertices: typing.Iterable[typing.Sequence[typing.Any]],
    tail: typing.Union[Cone, typing.Iterable[typing.Sequence[int]]],
    rank: typing.Optional[int] = None,
) -> Polyhedron:
    """Build a polyhedron in canonical form.

    Args:
        vertices: A nonempty list of rational points.
        tail: The tail cone, or raw generators for it.
        rank: The ambient rank, inferred from the vertices when absent.

    Returns:
        The polyhedron with redundant vertices removed.
    """
    points = sorted({rational_vector(v) for v in vertices})
    if not points:
        raise errors.DimensionMismatch("A polyhedron needs at least one vertex.")
    if rank is None:
        rank = len(points[0])
    _check_rank(points, rank)

    cone = tail if isinstance(tail, Cone) else canonicalize_cone(tail, rank)
    if cone.rank != rank:
        raise errors.DimensionMismatch(
            f"Tail cone rank {cone.rank} does not match vertex rank {rank}."
        )

    kept = list(points)
    for point in points:
        others = [p for p in kept if p != point]
        if not others:
            continue
        columns = others + [tuple(Fraction(i) for i in r) for r in cone.rays]
        if _feasible(columns, point, len(others)):
            kept = others

    return Polyhedron(vertices=tuple(sorted(kept)), tail=cone)


def point_polyhedron(v: typing.Sequence[typing.Any], tail: Cone) -> Polyhedron:
    """The translate v + tail."""
    return make_polyhedron([v], tail, tail.rank)


def cone_polyhedron(tail: Cone) -> Polyhedron:
    """The tail cone itself as a polyhedron, the neutral element for sums."""
    return point_polyhedron([0] * tail.rank, tail)


def contains(p: Polyhedron, x: typing.Sequence[typing.Any]) -> bool:
    """Exact membership test x in p."""
    _check_rank([x], p.rank)
    columns = list(p.vertices) + [tuple(Fraction(i) for i in r) for r in p.tail.rays]
    return _feasible(columns, rational_vector(x), len(p.vertices))


def translate(p: Polyhedron, v: typing.Sequence[typing.Any]) -> Polyhedron:
    """The polyhedron p + v."""
    _check_rank([v], p.rank)
    shift = rational_vector(v)
    return Polyhedron(
        vertices=tuple(sorted(_add(vertex, shift) for vertex in p.vertices)),
        tail=p.tail,
    )


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    """The Minkowski sum p + q."""
    if p.rank != q.rank:
        raise errors.DimensionMismatch(
            f"Cannot add polyhedra of rank {p.rank} and {q.rank}."
        )
    tail = canonicalize_cone(list(p.tail.rays) + list(q.tail.rays), p.rank)
    sums = [_add(v, w) for v, w in itertools.product(p.vertices, q.vertices)]
    return make_polyhedron(sums, tail, p.rank)


def translate_of(p: Polyhedron, q: Polyhedron) -> typing.Optional[RationalVector]:
    """Find v with q = p + v.

    The translate is unique because both polyhedra have pointed tails,
    so their lexicographically least vertices must correspond.

    Returns:
        The translate vector, or None when q is not a translate of p.
    """
    if p.rank != q.rank:
        raise errors.DimensionMismatch(
            f"Cannot compare polyhedra of rank {p.rank} and {q.rank}."
        )
    if p.tail != q.tail or len(p.vertices) != len(q.vertices):
        return None
    shift = _sub(q.vertices[0], p.vertices[0])
    if translate(p, shift) != q:
        return None
    return shift
