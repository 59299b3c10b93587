"""The lifting criterion and the group K of curve automorphisms that lift."""

import dataclasses
import enum
import itertools
import logging
import math
import random
import typing

import sympy
from sympy.core.intfunc import igcdex

from torus_variety_forms.common import errors
from torus_variety_forms.geometry import curves, divisors, elliptic, projective
from torus_variety_forms.geometry.curves import CurveKind, Point
from torus_variety_forms.geometry.divisors import AHDatum, BadLocus, PluriDivisor
from torus_variety_forms.geometry.elliptic import ECPoint, EllipticMap
from torus_variety_forms.geometry.projective import AutDescription, AutKind, MobiusMap

logger = logging.getLogger(__name__)


class LiftVerdict(enum.Enum):
    """The outcome of the lifting test."""

    LIFTABLE = "liftable"
    NON_TRANSLATE = "non-translate"
    NOT_PRINCIPAL = "not-principal"
    UNSUPPORTED = "unsupported-automorphism"


@dataclasses.dataclass(frozen=True)
class LiftResult:
    """The verdict of the lifting test for one automorphism."""

    verdict: LiftVerdict
    automorphism: curves.Automorphism
    difference: typing.Optional[PluriDivisor] = None
    witness: typing.Optional[tuple[curves.Witness, ...]] = None
    point: typing.Optional[Point] = None
    coordinate: typing.Optional[int] = None
    obstruction: str = ""
    reason: str = ""

    @property
    def liftable(self) -> bool:
        """Whether the automorphism lifts."""
        return self.verdict == LiftVerdict.LIFTABLE

    def save_data(self) -> typing.Mapping:
        """Save the test to a mapping."""
        result: dict[str, typing.Any] = {
            "verdict": self.verdict.value,
            "automorphism": str(self.automorphism),
        }
        if self.difference is not None:
            result["difference"] = [dict(i.save_data()) for i in self.difference.divisors]
        if self.witness is not None:
            result["witness"] = [str(f) for f in self.witness]
        if self.point is not None:
            result["point"] = str(self.point)
        if self.coordinate is not None:
            result["coordinate"] = self.coordinate
            result["obstruction"] = self.obstruction
        if self.reason:
            result["reason"] = self.reason
        return result

    def __str__(self) -> str:
        if self.verdict == LiftVerdict.LIFTABLE:
            witness = self.witness or ()
            text = "; ".join(str(f) for f in witness)
            if len(witness) != 1:
                text = f"({text})"
            return f"Liftable, f = {text}"
        if self.verdict == LiftVerdict.NON_TRANSLATE:
            return f"NonTranslate at {self.point}"
        if self.verdict == LiftVerdict.NOT_PRINCIPAL:
            return f"NotPrincipal coord {self.coordinate}, obstruction {self.obstruction}"
        return f"UnsupportedAutomorphism: {self.reason}"


def lift_test(d: AHDatum, psi: typing.Any) -> LiftResult:
    """Decide whether psi lifts, i.e. psi*(D) = D + div(f) for a plurifunction f.

    Args:
        d: A validated datum.
        psi: An automorphism of the curve of d.

    Returns:
        The verdict with the witness plurifunction or the first obstruction.

    Raises:
        NotAnAutomorphism: if psi does not preserve the curve.
        InvariantBreach: if a witness does not reproduce the difference.
    """
    try:
        d.curve.check_automorphism(psi)
    except errors.UnsupportedAutomorphism as error:
        return LiftResult(LiftVerdict.UNSUPPORTED, psi, reason=str(error))

    pulled = divisors.pullback(psi, d)
    diff = divisors.difference(pulled, d)
    if diff.divisor is None:
        return LiftResult(LiftVerdict.NON_TRANSLATE, psi, point=diff.point)

    found = divisors.plurifunction_witness(d.curve, diff.divisor)
    if found.functions is None:
        return LiftResult(
            LiftVerdict.NOT_PRINCIPAL,
            psi,
            difference=diff.divisor,
            coordinate=found.coordinate,
            obstruction=found.obstruction,
        )

    if not divisors.witness_matches(d.curve, diff.divisor, found.functions):
        raise errors.InvariantBreach(
            f"The witness for {psi} does not reproduce the difference {diff.divisor}."
        )
    return LiftResult(
        LiftVerdict.LIFTABLE, psi, difference=diff.divisor, witness=found.functions
    )


@dataclasses.dataclass(frozen=True)
class TranslationLocus:
    """The translations of an elliptic curve that lift: the g-torsion points.

    A value of 0 for g means every rational point.
    """

    g: int
    points: tuple[ECPoint, ...] = ()

    @property
    def all_points(self) -> bool:
        """Whether every rational point is a liftable shift."""
        return self.g == 0

    def save_data(self) -> typing.Mapping:
        """Save the locus to a mapping."""
        if self.all_points:
            return {"g": 0, "points": "all rational points"}
        return {"g": self.g, "points": [str(p) for p in self.points]}


def translation_lift_locus(d: AHDatum, order_bound: int = 12) -> TranslationLocus:
    """The rational translations of an elliptic base curve that lift.

    With w_i the sum of the i-th coordinates of the translate vectors,
    a translation by t lifts iff [g] t = O for g = gcd(w_1, ..., w_n).

    Raises:
        BadLocusNonEmpty: if some coefficient is not an integral translate of the tail.
    """
    curve = d.curve.require_curve()
    rigid = divisors.rigid_locus(d)
    if rigid.classes:
        raise errors.BadLocusNonEmpty(
            f"The translation locus needs an empty bad locus, got {rigid}."
        )

    shifts = divisors.translate_vectors(d)
    sums = [sum(int(v[i]) for v in shifts.values()) for i in range(d.torus_rank)]
    g = math.gcd(*sums)
    torsion = elliptic.ec_torsion(curve, order_bound)
    if g == 0:
        candidates = torsion
    else:
        candidates = [p for p in torsion if not elliptic.ec_mul(curve, g, p).finite]

    for point in torsion:
        result = lift_test(d, EllipticMap.translation(curve, point))
        if result.liftable != (point in candidates):
            raise errors.InvariantBreach(
                f"The translation by {point} disagrees with the locus for g={g}."
            )

    logger.debug("The translation locus has g=%s and %s torsion points.", g, len(candidates))
    return TranslationLocus(g=g, points=tuple(candidates) if g else ())


@dataclasses.dataclass(frozen=True)
class KDescription:
    """The image K of the equivariant automorphisms in the automorphisms of the curve."""

    genus: int
    bad_locus: BadLocus
    rigid_locus: BadLocus
    family: typing.Optional[AutDescription] = None
    """A parametric family certified to lift, for genus 0."""
    tests: tuple[LiftResult, ...] = ()
    """The tested coset representatives."""
    locus: typing.Optional[TranslationLocus] = None
    spot_checks: int = 0

    @property
    def liftable(self) -> tuple[curves.Automorphism, ...]:
        """The liftable coset representatives."""
        return tuple(i.automorphism for i in self.tests if i.liftable)

    def generators(self) -> tuple[curves.Automorphism, ...]:
        """Liftable representatives, without the identity."""
        result = []
        for psi in self.liftable:
            if not psi.is_identity:
                result.append(psi)
        return tuple(result)

    def save_data(self) -> typing.Mapping:
        """Save the result to a mapping."""
        result: dict[str, typing.Any] = {
            "genus": self.genus,
            "bad_locus": dict(self.bad_locus.save_data()),
            "rigid_locus": dict(self.rigid_locus.save_data()),
            "tests": [dict(i.save_data()) for i in self.tests],
            "spot_checks": self.spot_checks,
        }
        if self.family is not None:
            result["family"] = dict(self.family.save_data())
        if self.locus is not None:
            result["locus"] = dict(self.locus.save_data())
        return result

    def __str__(self) -> str:
        if self.genus == 0:
            if self.family is None:
                return f"finite group of order {len(self.liftable)}"
            if self.family.kind == AutKind.FULL:
                return "full-pgl2"
            points = ", ".join(str(p) for p in self.family.points)
            text = f"{self.family.kind.value} family fixing {{{points}}}"
            if self.family.swap is not None and self.family.swap in self.liftable:
                text += " and the swap coset"
            return text

        if self.locus is None:
            return f"{len(self.liftable)} automorphisms moving the bad locus"
        if self.locus.all_points:
            text = "all translations"
        else:
            text = f"translations by {self.locus.g}-torsion points ({len(self.locus.points)})"
        flips = [
            psi for psi in self.liftable if isinstance(psi, EllipticMap) and psi.sign == -1
        ]
        if not flips:
            return text + ", no [-1] coset"
        if not flips[0].shift.finite:
            return text + " and [-1]"
        return text + f" and [-1] + {flips[0].shift}"


def _spot_check(
    d: AHDatum, family: AutDescription, count: int, rng: random.Random
) -> int:
    for _ in range(count):
        psi = family.random_member(rng)
        result = lift_test(d, psi)
        if not result.liftable:
            raise errors.InvariantBreach(
                f"The family member {psi} of a certified family does not lift: {result}."
            )
    return count


def _genus_zero(
    d: AHDatum, bad: BadLocus, rigid: BadLocus, spot_checks: int, seed: int
) -> KDescription:
    punctures = d.curve.punctures
    labels: dict[projective.P1Point, str] = {p: "puncture" for p in punctures}
    for index, group in enumerate(rigid.classes):
        for point in group:
            labels[typing.cast(projective.P1Point, point)] = f"class-{index}"

    stabilizer = projective.mobius_stabilizer(labels)
    rng = random.Random(seed)
    if stabilizer.kind == AutKind.FINITE:
        candidates = [
            psi
            for psi in stabilizer.maps
            if all(labels[psi.apply(z)] == labels[z] for z in labels)
        ]
        results = tuple(lift_test(d, psi) for psi in candidates)
        logger.info("Tested %s automorphisms of a finite stabilizer.", len(results))
        return KDescription(0, bad, rigid, tests=results)

    checked = _spot_check(d, stabilizer, spot_checks, rng)
    tests: tuple[LiftResult, ...] = (lift_test(d, MobiusMap.identity()),)
    if stabilizer.kind == AutKind.TORUS and stabilizer.swap is not None:
        first, second = stabilizer.points
        if labels[first] == labels[second]:
            tests += (lift_test(d, stabilizer.swap),)
    logger.info(
        "Certified the %s family with %s spot checks, tested %s cosets.",
        stabilizer.kind.value,
        checked,
        len(tests),
    )
    return KDescription(0, bad, rigid, family=stabilizer, tests=tests, spot_checks=checked)


def _genus_one(d: AHDatum, bad: BadLocus, rigid: BadLocus, order_bound: int) -> KDescription:
    curve = d.curve.require_curve()
    if rigid.classes:
        points = typing.cast(list[ECPoint], list(rigid.points))
        candidates: list[EllipticMap] = []
        for first, second in itertools.product(points, repeat=2):
            candidates.append(
                EllipticMap.translation(curve, elliptic.ec_sub(curve, first, second))
            )
            candidates.append(EllipticMap(curve, -1, elliptic.ec_add(curve, first, second)))
        unique = sorted(set(candidates), key=str)
        results = tuple(lift_test(d, psi) for psi in unique)
        logger.info("Tested %s candidates moving the bad locus.", len(results))
        return KDescription(1, bad, rigid, tests=results)

    locus = translation_lift_locus(d, order_bound)
    tests = (lift_test(d, EllipticMap.translation(curve, ECPoint.zero())),)
    negation = lift_test(d, EllipticMap.negation(curve))
    tests += (negation,)
    if not negation.liftable:
        for point in negation_shifts(d):
            result = lift_test(d, EllipticMap(curve, -1, point))
            if result.liftable:
                tests += (result,)
                break
    logger.info("Tested %s elliptic coset representatives.", len(tests))
    return KDescription(1, bad, rigid, tests=tests, locus=locus)


def _bezout(values: typing.Sequence[int]) -> tuple[int, list[int]]:
    """Return g = gcd(values) and c with sum c_i values_i = g."""
    g, coefficients = 0, []
    for value in values:
        x, y, g_next = igcdex(g, value)
        coefficients = [c * x for c in coefficients] + [y]
        g = g_next
    return g, coefficients


def negation_shifts(d: AHDatum) -> list[ECPoint]:
    """The shifts s for which [-1] + s can lift, on a curve with an empty rigid locus.

    With chi_Q the translate vectors, w_i = sum_Q (chi_Q)_i and
    R_i = [2] sum_Q [(chi_Q)_i] Q, the map [-1] + s lifts iff [w_i] s = R_i
    for every i. A Bezout combination reduces this to [g] s = R with
    g = gcd(w_1, ..., w_n), solved by division points. The candidates
    still have to pass the lifting test.

    Returns:
        The rational solutions of [g] s = R, or [] when every w_i is 0.
    """
    curve = d.curve.require_curve()
    shifts = divisors.translate_vectors(d)
    weights = [sum(int(v[i]) for v in shifts.values()) for i in range(d.torus_rank)]
    targets = []
    for i in range(d.torus_rank):
        total = ECPoint.zero()
        for point, vector in shifts.items():
            term = elliptic.ec_mul(curve, int(vector[i]), typing.cast(ECPoint, point))
            total = elliptic.ec_add(curve, total, term)
        targets.append(elliptic.ec_mul(curve, 2, total))

    g, coefficients = _bezout(weights)
    if g == 0:
        return []
    target = ECPoint.zero()
    for coefficient, point in zip(coefficients, targets):
        target = elliptic.ec_add(curve, target, elliptic.ec_mul(curve, coefficient, point))
    result = elliptic.division_points(curve, g, target)
    logger.debug("Found %s shifts s with [%s] s = %s.", len(result), g, target)
    return result


def lift_group(
    d: AHDatum, spot_checks: int = 20, seed: int = 0, order_bound: int = 12
) -> KDescription:
    """Compute the group K of curve automorphisms that lift.

    On the projective line the candidates preserve the punctures and the
    points with rigid coefficients, class by class. Parametric families
    fixing these points lift because the degree of the difference cancels;
    they are spot-checked with seeded random members.

    Args:
        d: A validated datum.
        spot_checks: The number of random family members to test.
        seed: The seed of the spot checks.
        order_bound: The order bound for rational torsion points.

    Returns:
        The coset representatives with verdicts and the certified family.
    """
    bad = divisors.bad_locus(d)
    rigid = divisors.rigid_locus(d)
    if d.curve.kind == CurveKind.ELLIPTIC:
        return _genus_one(d, bad, rigid, order_bound)
    if d.curve.kind in (CurveKind.P1, CurveKind.P1_MINUS):
        return _genus_zero(d, bad, rigid, spot_checks, seed)
    raise errors.UnsupportedModel(f"Unsupported curve model {d.curve}.")


@dataclasses.dataclass(frozen=True)
class FiberGroup:
    """The torus fiber group with component group Lambda and the K action on it."""

    torus_rank: int
    units: curves.UnitsLattice
    actions: tuple[tuple[curves.Automorphism, sympy.ImmutableMatrix], ...] = ()

    @property
    def rank(self) -> int:
        """The rank of Lambda."""
        return self.torus_rank * self.units.rank

    def save_data(self) -> typing.Mapping:
        """Save the fiber group to a mapping."""
        return {
            "torus_rank": self.torus_rank,
            "lambda_rank": self.rank,
            "units": dict(self.units.save_data()),
            "k_action": [
                {
                    "automorphism": str(psi),
                    "matrix": [list(map(int, row)) for row in matrix.tolist()],
                }
                for psi, matrix in self.actions
            ],
        }


def fiber_group(d: AHDatum, k: typing.Optional[KDescription] = None) -> FiberGroup:
    """Lambda is the units lattice once per torus coordinate, with the K action block by block."""
    units = curves.units_lattice(d.curve)
    k = k if k is not None else lift_group(d)
    actions = []
    for psi in k.generators():
        block = curves.induced_unit_action(d.curve, psi)
        matrix = sympy.diag(*([block] * d.torus_rank)) if units.rank else sympy.zeros(0, 0)
        actions.append((psi, sympy.ImmutableMatrix(matrix)))
    return FiberGroup(torus_rank=d.torus_rank, units=units, actions=tuple(actions))
