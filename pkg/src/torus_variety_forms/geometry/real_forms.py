"""Real structures on polyhedral divisors and the finiteness criterion for their forms.

Complex conjugation acts on the base curve through the coordinates of its
points. The finiteness criterion asks whether the units lattice, with the
action of the liftable automorphisms and of conjugation, is a permutation
module.
"""

import dataclasses
import enum
import logging
import typing
from fractions import Fraction

import sympy

from torus_variety_forms.common import errors
from torus_variety_forms.geometry import curves, lattice, lifting
from torus_variety_forms.geometry.curves import CurveKind
from torus_variety_forms.geometry.divisors import AHDatum
from torus_variety_forms.geometry.lattice import InvolutionLattice, PermutationVerdict
from torus_variety_forms.geometry.projective import GaussianRational, MobiusMap, P1Point

logger = logging.getLogger(__name__)

SIGN_DISCREPANCY = (
    "Group cohomology gives H^1 = Z/2 for Z with the sign action, "
    "but the worked example of this family states 'H^1(R, Lambda) = Z'. "
    "Both values are reported; they are not reconciled here."
)


@dataclasses.dataclass(frozen=True)
class RealDatum:
    """A datum whose punctures and coefficients are stable under conjugation."""

    datum: AHDatum

    def save_data(self) -> typing.Mapping:
        """Save the real datum to a mapping."""
        return {**self.datum.save_data(), "real": {"enabled": True}}


def conjugation_permutation(curve: curves.CurveModel) -> dict[P1Point, P1Point]:
    """Complex conjugation restricted to the punctures.

    Raises:
        NotConjugationStable: if the conjugate of a puncture is not a puncture.
    """
    result = {}
    for point in curve.punctures:
        image = point.conjugate()
        if image not in curve.punctures:
            raise errors.NotConjugationStable(
                f"The conjugate of puncture {point} is not a puncture."
            )
        result[point] = image
    return result


def validate_real_datum(d: AHDatum) -> RealDatum:
    """Check that conjugation preserves S and the coefficient map.

    Elliptic curves are defined over Q with rational points, so they are real.
    """
    if d.curve.kind == CurveKind.ELLIPTIC:
        return RealDatum(d)
    conjugation_permutation(d.curve)
    for point, coefficient in d.coefficients:
        image = typing.cast(P1Point, point).conjugate()
        if d.coefficient(image) != coefficient:
            raise errors.NotConjugationStable(
                f"The coefficient at {point} differs from the one at its conjugate {image}."
            )
    logger.debug("The datum is stable under conjugation.")
    return RealDatum(d)


def twisted_lambda(rd: RealDatum) -> InvolutionLattice:
    """Conjugation acting on Lambda, the units lattice once per torus coordinate."""
    d = rd.datum
    if d.curve.kind != CurveKind.P1_MINUS:
        return InvolutionLattice.create(sympy.zeros(0, 0))
    block = curves.permutation_unit_action(
        d.curve.punctures, conjugation_permutation(d.curve)
    )
    if not block.rows:
        return InvolutionLattice.create(sympy.zeros(0, 0))
    return InvolutionLattice.create(sympy.diag(*([block] * d.torus_rank)))


class VerdictKind(enum.Enum):
    """Real forms verdict options."""
    FINITE_CERTIFIED = "finite-certified"
    NOT_CERTIFIED = "not-certified"
    UNSUPPORTED = "unsupported"


@dataclasses.dataclass(frozen=True)
class FormsVerdict:
    """The outcome of the finiteness criterion for real forms."""

    kind: VerdictKind
    evidence: tuple[PermutationVerdict, ...] = ()
    """One permutation verdict per torus coordinate."""
    witness: typing.Optional[PermutationVerdict] = None
    reason: str = ""
    note: str = ""

    def save_data(self) -> typing.Mapping:
        """Save the verdict to a mapping."""
        result: dict[str, typing.Any] = {
            "kind": self.kind.value,
            "evidence": [dict(i.save_data()) for i in self.evidence],
        }
        if self.witness is not None:
            result["witness"] = dict(self.witness.save_data())
        if self.reason:
            result["reason"] = self.reason
        if self.note:
            result["note"] = self.note
        return result

    def __str__(self) -> str:
        if self.kind == VerdictKind.FINITE_CERTIFIED:
            fixed = [i.fixed_point for i in self.evidence if i.fixed_point is not None]
            return "FiniteCertified" + (f"({fixed[0]})" if fixed else "")
        if self.kind == VerdictKind.NOT_CERTIFIED and self.witness is not None:
            moved = {k: v for k, v in (self.witness.witness or {}).items() if k != v}
            swaps = ", ".join(f"{k}->{v}" for k, v in moved.items())
            b = self.witness.report.b if self.witness.report else 0
            return f"NotCertified, witness involution {{{swaps}}} with b = {b}"
        return f"Unsupported: {self.reason}"


def _permutation_of(curve: curves.CurveModel, psi: curves.Automorphism) -> dict:
    return {p: typing.cast(MobiusMap, psi).apply(p) for p in curve.punctures}


def finiteness_verdict(
    rd: RealDatum,
    k: typing.Optional[lifting.KDescription] = None,
    cap: int = 10080,
) -> FormsVerdict:
    """Apply the permutation module criterion for finitely many real forms.

    The liftable automorphisms act on Lambda through their permutation of S,
    the certified families fix S pointwise. Together with conjugation they
    generate the group checked by the sum-zero certificate.

    Args:
        rd: The real datum.
        k: The liftable automorphisms, computed when absent.
        cap: The largest permutation group to enumerate.
    """
    d = rd.datum
    if d.curve.kind != CurveKind.P1_MINUS or len(d.curve.punctures) < 2:
        evidence = lattice.PermutationVerdict(lattice.PermutationKind.PERMUTATION, 1)
        logger.info("Lambda is zero, so the forms are finite.")
        return FormsVerdict(VerdictKind.FINITE_CERTIFIED, evidence=(evidence,))

    k = k if k is not None else lifting.lift_group(d)
    generators = [_permutation_of(d.curve, psi) for psi in k.generators()]
    generators.append(conjugation_permutation(d.curve))

    verdicts = []
    try:
        for _ in range(d.torus_rank):
            verdicts.append(
                lattice.sum_zero_permutation_certificate(d.curve.punctures, generators, cap)
            )
    except errors.GroupTooLarge as error:
        logger.warning("Unsupported: %s", error)
        return FormsVerdict(VerdictKind.UNSUPPORTED, reason=str(error))

    for verdict in verdicts:
        if verdict.kind == lattice.PermutationKind.NOT_PERMUTATION:
            note = ""
            if verdict.report is not None and verdict.report.rank == 1:
                note = SIGN_DISCREPANCY
            return FormsVerdict(
                VerdictKind.NOT_CERTIFIED, evidence=tuple(verdicts), witness=verdict, note=note
            )
    if any(v.kind == lattice.PermutationKind.UNKNOWN for v in verdicts):
        reason = "The group fixes no puncture and has no involution with a sign summand."
        logger.warning("Unsupported: %s", reason)
        return FormsVerdict(VerdictKind.UNSUPPORTED, evidence=tuple(verdicts), reason=reason)
    return FormsVerdict(VerdictKind.FINITE_CERTIFIED, evidence=tuple(verdicts))


@dataclasses.dataclass(frozen=True, order=True)
class SkeletonElement:
    """The element (k, sign) of Z semidirect Z/2, with sign acting on Z by multiplication."""

    k: int
    sign: int = 1

    def __mul__(self, other: "SkeletonElement") -> "SkeletonElement":
        return SkeletonElement(self.k + self.sign * other.k, self.sign * other.sign)

    def inverse(self) -> "SkeletonElement":
        """The inverse element."""
        return SkeletonElement(-self.sign * self.k, self.sign)

    def conjugate(self, other: "SkeletonElement") -> "SkeletonElement":
        """self * other * self^-1."""
        return self * other * self.inverse()

    @property
    def is_involution(self) -> bool:
        """Whether the element has order 2."""
        return self * self == SkeletonElement(0) and self != SkeletonElement(0)

    def __str__(self) -> str:
        return f"({self.k},{'+' if self.sign == 1 else '-'})"


def cocycle(n: int) -> SkeletonElement:
    """The skeleton of the involution (z1, z2) -> (conj(z2)^n conj(z1), conj(z2)^-1)."""
    return SkeletonElement(n, -1)


def _search_order(bound: int) -> list[SkeletonElement]:
    ks = sorted(range(-bound, bound + 1), key=lambda k: (abs(k), k < 0))
    return [SkeletonElement(k, sign) for k in ks for sign in (1, -1)]


def skeleton_conjugator(
    n: int, m: int, bound: int
) -> typing.Optional[SkeletonElement]:
    """Find h with h c_n h^-1 = c_m and |k| <= bound, or None."""
    target = cocycle(m)
    for h in _search_order(bound):
        if h.conjugate(cocycle(n)) == target:
            return h
    return None


@dataclasses.dataclass(frozen=True)
class MuClassification:
    """The classes of the family c_n, |n| <= bound, under conjugation."""

    bound: int
    classes: tuple[tuple[int, ...], ...]
    conjugators: tuple[tuple[int, int, SkeletonElement], ...]
    """(representative, member, h) with h c_rep h^-1 = c_member."""
    invariant: str = "n mod 2"

    def save_data(self) -> typing.Mapping:
        """Save the classification to a mapping."""
        return {
            "bound": self.bound,
            "classes": [list(c) for c in self.classes],
            "conjugators": [[r, m, str(h)] for r, m, h in self.conjugators],
            "invariant": self.invariant,
        }

    def __str__(self) -> str:
        names = []
        for group in self.classes:
            parity = "even" if group[0] % 2 == 0 else "odd"
            names.append(parity if all(i % 2 == group[0] % 2 for i in group) else str(group))
        return "{" + ", ".join(names) + "}"


def mu_family_classify(bound: int = 16) -> MuClassification:
    """Classify the cocycles c_n = (n, -) for |n| <= bound by exhaustive search.

    Conjugation by (k, +) sends c_n to c_(n + 2k), and by (k, -) to c_(2k - n),
    so the classes are the two parities.

    Raises:
        InputError: if bound is not between 1 and 64.
    """
    if not 1 <= bound <= 64:
        raise errors.InputError(f"The search bound must be between 1 and 64, got {bound}.")

    values = list(range(-bound, bound + 1))
    parent = {n: n for n in values}

    def find(n: int) -> int:
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    elements = _search_order(bound)
    for n in values:
        for h in elements:
            m = h.conjugate(cocycle(n)).k
            if -bound <= m <= bound:
                parent[find(m)] = find(n)

    groups: dict[int, list[int]] = {}
    for n in values:
        groups.setdefault(find(n), []).append(n)
    classes = sorted(
        (tuple(sorted(g, key=lambda i: (abs(i), i < 0))) for g in groups.values()),
        key=lambda g: (abs(g[0]), g[0] < 0),
    )

    conjugators = []
    for group in classes:
        representative = group[0]
        for member in group[1:]:
            h = skeleton_conjugator(representative, member, bound)
            if h is None or h.conjugate(cocycle(representative)) != cocycle(member):
                raise errors.InvariantBreach(
                    f"No verified conjugator from c_{representative} to c_{member}."
                )
            conjugators.append((representative, member, h))

    logger.info("The family splits into %s classes for |n| <= %s.", len(classes), bound)
    return MuClassification(
        bound=bound, classes=tuple(classes), conjugators=tuple(conjugators)
    )


def unit_circle_point() -> GaussianRational:
    """A point alpha of Q(i) with |alpha|^2 = 1 other than the fourth roots of unity."""
    return GaussianRational(Fraction(3, 5), Fraction(4, 5))


def solve_phase(u: GaussianRational) -> GaussianRational:
    """Find lambda with lambda / conj(lambda) = u, for u on the unit circle.

    Raises:
        InputError: if |u| is not 1.
    """
    if u.norm() != 1:
        raise errors.InputError(f"The value {u} is not on the unit circle.")
    if u == GaussianRational(Fraction(-1)):
        return GaussianRational(Fraction(0), Fraction(1))
    return u + 1
