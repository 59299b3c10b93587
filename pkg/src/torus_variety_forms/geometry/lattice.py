"""Cohomology of integer lattices with an involution.

The group of order two acts on Z^m through an integral involution sigma.
H^1 = ker(sigma + 1) / im(sigma - 1) and the Tate group
H^0 = ker(sigma - 1) / im(sigma + 1) are computed with the Smith normal form.
Every such lattice is a sum of a trivial, b sign and c regular summands,
and the triple (a, b, c) is recovered from the two group orders and the
two kernel ranks.
"""

import dataclasses
import enum
import logging
import math
import typing

import numpy as np
import sympy

from torus_variety_forms.common import errors

logger = logging.getLogger(__name__)

IntMatrix = list[list[int]]


def _rows(matrix: typing.Any) -> IntMatrix:
    if isinstance(matrix, sympy.MatrixBase):
        return [[int(x) for x in matrix.row(i)] for i in range(matrix.rows)]
    return [[int(x) for x in row] for row in matrix]


def _identity(size: int) -> IntMatrix:
    return [[int(i == j) for j in range(size)] for i in range(size)]


def _as_matrix(rows: IntMatrix, cols: int) -> sympy.ImmutableMatrix:
    if not rows:
        return sympy.ImmutableMatrix(sympy.zeros(0, cols))
    return sympy.ImmutableMatrix(rows)


def smith_normal_form(
    matrix: typing.Any,
) -> tuple[sympy.ImmutableMatrix, sympy.ImmutableMatrix, sympy.ImmutableMatrix]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Args:
        matrix: An integer matrix, as a sympy matrix or a list of rows.

    Returns:
        (U, D, V) with U * M * V = D, U and V unimodular, and the diagonal
        of D nonnegative with each entry dividing the next.

    >>> smith_normal_form([[2, 4], [6, 8]])[1].tolist()
    [[2, 0], [0, 4]]
    """
    a = _rows(matrix)
    m = len(a)
    n = len(a[0]) if a else (matrix.cols if isinstance(matrix, sympy.MatrixBase) else 0)
    u, v = _identity(m), _identity(n)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a + v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, factor: int) -> None:
        for rows in (a, u):
            rows[target] = [x + factor * y for x, y in zip(rows[target], rows[source])]

    def add_col(target: int, source: int, factor: int) -> None:
        for row in a + v:
            row[target] += factor * row[source]

    for t in range(min(m, n)):
        while True:
            entries = [
                (abs(a[i][j]), i, j)
                for i in range(t, m)
                for j in range(t, n)
                if a[i][j] != 0
            ]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            pivot = a[t][t]

            reduced = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
                    reduced = reduced and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
                    reduced = reduced and a[t][j] == 0
            if not reduced:
                continue

            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % pivot),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return _as_matrix(u, m), _as_matrix(a, n), _as_matrix(v, n)


def _diagonal(d: sympy.MatrixBase) -> list[int]:
    return [int(d[i, i]) for i in range(min(d.rows, d.cols))]


def integer_kernel(matrix: typing.Any) -> sympy.ImmutableMatrix:
    """A basis of the saturated integer kernel, as the columns of a matrix."""
    _, d, v = smith_normal_form(matrix)
    rank = sum(1 for x in _diagonal(d) if x)
    return sympy.ImmutableMatrix(v[:, rank:])


def _quotient_invariants(
    kernel_of: sympy.MatrixBase, image_of: sympy.MatrixBase
) -> list[int]:
    """The invariant factors of ker(kernel_of) / im(image_of), which must be finite."""
    _, d, v = smith_normal_form(kernel_of)
    rank = sum(1 for x in _diagonal(d) if x)
    size = v.cols - rank
    if size == 0:
        return []
    coordinates = (v.inv() * image_of)[rank:, :]
    factors = _diagonal(smith_normal_form(coordinates)[1])
    if sum(1 for x in factors if x) != size:
        raise errors.InvariantBreach("The cohomology quotient is not finite.")
    return [x for x in factors if x > 1]


@dataclasses.dataclass(frozen=True)
class InvolutionLattice:
    """Z^m with an integral involution sigma."""

    rank: int
    sigma: sympy.ImmutableMatrix

    @classmethod
    def create(cls, matrix: typing.Any) -> "InvolutionLattice":
        """Build the lattice of a square integer matrix with sigma^2 = 1.

        Raises:
            NotInvolution: if the matrix is not square or not an involution.
        """
        rows = _rows(matrix)
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise errors.NotInvolution(f"The matrix {rows} is not square.")
        sigma = _as_matrix(rows, size)
        if sigma * sigma != sympy.eye(size):
            raise errors.NotInvolution(f"The matrix {rows} is not an involution.")
        return InvolutionLattice(rank=size, sigma=sigma)

    def save_data(self) -> typing.Mapping:
        """Save the lattice to a mapping."""
        return {"rank": self.rank, "sigma": _rows(self.sigma)}


@dataclasses.dataclass(frozen=True)
class CohomologyReport:
    """The cohomology of an involution lattice and its decomposition type."""

    rank: int
    a: int
    """Trivial summands."""
    b: int
    """Sign summands."""
    c: int
    """Regular summands."""
    h1_invariants: tuple[int, ...] = ()

    @property
    def h1_order(self) -> int:
        """The order of the first cohomology group."""
        return 2**self.b

    @property
    def tate0_order(self) -> int:
        """The order of the zeroth Tate cohomology group."""
        return 2**self.a

    @property
    def h0_rank(self) -> int:
        """The rank of the invariant sublattice."""
        return self.a + self.c

    @property
    def type(self) -> tuple[int, int, int]:
        """The decomposition type (a, b, c)."""
        return self.a, self.b, self.c

    def h1_str(self) -> str:
        """The first cohomology group as text."""
        if not self.b:
            return "1"
        return "Z/2" if self.b == 1 else f"(Z/2)^{self.b}"

    def save_data(self) -> typing.Mapping:
        """Save the report to a mapping."""
        return {
            "rank": self.rank,
            "type": [self.a, self.b, self.c],
            "h1_order": self.h1_order,
            "h1": self.h1_str(),
            "tate0_order": self.tate0_order,
            "h0_rank": self.h0_rank,
        }


def free_group_str(rank: int) -> str:
    """Name the free abelian group of the given rank.

    >>> free_group_str(0), free_group_str(1), free_group_str(3)
    ('0', 'Z', 'Z^3')
    """
    if rank == 0:
        return "0"
    return "Z" if rank == 1 else f"Z^{rank}"


def _log2(order: int, name: str) -> int:
    exponent = order.bit_length() - 1
    if order < 1 or 2**exponent != order:
        raise errors.InvariantBreach(f"The order {order} of {name} is not a power of 2.")
    return exponent


def cohomology(lattice: InvolutionLattice) -> CohomologyReport:
    """Compute H^1, the Tate group and the type (a, b, c) of an involution lattice.

    Raises:
        InvariantBreach: if the computed groups are inconsistent.
    """
    m = lattice.rank
    if m == 0:
        return CohomologyReport(rank=0, a=0, b=0, c=0)
    identity = sympy.eye(m)
    plus, minus = lattice.sigma + identity, lattice.sigma - identity

    h1 = _quotient_invariants(plus, minus)
    tate0 = _quotient_invariants(minus, plus)
    b = _log2(math.prod(h1), "H^1")
    a = _log2(math.prod(tate0), "the Tate group")
    fixed_rank = m - minus.rank()
    anti_rank = m - plus.rank()
    c = fixed_rank - a

    if c < 0 or anti_rank != b + c or a + b + 2 * c != m:
        raise errors.InvariantBreach(
            f"Inconsistent cohomology: a={a}, b={b}, ranks {fixed_rank}, {anti_rank}, m={m}."
        )
    report = CohomologyReport(rank=m, a=a, b=b, c=c, h1_invariants=tuple(h1))
    logger.debug("Cohomology of rank %s lattice has type %s.", m, report.type)
    return report


@dataclasses.dataclass(frozen=True)
class BruteForceResult:
    """The order of H^1 found by enumerating cocycles in a box."""

    order: int
    bound: int
    representatives: tuple[tuple[int, ...], ...] = ()

    def save_data(self) -> typing.Mapping:
        """Save the result to a mapping."""
        return {
            "order": self.order,
            "bound": self.bound,
            "representatives": [list(r) for r in self.representatives],
        }


_CHUNK = 1 << 16


@dataclasses.dataclass(frozen=True)
class _CoboundaryReduction:
    """Coordinates t = L a on the cocycle lattice and the residues of U t that
    name the class of a cocycle modulo the coboundary lattice."""

    left_inverse: np.ndarray
    transform: np.ndarray
    moduli: np.ndarray
    rows: np.ndarray

    @property
    def order(self) -> int:
        """The number of cohomology classes."""
        return math.prod(int(x) for x in self.moduli)

    def classes(self, cocycles: np.ndarray) -> np.ndarray:
        """The class of each cocycle row, as a row of residues."""
        t = cocycles @ self.left_inverse.T
        residues = np.mod((t @ self.transform.T)[:, self.rows], self.moduli)
        return np.concatenate([np.zeros((len(cocycles), 1), dtype=np.int64), residues], axis=1)


def _coboundary_reduction(lattice: InvolutionLattice) -> typing.Optional[_CoboundaryReduction]:
    identity = sympy.eye(lattice.rank)
    _, d, v = smith_normal_form(lattice.sigma + identity)
    rank = sum(1 for x in _diagonal(d) if x)
    left_inverse = v.inv()[rank:, :]
    size = v.cols - rank
    if size == 0:
        return None

    u, d, _ = smith_normal_form(left_inverse * (lattice.sigma - identity))
    factors = _diagonal(d)
    if len(factors) != size or not all(factors):
        raise errors.InvariantBreach("The coboundaries do not have finite index in the cocycles.")
    rows = [i for i, x in enumerate(factors) if x > 1]
    return _CoboundaryReduction(
        left_inverse=np.array(_rows(left_inverse), dtype=np.int64).reshape(size, lattice.rank),
        transform=np.array(_rows(u), dtype=np.int64).reshape(size, size),
        moduli=np.array([factors[i] for i in rows], dtype=np.int64),
        rows=np.array(rows, dtype=np.int64),
    )


def _box_cocycles(sigma: np.ndarray, radius: int) -> typing.Iterator[np.ndarray]:
    """The cocycles a + sigma a = 0 in [-radius, radius]^m, a chunk at a time."""
    m = sigma.shape[0]
    shape = (2 * radius + 1,) * m
    total = math.prod(shape)
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(start + _CHUNK, total))
        points = np.stack(np.unravel_index(flat, shape), axis=1).astype(np.int64) - radius
        yield points[np.all(points + points @ sigma.T == 0, axis=1)]


def _representative_key(a: tuple[int, ...]) -> tuple[int, int, tuple[int, ...]]:
    return max(map(abs, a), default=0), sum(map(abs, a)), a


def _box_classes(
    lattice: InvolutionLattice, bound: int
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Count the classes met by the cocycles of the box, with a least representative each.

    The box is searched by growing radius and the search stops once every
    class of the quotient has a representative.
    """
    m = lattice.rank
    if m == 0:
        return 1, ((),)
    reduction = _coboundary_reduction(lattice)
    if reduction is None:
        return 1, ((0,) * m,)

    sigma = np.array(_rows(lattice.sigma), dtype=np.int64).reshape(m, m)
    best: dict[tuple[int, ...], tuple[int, ...]] = {}
    for radius in range(bound + 1):
        for cocycles in _box_cocycles(sigma, radius):
            if not len(cocycles):
                continue
            keys = reduction.classes(cocycles)
            norms = np.abs(cocycles)
            columns = tuple(cocycles[:, j] for j in reversed(range(m)))
            order = np.lexsort(columns + (norms.sum(axis=1), norms.max(axis=1)))
            _, first = np.unique(keys[order], axis=0, return_index=True)
            for index in order[first]:
                key = tuple(int(x) for x in keys[index])
                candidate = tuple(int(x) for x in cocycles[index])
                current = best.get(key)
                if current is None or (
                    _representative_key(candidate) < _representative_key(current)
                ):
                    best[key] = candidate
        if len(best) == reduction.order:
            break

    representatives = sorted(best.values(), key=_representative_key)
    return len(best), tuple(representatives)


def brute_force_h1(lattice: InvolutionLattice, bound: int) -> BruteForceResult:
    """Count H^1 by enumerating cocycles a + sigma a = 0 in the box [-bound, bound]^m.

    Two cocycles are identified when their difference lies in the coboundary
    lattice (sigma - 1) Z^m, decided exactly on coordinates of the cocycle
    lattice. The count is repeated with bound + 2 and must agree.

    Args:
        lattice: The involution lattice, of rank at most 6.
        bound: The box half width, from 1 to 10.

    Returns:
        The number of classes with a representative in the box, and the
        representatives of least max norm, then least sum norm.

    Raises:
        InputError: if the rank or the bound is out of range.
        Unstable: if the two counts differ.
    """
    if lattice.rank > 6 or not 1 <= bound <= 10:
        raise errors.InputError(
            f"The brute force count needs rank <= 6 and 1 <= bound <= 10, "
            f"got rank {lattice.rank} and bound {bound}."
        )
    order, representatives = _box_classes(lattice, bound)
    wider, _ = _box_classes(lattice, bound + 2)
    if order != wider:
        raise errors.Unstable(
            f"The cocycle count {order} at bound {bound} differs from {wider} at bound {bound + 2}."
        )
    return BruteForceResult(order=order, bound=bound, representatives=representatives)


@dataclasses.dataclass(frozen=True)
class PermutationCheck:
    """Whether a lattice is a permutation module, with its cohomology report."""
    permutation: bool
    report: CohomologyReport


def is_permutation_involution(lattice: InvolutionLattice) -> PermutationCheck:
    """A lattice with an involution is a permutation lattice iff it has no sign summand."""
    report = cohomology(lattice)
    return PermutationCheck(permutation=report.b == 0, report=report)


Permutation = tuple[int, ...]


def _compose(first: Permutation, second: Permutation) -> Permutation:
    """first after second."""
    return tuple(first[i] for i in second)


def closure(
    generators: typing.Iterable[Permutation], size: int, cap: int = 10080
) -> list[Permutation]:
    """The group generated by permutations of range(size), identity first.

    Raises:
        GroupTooLarge: if the group has more than cap elements.
    """
    identity = tuple(range(size))
    gens = [tuple(g) for g in generators if tuple(g) != identity]
    found = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        following = []
        for element in frontier:
            for gen in gens:
                product = _compose(gen, element)
                if product not in seen:
                    seen.add(product)
                    found.append(product)
                    following.append(product)
                    if len(found) > cap:
                        raise errors.GroupTooLarge(
                            f"The generated group has more than {cap} elements."
                        )
        frontier = following
    logger.debug("Closure of %s generators has %s elements.", len(gens), len(found))
    return found


def sum_zero_action(permutation: Permutation) -> sympy.ImmutableMatrix:
    """The matrix of a permutation on the sum-zero lattice of Z^k in the basis e_j - e_0.

    The class of e_j - e_0 goes to e_sigma(j) - e_sigma(0).

    >>> sum_zero_action((1, 0, 2)).tolist()
    [[-1, -1], [0, 1]]
    """
    size = max(len(permutation) - 1, 0)
    matrix = sympy.zeros(size, size)
    if not size:
        return sympy.ImmutableMatrix(matrix)
    moved_base = permutation[0]
    for column in range(size):
        target = permutation[column + 1]
        if target != 0:
            matrix[target - 1, column] += 1
        if moved_base != 0:
            matrix[moved_base - 1, column] -= 1
    return sympy.ImmutableMatrix(matrix)


def sum_zero_lattice(permutation: Permutation) -> InvolutionLattice:
    """The sum-zero lattice of a permutation, as an involution lattice."""
    return InvolutionLattice.create(sum_zero_action(permutation))


class PermutationKind(enum.Enum):
    """Permutation verdict options."""
    PERMUTATION = "permutation"
    NOT_PERMUTATION = "not-permutation"
    UNKNOWN = "unknown"


@dataclasses.dataclass(frozen=True)
class PermutationVerdict:
    """Whether the sum-zero lattice of a permutation group is a permutation module."""

    kind: PermutationKind
    group_order: int
    fixed_point: typing.Optional[typing.Any] = None
    witness: typing.Optional[dict] = None
    """The involution with a sign summand, as a map of points."""
    report: typing.Optional[CohomologyReport] = None

    def save_data(self) -> typing.Mapping:
        """Save the verdict to a mapping."""
        result: dict[str, typing.Any] = {
            "kind": self.kind.value,
            "group_order": self.group_order,
        }
        if self.fixed_point is not None:
            result["fixed_point"] = str(self.fixed_point)
        if self.witness is not None:
            result["witness"] = {str(k): str(v) for k, v in self.witness.items() if k != v}
        if self.report is not None:
            result["report"] = dict(self.report.save_data())
        return result


def sum_zero_permutation_certificate(
    points: typing.Sequence[typing.Any],
    generators: typing.Iterable[typing.Mapping[typing.Any, typing.Any]],
    cap: int = 10080,
) -> PermutationVerdict:
    """Decide whether the sum-zero lattice of Z^S is a permutation module.

    A common fixed point s0 gives the permuted basis e_j - e_s0. Otherwise an
    involution in the group whose action has a sign summand rules it out.

    Args:
        points: The set S; the first point is the base of the lattice basis.
        generators: Permutations of S, as maps.
        cap: The largest group to enumerate.

    Returns:
        Permutation with the fixed point, NotPermutation with the involution,
        or Unknown.
    """
    ordered = list(points)
    index = {p: i for i, p in enumerate(ordered)}
    perms = []
    for gen in generators:
        perm = tuple(index[gen[p]] for p in ordered)
        if sorted(perm) != list(range(len(ordered))):
            raise errors.NotAnAutomorphism(f"The map {gen} is not a permutation of S.")
        perms.append(perm)
    group = closure(perms, len(ordered), cap)

    if not ordered:
        return PermutationVerdict(PermutationKind.PERMUTATION, len(group))
    for i, point in enumerate(ordered):
        if all(g[i] == i for g in group):
            return PermutationVerdict(
                PermutationKind.PERMUTATION, len(group), fixed_point=point
            )

    identity = tuple(range(len(ordered)))
    for element in group:
        if element == identity or _compose(element, element) != identity:
            continue
        report = cohomology(sum_zero_lattice(element))
        if report.b > 0:
            witness = {p: ordered[element[i]] for i, p in enumerate(ordered)}
            return PermutationVerdict(
                PermutationKind.NOT_PERMUTATION, len(group), witness=witness, report=report
            )
    return PermutationVerdict(PermutationKind.UNKNOWN, len(group))
