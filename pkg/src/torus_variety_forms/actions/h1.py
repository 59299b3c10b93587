"""The h1 action."""

import logging
import typing

from torus_variety_forms.common import errors, manage, models, report, utils
from torus_variety_forms.geometry import lattice

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_RANK = 5


def check_brute_force(
    involution: lattice.InvolutionLattice,
    expected: lattice.CohomologyReport,
    bounds: typing.Iterable[int],
) -> list[lattice.BruteForceResult]:
    """Count H^1 by enumeration at each bound and compare with the exact order.

    Raises:
        InvariantBreach: if a count differs from the exact order.
    """
    results = []
    for bound in bounds:
        result = lattice.brute_force_h1(involution, bound)
        if result.order != expected.h1_order:
            raise errors.InvariantBreach(
                f"The brute force count {result.order} at bound {bound} "
                f"differs from the exact order {expected.h1_order}."
            )
        logger.info("Brute force at bound %s agrees: order %s.", bound, result.order)
        results.append(result)
    return results


class H1(manage.BaseManage):
    """Compute the cohomology of Z^m with an integral involution."""

    command = "h1"

    def __init__(self, config: models.ConfigRun, matrix: str) -> None:
        """Create a new H1 instance.

        Args:
            config: The run settings.
            matrix: The involution as a JSON array of integer rows.
        """
        super().__init__(config=config)
        self._matrix = matrix

    def run(self) -> report.Report:
        """Run the 'h1' action."""
        raw = utils.parse_int_list(self._matrix, "--matrix")
        rows = []
        for i, row in enumerate(raw):
            if not isinstance(row, list):
                raise errors.DatumParseError("Expected a row array.", path=f"--matrix[{i}]")
            rows.append([utils.parse_integer(v, f"--matrix[{i}][{j}]") for j, v in enumerate(row)])

        involution = lattice.InvolutionLattice.create(rows)
        result = lattice.cohomology(involution)
        a, b, c = result.type
        summary = [
            f"H^1 = {result.h1_str()}, type ({a},{b},{c})",
            f"H^0 has rank {result.h0_rank}, Tate H^0 has order {result.tate0_order}",
        ]

        checks: list[lattice.BruteForceResult] = []
        if involution.rank <= BRUTE_FORCE_MAX_RANK:
            checks = check_brute_force(involution, result, self._config.brute_force_bounds[:1])
            summary.extend(
                f"brute force at bound {i.bound}: order {i.order}" for i in checks
            )

        return self._report(
            arguments={"matrix": rows},
            result={
                "lattice": involution.save_data(),
                "cohomology": result.save_data(),
                "brute_force": [i.save_data() for i in checks],
            },
            summary=summary,
        )
