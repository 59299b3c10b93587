"""The aut action."""

import logging
import pathlib

from torus_variety_forms.common import manage, models, report
from torus_variety_forms.geometry import lattice, lifting

logger = logging.getLogger(__name__)


class Aut(manage.BaseManage):
    """Describe the equivariant automorphism group through its exact sequence.

    The kernel is the fiber group, a torus times the units lattice Lambda.
    The image K is the group of curve automorphisms that lift.
    """

    command = "aut"

    def __init__(self, config: models.ConfigRun, datum_file: pathlib.Path) -> None:
        """Create a new Aut instance."""
        super().__init__(config=config)
        self._datum_file = datum_file

    def run(self) -> report.Report:
        """Run the 'aut' action."""
        config = self._config
        d = self._load_datum(self._datum_file).datum

        k = lifting.lift_group(
            d,
            spot_checks=config.spot_checks,
            seed=config.seed,
            order_bound=config.torsion_order_bound,
        )
        fiber = lifting.fiber_group(d, k)
        lambda_str = lattice.free_group_str(fiber.rank)
        logger.info("Lambda has rank %s, K is %s.", fiber.rank, k)

        summary = [
            "1 -> Aut_C(X) -> Aut(X) -> K -> 1",
            f"n = {d.torus_rank}, Aut_C(X) = T x Lambda with Lambda = {lambda_str}",
        ]
        if fiber.units.basis:
            summary.append("units basis: " + ", ".join(str(f) for f in fiber.units.basis))
        summary.append(f"K = {k}")
        summary.extend(f"{result.automorphism}: {result}" for result in k.tests)
        for psi, matrix in fiber.actions:
            summary.append(f"{psi} acts on Lambda by {matrix.tolist()}")

        return self._report(
            arguments={
                "datum_file": str(self._datum_file),
                "seed": config.seed,
                "spot_checks": config.spot_checks,
            },
            result={
                "fiber_group": fiber.save_data(),
                "k": k.save_data(),
                "k_summary": str(k),
            },
            summary=summary,
        )
