"""The lift action."""

import logging
import pathlib

from torus_variety_forms.common import errors, manage, models, report
from torus_variety_forms.geometry import curves, lifting

logger = logging.getLogger(__name__)


class Lift(manage.BaseManage):
    """Decide whether one automorphism of the base curve lifts to the variety."""

    command = "lift"

    def __init__(
        self,
        config: models.ConfigRun,
        datum_file: pathlib.Path,
        kind: str,
        automorphism: str = "",
    ) -> None:
        """Create a new Lift instance.

        Args:
            config: The run settings.
            datum_file: The datum to test against.
            kind: One of 'mobius', 'ec-translate', 'ec-neg'.
            automorphism: The automorphism literal, empty for 'ec-neg'.
        """
        super().__init__(config=config)
        self._datum_file = datum_file
        self._kind = kind
        self._automorphism = automorphism

    def run(self) -> report.Report:
        """Run the 'lift' action."""
        d = self._load_datum(self._datum_file).datum
        psi = curves.parse_automorphism(d.curve, self._automorphism, self._kind)
        logger.info("Testing whether %s lifts.", psi)

        result = lifting.lift_test(d, psi)
        if result.verdict == lifting.LiftVerdict.UNSUPPORTED:
            raise errors.UnsupportedAutomorphism(result.reason)
        logger.info("Verdict: %s.", result.verdict.value)

        return self._report(
            arguments={
                "datum_file": str(self._datum_file),
                "kind": self._kind,
                "automorphism": self._automorphism,
            },
            result=result.save_data(),
            summary=[str(result)],
        )
