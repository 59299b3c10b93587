"""The check action."""

import logging
import pathlib

from torus_variety_forms.common import manage, models, report
from torus_variety_forms.geometry import divisors

logger = logging.getLogger(__name__)


class Check(manage.BaseManage):
    """Validate a datum file and show its support and bad locus."""

    command = "check"

    def __init__(self, config: models.ConfigRun, datum_file: pathlib.Path) -> None:
        """Create a new Check instance."""
        super().__init__(config=config)
        self._datum_file = datum_file

    def run(self) -> report.Report:
        """Run the 'check' action."""
        datum_file = self._load_datum(self._datum_file)
        d = datum_file.datum

        bad = divisors.bad_locus(d)
        rigid = divisors.rigid_locus(d)
        shifts = divisors.translate_vectors(d)
        support = "{" + ", ".join(str(p) for p in d.support) + "}"
        logger.info("The datum is valid, the bad locus has %s points.", len(bad.points))

        summary = [f"OK, support {support}, F {bad}"]
        if rigid.classes and rigid != bad:
            summary.append(f"non-integral translates {rigid}")
        if datum_file.real:
            summary.append("stable under complex conjugation")

        return self._report(
            arguments={"datum_file": str(self._datum_file)},
            result={
                "valid": True,
                "datum": datum_file.save_data(),
                "support": [str(p) for p in d.support],
                "bad_locus": bad.save_data(),
                "rigid_locus": rigid.save_data(),
                "translates": {str(p): [str(i) for i in v] for p, v in shifts.items()},
                "real": datum_file.real,
            },
            summary=summary,
        )
