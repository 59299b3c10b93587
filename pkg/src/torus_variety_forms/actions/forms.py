"""The forms action."""

import logging
import pathlib
import typing

from torus_variety_forms.actions import h1
from torus_variety_forms.common import errors, manage, models, report
from torus_variety_forms.geometry import lattice, lifting, real_forms
from torus_variety_forms.geometry.real_forms import VerdictKind

logger = logging.getLogger(__name__)


class Forms(manage.BaseManage):
    """Decide whether a real datum has finitely many real forms.

    When the criterion fails, the witness lattice is examined further:
    its cohomology is computed exactly and by enumeration, and for the sign
    lattice Z the family of twisting cocycles is classified.
    """

    command = "forms"

    def __init__(self, config: models.ConfigRun, datum_file: pathlib.Path) -> None:
        """Create a new Forms instance."""
        super().__init__(config=config)
        self._datum_file = datum_file

    def run(self) -> report.Report:
        """Run the 'forms' action."""
        config = self._config
        datum_file = self._load_datum(self._datum_file)
        if not datum_file.real:
            logger.info("The datum is not marked real, checking conjugation anyway.")
        rd = datum_file.real_datum()
        d = rd.datum

        k = lifting.lift_group(
            d,
            spot_checks=config.spot_checks,
            seed=config.seed,
            order_bound=config.torsion_order_bound,
        )
        twisted = real_forms.twisted_lambda(rd)
        twisted_report = lattice.cohomology(twisted)
        verdict = real_forms.finiteness_verdict(rd, k, cap=config.group_cap)
        if verdict.kind == VerdictKind.UNSUPPORTED:
            raise errors.UnsupportedError(f"Unsupported: {verdict.reason}")
        logger.info("Verdict: %s.", verdict)

        summary = [
            str(verdict),
            f"K = {k}",
            f"Lambda = {lattice.free_group_str(twisted.rank)}, "
            f"conjugation gives H^1 = {twisted_report.h1_str()}",
        ]
        result: dict[str, typing.Any] = {
            "verdict": verdict.save_data(),
            "k": k.save_data(),
            "lambda": twisted.save_data(),
            "lambda_cohomology": twisted_report.save_data(),
        }

        if verdict.kind == VerdictKind.NOT_CERTIFIED and verdict.witness is not None:
            result.update(self._examine_witness(d.curve.punctures, verdict, summary))

        arguments = {
            "datum_file": str(self._datum_file),
            "bound": config.mu_bound,
            "seed": config.seed,
            "spot_checks": config.spot_checks,
        }
        return self._report(arguments=arguments, result=result, summary=summary)

    def _examine_witness(
        self,
        punctures: typing.Sequence[typing.Any],
        verdict: real_forms.FormsVerdict,
        summary: list[str],
    ) -> dict[str, typing.Any]:
        """Cross-check the witness lattice and classify the cocycle family on Z."""
        config = self._config
        witness = typing.cast(lattice.PermutationVerdict, verdict.witness)
        expected = typing.cast(lattice.CohomologyReport, witness.report)
        images = typing.cast(dict, witness.witness)

        index = {p: i for i, p in enumerate(punctures)}
        permutation = tuple(index[images[p]] for p in punctures)
        witness_lattice = lattice.sum_zero_lattice(permutation)
        a, b, c = expected.type
        summary.append(
            f"witness lattice: H^1 = {expected.h1_str()}, type ({a},{b},{c})"
        )

        result: dict[str, typing.Any] = {"witness_lattice": witness_lattice.save_data()}
        if witness_lattice.rank <= h1.BRUTE_FORCE_MAX_RANK:
            checks = h1.check_brute_force(
                witness_lattice, expected, config.brute_force_bounds
            )
            summary.extend(f"brute force at bound {i.bound}: order {i.order}" for i in checks)
            result["brute_force"] = [i.save_data() for i in checks]

        if expected.rank == 1:
            classes = real_forms.mu_family_classify(config.mu_bound)
            summary.append(f"mu classes for |n| <= {classes.bound}: {classes}")
            alpha = real_forms.unit_circle_point()
            phase = real_forms.solve_phase(alpha)
            summary.append(
                f"phase: alpha = {alpha}, lambda = {phase} with lambda / conj(lambda) = alpha"
            )
            result["mu_classification"] = classes.save_data()
            result["phase"] = {"alpha": str(alpha), "lambda": str(phase)}
            if verdict.note:
                self._warn(verdict.note)
        return result
