"""Common functionality for commands."""
import abc
import logging
import pathlib
import typing

from torus_variety_forms.common import models, report

logger = logging.getLogger(__name__)


class BaseManage(abc.ABC):
    """A common base for command classes."""

    command: typing.ClassVar[str] = ""

    def __init__(self, config: models.ConfigRun) -> None:
        """
        Subclasses must call init to create an instance.

        Args:
            config: The run settings for this action.
        """
        self._config = config
        self._warnings: list[str] = []

    @property
    def config(self) -> models.ConfigRun:
        """The run settings of this action."""
        return self._config

    def run(self) -> report.Report:
        """Run the action.

        Returns:
            The report of the action.
        """
        raise NotImplementedError()

    def _load_datum(self, datum_file: pathlib.Path) -> models.DatumFile:
        logger.info("Reading datum file '%s'.", datum_file)
        return models.DatumFile.load_file(datum_file)

    def _warn(self, message: str) -> None:
        """Log a warning and keep it for the report."""
        logger.warning(message)
        self._warnings.append(message)

    def _report(
        self,
        arguments: typing.Mapping[str, typing.Any],
        result: typing.Mapping[str, typing.Any],
        summary: typing.Iterable[str],
    ) -> report.Report:
        logger.info("Finished '%s'.", self.command)
        return report.Report.create(
            command=self.command,
            arguments=arguments,
            result=result,
            summary=summary,
            warnings=self._warnings,
        )
