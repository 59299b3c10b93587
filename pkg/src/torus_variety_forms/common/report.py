"""The report record written by every command."""
import dataclasses
import json
import logging
import typing

logger = logging.getLogger(__name__)


def _plain(value: typing.Any) -> typing.Any:
    """Convert to the JSON data model."""
    return json.loads(json.dumps(value))


@dataclasses.dataclass(frozen=True)
class Report:
    """The outcome of one command.

    The result mapping holds only JSON values. Its 'summary' entry is a list of
    the human readable lines shown by the text format.
    """

    command: str
    arguments: typing.Mapping[str, typing.Any]
    result: typing.Mapping[str, typing.Any]
    warnings: tuple[str, ...] = ()

    @classmethod
    def create(
        cls,
        command: str,
        arguments: typing.Mapping[str, typing.Any],
        result: typing.Mapping[str, typing.Any],
        summary: typing.Iterable[str],
        warnings: typing.Iterable[str] = (),
    ) -> "Report":
        """Build a report, normalising the values to plain JSON data.

        Args:
            command: The sub-command name.
            arguments: The command arguments as given.
            result: The structured result.
            summary: The text lines for the human readable form.
            warnings: Warnings to attach.

        Returns:
            The report.
        """
        return Report(
            command=command,
            arguments=_plain(dict(arguments)),
            result=_plain({**result, "summary": list(summary)}),
            warnings=tuple(warnings),
        )

    @property
    def summary(self) -> list[str]:
        """The human readable summary lines."""
        return list(self.result.get("summary", []))

    @classmethod
    def load_data(cls, data: typing.Mapping) -> "Report":
        """Load a report from a mapping."""
        for key in ("command", "arguments", "result"):
            if key not in data:
                raise ValueError(f"The report is missing '{key}'.")
        return Report(
            command=str(data["command"]),
            arguments=dict(data["arguments"]),
            result=dict(data["result"]),
            warnings=tuple(str(i) for i in data.get("warnings", [])),
        )

    def save_data(self) -> typing.Mapping:
        """Save the report to a mapping."""
        return {
            "command": self.command,
            "arguments": dict(self.arguments),
            "result": dict(self.result),
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        """Render the report as indented json."""
        return json.dumps(self.save_data(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        """Load a report from json text."""
        return cls.load_data(json.loads(text))

    def to_text(self) -> str:
        """Render the report as plain text."""
        lines = [f"{self.command}:"]
        lines.extend(f"  {line}" for line in self.summary)
        lines.extend(f"warning: {warning}" for warning in self.warnings)
        return "\n".join(lines)
