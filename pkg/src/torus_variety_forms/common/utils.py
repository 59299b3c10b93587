"""Utility functions."""
import json
import logging
import typing
from fractions import Fraction
from importlib import metadata, resources

from torus_variety_forms.common import errors

logger = logging.getLogger(__name__)


def get_name_dash() -> str:
    """Get the package name with word separated by dashes."""
    return "torus-variety-forms"


def get_name_under() -> str:
    """Get the package name with word separated by underscores."""
    return "torus_variety_forms"


def get_prog_description() -> str:
    """Get the program description."""
    return (
        "Lift curve automorphisms to complexity-one torus varieties "
        "and decide finiteness of their real forms."
    )


def get_version() -> typing.Optional[str]:
    """Get the package version."""
    try:
        dist = metadata.distribution(get_name_dash())
        return dist.version
    except metadata.PackageNotFoundError:
        pass

    try:
        with resources.as_file(
            resources.files(get_name_under()).joinpath("cli.py")
        ) as file_path:
            version_path = file_path.parent.parent.parent / "VERSION"
            return version_path.read_text(encoding="utf-8").strip()
    except FileNotFoundError:
        pass

    return None


def parse_int_list(text: str, path: str) -> list[typing.Any]:
    """Parse a JSON array literal given on the command line.

    Args:
        text: The raw JSON text, e.g. '[[0,1],[1,0]]'.
        path: The option name, used in error messages.

    Returns:
        The parsed list.
    """
    try:
        value = json.loads(text)
    except json.JSONDecodeError as error:
        raise errors.DatumParseError(f"Invalid JSON: {error.msg}.", path=path) from error
    if not isinstance(value, list):
        raise errors.DatumParseError("Expected a JSON array.", path=path)
    return value


def parse_integer(value: typing.Any, path: str) -> int:
    """Read an exact integer, given as an int or a decimal string.

    Floats and booleans are rejected.

    >>> parse_integer("-3", "x")
    -3
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise errors.DatumParseError(f"Expected an integer, got {value!r}.", path=path)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            parsed = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as error:
            raise errors.DatumParseError(
                f"Expected an integer, got '{value}'.", path=path
            ) from error
        if parsed.denominator == 1:
            return int(parsed)
    raise errors.DatumParseError(f"Expected an integer, got {value!r}.", path=path)
