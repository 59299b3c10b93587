"""The error classes."""
import typing


class TorusFormsError(ValueError):
    """The base for errors raised by this package.

    The exit code is used by the command line interface.
    """

    exit_code: typing.ClassVar[int] = 1


class InputError(TorusFormsError):
    """An input could not be parsed or does not describe a valid object."""

    exit_code = 1


class UnsupportedError(TorusFormsError):
    """The input is valid, but outside what the procedures can decide."""

    exit_code = 2


class InvariantBreach(TorusFormsError):
    """An internal consistency check failed."""

    exit_code = 3


class DatumParseError(InputError):
    """A datum file or command line literal could not be parsed."""

    def __init__(self, message: str, path: str = "", file: str = "") -> None:
        """Create a new parse error.

        Args:
            message: What went wrong.
            path: The field path inside the document, e.g. 'coefficients[0].point'.
            file: The file being read, if any.
        """
        self.message = message
        self.path = path
        self.file = file
        location = ": ".join(i for i in [file, path] if i)
        super().__init__(f"{location}: {message}" if location else message)


class DimensionMismatch(InputError):
    """A vector, matrix or cone does not have the expected rank."""


class NotPointed(InputError):
    """A tail cone contains a line."""


class TailMismatch(InputError):
    """A coefficient does not have the tail cone of the datum."""


class PointNotOnCurve(InputError):
    """A point is not on the curve or is one of its punctures."""


class DuplicatePoint(InputError):
    """A point is listed twice."""


class NotAnAutomorphism(InputError):
    """A map does not preserve the curve or its punctures."""


class NotConjugationStable(InputError):
    """A real datum is not stable under complex conjugation."""


class UnsupportedModel(UnsupportedError):
    """The curve model is outside the supported families."""


class UnsupportedAutomorphism(UnsupportedError):
    """The curve automorphism is outside the supported families."""


class NonIntegralModel(UnsupportedError):
    """No integral Weierstrass model of the curve was found."""


class BadLocusNonEmpty(UnsupportedError):
    """The operation needs every coefficient to be an integral translate of the tail."""


class NotInvolution(UnsupportedError):
    """The matrix is not square or does not square to the identity."""


class Unstable(UnsupportedError):
    """The brute force count changed between the two box bounds."""


class GroupTooLarge(UnsupportedError):
    """A group is too large to enumerate."""
