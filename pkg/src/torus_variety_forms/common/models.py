"""The data models."""
import abc
import dataclasses
import enum
import json
import logging
import pathlib
import typing

from torus_variety_forms.common import errors, utils
from torus_variety_forms.geometry import divisors, polyhedra, projective, real_forms
from torus_variety_forms.geometry.curves import CurveKind, CurveModel, Point
from torus_variety_forms.geometry.divisors import AHDatum
from torus_variety_forms.geometry.elliptic import EllipticCurve
from torus_variety_forms.geometry.polyhedra import Cone, Polyhedron

logger = logging.getLogger(__name__)


class OutputFormatOptions(enum.Enum):
    """The report output formats."""

    TEXT = "text"
    """Human readable summary lines."""
    JSON = "json"
    """The machine readable report record."""


@dataclasses.dataclass(frozen=True)
class BaseModel(abc.ABC):
    """Base model abstract class."""

    @classmethod
    def load_data(cls, data: typing.Mapping) -> "BaseModel":
        """Load model data from a mapping.

        Args:
            data: The raw dictionary.

        Returns:
            A new instance of this model class.
        """
        raise NotImplementedError()

    def save_data(self) -> typing.Mapping:
        """Save model data to a mapping.

        Returns:
            The data from this model class as a dictionary.
        """
        raise NotImplementedError()


@dataclasses.dataclass(frozen=True)
class ConfigRun(BaseModel):
    """The settings for one command run."""

    output_format: OutputFormatOptions = OutputFormatOptions.TEXT
    mu_bound: int = 16
    """The search bound for the cocycle family classification."""
    spot_checks: int = 20
    """The number of random members tested for each certified family."""
    seed: int = 0
    """The seed of the spot checks."""
    group_cap: int = 10080
    """The largest permutation group that is enumerated."""
    torsion_order_bound: int = 12
    brute_force_bounds: tuple[int, ...] = (5, 7)
    """The box bounds of the brute force cohomology cross-check."""

    @classmethod
    def load_data(cls, data: typing.Mapping) -> "ConfigRun":
        """Load the run settings from a mapping."""
        defaults = ConfigRun()
        params: dict[str, typing.Any] = {}

        raw_format = data.get("output_format") or defaults.output_format.value
        try:
            params["output_format"] = OutputFormatOptions(raw_format)
        except ValueError as error:
            raise errors.InputError(f"Unknown output format '{raw_format}'.") from error

        ranges = {
            "mu_bound": (1, 64),
            "spot_checks": (0, 10000),
            "seed": (None, None),
            "group_cap": (1, None),
            "torsion_order_bound": (1, 64),
        }
        for name, (low, high) in ranges.items():
            value = data.get(name)
            if value is None:
                continue
            value = utils.parse_integer(value, name)
            if (low is not None and value < low) or (high is not None and value > high):
                raise errors.InputError(
                    f"The setting '{name}' must be between {low} and {high}, got {value}."
                )
            params[name] = value

        bounds = data.get("brute_force_bounds")
        if bounds is not None:
            params["brute_force_bounds"] = tuple(
                utils.parse_integer(i, "brute_force_bounds") for i in bounds
            )

        return ConfigRun(**params)

    def save_data(self) -> typing.Mapping:
        """Save the run settings to a mapping."""
        return {
            "output_format": self.output_format.value,
            "mu_bound": self.mu_bound,
            "spot_checks": self.spot_checks,
            "seed": self.seed,
            "group_cap": self.group_cap,
            "torsion_order_bound": self.torsion_order_bound,
            "brute_force_bounds": list(self.brute_force_bounds),
        }


def _locate(error: errors.InputError, path: str, file: str) -> errors.InputError:
    """Add the file and field path to an input error raised while reading a datum."""
    if isinstance(error, errors.DatumParseError):
        return errors.DatumParseError(
            error.message, path=error.path or path, file=error.file or file
        )
    location = ": ".join(i for i in [file, path] if i)
    return type(error)(f"{location}: {error}" if location else str(error))


def _require(data: typing.Any, kind: type, path: str) -> typing.Any:
    if not isinstance(data, kind):
        raise errors.DatumParseError(
            f"Expected a JSON {'object' if kind is dict else 'array'}.", path=path
        )
    return data


def _load_rays(raw: typing.Any, path: str) -> list[list[int]]:
    result = []
    for i, ray in enumerate(_require(raw, list, path)):
        items = _require(ray, list, f"{path}[{i}]")
        result.append([utils.parse_integer(v, f"{path}[{i}][{j}]") for j, v in enumerate(items)])
    return result


def _load_vertices(raw: typing.Any, path: str) -> list[list[typing.Any]]:
    result = []
    for i, vertex in enumerate(_require(raw, list, path)):
        items = _require(vertex, list, f"{path}[{i}]")
        result.append(
            [projective.parse_rational(v, f"{path}[{i}][{j}]") for j, v in enumerate(items)]
        )
    return result


def _load_curve(raw: typing.Any) -> CurveModel:
    data = _require(raw, dict, "curve")
    raw_type = data.get("type")
    try:
        kind = CurveKind(raw_type)
    except ValueError as error:
        raise errors.DatumParseError(
            f"Unknown curve type '{raw_type}', expected one of "
            f"{', '.join(i.value for i in CurveKind)}.",
            path="curve.type",
        ) from error

    punctures = _require(data.get("punctures", []), list, "curve.punctures")
    if kind == CurveKind.P1:
        if punctures:
            raise errors.DatumParseError(
                "A 'p1' curve has no punctures, use 'p1-minus'.", path="curve.punctures"
            )
        return CurveModel.p1()
    if kind == CurveKind.P1_MINUS:
        points = [
            projective.P1Point.parse(p, f"curve.punctures[{i}]") for i, p in enumerate(punctures)
        ]
        return CurveModel.p1_minus(points)

    for name in ("a", "b"):
        if name not in data:
            raise errors.DatumParseError("Missing coefficient.", path=f"curve.{name}")
    a = projective.parse_rational(data["a"], "curve.a")
    b = projective.parse_rational(data["b"], "curve.b")
    try:
        curve = EllipticCurve(a, b)
    except errors.InputError as error:
        raise errors.DatumParseError(str(error), path="curve") from error
    return CurveModel.elliptic(curve, punctures)


@dataclasses.dataclass(frozen=True)
class DatumFile(BaseModel):
    """A polyhedral divisor file, with an optional real structure flag."""

    datum: AHDatum
    real: bool = False
    """True when the datum is meant to be stable under complex conjugation."""

    @classmethod
    def load_data(cls, data: typing.Mapping, file: str = "") -> "DatumFile":
        """Load and validate a datum.

        Args:
            data: The raw dictionary.
            file: The file name used in error messages.

        Returns:
            The validated datum.

        Raises:
            InputError: located at the file and field path.
        """
        path = ""
        try:
            _require(data, dict, "")
            path = "torus_rank"
            if "torus_rank" not in data:
                raise errors.DatumParseError("Missing torus rank.", path=path)
            rank = utils.parse_integer(data["torus_rank"], path)

            path = "tail_cone"
            tail_data = _require(data.get("tail_cone", {}), dict, path)
            tail_rays = _load_rays(tail_data.get("rays", []), "tail_cone.rays")
            tail = polyhedra.canonicalize_cone(tail_rays, rank)

            path = "curve"
            curve = _load_curve(data.get("curve"))

            coefficients: list[tuple[Point, Polyhedron]] = []
            for index, item in enumerate(
                _require(data.get("coefficients", []), list, "coefficients")
            ):
                path = f"coefficients[{index}]"
                _require(item, dict, path)
                if "point" not in item:
                    raise errors.DatumParseError("Missing point.", path=f"{path}.point")
                point = curve.parse_point(item["point"], f"{path}.point")
                vertices = _load_vertices(item.get("vertices", []), f"{path}.vertices")
                rays: typing.Union[Cone, list[list[int]]] = tail
                if "rays" in item:
                    rays = _load_rays(item["rays"], f"{path}.rays")
                coefficients.append((point, polyhedra.make_polyhedron(vertices, rays, rank)))

            path = ""
            datum = divisors.validate_datum(rank, tail, curve, coefficients)

            real_data = _require(data.get("real", {}), dict, "real")
            real = bool(real_data.get("enabled", False))
            result = DatumFile(datum=datum, real=real)
            if real:
                path = "real"
                result.real_datum()
        except errors.InputError as error:
            raise _locate(error, path, file) from error

        logger.info(
            "Loaded a rank %s datum on %s with %s coefficients.",
            rank,
            curve,
            len(datum.coefficients),
        )
        return result

    def save_data(self) -> typing.Mapping:
        """Save the datum file to a mapping."""
        result = dict(self.datum.save_data())
        if self.real:
            result["real"] = {"enabled": True}
        return result

    def real_datum(self) -> real_forms.RealDatum:
        """The datum with its real structure.

        Raises:
            NotConjugationStable: if conjugation does not preserve the datum.
        """
        return real_forms.validate_real_datum(self.datum)

    @classmethod
    def load_file(cls, path: pathlib.Path) -> "DatumFile":
        """Load a datum from a file.

        Args:
            path: The file path.

        Returns:
            The datum file data.
        """
        try:
            with open(path, "rt", encoding="utf-8") as handle:
                raw = json.load(handle)
        except OSError as error:
            raise errors.DatumParseError(
                f"Cannot read the file: {error.strerror}.", file=str(path)
            ) from error
        except json.JSONDecodeError as error:
            raise errors.DatumParseError(
                f"Invalid JSON at line {error.lineno} column {error.colno}: {error.msg}.",
                file=str(path),
            ) from error
        return cls.load_data(raw, file=str(path))

    def save_file(self, path: pathlib.Path) -> None:
        """Save the datum to a file.

        Args:
            path: The file path.

        Returns:
            None
        """
        with open(path, "wt", encoding="utf-8") as handle:
            json.dump(self.save_data(), handle, indent=2)
