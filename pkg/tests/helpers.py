import json
import pathlib
import random
import typing
from fractions import Fraction
from importlib import resources

from torus_variety_forms import cli
from torus_variety_forms.geometry import curves, divisors, polyhedra
from torus_variety_forms.geometry.projective import GaussianRational, P1Point


def get_resource_path(end_path: str) -> pathlib.Path:
    full_path = resources.files("resources").joinpath(end_path)
    with resources.as_file(full_path) as file_path:
        result = file_path.absolute()
    return result


def get_datum_path(name: str) -> pathlib.Path:
    return get_resource_path(f"datums/{name}.json")


def random_p1_point(rng: random.Random, bound: int = 10) -> P1Point:
    if rng.random() < 0.1:
        return P1Point.infinity()
    return P1Point.finite(rng.randint(-bound, bound))


def random_translate_datum(
    rng: random.Random,
    curve: curves.CurveModel,
    rank: int,
    support_size: int,
    integral: bool = True,
) -> divisors.AHDatum:
    """A datum whose coefficients are translates chi + omega of the positive orthant."""
    tail = polyhedra.canonicalize_cone(
        [[int(i == j) for j in range(rank)] for i in range(rank)], rank
    )
    points: set[P1Point] = set()
    while len(points) < support_size:
        point = random_p1_point(rng)
        if point not in curve.punctures:
            points.add(point)
    coefficients = []
    for point in sorted(points):
        if integral:
            shift = [rng.randint(-10, 10) for _ in range(rank)]
        else:
            shift = [f"{rng.randint(-10, 10)}/{rng.randint(1, 3)}" for _ in range(rank)]
        coefficients.append((point, polyhedra.point_polyhedron(shift, tail)))
    return divisors.validate_datum(rank, tail, curve, coefficients)


def gaussian(re: typing.Any, im: typing.Any = 0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


def write_datum(directory: pathlib.Path, name: str, data: typing.Mapping) -> pathlib.Path:
    path = directory / f"{name}.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def run_main(args: list[str], capsys) -> tuple[int, str, str]:
    exit_code = cli.main(args)
    stdout, stderr = capsys.readouterr()
    return exit_code, stdout, stderr
