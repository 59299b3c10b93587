"""The command line interface."""

import argparse
import logging
import pathlib
import sys
import typing

from torus_variety_forms.actions import aut, check, forms, h1, lift
from torus_variety_forms.common import errors, manage, models, utils

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)-8s] %(message)s",
)

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """An argument parser that exits with the input error code on usage errors."""

    def error(self, message: str) -> typing.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(errors.InputError.exit_code, f"{self.prog}: error: {message}\n")


def _build_config(args: argparse.Namespace) -> models.ConfigRun:
    names = ["output_format", "mu_bound", "spot_checks", "seed"]
    data = {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}
    return models.ConfigRun.load_data(data)


def _build_action(args: argparse.Namespace, config: models.ConfigRun) -> manage.BaseManage:
    subparser_name = getattr(args, "subparser_name", None)
    datum_file = pathlib.Path(args.datum_file) if getattr(args, "datum_file", None) else None

    if subparser_name == "h1":
        return h1.H1(config=config, matrix=args.matrix)

    if datum_file is None:
        raise errors.InputError("Must provide a datum file.")

    if subparser_name == "check":
        return check.Check(config=config, datum_file=datum_file)

    if subparser_name == "lift":
        if args.ec_neg:
            kind, text = "ec-neg", ""
        elif args.ec_translate is not None:
            kind, text = "ec-translate", args.ec_translate
        else:
            kind, text = "mobius", args.mobius
        return lift.Lift(config=config, datum_file=datum_file, kind=kind, automorphism=text)

    if subparser_name == "aut":
        return aut.Aut(config=config, datum_file=datum_file)

    if subparser_name == "forms":
        return forms.Forms(config=config, datum_file=datum_file)

    raise ValueError(f"Unknown activity '{subparser_name}'.")


def run_cli(args: argparse.Namespace) -> int:
    """Run the cli.

    Args:
        args: The parsed arguments.

    Returns:
        Program exit code.
    """
    try:
        config = _build_config(args)
        manage_item = _build_action(args, config)
        result = manage_item.run()
    except errors.TorusFormsError as error:
        logger.error("%s: %s", type(error).__name__, error)
        return error.exit_code
    except AssertionError as error:
        logger.error("Internal check failed: %s", error)
        return errors.InvariantBreach.exit_code

    if config.output_format == models.OutputFormatOptions.JSON:
        print(result.to_json())
    else:
        print(result.to_text())
    return 0


def main(args: typing.Optional[list[str]] = None) -> int:
    """The program entry point.

    Args:
        args: The raw program arguments.

    Returns:
        Program exit code.
    """

    if args is None:
        args = sys.argv[1:]

    # create the top-level parser
    parser = _ArgumentParser(
        prog=utils.get_name_dash(), description=utils.get_prog_description()
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {utils.get_version()}",
    )
    parser.set_defaults(func=run_cli)
    subparsers = parser.add_subparsers(dest="subparser_name", help="sub-command help")

    # create the parser for the "check" command
    parser_check = subparsers.add_parser(
        "check",
        description="Validate a datum file and show its bad locus.",
        help="Validate a datum file and show its bad locus.",
    )
    _add_datum_file_arg(parser_check)
    _add_format_arg(parser_check)
    parser_check.set_defaults(func=run_cli)

    # create the parser for the "lift" command
    parser_lift = subparsers.add_parser(
        "lift",
        description="Test whether an automorphism of the curve lifts.",
        help="Test whether an automorphism of the curve lifts.",
    )
    _add_datum_file_arg(parser_lift)
    group = parser_lift.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--mobius",
        metavar="A,B,C,D",
        help="The Mobius map t -> (a t + b) / (c t + d), entries in Q(i).",
    )
    group.add_argument(
        "--ec-translate",
        metavar="POINT",
        help="The translation by a rational point '(x,y)' or 'O'.",
    )
    group.add_argument(
        "--ec-neg",
        action="store_true",
        help="The negation map of the elliptic curve.",
    )
    _add_format_arg(parser_lift)
    parser_lift.set_defaults(func=run_cli)

    # create the parser for the "aut" command
    parser_aut = subparsers.add_parser(
        "aut",
        description="Describe the equivariant automorphism group.",
        help="Describe the equivariant automorphism group.",
    )
    _add_datum_file_arg(parser_aut)
    _add_format_arg(parser_aut)
    _add_spot_check_args(parser_aut)
    parser_aut.set_defaults(func=run_cli)

    # create the parser for the "h1" command
    parser_h1 = subparsers.add_parser(
        "h1",
        description="Compute the cohomology of a lattice with an involution.",
        help="Compute the cohomology of a lattice with an involution.",
    )
    parser_h1.add_argument(
        "--matrix",
        required=True,
        help="The involution as a JSON array of integer rows, e.g. '[[0,1],[1,0]]'.",
    )
    _add_format_arg(parser_h1)
    parser_h1.set_defaults(func=run_cli)

    # create the parser for the "forms" command
    parser_forms = subparsers.add_parser(
        "forms",
        description="Decide whether a real datum has finitely many real forms.",
        help="Decide whether a real datum has finitely many real forms.",
    )
    _add_datum_file_arg(parser_forms)
    _add_format_arg(parser_forms)
    parser_forms.add_argument(
        "--bound",
        dest="mu_bound",
        type=int,
        default=16,
        help="The search bound for the cocycle family (default 16, at most 64).",
    )
    _add_spot_check_args(parser_forms)
    parser_forms.set_defaults(func=run_cli)

    # parse args
    parsed_args = parser.parse_args(args)

    if not parsed_args.subparser_name:
        parser.print_help(sys.stderr)
        sys.exit(1)

    # execute
    exit_code = parsed_args.func(parsed_args)

    if not isinstance(exit_code, int):
        raise ValueError(f"Invalid exit code '{exit_code}'.")

    # return exit code
    return exit_code


def _add_datum_file_arg(parser: argparse.ArgumentParser) -> None:
    """Add the datum file argument.

    Args:
        parser: The argument parser.

    Returns:
        None
    """

    parser.add_argument(
        "--datum-file",
        required=True,
        help="The path to the datum file.",
    )


def _add_format_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=[i.value for i in models.OutputFormatOptions],
        default=models.OutputFormatOptions.TEXT.value,
        help="The report format (default text).",
    )


def _add_spot_check_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="The seed for the family spot checks (default 0).",
    )
    parser.add_argument(
        "--spot-checks",
        type=int,
        default=20,
        help="The number of random family members to test (default 20).",
    )


if __name__ == "__main__":
    sys.exit(main())
