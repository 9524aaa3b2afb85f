import argparse
import sys

from utils.controller import ToricOrchestrator
from utils.params import VALID_FAMILIES, VALID_FORMATS, VALID_INVARIANTS, VALID_SUITES


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--output",
        type=str,
        default=None,
        help="Write the result to this file instead of stdout"
    )

    parser.add_argument(
        "--format",
        type=str,
        default="json",
        choices=VALID_FORMATS,
        help="Output format (default: 'json')"
    )


def _add_target(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input",
        type=str,
        default=None,
        help="Poset JSON file"
    )

    parser.add_argument(
        "--family",
        type=str,
        default=None,
        help=f"Generate the poset instead of reading it, one of {VALID_FAMILIES[:-1]}"
    )

    parser.add_argument(
        "--param",
        type=int,
        default=None,
        help="Family parameter (rank, dimension or number of vertices)"
    )


def parse_arguments(argv=None) -> dict:
    """
    Parse CLI arguments for the toric invariants toolkit.

    Args:
        argv (list, optional): Argument vector; sys.argv[1:] when omitted.

    Returns:
        dict: The verb and its options.
    """
    parser = argparse.ArgumentParser(
        description="Toric invariants of graded Eulerian posets."
    )
    verbs = parser.add_subparsers(dest="command", required=True)

    generate = verbs.add_parser("generate", help="Write a poset of a named family")
    generate.add_argument("family", type=str, help=f"One of {VALID_FAMILIES}; dual-of:<file> dualizes a file")
    generate.add_argument("param", type=int, nargs="?", default=None, help="Family parameter")
    generate.add_argument("--input", type=str, default=None, help="Poset file for dual-of")
    _add_common(generate)

    compute = verbs.add_parser("compute", help="Compute invariants of a poset")
    compute.add_argument(
        "invariants",
        nargs="*",
        help=f"Invariants to compute, some of {VALID_INVARIANTS} (default: all)"
    )
    _add_target(compute)
    _add_common(compute)

    verify = verbs.add_parser("verify", help="Run the identity suites")
    verify.add_argument(
        "--suite",
        type=str,
        default="all",
        choices=VALID_SUITES,
        help="Suite to run (default: 'all')"
    )

    verify.add_argument(
        "--max-rank",
        type=int,
        default=None,
        help="Override the suite's default cap, up to its hard cap"
    )

    verify.add_argument(
        "--error-log",
        type=str,
        default=None,
        help="Write one block per failed identity to this file"
    )
    _add_common(verify)

    report = verbs.add_parser("report", help="Summarize the structure of a poset")
    _add_target(report)
    _add_common(report)

    args = parser.parse_args(argv)
    config = vars(args)
    config.setdefault("invariants", None)
    return config


def launch(argv=None) -> int:
    """
    Entry point: parses the arguments, runs the verb and returns its exit code.
    """
    config = parse_arguments(argv)
    orchestrator = ToricOrchestrator(config)
    return orchestrator.run()


if __name__ == "__main__":
    sys.exit(launch())
