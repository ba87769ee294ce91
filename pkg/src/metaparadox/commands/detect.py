import argparse
import logging
import sys
from typing import Optional

from rich import print as pprint
from rich.markup import escape

from metaparadox._datasets import get_dataset
from metaparadox._datasets import is_builtin
from metaparadox._errors import MetaparadoxCommandError
from metaparadox._metadata import Metadata
from metaparadox._paradox import DEFAULT_ALPHA
from metaparadox._paradox import ParadoxVerdict
from metaparadox._paradox import detect_paradox
from metaparadox._paradox import detect_paradox_from_intervals
from metaparadox.commands.common import add_input_argument
from metaparadox.commands.common import add_model_argument
from metaparadox.commands.common import add_output_argument
from metaparadox.commands.common import read_studies
from metaparadox.commands.common import write_report
from metaparadox.reporters.verdict import VerdictReporter

LOGGER = logging.getLogger(__name__)

PARADOX_EXIT_CODE = 3


def warn_paradox(source: str, verdict: ParadoxVerdict) -> None:
    direction = verdict.study_directions[0].value.lower()
    pprint(
        f":warning: [bold red] Paradox detected in {escape(source)} [/] :warning:\n\n"
        f"Every study is significantly {direction} at alpha = {verdict.alpha:g}, "
        f"but the {verdict.model.value} pooled interval includes the null.\n",
        file=sys.stderr,
    )


class DetectCommand:
    """Check whether unanimously significant studies pool to a non-significant effect"""

    def prepare_parser(self, parser: argparse.ArgumentParser) -> None:
        add_input_argument(parser)
        add_model_argument(parser)
        parser.add_argument(
            "--alpha",
            help="Two-sided significance level for studies and pooled effect. "
            f"Default is {DEFAULT_ALPHA}",
            type=float,
            default=None,
        )
        parser.add_argument(
            "--reported",
            help="Classify a builtin dataset from its published intervals "
            "instead of re-pooling the studies",
            action="store_true",
            default=False,
        )
        add_output_argument(parser)

    def run(
        self, args: argparse.Namespace, parser: argparse.ArgumentParser
    ) -> Optional[int]:
        if args.reported:
            if not is_builtin(args.input):
                raise MetaparadoxCommandError(
                    "--reported is only available for builtin datasets", exit_code=1
                )
            if args.alpha is not None:
                raise MetaparadoxCommandError(
                    "--alpha cannot be combined with --reported; the level of the "
                    "published pooled interval fixes it",
                    exit_code=1,
                )
            dataset = get_dataset(args.input)
            verdict = detect_paradox_from_intervals(
                dataset.intervals(), dataset.reported_pooled, dataset.measure
            )
        else:
            studies, _ = read_studies(args.input, args.ci_level)
            alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
            verdict = detect_paradox(studies, alpha, args.model)
        LOGGER.info("%s: %s", args.input, verdict.classification.value)

        reporter = VerdictReporter(verdict, Metadata("detect", args.input))
        write_report(reporter, args.output, "json")

        if verdict.is_paradox:
            warn_paradox(args.input, verdict)
            return PARADOX_EXIT_CODE
        return None
