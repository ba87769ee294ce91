import argparse
import logging

from metaparadox._metadata import Metadata
from metaparadox._pooling import meta_analyze
from metaparadox.commands.common import add_input_argument
from metaparadox.commands.common import add_model_argument
from metaparadox.commands.common import add_output_argument
from metaparadox.commands.common import read_studies
from metaparadox.commands.common import warn_if_few_studies
from metaparadox.commands.common import write_report
from metaparadox.reporters.pool import PoolReporter

LOGGER = logging.getLogger(__name__)


class PoolCommand:
    """Pool study effects under a fixed-effect or random-effects model"""

    def prepare_parser(self, parser: argparse.ArgumentParser) -> None:
        add_input_argument(parser)
        add_model_argument(parser)
        parser.add_argument(
            "--level",
            help="Confidence level of the pooled interval. Default is 0.95",
            type=float,
            default=0.95,
        )
        parser.add_argument(
            "--format",
            help="Output format. Default is json",
            choices=sorted(PoolReporter.SUFFIX_MAP),
            default="json",
        )
        add_output_argument(parser)

    def run(self, args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
        studies, _ = read_studies(args.input, args.ci_level)
        result = meta_analyze(studies, args.level, args.model)
        LOGGER.info("pooled %d studies from %s", len(studies), args.input)
        warn_if_few_studies(result, len(studies))

        reporter = PoolReporter(studies, result, Metadata("pool", args.input))
        write_report(reporter, args.output, args.format)
