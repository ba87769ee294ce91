import argparse
import logging

from metaparadox._pooling import meta_analyze
from metaparadox.commands.common import add_input_argument
from metaparadox.commands.common import add_model_argument
from metaparadox.commands.common import open_output
from metaparadox.commands.common import read_studies
from metaparadox.reporters.forest import DEFAULT_SVG_WIDTH
from metaparadox.reporters.forest import DEFAULT_TEXT_WIDTH
from metaparadox.reporters.forest import SvgOptions
from metaparadox.reporters.forest import build_forest_rows
from metaparadox.reporters.forest import render_forest_svg
from metaparadox.reporters.forest import render_forest_text

LOGGER = logging.getLogger(__name__)


class ForestCommand:
    """Render a forest plot as text or SVG"""

    def prepare_parser(self, parser: argparse.ArgumentParser) -> None:
        add_input_argument(parser)
        add_model_argument(parser)
        parser.add_argument(
            "--level",
            help="Confidence level of the plotted intervals. Default is 0.95",
            type=float,
            default=0.95,
        )
        parser.add_argument(
            "--format",
            help="Output format. Default is text",
            choices=["svg", "text"],
            default="text",
        )
        parser.add_argument(
            "--width",
            help=f"Columns for text output (default {DEFAULT_TEXT_WIDTH}) or pixels "
            f"for SVG output (default {DEFAULT_SVG_WIDTH})",
            type=int,
            default=None,
        )
        parser.add_argument(
            "--title",
            help="Title line of the SVG output",
            default=None,
        )
        parser.add_argument(
            "-o",
            "--out",
            "--output",
            dest="output",
            help="Write to this file instead of stdout",
            default=None,
        )

    def run(self, args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
        studies, dataset = read_studies(args.input, args.ci_level)
        result = meta_analyze(studies, args.level, args.model)
        rows = build_forest_rows(studies, result)

        if args.format == "svg":
            title = args.title
            if title is None and dataset is not None:
                title = dataset.description
            options = SvgOptions(
                width=DEFAULT_SVG_WIDTH if args.width is None else args.width, title=title
            )
            document = render_forest_svg(rows, options)
        else:
            document = render_forest_text(
                rows, DEFAULT_TEXT_WIDTH if args.width is None else args.width
            )
        LOGGER.info("rendered %d rows as %s", len(rows), args.format)

        with open_output(args.output) as outfile:
            outfile.write(document)
