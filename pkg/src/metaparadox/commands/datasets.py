import argparse
import sys

from rich import print as rprint
from rich.table import Column
from rich.table import Table

from metaparadox._datasets import BUILTIN_PREFIX
from metaparadox._datasets import DATASETS
from metaparadox.reporters.common import format_interval
from metaparadox.reporters.common import format_percent


class DatasetsCommand:
    """List the builtin datasets usable as builtin:<name> inputs"""

    def prepare_parser(self, parser: argparse.ArgumentParser) -> None:
        pass

    def run(self, args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
        table = Table(
            Column("Input", ratio=3),
            Column("Measure", ratio=1),
            Column("Studies", ratio=1, justify="right"),
            Column("Reported pooled CI", ratio=2, justify="right"),
            Column("Reported I²", ratio=1, justify="right"),
            Column("Description", ratio=5),
        )
        for name, dataset in DATASETS.items():
            table.add_row(
                BUILTIN_PREFIX + name,
                dataset.measure.tag,
                str(len(dataset.study_intervals)),
                format_interval(dataset.reported_pooled),
                format_percent(dataset.reported_i2),
                dataset.description,
            )
        rprint(table, file=sys.stdout)
