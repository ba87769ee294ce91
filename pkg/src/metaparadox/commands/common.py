import argparse
import contextlib
import os
import sys
from typing import Iterator
from typing import List
from typing import Optional
from typing import TextIO
from typing import Tuple

from rich import print as pprint

from metaparadox._datasets import Dataset
from metaparadox._datasets import get_dataset
from metaparadox._datasets import is_builtin
from metaparadox._effects import DEFAULT_LEVEL
from metaparadox._effects import StudyEffect
from metaparadox._errors import DomainError
from metaparadox._errors import MetaparadoxCommandError
from metaparadox._errors import StudyParseError
from metaparadox._ingest import load_studies
from metaparadox._pooling import ModelKind
from metaparadox._pooling import PooledResult
from metaparadox.reporters import BaseReporter

MODEL_CHOICES = ("fe", "re")


def add_input_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "input",
        help="CSV or JSON study file, or builtin:<name> (see `metaparadox datasets`)",
    )
    parser.add_argument(
        "--ci-level",
        help="Confidence level of reported study intervals that do not state one. "
        "Default is 0.95",
        type=float,
        default=DEFAULT_LEVEL,
    )


def add_model_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model",
        help="Pooling model: fixed effect or DerSimonian-Laird random effects. "
        "Default is re",
        choices=MODEL_CHOICES,
        default="re",
    )


def add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-o",
        "--output",
        help="Write to this file instead of stdout",
        default=None,
    )


def read_studies(source: str, ci_level: float) -> Tuple[List[StudyEffect], Optional[Dataset]]:
    """Load the studies named by a command's input argument.

    Raises:
        MetaparadoxCommandError: With exit code 2 when the file cannot be
            read and 1 when it cannot be parsed.
    """
    if is_builtin(source):
        try:
            dataset = get_dataset(source)
        except DomainError as e:
            raise MetaparadoxCommandError(str(e), exit_code=1) from None
        return dataset.studies(), dataset
    try:
        return load_studies(source, level=ci_level), None
    except OSError as e:
        raise MetaparadoxCommandError(
            f"Failed to read {source}\nReason: {e.strerror or e}", exit_code=2
        ) from None
    except StudyParseError as e:
        raise MetaparadoxCommandError(f"{source}: {e}", exit_code=1) from None


@contextlib.contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    try:
        f = open(path, "w", encoding="utf-8", newline="")
    except OSError as e:
        raise MetaparadoxCommandError(
            f"Failed to write {path}\nReason: {e.strerror or e}", exit_code=2
        ) from None
    with f:
        yield f


def write_report(reporter: BaseReporter, path: Optional[str], format: str) -> None:
    with open_output(path) as outfile:
        reporter.render(outfile, format)


def env_int(name: str) -> Optional[int]:
    value = os.environ.get(name)
    if value is None or not value.strip():
        return None
    try:
        return int(value)
    except ValueError:
        raise MetaparadoxCommandError(
            f"{name} must be an integer, got {value!r}", exit_code=1
        ) from None


def warn_if_few_studies(result: PooledResult, k: int) -> None:
    if result.model is ModelKind.RANDOM_EFFECTS and k == 2 and result.het.tau2 > 0:
        pprint(
            ":warning: [bold yellow] Between-study variance estimated from two "
            "studies [/] :warning:\n\n"
            "The DerSimonian-Laird estimate of τ² is very imprecise with k = 2, "
            "so the random-effects interval should be read with care.\n",
            file=sys.stderr,
        )
