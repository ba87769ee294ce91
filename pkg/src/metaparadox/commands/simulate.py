import argparse
import dataclasses
import logging
from typing import List

from metaparadox._errors import MetaparadoxCommandError
from metaparadox._errors import StudyParseError
from metaparadox._metadata import Metadata
from metaparadox._simulation import GridCell
from metaparadox._simulation import SimulationScenario
from metaparadox._simulation import load_scenario
from metaparadox._simulation import simulate_scenario
from metaparadox._simulation import sweep_grid
from metaparadox.commands.common import add_output_argument
from metaparadox.commands.common import env_int
from metaparadox.commands.common import write_report
from metaparadox.reporters.simulation import SimulationReporter

LOGGER = logging.getLogger(__name__)

SEED_ENV_VAR = "METAPARADOX_SEED"
WORKERS_ENV_VAR = "METAPARADOX_WORKERS"


def valid_positive_int(value: str) -> int:
    try:
        ivalue = int(value)
        if ivalue <= 0:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value} is an invalid positive int value")

    return ivalue


def valid_seed(value: str) -> int:
    try:
        ivalue = int(value)
        if ivalue < 0:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value} is an invalid seed")

    return ivalue


class SimulateCommand:
    """Estimate the paradox probability by Monte Carlo simulation"""

    def prepare_parser(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("scenario", help="Scenario JSON file")
        parser.add_argument(
            "--grid-k",
            help="Sweep these numbers of studies (variances cycle through the "
            "scenario's list)",
            type=valid_positive_int,
            nargs="+",
            default=None,
        )
        parser.add_argument(
            "--grid-tau2",
            help="Sweep these between-study variances",
            type=float,
            nargs="+",
            default=None,
        )
        parser.add_argument(
            "--format",
            help="Output format. Default is json",
            choices=sorted(SimulationReporter.SUFFIX_MAP),
            default="json",
        )
        parser.add_argument(
            "--workers",
            help=f"Worker threads. Defaults to ${WORKERS_ENV_VAR} or 1; "
            "does not change the results",
            type=valid_positive_int,
            default=None,
        )
        parser.add_argument(
            "--seed",
            help=f"Override the scenario seed (and ${SEED_ENV_VAR})",
            type=valid_seed,
            default=None,
        )
        parser.add_argument(
            "--n-target",
            help="Override the number of accepted replicates per cell",
            type=valid_positive_int,
            default=None,
        )
        parser.add_argument(
            "--max-draws",
            help="Override the cap on draws per cell",
            type=valid_positive_int,
            default=None,
        )
        add_output_argument(parser)

    def _scenario(self, args: argparse.Namespace) -> SimulationScenario:
        try:
            scenario = load_scenario(args.scenario)
        except OSError as e:
            raise MetaparadoxCommandError(
                f"Failed to read {args.scenario}\nReason: {e.strerror or e}", exit_code=2
            ) from None
        except StudyParseError as e:
            raise MetaparadoxCommandError(f"{args.scenario}: {e}", exit_code=1) from None

        overrides = {}
        seed = args.seed if args.seed is not None else env_int(SEED_ENV_VAR)
        if seed is not None:
            overrides["seed"] = seed
        if args.n_target is not None:
            overrides["n_target"] = args.n_target
        if args.max_draws is not None:
            overrides["max_draws"] = args.max_draws
        return dataclasses.replace(scenario, **overrides)

    def run(self, args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
        scenario = self._scenario(args)
        workers = args.workers
        if workers is None:
            workers = env_int(WORKERS_ENV_VAR)
        if workers is None:
            workers = 1
        elif workers < 1:
            raise MetaparadoxCommandError(
                f"{WORKERS_ENV_VAR} must be >= 1, got {workers}", exit_code=1
            )

        cells: List[GridCell]
        if args.grid_k is None and args.grid_tau2 is None:
            result = simulate_scenario(scenario, workers=workers)
            cells = [
                GridCell(scenario.k, scenario.tau2, result, draws_used=result.draws_used)
            ]
        else:
            cells = sweep_grid(
                scenario,
                args.grid_k or [scenario.k],
                args.grid_tau2 or [scenario.tau2],
                workers=workers,
            )
        LOGGER.info("simulated %d cells with %d workers", len(cells), workers)

        reporter = SimulationReporter(scenario, cells, Metadata("simulate", args.scenario))
        write_report(reporter, args.output, args.format)
