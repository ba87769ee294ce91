"""Tabular output of simulation grids, one row per (k, tau2) cell."""
import csv
import json
from typing import Any
from typing import Dict
from typing import List
from typing import Sequence
from typing import TextIO

from metaparadox._metadata import Metadata
from metaparadox._simulation import VARIANCE_POLICY
from metaparadox._simulation import GridCell
from metaparadox._simulation import SimulationScenario
from metaparadox._simulation import scenario_to_dict

CSV_COLUMNS = (
    "k",
    "tau2",
    "accepted",
    "paradoxes",
    "p_hat",
    "wilson_lo",
    "wilson_hi",
    "draws_used",
    "acceptance_rate",
    "error",
)


def cell_to_dict(cell: GridCell) -> Dict[str, Any]:
    row: Dict[str, Any] = dict.fromkeys(CSV_COLUMNS)
    row.update(k=cell.k, tau2=cell.tau2, draws_used=cell.draws_used, error=cell.error)
    if cell.result is not None:
        result = cell.result
        row.update(
            accepted=result.accepted,
            paradoxes=result.paradoxes,
            p_hat=result.p_hat,
            wilson_lo=result.wilson_ci.lo,
            wilson_hi=result.wilson_ci.hi,
            acceptance_rate=result.acceptance_rate,
        )
    return row


class SimulationReporter:
    SUFFIX_MAP = {
        "json": ".json",
        "csv": ".csv",
    }

    def __init__(
        self,
        base: SimulationScenario,
        cells: Sequence[GridCell],
        metadata: Metadata,
    ) -> None:
        self.base = base
        self.cells = cells
        self.metadata = metadata

    def rows(self) -> List[Dict[str, Any]]:
        return [cell_to_dict(cell) for cell in self.cells]

    def render(self, outfile: TextIO, format: str) -> None:
        renderer = getattr(self, f"render_as_{format}")
        renderer(outfile)

    def render_as_json(self, outfile: TextIO) -> None:
        document = self.metadata.as_dict()
        document["scenario"] = scenario_to_dict(self.base)
        document["variance_policy"] = VARIANCE_POLICY
        document["cells"] = self.rows()
        json.dump(document, outfile, indent=2)
        outfile.write("\n")

    def render_as_csv(self, outfile: TextIO) -> None:
        writer = csv.DictWriter(outfile, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows():
            writer.writerow(
                {key: "" if value is None else value for key, value in row.items()}
            )
