import json
from typing import Any
from typing import Dict
from typing import Sequence
from typing import TextIO

from rich import print as rprint
from rich.markup import escape
from rich.table import Column
from rich.table import Table

from metaparadox._effects import ConfidenceInterval
from metaparadox._effects import StudyEffect
from metaparadox._metadata import Metadata
from metaparadox._pooling import PooledResult
from metaparadox._pooling import to_display_scale
from metaparadox.reporters.common import format_effect
from metaparadox.reporters.common import format_interval
from metaparadox.reporters.common import format_percent
from metaparadox.reporters.common import format_statistic
from metaparadox.reporters.common import interval_to_dict


def pooled_result_to_dict(result: PooledResult) -> Dict[str, Any]:
    display = to_display_scale(result)
    het = result.het
    return {
        "model": result.model.value,
        "measure": result.measure.tag,
        "estimate": result.estimate,
        "se": result.se,
        "ci": interval_to_dict(result.ci),
        "level": result.level,
        "z": result.z,
        "p_value": result.p_value,
        "weights": list(result.weights),
        "heterogeneity": {
            "q": het.q,
            "df": het.df,
            "p_q": het.p_q,
            "tau2": het.tau2,
            "tau": het.tau,
            "i2": het.i2,
        },
        "display": {
            "estimate": display.estimate,
            "ci": interval_to_dict(display.ci),
        },
    }


def study_to_dict(study: StudyEffect) -> Dict[str, Any]:
    return {"label": study.label, "y": study.y, "v": study.v, "measure": study.measure.tag}


class PoolReporter:
    SUFFIX_MAP = {
        "json": ".json",
        "table": ".txt",
    }

    def __init__(
        self,
        studies: Sequence[StudyEffect],
        result: PooledResult,
        metadata: Metadata,
    ) -> None:
        self.studies = studies
        self.result = result
        self.metadata = metadata

    def render(self, outfile: TextIO, format: str) -> None:
        renderer = getattr(self, f"render_as_{format}")
        renderer(outfile)

    def render_as_json(self, outfile: TextIO) -> None:
        document = self.metadata.as_dict()
        document["result"] = pooled_result_to_dict(self.result)
        document["studies"] = [study_to_dict(study) for study in self.studies]
        json.dump(document, outfile, indent=2)
        outfile.write("\n")

    def render_as_table(self, outfile: TextIO) -> None:
        result = self.result
        measure = result.measure
        het = result.het
        level = format_percent(result.level * 100)
        table = Table(
            Column("Study", ratio=3),
            Column(measure.tag, ratio=1, justify="right"),
            Column(f"{level} CI", ratio=2, justify="right"),
            Column("Weight", ratio=1, justify="right"),
            title=f"{result.model.value} meta-analysis of {len(self.studies)} studies",
            caption=(
                f"I² = {format_percent(het.i2)}, τ² = {format_statistic(het.tau2)}, "
                f"Q = {format_statistic(het.q)} (df = {het.df}), "
                f"p = {format_statistic(het.p_q)}"
            ),
            expand=True,
        )
        for study, weight in zip(self.studies, result.weights):
            ci = study.ci(result.level)
            display_ci = ConfidenceInterval(
                measure.to_display(ci.lo), measure.to_display(ci.hi), ci.level
            )
            table.add_row(
                escape(study.label) or "(unnamed)",
                format_effect(measure.to_display(study.y)),
                format_interval(display_ci),
                format_percent(weight * 100),
            )
        display = to_display_scale(result)
        table.add_row(
            "[bold]Overall[/]",
            f"[bold]{format_effect(display.estimate)}[/]",
            f"[bold]{format_interval(display.ci)}[/]",
            "[bold]100%[/]",
        )
        rprint(table, file=outfile)
