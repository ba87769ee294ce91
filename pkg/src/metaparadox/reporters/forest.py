"""Forest plots as fixed-width text and standalone SVG.

Both renderers place every row on a common axis. The axis is linear on the
analysis scale, so odds ratios get a log axis with the null at 1.
"""
import math
from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from metaparadox._effects import ConfidenceInterval
from metaparadox._effects import EffectMeasure
from metaparadox._effects import StudyEffect
from metaparadox._errors import DomainError
from metaparadox._pooling import HeterogeneityStats
from metaparadox._pooling import PooledResult
from metaparadox._pooling import to_display_scale
from metaparadox.reporters.common import format_effect
from metaparadox.reporters.common import format_interval
from metaparadox.reporters.common import format_percent
from metaparadox.reporters.common import format_statistic
from metaparadox.reporters.templates import render_template

UNNAMED = "(unnamed)"

LABEL_WIDTH = 16
EFFECT_WIDTH = 22
WEIGHT_WIDTH = 6
MIN_TEXT_WIDTH = 60
DEFAULT_TEXT_WIDTH = 100

MIN_SVG_WIDTH = 320
DEFAULT_SVG_WIDTH = 800


@dataclass(frozen=True)
class ForestRow:
    """One line of a forest plot, on the display scale."""

    label: str
    display_estimate: float
    display_ci: ConfidenceInterval
    weight_percent: float
    is_pooled: bool = False
    model_tag: str = ""
    measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE
    het: Optional[HeterogeneityStats] = None

    def __post_init__(self) -> None:
        if not self.is_pooled and not 0.0 < self.weight_percent <= 100.0:
            raise DomainError(
                f"study weight must be in (0, 100], got {self.weight_percent}"
            )
        if self.is_pooled and (not self.model_tag or self.het is None):
            raise DomainError("pooled rows need a model tag and heterogeneity statistics")

    @property
    def display_label(self) -> str:
        return self.label or UNNAMED


def build_forest_rows(
    studies: Sequence[StudyEffect], result: PooledResult
) -> List[ForestRow]:
    """Study rows at the pooling level followed by the pooled row."""
    measure = result.measure
    rows = []
    for study, weight in zip(studies, result.weights):
        ci = study.ci(result.level)
        rows.append(
            ForestRow(
                label=study.label,
                display_estimate=measure.to_display(study.y),
                display_ci=ConfidenceInterval(
                    measure.to_display(ci.lo), measure.to_display(ci.hi), ci.level
                ),
                weight_percent=weight * 100.0,
                measure=measure,
            )
        )
    display = to_display_scale(result)
    rows.append(
        ForestRow(
            label="Overall",
            display_estimate=display.estimate,
            display_ci=display.ci,
            weight_percent=100.0,
            is_pooled=True,
            model_tag=result.model.value,
            measure=measure,
            het=result.het,
        )
    )
    return rows


class _Axis:
    def __init__(self, rows: Sequence[ForestRow]) -> None:
        if not rows:
            raise DomainError("a forest plot needs at least one row")
        measures = {row.measure for row in rows}
        if len(measures) > 1:
            raise DomainError("forest rows mix effect measures")
        self.measure = rows[0].measure
        values = [0.0]
        for row in rows:
            values.append(self.measure.from_display(row.display_ci.lo))
            values.append(self.measure.from_display(row.display_ci.hi))
        self.lo = min(values)
        self.hi = max(values)

    def fraction(self, display_value: float) -> float:
        return (self.measure.from_display(display_value) - self.lo) / (self.hi - self.lo)

    @property
    def display_lo(self) -> float:
        return self.measure.to_display(self.lo)

    @property
    def display_hi(self) -> float:
        return self.measure.to_display(self.hi)


def _pooled_row(rows: Sequence[ForestRow]) -> Optional[ForestRow]:
    return next((row for row in rows if row.is_pooled), None)


def _footer(row: ForestRow) -> str:
    assert row.het is not None
    het = row.het
    return (
        f"Heterogeneity: I² = {format_percent(het.i2)}, "
        f"τ² = {format_statistic(het.tau2)}, "
        f"Q = {format_statistic(het.q)} (df = {het.df}), "
        f"p = {format_statistic(het.p_q)}"
    )


def _effect_header(rows: Sequence[ForestRow]) -> str:
    level = format_percent(rows[0].display_ci.level * 100)
    return f"{rows[0].measure.tag} [{level} CI]"


def _truncate(label: str, width: int) -> str:
    return label if len(label) <= width else label[: width - 3] + "..."


def _column(axis: _Axis, display_value: float, track_width: int) -> int:
    position = round(axis.fraction(display_value) * (track_width - 1))
    return min(track_width - 1, max(0, position))


def _text_track(row: ForestRow, axis: _Axis, track_width: int) -> str:
    cells = [" "] * track_width
    lo = _column(axis, row.display_ci.lo, track_width)
    hi = _column(axis, row.display_ci.hi, track_width)
    estimate = _column(axis, row.display_estimate, track_width)
    fill = "=" if row.is_pooled else "-"
    for i in range(lo, hi + 1):
        cells[i] = fill
    if row.is_pooled:
        cells[lo] = "<"
        cells[hi] = ">"
        cells[estimate] = "*"
    else:
        cells[estimate] = "o"

    null = _column(axis, row.measure.null_value, track_width)
    if cells[null] == " ":
        cells[null] = "|"
    elif cells[null] in "-=":
        cells[null] = "+"
    return "".join(cells)


def _axis_lines(axis: _Axis, track_width: int, indent: str) -> List[str]:
    null = _column(axis, axis.measure.null_value, track_width)
    rule = ["-"] * track_width
    rule[null] = "|"

    labels = [" "] * track_width
    left = format_effect(axis.display_lo)
    right = format_effect(axis.display_hi)
    center = format_effect(axis.measure.null_value)
    labels[: len(left)] = left
    labels[track_width - len(right) :] = right
    start = null - len(center) // 2
    if start > len(left) and start + len(center) < track_width - len(right):
        labels[start : start + len(center)] = center
    return [indent + "".join(rule), (indent + "".join(labels)).rstrip()]


def render_forest_text(rows: Sequence[ForestRow], width: int = DEFAULT_TEXT_WIDTH) -> str:
    """Render ``rows`` as a fixed-width text plot, ``width`` columns wide.

    Studies are drawn as ``o`` on a ``-`` interval and the pooled row as a
    ``<==*==>`` diamond. ``|`` marks the null (``+`` where an interval
    crosses it). Output is deterministic and ends with a newline.
    """
    if width < MIN_TEXT_WIDTH:
        raise DomainError(f"width must be >= {MIN_TEXT_WIDTH}, got {width}")
    axis = _Axis(rows)
    track_width = width - LABEL_WIDTH - EFFECT_WIDTH - WEIGHT_WIDTH - 3
    indent = " " * (width - track_width)

    lines = [
        f"{'Study':<{LABEL_WIDTH}} {_effect_header(rows):>{EFFECT_WIDTH}} "
        f"{'Weight':>{WEIGHT_WIDTH}}"
    ]
    for row in rows:
        if row.is_pooled:
            lines.append("-" * width)
        effect = f"{format_effect(row.display_estimate)} {format_interval(row.display_ci)}"
        lines.append(
            f"{_truncate(row.display_label, LABEL_WIDTH):<{LABEL_WIDTH}} "
            f"{effect:>{EFFECT_WIDTH}} "
            f"{format_percent(row.weight_percent):>{WEIGHT_WIDTH}} "
            f"{_text_track(row, axis, track_width)}".rstrip()
        )
    lines.extend(_axis_lines(axis, track_width, indent))

    pooled = _pooled_row(rows)
    if pooled is not None:
        lines.append(f"Model: {pooled.model_tag}")
        lines.append(_footer(pooled))
    if axis.measure.is_ratio:
        lines.append("Axis: log scale, null at 1")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SvgOptions:
    width: int = DEFAULT_SVG_WIDTH
    row_height: int = 24
    font_size: int = 12
    title: Optional[str] = None

    def __post_init__(self) -> None:
        if self.width < MIN_SVG_WIDTH:
            raise DomainError(f"width must be >= {MIN_SVG_WIDTH}, got {self.width}")
        if self.row_height < 12:
            raise DomainError(f"row_height must be >= 12, got {self.row_height}")
        if self.font_size < 1:
            raise DomainError(f"font_size must be >= 1, got {self.font_size}")


def _px(value: float) -> str:
    return f"{value:.2f}"


def render_forest_svg(
    rows: Sequence[ForestRow], options: Optional[SvgOptions] = None
) -> str:
    """Render ``rows`` as a standalone SVG document.

    Squares are sized by weight, the pooled row is a diamond and a dashed
    vertical line marks the null.
    """
    options = options or SvgOptions()
    axis = _Axis(rows)
    width = options.width
    row_height = options.row_height
    margin = 10

    plot_left = width * 0.30
    plot_right = width * 0.70
    title_y = margin + row_height * 0.7
    header_y = (title_y if options.title else margin) + row_height * 0.7
    rows_top = header_y + row_height * 0.3
    axis_y = rows_top + row_height * len(rows)
    height = math.ceil(axis_y + row_height * 2.5 + margin)

    def x_of(display_value: float) -> float:
        return plot_left + axis.fraction(display_value) * (plot_right - plot_left)

    study_weights = [row.weight_percent for row in rows if not row.is_pooled]
    max_weight = max(study_weights, default=100.0)
    rendered: List[Dict[str, Any]] = []
    for index, row in enumerate(rows):
        y = rows_top + row_height * (index + 0.5)
        x_lo = x_of(row.display_ci.lo)
        x_hi = x_of(row.display_ci.hi)
        x_est = x_of(row.display_estimate)
        entry: Dict[str, Any] = {
            "pooled": row.is_pooled,
            "label": row.display_label,
            "effect": f"{format_effect(row.display_estimate)} "
            f"{format_interval(row.display_ci)}",
            "weight": format_percent(row.weight_percent),
            "y": _px(y),
            "text_y": _px(y + options.font_size * 0.35),
            "x_lo": _px(x_lo),
            "x_hi": _px(x_hi),
        }
        if row.is_pooled:
            half = row_height * 0.3
            entry["points"] = " ".join(
                f"{_px(px)},{_px(py)}"
                for px, py in ((x_lo, y), (x_est, y - half), (x_hi, y), (x_est, y + half))
            )
        else:
            side = 3.0 + (row_height - 10) * math.sqrt(row.weight_percent / max_weight)
            entry["box_x"] = _px(x_est - side / 2)
            entry["box_y"] = _px(y - side / 2)
            entry["box_side"] = _px(side)
        rendered.append(entry)

    ticks = []
    seen = set()
    for value in (axis.display_lo, axis.measure.null_value, axis.display_hi):
        label = format_effect(value)
        if label not in seen:
            seen.add(label)
            ticks.append({"x": _px(x_of(value)), "label": label})

    pooled = _pooled_row(rows)
    footer = _footer(pooled) if pooled is not None else None
    return render_template(
        "forest.svg",
        width=width,
        height=height,
        font_size=options.font_size,
        margin=margin,
        title=options.title,
        title_y=_px(title_y),
        header_y=_px(header_y),
        label_x=margin,
        effect_x=_px(width * 0.72),
        weight_x=width - margin,
        effect_header=_effect_header(rows),
        plot_left=_px(plot_left),
        plot_right=_px(plot_right),
        null_x=_px(x_of(axis.measure.null_value)),
        rows_top=_px(rows_top),
        axis_y=_px(axis_y),
        tick_end_y=_px(axis_y + 5),
        tick_label_y=_px(axis_y + 5 + options.font_size),
        footer_y=_px(axis_y + row_height * 2),
        rows=rendered,
        ticks=ticks,
        footer=footer,
    )
