"""Number formatting shared by the text, table and SVG renderers.

Full precision is kept in JSON output; these helpers only round for display.
"""
from typing import Any
from typing import Dict

from metaparadox._effects import ConfidenceInterval


def format_effect(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


def format_interval(ci: ConfidenceInterval) -> str:
    return f"[{format_effect(ci.lo)}, {format_effect(ci.hi)}]"


def format_percent(value: float) -> str:
    return f"{value:.0f}%"


def format_statistic(value: float) -> str:
    """Four significant digits, as used for tau^2, Q and p-values."""
    return f"{value:.4g}"


def interval_to_dict(ci: ConfidenceInterval) -> Dict[str, Any]:
    return {"lo": ci.lo, "hi": ci.hi, "level": ci.level}
