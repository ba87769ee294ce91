import json
from io import StringIO

import pytest

from metaparadox import Metadata
from metaparadox import ModelKind
from metaparadox import StudyEffect
from metaparadox import __version__
from metaparadox import detect_paradox
from metaparadox import detect_paradox_from_intervals
from metaparadox import get_dataset
from metaparadox import meta_analyze
from metaparadox.reporters.common import format_effect
from metaparadox.reporters.common import format_statistic
from metaparadox.reporters.pool import PoolReporter
from metaparadox.reporters.verdict import VerdictReporter
from tests.utils import dpp4_studies
from tests.utils import fusion_studies


@pytest.mark.parametrize(
    "value, expected",
    [(0.0, "0.00"), (-0.001, "0.00"), (-0.005, "-0.01"), (1.075, "1.07"), (2.0, "2.00")],
)
def test_format_effect(value, expected):
    assert format_effect(value) == expected


def test_format_statistic():
    assert format_statistic(15.9563) == "15.96"
    assert format_statistic(6.4757e-05) == "6.476e-05"


class TestPoolReporter:
    def test_json_document(self):
        # GIVEN
        studies = dpp4_studies()
        result = meta_analyze(studies)
        reporter = PoolReporter(studies, result, Metadata("pool", "dpp4.csv"))
        output = StringIO()

        # WHEN
        reporter.render(output, "json")

        # THEN
        document = json.loads(output.getvalue())
        assert document["schema"] == "metaparadox/v1"
        assert document["version"] == __version__
        assert document["command"] == "pool"
        assert document["source"] == "dpp4.csv"
        assert document["result"]["model"] == "RandomEffects"
        assert document["result"]["measure"] == "OR"
        assert document["result"]["estimate"] == result.estimate
        assert document["result"]["ci"]["level"] == 0.95
        assert document["result"]["heterogeneity"]["df"] == 1
        assert round(document["result"]["heterogeneity"]["i2"]) == 65
        assert document["result"]["display"]["ci"]["lo"] == pytest.approx(0.95, abs=0.01)
        assert document["result"]["display"]["ci"]["hi"] == pytest.approx(2.09, abs=0.01)
        assert [study["label"] for study in document["studies"]] == ["study 1", "study 2"]
        assert output.getvalue().endswith("}\n")

    def test_source_is_optional(self):
        studies = fusion_studies()
        reporter = PoolReporter(studies, meta_analyze(studies), Metadata("pool"))
        output = StringIO()
        reporter.render(output, "json")
        assert "source" not in json.loads(output.getvalue())

    def test_table(self):
        # GIVEN
        studies = fusion_studies()
        reporter = PoolReporter(studies, meta_analyze(studies), Metadata("pool"))
        output = StringIO()

        # WHEN
        reporter.render(output, "table")

        # THEN
        text = output.getvalue()
        assert "RandomEffects meta-analysis of 2 studies" in text
        assert "[0.19, 0.71]" in text
        assert "[-0.20, 2.35]" in text
        assert "Overall" in text
        assert "I² = 94%" in text

    def test_table_escapes_markup_in_labels(self):
        studies = [StudyEffect("[bold]x[/]", 1.0, 0.1), StudyEffect("", 2.0, 0.1)]
        reporter = PoolReporter(
            studies, meta_analyze(studies, model=ModelKind.FIXED_EFFECT), Metadata("pool")
        )
        output = StringIO()
        reporter.render(output, "table")
        assert "[bold]x[/]" in output.getvalue()
        assert "(unnamed)" in output.getvalue()


class TestVerdictReporter:
    def test_paradox_verdict(self):
        # GIVEN
        verdict = detect_paradox(fusion_studies())
        output = StringIO()

        # WHEN
        VerdictReporter(verdict, Metadata("detect", "builtin:fusion-hospital-stay")).render(
            output
        )

        # THEN
        document = json.loads(output.getvalue())
        assert document["command"] == "detect"
        assert document["verdict"]["classification"] == "Paradox"
        assert document["verdict"]["is_paradox"] is True
        assert document["verdict"]["study_directions"] == ["Positive", "Positive"]
        assert document["verdict"]["pooled_direction"] == "NotSignificant"
        assert document["verdict"]["pooled"]["model"] == "RandomEffects"

    def test_verdict_from_intervals_has_no_pooled_result(self):
        dataset = get_dataset("violence-mental-illness")
        verdict = detect_paradox_from_intervals(
            dataset.intervals(), dataset.reported_pooled, dataset.measure
        )
        output = StringIO()
        VerdictReporter(verdict, Metadata("detect")).render(output, "json")
        document = json.loads(output.getvalue())
        assert document["verdict"]["pooled"] is None
        assert document["verdict"]["classification"] == "Paradox"
