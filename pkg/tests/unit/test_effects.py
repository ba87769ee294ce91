import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from metaparadox import ConfidenceInterval
from metaparadox import DomainError
from metaparadox import EffectMeasure
from metaparadox import StudyEffect
from metaparadox import ci_of
from metaparadox import study_from_2x2
from metaparadox import study_from_ci
from metaparadox import study_from_estimate_se
from metaparadox import study_from_two_arm_continuous


class TestEffectMeasure:
    @pytest.mark.parametrize("tag", ["MD", "md", " Md "])
    def test_tags_are_case_insensitive(self, tag):
        assert EffectMeasure.from_tag(tag) is EffectMeasure.MEAN_DIFFERENCE

    def test_unknown_tag(self):
        with pytest.raises(DomainError, match="unknown measure 'RR'"):
            EffectMeasure.from_tag("RR")

    def test_display_scale(self):
        assert EffectMeasure.ODDS_RATIO.null_value == 1.0
        assert EffectMeasure.MEAN_DIFFERENCE.null_value == 0.0
        assert EffectMeasure.ODDS_RATIO.to_display(0.0) == 1.0
        assert EffectMeasure.MEAN_DIFFERENCE.to_display(-2.5) == -2.5

    def test_odds_ratios_must_be_positive_on_display_scale(self):
        with pytest.raises(DomainError):
            EffectMeasure.ODDS_RATIO.from_display(0.0)

    def test_huge_log_odds_ratios_cannot_be_displayed(self):
        with pytest.raises(DomainError, match="too large for the display scale"):
            EffectMeasure.ODDS_RATIO.to_display(800.0)
        assert EffectMeasure.MEAN_DIFFERENCE.to_display(800.0) == 800.0


class TestConfidenceInterval:
    def test_bounds_must_be_ordered(self):
        with pytest.raises(DomainError, match="lower bound"):
            ConfidenceInterval(1.0, 1.0)

    @pytest.mark.parametrize("level", [0.0, 1.0, 1.2])
    def test_level_must_be_in_open_unit_interval(self, level):
        with pytest.raises(DomainError):
            ConfidenceInterval(0.0, 1.0, level)

    def test_endpoints_must_be_finite(self):
        with pytest.raises(DomainError, match="finite"):
            ConfidenceInterval(-math.inf, 1.0)


class TestStudyEffect:
    @pytest.mark.parametrize("v", [0.0, -1.0, math.inf, math.nan])
    def test_variance_must_be_positive_and_finite(self, v):
        with pytest.raises(DomainError):
            StudyEffect("x", 0.0, v)

    def test_estimate_must_be_finite(self):
        with pytest.raises(DomainError):
            StudyEffect("x", math.nan, 1.0)


class TestStudyFromEstimateSe:
    @pytest.mark.parametrize(
        "y, se, measure, expected_v",
        [
            (0.45, 0.13265, EffectMeasure.MEAN_DIFFERENCE, 0.017596),
            (0.0, 1.0, EffectMeasure.MEAN_DIFFERENCE, 1.0),
            (0.61, 0.2355, EffectMeasure.ODDS_RATIO, 0.055460),
        ],
    )
    def test_variance_is_squared_se(self, y, se, measure, expected_v):
        study = study_from_estimate_se("A", y, se, measure)
        assert study.y == y
        assert study.v == pytest.approx(expected_v, abs=1e-6)
        assert study.measure is measure

    @pytest.mark.parametrize("se", [0.0, -1.0])
    def test_rejects_non_positive_se(self, se):
        with pytest.raises(DomainError, match="se must be > 0"):
            study_from_estimate_se("A", 0.0, se)


class TestStudyFromCi:
    def test_mean_difference(self):
        study = study_from_ci("F", ConfidenceInterval(0.19, 0.71))
        assert study.y == pytest.approx(0.45)
        assert study.se == pytest.approx(0.13265, abs=1e-5)

    def test_odds_ratio_is_back_calculated_on_the_log_scale(self):
        study = study_from_ci("L", ConfidenceInterval(1.04, 1.41), EffectMeasure.ODDS_RATIO)
        assert study.y == pytest.approx(0.19141, abs=1e-5)
        assert study.se == pytest.approx(0.07765, abs=1e-5)

    def test_symmetric_interval_around_null(self):
        study = study_from_ci("N", ConfidenceInterval(-1.0, 1.0))
        assert study.y == 0.0
        assert study.se == pytest.approx(0.51021, abs=1e-5)

    def test_other_levels(self):
        study = study_from_ci("N", ConfidenceInterval(-1.0, 1.0, 0.5))
        assert study.ci(0.5).hi == pytest.approx(1.0)

    def test_odds_ratio_interval_must_be_positive(self):
        with pytest.raises(DomainError, match="lo > 0"):
            study_from_ci("L", ConfidenceInterval(0.0, 1.41), EffectMeasure.ODDS_RATIO)

    @given(
        y=st.floats(min_value=-50, max_value=50),
        se=st.floats(min_value=1e-3, max_value=10),
        level=st.floats(min_value=0.5, max_value=0.999),
    )
    def test_round_trips_through_its_interval(self, y, se, level):
        study = study_from_estimate_se("r", y, se)
        back = study_from_ci("r", ci_of(study.y, study.se, level))
        assert back.y == pytest.approx(study.y, abs=1e-12, rel=1e-12)
        assert back.v == pytest.approx(study.v, rel=1e-10)


class TestStudyFromTwoArmContinuous:
    @pytest.mark.parametrize(
        "arms, expected_y, expected_v",
        [
            ((100, 5.0, 2.0, 100, 4.0, 2.0), 1.0, 0.08),
            ((10, 3.0, 1.0, 10, 3.0, 1.0), 0.0, 0.2),
            ((4, 2.0, 2.0, 16, 0.0, 4.0), 2.0, 2.0),
        ],
    )
    def test_mean_difference(self, arms, expected_y, expected_v):
        study = study_from_two_arm_continuous("A", *arms)
        assert study.y == pytest.approx(expected_y)
        assert study.v == pytest.approx(expected_v)
        assert study.measure is EffectMeasure.MEAN_DIFFERENCE

    def test_rejects_tiny_arms(self):
        with pytest.raises(DomainError, match="n1 must be >= 2"):
            study_from_two_arm_continuous("A", 1, 0.0, 1.0, 10, 0.0, 1.0)

    def test_rejects_non_positive_sd(self):
        with pytest.raises(DomainError, match="sd2 must be > 0"):
            study_from_two_arm_continuous("A", 10, 0.0, 1.0, 10, 0.0, 0.0)


class TestStudyFrom2x2:
    def test_balanced_table_is_null(self):
        study = study_from_2x2("A", 10, 10, 10, 10)
        assert study.y == 0.0
        assert study.v == pytest.approx(0.4)
        assert study.measure is EffectMeasure.ODDS_RATIO

    def test_log_odds_ratio(self):
        study = study_from_2x2("A", 20, 80, 10, 90)
        assert study.y == pytest.approx(math.log(2.25))
        assert study.v == pytest.approx(1 / 20 + 1 / 80 + 1 / 10 + 1 / 90)

    def test_continuity_correction_when_a_cell_is_empty(self):
        study = study_from_2x2("A", 5, 0, 5, 10)
        assert study.y == pytest.approx(math.log(21))
        assert study.v == pytest.approx(1 / 5.5 + 1 / 0.5 + 1 / 5.5 + 1 / 10.5)

    @pytest.mark.parametrize("cells", [(-1, 1, 1, 1), (0, 0, 1, 1)])
    def test_rejects_negative_counts_and_empty_arms(self, cells):
        with pytest.raises(DomainError):
            study_from_2x2("A", *cells)

    @given(st.tuples(*[st.integers(min_value=0, max_value=500)] * 4))
    def test_transposition_flips_sign(self, cells):
        a, b, c, d = cells
        if a + b == 0 or c + d == 0:
            return
        forward = study_from_2x2("A", a, b, c, d)
        backward = study_from_2x2("A", c, d, a, b)
        assert forward.y == pytest.approx(-backward.y, abs=1e-12)
        assert forward.v == pytest.approx(backward.v)
