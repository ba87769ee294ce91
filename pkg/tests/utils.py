"""Utilities / Helpers for writing tests."""
from typing import List
from typing import Sequence
from typing import Tuple

from metaparadox import ConfidenceInterval
from metaparadox import EffectMeasure
from metaparadox import StudyEffect
from metaparadox import study_from_ci

Interval = Tuple[float, float]

FUSION_INTERVALS: List[Interval] = [(0.19, 0.71), (1.17, 2.34)]
DPP4_INTERVALS: List[Interval] = [(1.04, 1.41), (1.16, 2.92)]
VIOLENCE_INTERVALS: List[Interval] = [(1.44, 4.04), (1.46, 2.69), (10.01, 13.92)]
NIGHT_SWEATS_INTERVALS: List[Interval] = [(-0.79, -0.01), (-4.5, -3.3)]

FUSION_CSV = b"""\
label,measure,input_kind,lo,hi
study 1,MD,ci,0.19,0.71
study 2,MD,ci,1.17,2.34
"""

DPP4_CSV = b"""\
label,measure,input_kind,lo,hi
study 1,OR,ci,1.04,1.41
study 2,OR,ci,1.16,2.92
"""

NIGHT_SWEATS_CSV = b"""\
label,measure,input_kind,lo,hi
study 1,MD,ci,-0.79,-0.01
study 2,MD,ci,-4.5,-3.3
"""


def studies_from_intervals(
    intervals: Sequence[Interval],
    measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE,
) -> List[StudyEffect]:
    return [
        study_from_ci(f"study {i}", ConfidenceInterval(lo, hi), measure)
        for i, (lo, hi) in enumerate(intervals, start=1)
    ]


def fusion_studies() -> List[StudyEffect]:
    return studies_from_intervals(FUSION_INTERVALS)


def dpp4_studies() -> List[StudyEffect]:
    return studies_from_intervals(DPP4_INTERVALS, EffectMeasure.ODDS_RATIO)


def violence_studies() -> List[StudyEffect]:
    return studies_from_intervals(VIOLENCE_INTERVALS, EffectMeasure.ODDS_RATIO)


def night_sweats_studies() -> List[StudyEffect]:
    return studies_from_intervals(NIGHT_SWEATS_INTERVALS)
