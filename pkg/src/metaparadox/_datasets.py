"""Published two- and three-study meta-analyses that exhibit the paradox.

Only the reported 95% study intervals are available, so studies are
back-calculated with :func:`study_from_ci`. The published pooled interval and
I^2 are kept alongside for comparison.
"""
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Tuple

from ._effects import ConfidenceInterval
from ._effects import EffectMeasure
from ._effects import StudyEffect
from ._effects import study_from_ci
from ._errors import DomainError

BUILTIN_PREFIX = "builtin:"


@dataclass(frozen=True)
class Dataset:
    name: str
    description: str
    measure: EffectMeasure
    study_intervals: Tuple[Tuple[str, float, float], ...]
    reported_pooled: ConfidenceInterval
    reported_i2: int

    def intervals(self) -> List[ConfidenceInterval]:
        return [ConfidenceInterval(lo, hi) for _, lo, hi in self.study_intervals]

    def studies(self) -> List[StudyEffect]:
        return [
            study_from_ci(label, ConfidenceInterval(lo, hi), self.measure)
            for label, lo, hi in self.study_intervals
        ]


DATASETS: Dict[str, Dataset] = {
    dataset.name: dataset
    for dataset in (
        Dataset(
            name="fusion-hospital-stay",
            description="Hospital stay (days), fusion surgery vs decompression alone",
            measure=EffectMeasure.MEAN_DIFFERENCE,
            study_intervals=(("study 1", 0.19, 0.71), ("study 2", 1.17, 2.34)),
            reported_pooled=ConfidenceInterval(-0.20, 2.35),
            reported_i2=94,
        ),
        Dataset(
            name="dpp4-heart-failure",
            description="Admission for heart failure, DPP-4 inhibitors vs no use",
            measure=EffectMeasure.ODDS_RATIO,
            study_intervals=(("study 1", 1.04, 1.41), ("study 2", 1.16, 2.92)),
            reported_pooled=ConfidenceInterval(0.95, 2.09),
            reported_i2=65,
        ),
        Dataset(
            name="violence-mental-illness",
            description="Violence against adults with vs without mental illness",
            measure=EffectMeasure.ODDS_RATIO,
            study_intervals=(
                ("study 1", 1.44, 4.04),
                ("study 2", 1.46, 2.69),
                ("study 3", 10.01, 13.92),
            ),
            reported_pooled=ConfidenceInterval(0.91, 16.43),
            reported_i2=99,
        ),
        Dataset(
            name="plant-therapy-night-sweats",
            description="Night sweats per 24 hours, plant-based therapy vs control",
            measure=EffectMeasure.MEAN_DIFFERENCE,
            study_intervals=(("study 1", -0.79, -0.01), ("study 2", -4.5, -3.3)),
            reported_pooled=ConfidenceInterval(-5.57, 1.29),
            reported_i2=99,
        ),
    )
}


def is_builtin(source: str) -> bool:
    return source.startswith(BUILTIN_PREFIX)


def get_dataset(name: str) -> Dataset:
    """Look up a dataset by name, with or without the ``builtin:`` prefix."""
    if is_builtin(name):
        name = name[len(BUILTIN_PREFIX) :]
    try:
        return DATASETS[name]
    except KeyError:
        raise DomainError(
            f"unknown dataset {name!r} (available: {', '.join(DATASETS)})"
        ) from None
