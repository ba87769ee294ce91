"""Detection of significance reversal under pooling.

A dataset exhibits the paradox when every study is significant in the same
direction at level ``alpha`` (its Wald interval excludes the null on the same
side) while the pooled interval at the same level includes the null.
"""
import enum
import logging
from dataclasses import dataclass
from typing import NamedTuple
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from ._effects import ConfidenceInterval
from ._effects import EffectMeasure
from ._effects import StudyEffect
from ._errors import DomainError
from ._kernel import Probability
from ._kernel import probability
from ._kernel import two_sided_z
from ._pooling import ModelKind
from ._pooling import PooledResult
from ._pooling import meta_analyze
from ._pooling import pool_arrays

LOGGER = logging.getLogger(__name__)

DEFAULT_ALPHA = 0.05


class Direction(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    NOT_SIGNIFICANT = "NotSignificant"

    @property
    def code(self) -> int:
        return _DIRECTION_CODES[self]

    def flipped(self) -> "Direction":
        if self is Direction.POSITIVE:
            return Direction.NEGATIVE
        if self is Direction.NEGATIVE:
            return Direction.POSITIVE
        return self


_DIRECTION_CODES = {
    Direction.POSITIVE: 1,
    Direction.NEGATIVE: -1,
    Direction.NOT_SIGNIFICANT: 0,
}
DIRECTION_FROM_CODE = {code: direction for direction, code in _DIRECTION_CODES.items()}


class Classification(enum.Enum):
    PARADOX = "Paradox"
    NO_PARADOX = "NoParadox"
    NOT_UNANIMOUS = "NotUnanimous"


CLASSIFICATION_CODES = {
    Classification.NOT_UNANIMOUS: 0,
    Classification.NO_PARADOX: 1,
    Classification.PARADOX: 2,
}
CLASSIFICATION_FROM_CODE = {
    code: classification for classification, code in CLASSIFICATION_CODES.items()
}


@dataclass(frozen=True)
class ParadoxVerdict:
    study_directions: Tuple[Direction, ...]
    pooled_direction: Direction
    classification: Classification
    model: ModelKind
    alpha: Probability
    pooled: Optional[PooledResult] = None

    @property
    def is_paradox(self) -> bool:
        return self.classification is Classification.PARADOX


def _direction_of(lo: float, hi: float, null: float = 0.0) -> Direction:
    if lo > null:
        return Direction.POSITIVE
    if hi < null:
        return Direction.NEGATIVE
    return Direction.NOT_SIGNIFICANT


def classify(
    study_directions: Sequence[Direction], pooled_direction: Direction
) -> Classification:
    first = study_directions[0]
    unanimous = first is not Direction.NOT_SIGNIFICANT and all(
        direction is first for direction in study_directions
    )
    if not unanimous:
        return Classification.NOT_UNANIMOUS
    if pooled_direction is Direction.NOT_SIGNIFICANT:
        return Classification.PARADOX
    return Classification.NO_PARADOX


def _level_for(alpha: Probability) -> float:
    alpha = probability(alpha, "alpha", open_interval=True)
    return 1.0 - alpha


def study_direction(study: StudyEffect, alpha: Probability = DEFAULT_ALPHA) -> Direction:
    """Two-sided significance direction of one study against the null 0."""
    ci = study.ci(_level_for(alpha))
    return _direction_of(ci.lo, ci.hi)


def detect_paradox(
    studies: Sequence[StudyEffect],
    alpha: Probability = DEFAULT_ALPHA,
    model: Union[ModelKind, str] = ModelKind.RANDOM_EFFECTS,
) -> ParadoxVerdict:
    """Compare the per-study verdicts with the pooled one at the same ``alpha``."""
    level = _level_for(alpha)
    pooled = meta_analyze(studies, level, model)
    directions = tuple(study_direction(study, alpha) for study in studies)
    pooled_direction = _direction_of(pooled.ci.lo, pooled.ci.hi)
    classification = classify(directions, pooled_direction)
    LOGGER.debug(
        "studies %s, pooled %s: %s",
        [direction.value for direction in directions],
        pooled_direction.value,
        classification.value,
    )
    return ParadoxVerdict(
        study_directions=directions,
        pooled_direction=pooled_direction,
        classification=classification,
        model=pooled.model,
        alpha=alpha,
        pooled=pooled,
    )


def interval_direction(
    ci: ConfidenceInterval, measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE
) -> Direction:
    """Direction of a reported display-scale interval against the display null."""
    return _direction_of(ci.lo, ci.hi, measure.null_value)


def detect_paradox_from_intervals(
    study_cis: Sequence[ConfidenceInterval],
    pooled_ci: ConfidenceInterval,
    measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE,
) -> ParadoxVerdict:
    """Classify a published meta-analysis from its reported intervals alone.

    Useful when the reported study intervals are too coarsely rounded to
    reproduce the published pooled interval. The pooled interval is taken to
    be a random-effects interval and its level fixes ``alpha``.
    """
    if len(study_cis) < 2:
        raise DomainError(f"needs at least two studies, got {len(study_cis)}")
    directions = tuple(interval_direction(ci, measure) for ci in study_cis)
    pooled_direction = interval_direction(pooled_ci, measure)
    return ParadoxVerdict(
        study_directions=directions,
        pooled_direction=pooled_direction,
        classification=classify(directions, pooled_direction),
        model=ModelKind.RANDOM_EFFECTS,
        alpha=round(1.0 - pooled_ci.level, 12),
    )


class ArrayVerdicts(NamedTuple):
    classification: np.ndarray
    study_directions: np.ndarray
    pooled_direction: np.ndarray


def _direction_codes(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.where(lo > 0, 1, np.where(hi < 0, -1, 0)).astype(np.int8)


def classify_arrays(
    y: np.ndarray,
    v: np.ndarray,
    alpha: Probability = DEFAULT_ALPHA,
    model: ModelKind = ModelKind.RANDOM_EFFECTS,
) -> ArrayVerdicts:
    """Vectorized :func:`detect_paradox` over the rows of ``(n, k)`` arrays.

    Directions are coded +1/-1/0 and classifications with
    :data:`CLASSIFICATION_CODES`.
    """
    z = two_sided_z(_level_for(alpha))
    y = np.asarray(y, dtype=float)
    v = np.asarray(v, dtype=float)

    half_width = z * np.sqrt(v)
    studies = _direction_codes(y - half_width, y + half_width)

    pooled = pool_arrays(y, v, model)
    pooled_half_width = z * pooled.se
    pooled_directions = _direction_codes(
        pooled.estimate - pooled_half_width, pooled.estimate + pooled_half_width
    )

    first = studies[..., 0]
    unanimous = (first != 0) & np.all(studies == first[..., np.newaxis], axis=-1)
    classification = np.where(
        unanimous,
        np.where(
            pooled_directions == 0,
            CLASSIFICATION_CODES[Classification.PARADOX],
            CLASSIFICATION_CODES[Classification.NO_PARADOX],
        ),
        CLASSIFICATION_CODES[Classification.NOT_UNANIMOUS],
    ).astype(np.int8)
    return ArrayVerdicts(classification, studies, pooled_directions)
