"""Inverse-variance fixed-effect and DerSimonian-Laird random-effects pooling.

The arithmetic lives in :func:`pool_arrays`, which works on the last axis of
``(..., k)`` arrays so the simulator can pool whole batches at once. The
scalar entry points run the same code on a single row.
"""
import enum
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from ._effects import DEFAULT_LEVEL
from ._effects import ConfidenceInterval
from ._effects import EffectMeasure
from ._effects import StudyEffect
from ._effects import ci_of
from ._errors import DomainError
from ._kernel import Probability
from ._kernel import chisq_sf
from ._kernel import norm_sf
from ._kernel import probability

LOGGER = logging.getLogger(__name__)


class ModelKind(enum.Enum):
    FIXED_EFFECT = "FixedEffect"
    RANDOM_EFFECTS = "RandomEffects"

    @classmethod
    def from_tag(cls, tag: Union[str, "ModelKind"]) -> "ModelKind":
        if isinstance(tag, ModelKind):
            return tag
        normalized = tag.strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "fe": cls.FIXED_EFFECT,
            "fixed": cls.FIXED_EFFECT,
            "fixedeffect": cls.FIXED_EFFECT,
            "re": cls.RANDOM_EFFECTS,
            "random": cls.RANDOM_EFFECTS,
            "randomeffects": cls.RANDOM_EFFECTS,
        }
        try:
            return aliases[normalized]
        except KeyError:
            raise DomainError(
                f"unknown model {tag!r} (expected fe or re)"
            ) from None


@dataclass(frozen=True)
class HeterogeneityStats:
    q: float
    df: int
    tau2: float
    i2: float
    p_q: Probability

    @property
    def tau(self) -> float:
        return math.sqrt(self.tau2)


@dataclass(frozen=True)
class PooledResult:
    model: ModelKind
    measure: EffectMeasure
    estimate: float
    se: float
    ci: ConfidenceInterval
    level: Probability
    weights: Tuple[float, ...]
    het: HeterogeneityStats

    @property
    def z(self) -> float:
        return self.estimate / self.se

    @property
    def p_value(self) -> Probability:
        """Two-sided p-value of the pooled effect against the null."""
        return min(1.0, 2.0 * norm_sf(abs(self.z)))


class DisplayResult(NamedTuple):
    estimate: float
    ci: ConfidenceInterval


class PoolArrays(NamedTuple):
    estimate: np.ndarray
    se: np.ndarray
    q: np.ndarray
    tau2: np.ndarray
    weights: np.ndarray


def pool_arrays(y: np.ndarray, v: np.ndarray, model: ModelKind) -> PoolArrays:
    """Pool every row of ``y``/``v`` (shape ``(..., k)``) under ``model``.

    Cochran's Q and the DerSimonian-Laird tau^2 are always computed because the
    heterogeneity statistics are reported for both models.
    """
    y = np.asarray(y, dtype=float)
    v = np.asarray(v, dtype=float)
    k = y.shape[-1]

    w = 1.0 / v
    sum_w = w.sum(axis=-1)
    fixed = (w * y).sum(axis=-1) / sum_w
    q = (w * (y - fixed[..., np.newaxis]) ** 2).sum(axis=-1)
    c = sum_w - (w * w).sum(axis=-1) / sum_w
    with np.errstate(divide="ignore", invalid="ignore"):
        tau2 = np.where(c > 0, np.maximum(0.0, (q - (k - 1)) / c), 0.0)

    if model is ModelKind.RANDOM_EFFECTS:
        w = 1.0 / (v + tau2[..., np.newaxis])
        sum_w = w.sum(axis=-1)
        estimate = (w * y).sum(axis=-1) / sum_w
    else:
        estimate = fixed
    se = np.sqrt(1.0 / sum_w)
    return PoolArrays(estimate, se, q, tau2, w / sum_w[..., np.newaxis])


def _validate(studies: Sequence[StudyEffect]) -> EffectMeasure:
    if len(studies) < 2:
        raise DomainError(
            f"needs at least two studies, got {len(studies)}"
        )
    measures = {study.measure for study in studies}
    if len(measures) > 1:
        tags = ", ".join(sorted(measure.tag for measure in measures))
        raise DomainError(f"studies mix effect measures ({tags})")
    return studies[0].measure


def _as_arrays(studies: Sequence[StudyEffect]) -> Tuple[np.ndarray, np.ndarray]:
    y = np.array([study.y for study in studies], dtype=float)
    v = np.array([study.v for study in studies], dtype=float)
    return y, v


def _heterogeneity_from(q: float, tau2: float, k: int) -> HeterogeneityStats:
    df = k - 1
    i2 = max(0.0, (q - df) / q) * 100.0 if q > 0 else 0.0
    return HeterogeneityStats(
        q=q, df=df, tau2=tau2, i2=min(i2, 100.0), p_q=chisq_sf(q, df)
    )


def heterogeneity(studies: Sequence[StudyEffect]) -> HeterogeneityStats:
    """Cochran's Q, I^2 and the DerSimonian-Laird tau^2 of ``studies``."""
    _validate(studies)
    pooled = pool_arrays(*_as_arrays(studies), ModelKind.FIXED_EFFECT)
    return _heterogeneity_from(float(pooled.q), float(pooled.tau2), len(studies))


def _pool(
    studies: Sequence[StudyEffect], level: Probability, model: ModelKind
) -> PooledResult:
    measure = _validate(studies)
    level = probability(level, "level", open_interval=True)
    pooled = pool_arrays(*_as_arrays(studies), model)
    estimate = float(pooled.estimate)
    se = float(pooled.se)
    het = _heterogeneity_from(float(pooled.q), float(pooled.tau2), len(studies))
    LOGGER.debug(
        "%s pool of %d studies: estimate=%r se=%r Q=%r tau2=%r",
        model.value,
        len(studies),
        estimate,
        se,
        het.q,
        het.tau2,
    )
    return PooledResult(
        model=model,
        measure=measure,
        estimate=estimate,
        se=se,
        ci=ci_of(estimate, se, level),
        level=level,
        weights=tuple(float(weight) for weight in pooled.weights),
        het=het,
    )


def fixed_effect_pool(
    studies: Sequence[StudyEffect], level: Probability = DEFAULT_LEVEL
) -> PooledResult:
    """Inverse-variance weighted mean with weights ``1/v_i``."""
    return _pool(studies, level, ModelKind.FIXED_EFFECT)


def random_effects_pool(
    studies: Sequence[StudyEffect], level: Probability = DEFAULT_LEVEL
) -> PooledResult:
    """DerSimonian-Laird random-effects mean with weights ``1/(v_i + tau^2)``.

    tau^2 is truncated at zero, in which case the result is identical to
    :func:`fixed_effect_pool`.
    """
    return _pool(studies, level, ModelKind.RANDOM_EFFECTS)


def meta_analyze(
    studies: Sequence[StudyEffect],
    level: Probability = DEFAULT_LEVEL,
    model: Union[ModelKind, str] = ModelKind.RANDOM_EFFECTS,
) -> PooledResult:
    return _pool(studies, level, ModelKind.from_tag(model))


def to_display_scale(
    result: PooledResult, measure: Union[EffectMeasure, None] = None
) -> DisplayResult:
    """Map a pooled estimate and its interval to the display scale.

    Odds ratios are exponentiated; mean differences pass through unchanged.
    """
    measure = result.measure if measure is None else measure
    ci = result.ci
    return DisplayResult(
        measure.to_display(result.estimate),
        ConfidenceInterval(measure.to_display(ci.lo), measure.to_display(ci.hi), ci.level),
    )
