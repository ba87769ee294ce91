"""Study-level effect sizes on the analysis scale and their constructors."""
import enum
import math
from dataclasses import dataclass

from ._errors import DomainError
from ._kernel import Probability
from ._kernel import probability
from ._kernel import two_sided_z

DEFAULT_LEVEL = 0.95
CONTINUITY_CORRECTION = 0.5


class EffectMeasure(enum.Enum):
    """Effect measures supported by the pooling engine.

    Mean differences are analysed on the identity scale. Odds ratios are
    analysed on the natural-log scale, so the null is 0 on the analysis scale
    for both measures and 1 on the odds-ratio display scale.
    """

    MEAN_DIFFERENCE = "MD"
    ODDS_RATIO = "OR"

    @classmethod
    def from_tag(cls, tag: str) -> "EffectMeasure":
        try:
            return cls(tag.strip().upper())
        except ValueError:
            known = ", ".join(member.value for member in cls)
            raise DomainError(
                f"unknown measure {tag!r} (expected one of {known})"
            ) from None

    @property
    def tag(self) -> str:
        return self.value

    @property
    def null_value(self) -> float:
        """The no-effect value on the display scale."""
        return 1.0 if self is EffectMeasure.ODDS_RATIO else 0.0

    @property
    def is_ratio(self) -> bool:
        return self is EffectMeasure.ODDS_RATIO

    def to_display(self, value: float) -> float:
        if not self.is_ratio:
            return value
        try:
            return math.exp(value)
        except OverflowError:
            raise DomainError(
                f"log odds ratio {value} is too large for the display scale"
            ) from None

    def from_display(self, value: float) -> float:
        if self.is_ratio:
            if not value > 0:
                raise DomainError(
                    f"odds ratio values must be > 0 on the display scale, got {value}"
                )
            return math.log(value)
        return value


@dataclass(frozen=True)
class ConfidenceInterval:
    lo: float
    hi: float
    level: Probability = DEFAULT_LEVEL

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"interval endpoints must be finite, got {self}")
        if not self.lo < self.hi:
            raise DomainError(
                f"interval lower bound must be below the upper bound, got "
                f"[{self.lo}, {self.hi}]"
            )
        probability(self.level, "level", open_interval=True)

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def ci_of(
    estimate: float, se: float, level: Probability = DEFAULT_LEVEL
) -> ConfidenceInterval:
    """Wald interval ``estimate ± z·se`` at the given two-sided level."""
    if not (math.isfinite(se) and se > 0):
        raise DomainError(f"se must be > 0, got {se}")
    half_width = two_sided_z(level) * se
    return ConfidenceInterval(estimate - half_width, estimate + half_width, level)


@dataclass(frozen=True)
class StudyEffect:
    """One study's effect estimate ``y`` and within-study variance ``v``.

    Both live on the analysis scale of ``measure`` (log odds ratios for
    :attr:`EffectMeasure.ODDS_RATIO`).
    """

    label: str
    y: float
    v: float
    measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE

    def __post_init__(self) -> None:
        if not math.isfinite(self.y):
            raise DomainError(f"{self.label or 'study'}: y must be finite, got {self.y}")
        if not (math.isfinite(self.v) and self.v > 0):
            raise DomainError(
                f"{self.label or 'study'}: v must be finite and > 0, got {self.v}"
            )

    @property
    def se(self) -> float:
        return math.sqrt(self.v)

    def ci(self, level: Probability = DEFAULT_LEVEL) -> ConfidenceInterval:
        return ci_of(self.y, self.se, level)


def study_from_estimate_se(
    label: str,
    y: float,
    se: float,
    measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE,
) -> StudyEffect:
    if not (math.isfinite(se) and se > 0):
        raise DomainError(f"se must be > 0, got {se}")
    return StudyEffect(label, float(y), float(se) ** 2, measure)


def study_from_ci(
    label: str,
    ci: ConfidenceInterval,
    measure: EffectMeasure = EffectMeasure.MEAN_DIFFERENCE,
) -> StudyEffect:
    """Back-calculate a study from a reported symmetric Wald interval.

    The interval is assumed symmetric on the analysis scale, so odds-ratio
    intervals are log-transformed before taking the midpoint and width.
    """
    if measure.is_ratio and not ci.lo > 0:
        raise DomainError(f"odds ratio interval must have lo > 0, got {ci.lo}")
    lo = measure.from_display(ci.lo)
    hi = measure.from_display(ci.hi)
    se = (hi - lo) / (2.0 * two_sided_z(ci.level))
    return StudyEffect(label, (lo + hi) / 2.0, se * se, measure)


def _check_arm(n: int, sd: float, arm: int) -> None:
    if n < 2:
        raise DomainError(f"n{arm} must be >= 2, got {n}")
    if not (math.isfinite(sd) and sd > 0):
        raise DomainError(f"sd{arm} must be > 0, got {sd}")


def study_from_two_arm_continuous(
    label: str,
    n1: int,
    mean1: float,
    sd1: float,
    n2: int,
    mean2: float,
    sd2: float,
) -> StudyEffect:
    """Mean difference (arm 1 minus arm 2) from per-arm summaries."""
    _check_arm(n1, sd1, 1)
    _check_arm(n2, sd2, 2)
    return StudyEffect(
        label,
        float(mean1) - float(mean2),
        sd1 * sd1 / n1 + sd2 * sd2 / n2,
        EffectMeasure.MEAN_DIFFERENCE,
    )


def study_from_2x2(label: str, a: int, b: int, c: int, d: int) -> StudyEffect:
    """Log odds ratio from a 2x2 table.

    ``a``/``b`` are events/non-events in the first arm and ``c``/``d`` in the
    second. When any cell is zero, 0.5 is added to all four cells.
    """
    cells = (a, b, c, d)
    if any(cell < 0 for cell in cells):
        raise DomainError(f"counts must be >= 0, got {cells}")
    if a + b <= 0 or c + d <= 0:
        raise DomainError(f"both arms must be non-empty, got {cells}")
    if any(cell == 0 for cell in cells):
        a, b, c, d = (cell + CONTINUITY_CORRECTION for cell in cells)
    y = math.log(a * d / (b * c))
    v = 1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d
    return StudyEffect(label, y, v, EffectMeasure.ODDS_RATIO)
