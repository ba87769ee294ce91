"""Scalar distribution functions shared by every other module.

All functions are pure and reject NaN and infinities up front instead of
letting them propagate into pooled estimates.
"""
import math

from scipy import special

from ._errors import DomainError

Probability = float


def _check_finite(x: float, name: str) -> float:
    try:
        value = float(x)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {x!r}") from None
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def probability(value: float, name: str = "p", *, open_interval: bool = False) -> float:
    """Validate a probability.

    Args:
        value: The candidate probability.
        name: Used in the error message.
        open_interval: Reject the endpoints 0 and 1 as well.

    Raises:
        DomainError: If ``value`` is NaN, infinite or out of range.
    """
    p = _check_finite(value, name)
    if open_interval:
        if not 0.0 < p < 1.0:
            raise DomainError(f"{name} must be in (0, 1), got {p}")
    elif not 0.0 <= p <= 1.0:
        raise DomainError(f"{name} must be in [0, 1], got {p}")
    return p


def norm_cdf(x: float) -> Probability:
    """Standard normal distribution function."""
    return float(special.ndtr(_check_finite(x, "x")))


def norm_sf(x: float) -> Probability:
    """Standard normal upper tail, accurate far into the tail."""
    return float(special.ndtr(-_check_finite(x, "x")))


def norm_quantile(p: Probability) -> float:
    """Inverse of :func:`norm_cdf` on the open unit interval."""
    p = probability(p, "p", open_interval=True)
    if p == 0.5:
        return 0.0
    return float(special.ndtri(p))


def two_sided_z(level: Probability) -> float:
    """Multiplier of a two-sided Wald interval at the given confidence level."""
    level = probability(level, "level", open_interval=True)
    return norm_quantile((1.0 + level) / 2.0)


def chisq_sf(x: float, df: int) -> Probability:
    """Upper tail P(X > x) of a chi-square variable with ``df`` degrees of freedom.

    Evaluated as the regularized upper incomplete gamma function Q(df/2, x/2).
    """
    x = _check_finite(x, "x")
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if isinstance(df, bool) or int(df) != df or df < 1:
        raise DomainError(f"df must be a positive integer, got {df!r}")
    if x == 0:
        return 1.0
    return float(special.gammaincc(int(df) / 2.0, x / 2.0))
