"""Monte Carlo estimate of how often the paradox occurs.

Replicates follow the normal-normal random-effects model
``theta_i ~ N(mu, tau2)``, ``y_i ~ N(theta_i, v_i)``. A replicate is accepted
when all of its studies are significant in the same direction, and the
paradox probability is estimated conditionally on acceptance.

Randomness is counter-based: replicate ``i`` is row ``i % BLOCK_SIZE`` of
block ``i // BLOCK_SIZE``, and every block draws from a Philox generator keyed
by ``(seed, block)``. Blocks can therefore be evaluated in any order, on any
number of threads, without changing a single draw.
"""
import dataclasses
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import Iterator
from typing import List
from typing import Mapping
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from ._effects import ConfidenceInterval
from ._effects import EffectMeasure
from ._effects import StudyEffect
from ._errors import DomainError
from ._errors import SimulationError
from ._errors import StudyParseError
from ._kernel import Probability
from ._kernel import probability
from ._kernel import two_sided_z
from ._paradox import CLASSIFICATION_CODES
from ._paradox import DEFAULT_ALPHA
from ._paradox import Classification
from ._paradox import ParadoxVerdict
from ._paradox import classify_arrays
from ._paradox import detect_paradox
from ._pooling import ModelKind

LOGGER = logging.getLogger(__name__)

BLOCK_SIZE = 4096
WILSON_LEVEL = 0.95
MAX_SEED = 2**64 - 1
VARIANCE_POLICY = "cycle"

_PARADOX = CLASSIFICATION_CODES[Classification.PARADOX]
_NOT_UNANIMOUS = CLASSIFICATION_CODES[Classification.NOT_UNANIMOUS]


@dataclass(frozen=True)
class SimulationScenario:
    k: int
    mu: float
    tau2: float
    variances: Tuple[float, ...]
    alpha: Probability = DEFAULT_ALPHA
    model: ModelKind = ModelKind.RANDOM_EFFECTS
    n_target: int = 10_000
    max_draws: int = 10_000_000
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "variances", tuple(float(v) for v in self.variances))
        if self.k < 2:
            raise DomainError(f"k must be >= 2, got {self.k}")
        if len(self.variances) != self.k:
            raise DomainError(
                f"expected {self.k} variances, got {len(self.variances)}"
            )
        if not all(math.isfinite(v) and v > 0 for v in self.variances):
            raise DomainError(f"variances must be finite and > 0, got {self.variances}")
        if not math.isfinite(self.mu):
            raise DomainError(f"mu must be finite, got {self.mu}")
        if not (math.isfinite(self.tau2) and self.tau2 >= 0):
            raise DomainError(f"tau2 must be finite and >= 0, got {self.tau2}")
        probability(self.alpha, "alpha", open_interval=True)
        if self.n_target < 1:
            raise DomainError(f"n_target must be >= 1, got {self.n_target}")
        if self.max_draws < self.n_target:
            raise DomainError(
                f"max_draws ({self.max_draws}) must be >= n_target ({self.n_target})"
            )
        if not 0 <= self.seed <= MAX_SEED:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


@dataclass(frozen=True)
class SimulationResult:
    accepted: int
    paradoxes: int
    draws_used: int
    p_hat: Probability
    wilson_ci: ConfidenceInterval

    @property
    def acceptance_rate(self) -> float:
        """Share of all draws with unanimous significance."""
        return self.accepted / self.draws_used


@dataclass(frozen=True)
class GridCell:
    k: int
    tau2: float
    result: Optional[SimulationResult] = None
    error: Optional[str] = None
    draws_used: int = 0


def wilson_ci(
    successes: int, trials: int, level: Probability = WILSON_LEVEL
) -> ConfidenceInterval:
    """Wilson score interval for a binomial proportion, clipped to [0, 1]."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    if not 0 <= successes <= trials:
        raise DomainError(f"successes must be in [0, {trials}], got {successes}")
    z = two_sided_z(level)
    p_hat = successes / trials
    z2 = z * z
    denominator = 1.0 + z2 / trials
    center = (p_hat + z2 / (2.0 * trials)) / denominator
    margin = (z / denominator) * math.sqrt(
        p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials)
    )
    lo = 0.0 if successes == 0 else max(0.0, center - margin)
    hi = 1.0 if successes == trials else min(1.0, center + margin)
    return ConfidenceInterval(lo, hi, level)


def _generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed | (block << 64)))


def draw_block(scenario: SimulationScenario, block: int) -> np.ndarray:
    """Effect estimates of replicates ``block * BLOCK_SIZE`` onwards, shape (BLOCK_SIZE, k)."""
    rng = _generator(scenario.seed, block)
    shape = (BLOCK_SIZE, scenario.k)
    theta = scenario.mu + math.sqrt(scenario.tau2) * rng.standard_normal(shape)
    return theta + np.sqrt(np.asarray(scenario.variances)) * rng.standard_normal(shape)


def _classify_block(scenario: SimulationScenario, block: int) -> np.ndarray:
    y = draw_block(scenario, block)
    v = np.broadcast_to(np.asarray(scenario.variances), y.shape)
    return classify_arrays(y, v, scenario.alpha, scenario.model).classification


def simulate_replicate(
    scenario: SimulationScenario, replicate_index: int
) -> Optional[ParadoxVerdict]:
    """Verdict of one replicate, or ``None`` when it is not unanimously significant."""
    if replicate_index < 0:
        raise DomainError(f"replicate_index must be >= 0, got {replicate_index}")
    block, offset = divmod(replicate_index, BLOCK_SIZE)
    y = draw_block(scenario, block)[offset]
    studies = [
        StudyEffect(f"study {i + 1}", float(y_i), v_i, EffectMeasure.MEAN_DIFFERENCE)
        for i, (y_i, v_i) in enumerate(zip(y, scenario.variances))
    ]
    verdict = detect_paradox(studies, scenario.alpha, scenario.model)
    if verdict.classification is Classification.NOT_UNANIMOUS:
        return None
    return verdict


def _block_results(
    scenario: SimulationScenario, workers: int
) -> Iterator[Tuple[int, np.ndarray]]:
    n_blocks = -(-scenario.max_draws // BLOCK_SIZE)
    if workers <= 1:
        for block in range(n_blocks):
            yield block, _classify_block(scenario, block)
        return
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for start in range(0, n_blocks, workers):
            wave = range(start, min(start + workers, n_blocks))
            futures = [executor.submit(_classify_block, scenario, b) for b in wave]
            for block, future in zip(wave, futures):
                yield block, future.result()


def simulate_scenario(scenario: SimulationScenario, workers: int = 1) -> SimulationResult:
    """Draw replicates in index order until ``n_target`` are accepted.

    The reduction walks replicates in index order and stops at the exact
    replicate that reaches ``n_target`` (or at ``max_draws``), so the result
    does not depend on ``workers``.

    Raises:
        SimulationError: If no replicate was accepted within ``max_draws``.
    """
    accepted = paradoxes = draws_used = 0
    for block, codes in _block_results(scenario, workers):
        codes = codes[: scenario.max_draws - draws_used]
        is_accepted = codes != _NOT_UNANIMOUS
        running = np.cumsum(is_accepted)
        needed = scenario.n_target - accepted
        if running.size and running[-1] >= needed:
            codes = codes[: int(np.searchsorted(running, needed)) + 1]
            is_accepted = is_accepted[: codes.size]
        accepted += int(is_accepted.sum())
        paradoxes += int((codes == _PARADOX).sum())
        draws_used += int(codes.size)
        if block % 256 == 255:
            LOGGER.debug(
                "%d draws, %d accepted, %d paradoxes", draws_used, accepted, paradoxes
            )
        if accepted >= scenario.n_target or draws_used >= scenario.max_draws:
            break

    if accepted == 0:
        raise SimulationError(
            f"no accepted replicates after {draws_used} draws", draws_used=draws_used
        )
    LOGGER.info(
        "k=%d tau2=%r: %d/%d paradoxes after %d draws",
        scenario.k,
        scenario.tau2,
        paradoxes,
        accepted,
        draws_used,
    )
    return SimulationResult(
        accepted=accepted,
        paradoxes=paradoxes,
        draws_used=draws_used,
        p_hat=paradoxes / accepted,
        wilson_ci=wilson_ci(paradoxes, accepted),
    )


def cycled_variances(variances: Sequence[float], k: int) -> Tuple[float, ...]:
    return tuple(variances[i % len(variances)] for i in range(k))


def sweep_grid(
    base: SimulationScenario,
    k_values: Sequence[int],
    tau2_values: Sequence[float],
    workers: int = 1,
) -> List[GridCell]:
    """Simulate every (k, tau2) cell, k-major.

    Within-study variances cycle through ``base.variances``. A failing cell is
    reported through :attr:`GridCell.error` instead of aborting the sweep.
    """
    if not k_values or not tau2_values:
        raise DomainError("k and tau2 grids must be non-empty")
    cells = []
    for k in k_values:
        for tau2 in tau2_values:
            try:
                scenario = dataclasses.replace(
                    base, k=k, tau2=tau2, variances=cycled_variances(base.variances, k)
                )
                result = simulate_scenario(scenario, workers=workers)
            except SimulationError as e:
                cells.append(GridCell(k, tau2, error=str(e), draws_used=e.draws_used))
            except DomainError as e:
                cells.append(GridCell(k, tau2, error=str(e)))
            else:
                cells.append(GridCell(k, tau2, result=result, draws_used=result.draws_used))
    return cells


_REQUIRED_FIELDS = ("mu", "tau2", "variances")


def _number(data: Mapping[str, Any], name: str, kind: type = float) -> Any:
    value = data[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StudyParseError(f"expected a number, got {value!r}", column=name)
    if kind is int:
        if isinstance(value, float) and not value.is_integer():
            raise StudyParseError(f"expected a whole number, got {value!r}", column=name)
        return int(value)
    return float(value)


def scenario_from_dict(data: Mapping[str, Any]) -> SimulationScenario:
    """Build a scenario from its JSON form (field names as in :class:`SimulationScenario`)."""
    if not isinstance(data, Mapping):
        raise StudyParseError("a scenario must be a JSON object")
    known = {field.name for field in dataclasses.fields(SimulationScenario)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise StudyParseError(f"unknown scenario field {unknown[0]!r}", column=unknown[0])
    for name in _REQUIRED_FIELDS:
        if name not in data:
            raise StudyParseError("missing required scenario field", column=name)

    raw_variances = data["variances"]
    if not isinstance(raw_variances, list) or not raw_variances:
        raise StudyParseError("expected a non-empty array of numbers", column="variances")
    variances = tuple(_number({"variances": v}, "variances") for v in raw_variances)

    kwargs: Dict[str, Any] = {
        "mu": _number(data, "mu"),
        "tau2": _number(data, "tau2"),
        "variances": variances,
        "k": _number(data, "k", int) if "k" in data else len(variances),
    }
    for name in ("alpha",):
        if name in data:
            kwargs[name] = _number(data, name)
    for name in ("n_target", "max_draws", "seed"):
        if name in data:
            kwargs[name] = _number(data, name, int)
    try:
        if "model" in data:
            kwargs["model"] = ModelKind.from_tag(str(data["model"]))
        return SimulationScenario(**kwargs)
    except DomainError as e:
        raise StudyParseError(str(e)) from None


def scenario_to_dict(scenario: SimulationScenario) -> Dict[str, Any]:
    return {
        "k": scenario.k,
        "mu": scenario.mu,
        "tau2": scenario.tau2,
        "variances": list(scenario.variances),
        "alpha": scenario.alpha,
        "model": scenario.model.value,
        "n_target": scenario.n_target,
        "max_draws": scenario.max_draws,
        "seed": scenario.seed,
    }


def load_scenario(path: Union[str, "os.PathLike[str]"]) -> SimulationScenario:
    with open(path, "rb") as f:
        raw = f.read()
    try:
        data = json.loads(raw.decode("utf-8-sig"))
    except UnicodeDecodeError as e:
        raise StudyParseError(f"scenario is not valid UTF-8 ({e.reason})") from None
    except json.JSONDecodeError as e:
        raise StudyParseError(f"invalid JSON: {e.msg}", row=e.lineno) from None
    return scenario_from_dict(data)
