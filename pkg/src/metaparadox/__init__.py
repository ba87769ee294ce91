from ._datasets import DATASETS
from ._datasets import Dataset
from ._datasets import get_dataset
from ._effects import ConfidenceInterval
from ._effects import EffectMeasure
from ._effects import StudyEffect
from ._effects import ci_of
from ._effects import study_from_2x2
from ._effects import study_from_ci
from ._effects import study_from_estimate_se
from ._effects import study_from_two_arm_continuous
from ._errors import DomainError
from ._errors import MetaparadoxError
from ._errors import SimulationError
from ._errors import StudyParseError
from ._ingest import StudyFormat
from ._ingest import load_studies
from ._ingest import parse_studies
from ._kernel import chisq_sf
from ._kernel import norm_cdf
from ._kernel import norm_quantile
from ._kernel import norm_sf
from ._kernel import probability
from ._log import set_log_level
from ._metadata import Metadata
from ._paradox import Classification
from ._paradox import Direction
from ._paradox import ParadoxVerdict
from ._paradox import classify_arrays
from ._paradox import detect_paradox
from ._paradox import detect_paradox_from_intervals
from ._paradox import interval_direction
from ._paradox import study_direction
from ._pooling import HeterogeneityStats
from ._pooling import ModelKind
from ._pooling import PooledResult
from ._pooling import fixed_effect_pool
from ._pooling import heterogeneity
from ._pooling import meta_analyze
from ._pooling import pool_arrays
from ._pooling import random_effects_pool
from ._pooling import to_display_scale
from ._simulation import GridCell
from ._simulation import SimulationResult
from ._simulation import SimulationScenario
from ._simulation import load_scenario
from ._simulation import scenario_from_dict
from ._simulation import scenario_to_dict
from ._simulation import simulate_replicate
from ._simulation import simulate_scenario
from ._simulation import sweep_grid
from ._simulation import wilson_ci
from ._version import __version__

__all__ = [
    "ConfidenceInterval",
    "EffectMeasure",
    "StudyEffect",
    "ci_of",
    "study_from_2x2",
    "study_from_ci",
    "study_from_estimate_se",
    "study_from_two_arm_continuous",
    "StudyFormat",
    "parse_studies",
    "load_studies",
    "chisq_sf",
    "norm_cdf",
    "norm_quantile",
    "norm_sf",
    "probability",
    "HeterogeneityStats",
    "ModelKind",
    "PooledResult",
    "fixed_effect_pool",
    "heterogeneity",
    "meta_analyze",
    "pool_arrays",
    "random_effects_pool",
    "to_display_scale",
    "Classification",
    "Direction",
    "ParadoxVerdict",
    "classify_arrays",
    "detect_paradox",
    "detect_paradox_from_intervals",
    "interval_direction",
    "study_direction",
    "GridCell",
    "SimulationResult",
    "SimulationScenario",
    "load_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "simulate_replicate",
    "simulate_scenario",
    "sweep_grid",
    "wilson_ci",
    "DATASETS",
    "Dataset",
    "get_dataset",
    "Metadata",
    "MetaparadoxError",
    "DomainError",
    "StudyParseError",
    "SimulationError",
    "set_log_level",
    "__version__",
]
