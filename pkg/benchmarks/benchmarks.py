import numpy as np

from metaparadox import ModelKind
from metaparadox import SimulationScenario
from metaparadox import classify_arrays
from metaparadox import detect_paradox
from metaparadox import get_dataset
from metaparadox import meta_analyze
from metaparadox import pool_arrays
from metaparadox import simulate_scenario
from metaparadox.reporters.forest import SvgOptions
from metaparadox.reporters.forest import build_forest_rows
from metaparadox.reporters.forest import render_forest_svg
from metaparadox.reporters.forest import render_forest_text

BATCH = 4096


class PoolingBenchmarks:
    def setup(self):
        self.studies = get_dataset("violence-mental-illness").studies()

    def time_meta_analyze(self):
        meta_analyze(self.studies)

    def time_detect_paradox(self):
        detect_paradox(self.studies)


class BatchBenchmarks:
    params = [2, 3, 10]
    param_names = ["k"]

    def setup(self, k):
        rng = np.random.default_rng(0)
        self.y = rng.normal(1.0, 2.0, size=(BATCH, k))
        self.v = rng.uniform(0.01, 0.2, size=(BATCH, k))

    def time_pool_arrays(self, k):
        pool_arrays(self.y, self.v, ModelKind.RANDOM_EFFECTS)

    def time_classify_arrays(self, k):
        classify_arrays(self.y, self.v)


class SimulationBenchmarks:
    params = [1, 4]
    param_names = ["workers"]

    def setup(self, workers):
        self.scenario = SimulationScenario(
            k=3, mu=1.0, tau2=4.0, variances=(0.05,) * 3, n_target=10_000, seed=1
        )

    def time_simulate_scenario(self, workers):
        simulate_scenario(self.scenario, workers=workers)


class ForestBenchmarks:
    def setup(self):
        studies = get_dataset("dpp4-heart-failure").studies()
        self.rows = build_forest_rows(studies, meta_analyze(studies))

    def time_render_text(self):
        render_forest_text(self.rows)

    def time_render_svg(self):
        render_forest_svg(self.rows, SvgOptions(title="DPP-4 inhibitors"))
