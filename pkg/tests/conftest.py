import dataclasses

import numpy as np
import pytest

import flowrank as fr

# Reference outputs for the bundled five-batch sample under the two weight
# profiles of its switch scenario, frozen after cross-checking against the
# naive transcription in tests/oracles.py.
UNIFORM_QPV = (0.0, 0.1, 0.3)
WEIGHTS_INITIAL = (0.1, 0.4, 0.1, 0.4)
WEIGHTS_REVISED = (0.4, 0.1, 0.4, 0.1)
SCORES_INITIAL = (1.88107276, 1.74601871, -0.64209385, -1.42206757, -1.56293005)
SCORES_REVISED = (1.88107276, 2.12396587, -1.02711495, -1.21806757, -1.75985611)
NET_BY_CRITERION = (
    (1.0, 1.0, 2.76214551, 2.76214551),
    (2.90774712, 1.62434345, 1.59214939, 1.6157292),
    (-0.91317107, 0.3702326, -1.39773957, -1.39773957),
    (-1.0, -1.0, -1.30013514, -1.98013514),
    (-1.99457605, -1.99457605, -1.6564202, -1.0),
)
ORDER_INITIAL = ("613", "2573", "292", "162", "3062")
ORDER_REVISED = ("2573", "613", "292", "162", "3062")

# Score-gap ratio that fixes where the two leaders cross: the constant-target
# filter reaches the crossing when (1 - alpha)**t equals this value.
GAP_RATIO = (SCORES_REVISED[0] - SCORES_REVISED[1]) / (SCORES_INITIAL[1] - SCORES_REVISED[1])


@pytest.fixture(scope="session")
def sample() -> fr.CriteriaMatrix:
    return fr.bundled_criteria()


@pytest.fixture(scope="session")
def model_initial() -> fr.PreferenceModel:
    return fr.PreferenceModel(WEIGHTS_INITIAL, [UNIFORM_QPV] * 4)


@pytest.fixture(scope="session")
def model_revised() -> fr.PreferenceModel:
    return fr.PreferenceModel(WEIGHTS_REVISED, [UNIFORM_QPV] * 4)


def switch_scenario(alpha: float, horizon: int = 40) -> fr.Scenario:
    """Bundled switch scenario with a different filter and horizon."""
    base = fr.bundled_switch_scenario()
    return dataclasses.replace(base, filter=fr.make_filter(alpha), horizon=horizon)


def random_instance(rng: np.random.Generator, m: int, n: int):
    """Random criteria matrix and preference model for property checks."""
    values = rng.uniform(0.0, 1.0, size=(m, n))
    ids = tuple(f"alt{i}" for i in range(m))
    labels = tuple(f"c{k}" for k in range(n))
    criteria = fr.CriteriaMatrix(ids, labels, values)
    q = rng.uniform(0.0, 0.2, size=n)
    p = q + rng.uniform(0.0, 0.3, size=n)
    v = p + rng.uniform(0.0, 0.5, size=n)
    weights = rng.dirichlet(np.ones(n))
    weights = weights / weights.sum()
    exponent = int(rng.integers(1, 5))
    model = fr.PreferenceModel(weights, list(zip(q, p, v)), exponent)
    return criteria, model
