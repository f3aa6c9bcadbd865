import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from indecision import enumerate_axial, get_scenario, run_scenario


@pytest.fixture(scope="session")
def scenario_runs():
    """Memoized scenario batches; the heavy integrations run once per
    session and are shared between module tests and acceptance criteria."""
    cache = {}

    def get(name, epsilon=None, seeds=None):
        key = (name, epsilon, seeds)
        if key not in cache:
            sc = get_scenario(name)
            if epsilon is not None:
                sc = sc.replace(epsilon=epsilon)
            if seeds is not None:
                sc = sc.replace(seeds=tuple(seeds))
            cache[key] = run_scenario(sc)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def catalog_4x6():
    from indecision import NetworkShape
    return enumerate_axial(NetworkShape(4, 6))
