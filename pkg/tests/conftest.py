import os

import pytest
from hypothesis import HealthCheck, settings

from lcreduce.labelcover import LabelCoverInstance, identity, lc1, lc2

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def path_instance(alphabet: int = 2) -> LabelCoverInstance:
    """Five-edge bipartite path u1-v1-u2-v2-u3-v3 with identity constraints."""
    edges = [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]
    return LabelCoverInstance((1, 2, 3), (1, 2, 3), alphabet, {e: identity(alphabet) for e in edges})


@pytest.fixture
def LC1():
    return lc1()


@pytest.fixture
def LC2():
    return lc2()


@pytest.fixture
def PATH():
    return path_instance()
