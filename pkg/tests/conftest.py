from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def q8c3():
    from ybforge.constructions import build_q8c3
    return build_q8c3()


@pytest.fixture(scope="session")
def c35():
    from ybforge.constructions import build_c35
    return build_c35()


@pytest.fixture(scope="session")
def cba42():
    from ybforge.constructions import build_cba
    return build_cba(7, 3, 2, 2, 6, 0, 0, 1, 3)


@pytest.fixture(scope="session")
def enumerated():
    from ybforge.ybe import enumerate_iyb_maps
    return {n: enumerate_iyb_maps(n) for n in range(5)}
