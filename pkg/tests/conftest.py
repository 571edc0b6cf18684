import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from concordia import corpus

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def links():
    return corpus.load_all()
