import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("rpog", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("rpog")


@pytest.fixture(scope="session")
def corpus8():
    from rpog.groups import rpo_corpus
    return rpo_corpus(8)


@pytest.fixture(scope="session")
def corpus12():
    from rpog.groups import rpo_corpus
    return rpo_corpus(12)
