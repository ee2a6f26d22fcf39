import itertools
from pathlib import Path as FsPath

import pytest
from hypothesis import HealthCheck, settings

from harada_quivers.block import BlockSpec
from harada_quivers.corpus import running_example, standard_corpus

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

ROOT = FsPath(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "corpus"


def block_specs(m: int, total: int = 6):
    """Every spec with m positive entries summing to at most ``total``."""
    for n in itertools.product(range(1, total + 1), repeat=m):
        if sum(n) <= total:
            yield BlockSpec(n)


@pytest.fixture
def running():
    return running_example()


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()
