import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import random_family  # noqa: E402


@pytest.fixture(scope="session")
def small_corpus():
    """120 deterministic random families for cross-oracle module tests."""
    rng = random.Random(20240601)
    return [random_family(rng, max_m=8, max_n=8) for _ in range(120)]
