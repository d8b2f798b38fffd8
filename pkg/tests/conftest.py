import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from beamscope import GenerationParams, MockProvider


@pytest.fixture
def chain_provider():
    """Every context has exactly one continuation with probability 1."""
    return MockProvider({"rows": {
        "": {"a": 1.0},
        "a": {"b": 1.0},
        "a b": {"c": 1.0},
        "a b c": {"d": 1.0},
        "a b c d": {"e": 1.0},
        "a b c d e": {"f": 1.0},
    }, "vocab": ["p"]})


@pytest.fixture
def fork_provider():
    """The hand-enumerable two-level model: pool at step 2 is
    (a,c)=0.54, (b,c)=0.20, (b,d)=0.20, (a,d)=0.06."""
    return MockProvider({"rows": {
        "": {"a": 0.6, "b": 0.4},
        "a": {"c": 0.9, "d": 0.1},
        "b": {"c": 0.5, "d": 0.5},
    }})


@pytest.fixture
def fork_params():
    return GenerationParams(beam_width=2, beam_length=2, expansion_factor=2)
