import math

import pytest

from freeconv import FlowParameters


@pytest.fixture
def fig6_params() -> FlowParameters:
    """Reference comparison case: Gr=15, Gc=5, Pr=0.71, Sc=0.78, alpha=30deg."""
    return FlowParameters(gr=15.0, gc=5.0, pr=0.71, sc=0.78,
                          alpha=math.radians(30.0))
