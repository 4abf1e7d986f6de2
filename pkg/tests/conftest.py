"""Shared fixtures: small instances and deterministic stat builders."""

import numpy as np
import pytest

from drbandits.core import BanditInstance
from drbandits.instances import builtin_instance


@pytest.fixture
def k2_instance():
    """Minimal consistent two-arm instance."""
    return BanditInstance(
        K=2,
        mu=np.array([0.9, 0.6]),
        nu=np.array([[0.5, 0.7], [0.3, 0.5]]),
    )


@pytest.fixture
def k16_instance():
    return builtin_instance("appendix-f-k16")


@pytest.fixture
def k5_instance():
    return builtin_instance("reward-gap", 0.11)


