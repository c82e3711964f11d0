import numpy as np
import pytest

from coxlim import coxeter, instances


@pytest.fixture(scope="session")
def bundle():
    return instances.bundled()


@pytest.fixture(scope="session")
def balls12(bundle):
    """Radius-12 balls for every bundled instance, shared across tests."""
    return {name: coxeter.enumerate_ball(sys, 12) for name, sys in bundle.items()}


def truncate(ball, radius):
    return coxeter.Ball(ball.levels[: radius + 1], ball._index)


@pytest.fixture(scope="session")
def rank2():
    return instances.rank2_lorentzian(-1.5)


@pytest.fixture(scope="session")
def sys237(bundle):
    return bundle["triangle_237"]


@pytest.fixture(scope="session")
def cusped(bundle):
    return bundle["rank3_cusped"]


@pytest.fixture(scope="session")
def rank4(bundle):
    return bundle["rank4_with_cusps"]
