import numpy as np
import pytest

from isokin.suites import campaign_roster


def roster():
    """The campaign field instances, one per family."""
    return [c.field for c in campaign_roster()]


def sample_regular_points(field, name, n, rng):
    """Random regular (t, x, y) triples inside the family's campaign box."""
    camp = next(c for c in campaign_roster() if c.name == name)
    assert type(camp.field) is type(field)
    return camp.sample_points(n, rng)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
