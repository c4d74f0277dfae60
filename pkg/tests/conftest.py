import numpy as np
import pytest
from hypothesis import settings, strategies as st

from swapengine import BathSpec, CycleParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def spectra(draw, n=None, lo=0.0, hi=5.0):
    n = n if n is not None else draw(st.integers(2, 6))
    return np.array(draw(st.lists(st.floats(lo, hi), min_size=n, max_size=n)))


@st.composite
def bath_pairs(draw, max_levels=6):
    """(cold, hot, params) with the hot bath never colder than the cold one."""
    n = draw(st.integers(2, max_levels))
    e_c, e_h = draw(spectra(n)), draw(spectra(n))
    b1, b2 = draw(st.floats(0.1, 10)), draw(st.floats(0.1, 10))
    x = draw(st.floats(0.01, 1.0))
    r = draw(st.floats(0.01, 1.0))
    return BathSpec(e_c, max(b1, b2), "cold"), BathSpec(e_h, min(b1, b2), "hot"), CycleParams(x, r)


@st.composite
def populations(draw, n=None):
    n = n if n is not None else draw(st.integers(2, 6))
    w = np.array(draw(st.lists(st.floats(1e-3, 1.0), min_size=n, max_size=n)))
    return w / w.sum()


@pytest.fixture
def two_level():
    """T_c = 1, T_h = 2, gaps 1.5 and 2: a textbook engine."""
    return BathSpec([0, 1.5], 1.0, "cold"), BathSpec([0, 2], 0.5, "hot"), CycleParams(1.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
