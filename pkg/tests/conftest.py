from __future__ import annotations

import numpy as np
from hypothesis import settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def disc_points(draw, rmax=0.95):
    r = draw(st.floats(0, rmax))
    th = draw(st.floats(0, 2 * np.pi))
    return complex(r * np.cos(th), r * np.sin(th))


@st.composite
def unimodular(draw):
    th = draw(st.floats(0, 2 * np.pi))
    return complex(np.cos(th), np.sin(th))
