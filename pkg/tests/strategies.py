import numpy as np
from hypothesis import strategies as st

from cumulinfo import Dataset


@st.composite
def datasets(draw, min_n=3, max_n=30, min_d=1, max_d=3, ties=True):
    n = draw(st.integers(min_n, max_n))
    d = draw(st.integers(min_d, max_d))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    levels = draw(st.sampled_from([0, 3, 6])) if ties else 0
    y = rng.normal(size=n)
    if levels:
        y = np.round(y * levels) / levels
    if np.unique(y).size < 2:
        y[0], y[-1] = -1.0, 1.0
    cols = {}
    for f in range(d):
        x = rng.uniform(size=n)
        if levels and f % 2 == 0:
            x = np.round(x * levels)
        cols[f"f{f}"] = x
    return Dataset.from_arrays(y, cols)
