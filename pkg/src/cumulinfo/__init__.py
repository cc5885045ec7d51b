"""Total cumulative mutual information: dependence scores between a continuous
target and feature subsets, permutation baselines, and optimal subset search."""

__version__ = "0.1.0"

from .estimators import (  # noqa: E402
    DataError,
    Dataset,
    DegenerateError,
    GridSpec,
    Orientation,
    build_grid,
    cumulative_entropy,
    fraction_scores,
    sorted_profile,
)
from .baseline import (  # noqa: E402
    BaselineEstimate,
    expected_fraction,
    expected_fraction_mc,
    expected_gap,
    hypergeometric_weight,
)
from .tcmi import ScorePair, SubsetScore, rank_table_ordering, score_subset  # noqa: E402
from .search import SearchConfig, SearchResult, bound, branch_and_bound, criterion, exhaustive  # noqa: E402
