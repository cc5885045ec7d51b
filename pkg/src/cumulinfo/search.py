"""Depth-first branch-and-bound over feature subsets, and an exhaustive oracle.

Children of a node append features that come after the node's last feature
in the expansion order, so every subset is reachable along exactly one path.
A subtree is pruned when its root's bound cannot beat the incumbent.  The
bound ``1 - min(D0, D0')`` caps the adjusted score of every descendant as
long as baselines grow along subset chains; ``prune_on_criterion`` adds the
extra rule of skipping subtrees whose criterion already reaches the bound.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .estimators import DataError, Dataset, Orientation, _canonical, build_grid, fraction_scores
from .baseline import expected_fraction
from .tcmi import SubsetScore, rank_table_ordering, score_subset

__all__ = [
    "SearchConfig",
    "SearchResult",
    "BudgetExceeded",
    "NODE_BUDGET",
    "criterion",
    "bound",
    "branch_and_bound",
    "exhaustive",
]

NODE_BUDGET = 10 ** 6


class BudgetExceeded(RuntimeError):
    """The requested search would evaluate too many subsets."""


@dataclass(frozen=True)
class SearchConfig:
    max_dim: int = 2
    top_k: int = 10
    grid_strategy: str = "sample"
    mode: str = "branch_and_bound"
    feature_order: str = "univariate_score_desc"
    prune_on_criterion: bool = False
    workers: int = 1


@dataclass
class SearchResult:
    ranked: list
    evaluated_nodes: int
    pruned_nodes: int
    optimal: SubsetScore
    prunes: list = field(default_factory=list)

    def top(self, k: int) -> list:
        return self.ranked[:k]


def criterion(dataset: Dataset, subset, grid_strategy="sample") -> float:
    """Smaller of the two unadjusted fraction scores."""
    names = _canonical(dataset, subset)
    pair = fraction_scores(dataset, names, build_grid(dataset, names, grid_strategy))
    return min(pair.d_forward, pair.d_reverse)


def bound(dataset: Dataset, subset, grid_strategy="sample") -> float:
    """One minus the smaller of the two baselines."""
    names = _canonical(dataset, subset)
    b_fwd = expected_fraction(dataset, names, grid_strategy, Orientation.FORWARD).value
    b_rev = expected_fraction(dataset, names, grid_strategy, Orientation.REVERSE).value
    return 1.0 - min(b_fwd, b_rev)


def _node_count(d: int, max_dim: int) -> int:
    return sum(comb(d, k) for k in range(1, min(max_dim, d) + 1))


def _subtree_size(remaining: int, depth_left: int) -> int:
    """Descendants of a node with ``remaining`` features after its last one."""
    return sum(comb(remaining, j) for j in range(1, min(depth_left, remaining) + 1))


def _validate(dataset: Dataset, config: SearchConfig) -> list:
    features = dataset.feature_names
    if not features:
        raise DataError("empty feature set")
    if config.max_dim < 1:
        raise DataError("max_dim must be >= 1")
    if config.max_dim > len(features):
        raise DataError("max_dim exceeds the number of features")
    return features


def _map(fn, items, workers):
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def exhaustive(dataset: Dataset, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Score every subset of at most ``max_dim`` features."""
    from itertools import combinations

    features = _validate(dataset, config)
    total = _node_count(len(features), config.max_dim)
    if total > NODE_BUDGET:
        raise BudgetExceeded(f"exhaustive search too large: {total} subsets")
    subsets = [c for k in range(1, config.max_dim + 1) for c in combinations(features, k)]
    scores = _map(lambda s: score_subset(dataset, s, config.grid_strategy), subsets, config.workers)
    ranked = rank_table_ordering(scores)
    return SearchResult(ranked, len(scores), 0, ranked[0])


def branch_and_bound(dataset: Dataset, config: SearchConfig = SearchConfig()) -> SearchResult:
    """Optimal subset by depth-first branch-and-bound.

    ``prunes`` records ``(subset, incumbent_score)`` for every pruned subtree
    root so that pruning decisions can be replayed against the oracle.
    """
    features = _validate(dataset, config)
    grid = config.grid_strategy
    singles = _map(lambda f: score_subset(dataset, (f,), grid), features, config.workers)
    if config.feature_order == "univariate_score_desc":
        order = [s.subset[0] for s in rank_table_ordering(singles)]
    elif config.feature_order == "input_order":
        order = list(features)
    else:
        raise DataError(f"unknown feature order: {config.feature_order}")
    cache = {s.subset: s for s in singles}

    evaluated = []
    prunes = []
    pruned = 0
    best = None

    def visit(node: tuple, last: int):
        nonlocal best, pruned
        key = tuple(sorted(node))
        score = cache.get(key)
        if score is None:
            score = score_subset(dataset, node, grid)
        evaluated.append(score)
        if best is None or rank_table_ordering([score, best])[0] is score:
            best = score
        depth_left = config.max_dim - len(node)
        remaining = len(order) - 1 - last
        if depth_left <= 0 or remaining <= 0:
            return
        pair = score.pair
        upper = 1.0 - min(pair.baseline_forward, pair.baseline_reverse)
        stop = upper < best.selection_score
        if config.prune_on_criterion:
            stop = stop or min(pair.d_forward, pair.d_reverse) >= upper
        if stop:
            pruned += _subtree_size(remaining, depth_left)
            prunes.append((key, best.selection_score))
            return
        for j in range(last + 1, len(order)):
            visit(node + (order[j],), j)

    for i, f in enumerate(order):
        visit((f,), i)
    ranked = rank_table_ordering(evaluated)
    return SearchResult(ranked, len(evaluated), pruned, ranked[0], prunes)
