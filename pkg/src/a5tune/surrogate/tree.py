# Copyright 2025 Christophe Roeder. All rights reserved.

"""CART regression trees grown by variance reduction."""

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

LEAF = -1

# A split must remove at least this fraction of the node's squared error
MIN_RELATIVE_GAIN = 1e-12


@dataclass(frozen=True)
class RegressionTree:
    """
    Flat node arrays; node 0 is the root.

    Internal nodes send x[feature] <= threshold to left, the rest to right.
    Leaves have feature == LEAF and predict value.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature == LEAF))

    def predict(self, Z: np.ndarray) -> np.ndarray:
        Z = np.atleast_2d(Z)
        node = np.zeros(Z.shape[0], dtype=int)
        active = np.flatnonzero(self.feature[node] != LEAF)
        while active.size:
            current = node[active]
            f = self.feature[current]
            go_left = Z[active, f] <= self.threshold[current]
            node[active] = np.where(go_left, self.left[current], self.right[current])
            active = active[self.feature[node[active]] != LEAF]
        return self.value[node]

    def to_dict(self) -> dict[str, Any]:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "RegressionTree":
        tree = cls(
            feature=np.asarray(doc["feature"], dtype=int),
            threshold=np.asarray(doc["threshold"], dtype=float),
            left=np.asarray(doc["left"], dtype=int),
            right=np.asarray(doc["right"], dtype=int),
            value=np.asarray(doc["value"], dtype=float),
        )
        n = tree.n_nodes
        if n == 0 or not all(
            len(a) == n for a in (tree.threshold, tree.left, tree.right, tree.value)
        ):
            raise ValueError("Tree node arrays are empty or of unequal length")
        return tree


def _leaf_value(y: np.ndarray) -> float:
    # Summing in sorted order keeps leaf values independent of row order
    return float(np.mean(np.sort(y)))


def best_split(
    Z: np.ndarray, y: np.ndarray, features: np.ndarray, min_samples_leaf: int
) -> Optional[tuple[int, float, float]]:
    """
    Best variance-reduction split over the given features.

    Returns:
        (feature, threshold, gain) or None when no admissible split reduces
        the squared error
    """
    n = len(y)
    if n < 2 * min_samples_leaf:
        return None

    best: Optional[tuple[int, float, float]] = None
    positions = np.arange(n - 1)
    n_left = positions + 1
    n_right = n - n_left
    size_ok = (n_left >= min_samples_leaf) & (n_right >= min_samples_leaf)

    for f in features:
        order = np.lexsort((y, Z[:, f]))
        xs = Z[order, f]
        ys = y[order]
        yc = ys - ys.mean()
        total = yc.sum()
        sse = float(np.dot(yc, yc))
        if sse <= 0.0:
            return None

        left_sum = np.cumsum(yc)[:-1]
        right_sum = total - left_sum
        score = left_sum**2 / n_left + right_sum**2 / n_right
        gain = score - total**2 / n
        valid = size_ok & (xs[1:] > xs[:-1])
        if not valid.any():
            continue
        gain = np.where(valid, gain, -np.inf)
        i = int(np.argmax(gain))
        if gain[i] <= MIN_RELATIVE_GAIN * sse:
            continue
        if best is None or gain[i] > best[2]:
            threshold = 0.5 * (xs[i] + xs[i + 1])
            best = (int(f), float(threshold), float(gain[i]))
    return best


def grow_tree(
    Z: np.ndarray,
    y: np.ndarray,
    max_depth: int,
    min_samples_leaf: int = 1,
    max_features: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> RegressionTree:
    """
    Grow a regression tree depth-first.

    Args:
        Z: Standardized features, shape (n, d)
        y: Targets, shape (n,)
        max_depth: Maximum number of splits on any root-to-leaf path
        min_samples_leaf: Minimum training rows in each leaf
        max_features: Features drawn (without replacement) per node; None = all
        rng: Generator for feature subsampling

    Returns:
        The fitted tree
    """
    Z = np.asarray(Z, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(y) == 0:
        raise ValueError("Cannot grow a tree on zero rows")
    n_features = Z.shape[1]
    if max_features is not None and max_features < n_features and rng is None:
        raise ValueError("Feature subsampling needs a random generator")

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[float] = []

    def new_node() -> int:
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(0.0)
        return len(feature) - 1

    def build(rows: np.ndarray, depth: int) -> int:
        node = new_node()
        value[node] = _leaf_value(y[rows])
        if depth >= max_depth:
            return node
        if max_features is None or max_features >= n_features:
            candidates = np.arange(n_features)
        else:
            assert rng is not None
            candidates = np.sort(rng.choice(n_features, max_features, replace=False))
        split = best_split(Z[rows], y[rows], candidates, min_samples_leaf)
        if split is None:
            return node
        f, thr, _ = split
        goes_left = Z[rows, f] <= thr
        feature[node] = f
        threshold[node] = thr
        left[node] = build(rows[goes_left], depth + 1)
        right[node] = build(rows[~goes_left], depth + 1)
        return node

    build(np.arange(len(y)), 0)
    return RegressionTree(
        feature=np.array(feature, dtype=int),
        threshold=np.array(threshold, dtype=float),
        left=np.array(left, dtype=int),
        right=np.array(right, dtype=int),
        value=np.array(value, dtype=float),
    )


class TreeRegressor:
    """A single CART tree."""

    def __init__(self, tree: RegressionTree):
        self.tree = tree

    @classmethod
    def fit(
        cls, Z: np.ndarray, y: np.ndarray, params: dict[str, Any]
    ) -> "TreeRegressor":
        return cls(
            grow_tree(
                Z,
                y,
                max_depth=params["max_depth"],
                min_samples_leaf=params["min_samples_leaf"],
            )
        )

    def predict(self, Z: np.ndarray) -> np.ndarray:
        return self.tree.predict(Z)

    def to_dict(self) -> dict[str, Any]:
        return {"tree": self.tree.to_dict()}

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "TreeRegressor":
        return cls(RegressionTree.from_dict(doc["tree"]))
