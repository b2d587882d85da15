# Copyright 2025 Christophe Roeder. All rights reserved.

"""Bagged and boosted tree ensembles."""

import logging
from typing import Any

import numpy as np

from .tree import RegressionTree, grow_tree

logger = logging.getLogger(__name__)


class ForestRegressor:
    """Random forest: bootstrap-sampled trees with per-node feature subsampling."""

    def __init__(self, trees: list[RegressionTree]):
        if not trees:
            raise ValueError("A forest needs at least one tree")
        self.trees = trees

    @classmethod
    def fit(
        cls, Z: np.ndarray, y: np.ndarray, params: dict[str, Any]
    ) -> "ForestRegressor":
        n = len(y)
        trees = []
        for t in range(params["n_trees"]):
            # One generator per tree so tree t does not depend on earlier trees
            rng = np.random.default_rng([params["seed"], t])
            if params["bootstrap"]:
                rows = rng.integers(0, n, n)
            else:
                rows = np.arange(n)
            trees.append(
                grow_tree(
                    Z[rows],
                    y[rows],
                    max_depth=params["max_depth"],
                    min_samples_leaf=params["min_samples_leaf"],
                    max_features=params["max_features"],
                    rng=rng,
                )
            )
        logger.debug(f"Grew {len(trees)} forest trees on {n} rows")
        return cls(trees)

    def tree_predictions(self, Z: np.ndarray) -> np.ndarray:
        """Per-tree predictions, shape (n_trees, n_rows)."""
        return np.stack([tree.predict(Z) for tree in self.trees])

    def predict(self, Z: np.ndarray) -> np.ndarray:
        return self.tree_predictions(Z).mean(axis=0)

    def to_dict(self) -> dict[str, Any]:
        return {"trees": [tree.to_dict() for tree in self.trees]}

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "ForestRegressor":
        return cls([RegressionTree.from_dict(t) for t in doc["trees"]])


class BoostedRegressor:
    """
    Squared-error gradient boosting with shrinkage.

    Each round fits a tree to the current residuals and adds
    learning_rate * tree to the ensemble. train_rmse records the training
    error after every round.
    """

    def __init__(
        self,
        base: float,
        learning_rate: float,
        trees: list[RegressionTree],
        train_rmse: list[float],
    ):
        self.base = base
        self.learning_rate = learning_rate
        self.trees = trees
        self.train_rmse = train_rmse

    @classmethod
    def fit(
        cls, Z: np.ndarray, y: np.ndarray, params: dict[str, Any]
    ) -> "BoostedRegressor":
        n = len(y)
        lr = params["learning_rate"]
        subsample = params["subsample"]
        rng = np.random.default_rng(params["seed"])

        base = float(np.mean(np.sort(y)))
        fitted = np.full(n, base)
        trees: list[RegressionTree] = []
        train_rmse: list[float] = []
        for _ in range(params["n_rounds"]):
            residual = y - fitted
            if subsample < 1.0:
                size = max(1, int(round(subsample * n)))
                rows = np.sort(rng.choice(n, size, replace=False))
            else:
                rows = np.arange(n)
            tree = grow_tree(
                Z[rows],
                residual[rows],
                max_depth=params["max_depth"],
                min_samples_leaf=params["min_samples_leaf"],
            )
            fitted = fitted + lr * tree.predict(Z)
            trees.append(tree)
            train_rmse.append(float(np.sqrt(np.mean((y - fitted) ** 2))))

        logger.debug(
            f"Boosted {len(trees)} rounds; train RMSE "
            f"{train_rmse[0] if train_rmse else 0:.6g} -> "
            f"{train_rmse[-1] if train_rmse else 0:.6g}"
        )
        return cls(base, lr, trees, train_rmse)

    def staged_predict(self, Z: np.ndarray, rounds: int) -> np.ndarray:
        """Prediction using only the first `rounds` trees."""
        out = np.full(np.atleast_2d(Z).shape[0], self.base)
        for tree in self.trees[:rounds]:
            out = out + self.learning_rate * tree.predict(Z)
        return out

    def predict(self, Z: np.ndarray) -> np.ndarray:
        return self.staged_predict(Z, len(self.trees))

    def to_dict(self) -> dict[str, Any]:
        return {
            "base": self.base,
            "learning_rate": self.learning_rate,
            "trees": [tree.to_dict() for tree in self.trees],
            "train_rmse": self.train_rmse,
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "BoostedRegressor":
        return cls(
            base=float(doc["base"]),
            learning_rate=float(doc["learning_rate"]),
            trees=[RegressionTree.from_dict(t) for t in doc["trees"]],
            train_rmse=[float(v) for v in doc.get("train_rmse", [])],
        )
