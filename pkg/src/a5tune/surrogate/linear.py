# Copyright 2025 Christophe Roeder. All rights reserved.

"""Ridge-stabilized least squares on linear and polynomial features."""

from itertools import product
from typing import Any

import numpy as np


def monomial_exponents(n_features: int, degree: int) -> np.ndarray:
    """
    All exponent vectors of total degree <= degree.

    Ordered by total degree, then lexicographically descending, so the
    constant comes first followed by the linear terms in feature order.
    """
    exps = [
        e for e in product(range(degree + 1), repeat=n_features) if sum(e) <= degree
    ]
    exps.sort(key=lambda e: (sum(e), tuple(-v for v in e)))
    return np.array(exps, dtype=int).reshape(-1, n_features)


def design_matrix(Z: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    """Evaluate every monomial on every row: shape (n, n_terms)."""
    Z = np.atleast_2d(Z)
    return np.prod(Z[:, None, :] ** exponents[None, :, :], axis=2)


def ridge_solve(A: np.ndarray, y: np.ndarray, ridge: float) -> np.ndarray:
    """
    Solve (A^T A + ridge * D) w = A^T y, D = identity without the intercept.

    Raises:
        ValueError: If the system is singular (only reachable with ridge = 0)
    """
    penalty = np.eye(A.shape[1]) * ridge
    penalty[0, 0] = 0.0
    try:
        return np.linalg.solve(A.T @ A + penalty, A.T @ y)
    except np.linalg.LinAlgError as e:
        raise ValueError(f"Singular design matrix: {e}") from e


class PolynomialRegressor:
    """
    Least-squares fit on monomials of standardized features.

    degree 1 is ordinary (ridge) linear regression.
    """

    def __init__(self, exponents: np.ndarray, coef: np.ndarray):
        if exponents.shape[0] != coef.shape[0]:
            raise ValueError(
                f"{coef.shape[0]} coefficients for {exponents.shape[0]} terms"
            )
        self.exponents = exponents
        self.coef = coef

    @property
    def degree(self) -> int:
        return int(self.exponents.sum(axis=1).max())

    @classmethod
    def fit(
        cls, Z: np.ndarray, y: np.ndarray, params: dict[str, Any]
    ) -> "PolynomialRegressor":
        exponents = monomial_exponents(Z.shape[1], params.get("degree", 1))
        A = design_matrix(Z, exponents)
        return cls(exponents, ridge_solve(A, y, params["ridge"]))

    def predict(self, Z: np.ndarray) -> np.ndarray:
        return design_matrix(Z, self.exponents) @ self.coef

    def truncated(self, degree: int) -> "PolynomialRegressor":
        """Copy with all coefficients above the given total degree zeroed."""
        coef = np.where(self.exponents.sum(axis=1) <= degree, self.coef, 0.0)
        return PolynomialRegressor(self.exponents, coef)

    def to_dict(self) -> dict[str, Any]:
        return {"exponents": self.exponents.tolist(), "coef": self.coef.tolist()}

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> "PolynomialRegressor":
        exponents = np.asarray(doc["exponents"], dtype=int)
        return cls(exponents.reshape(-1, exponents.shape[-1]), np.asarray(doc["coef"]))
