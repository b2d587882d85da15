# Copyright 2025 Christophe Roeder. All rights reserved.

"""Exhaustive and genetic search of the COP box."""

import logging
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from ..handover import CopVector
from ..sweep import SweepSpec, range_values
from .models import GOLD_STANDARD_METHOD, GaConfig, OptResult
from .objective import Objective

logger = logging.getLogger(__name__)

Genome = tuple[int, int, int]

# TTT index mutation moves
_TTT_STEPS = np.array([-2, -1, 1, 2])


def _result(
    method: str, obj: Objective, cop: CopVector, value: float, evaluations: int
) -> OptResult:
    rsrp, hosr = obj.predict_kpis(np.array([cop.as_tuple()], dtype=float))
    return OptResult(
        method=method,
        alpha=obj.alpha,
        best=cop,
        objective=float(value),
        mean_rsrp_dbm=float(rsrp[0]),
        hosr_pct=float(hosr[0]),
        evaluations=evaluations,
    )


def brute_force(
    grid: Iterable[CopVector], obj: Objective, method: str = "brute"
) -> OptResult:
    """
    Evaluate every grid point and return the exact argmax.

    Ties go to the lexicographically smallest COP.
    """
    cops = sorted(set(grid))
    if not cops:
        raise ValueError("Cannot search an empty grid")
    X = np.array([c.as_tuple() for c in cops], dtype=float)
    values = obj.evaluate_many(X)
    best = int(np.argmax(values))
    result = _result(method, obj, cops[best], values[best], len(cops))
    result.trace = [float(values[best])]
    logger.info(
        f"Brute force: best {cops[best]} objective {values[best]:.4f} "
        f"over {len(cops)} points"
    )
    return result


def evaluate_point(
    cop: CopVector, obj: Objective, method: str = GOLD_STANDARD_METHOD
) -> OptResult:
    """Objective at one fixed COP, reported like a search result."""
    value = obj(cop)
    result = _result(method, obj, cop, value, 1)
    result.trace = [result.objective]
    return result


def _reflect(value: int, upper: int) -> int:
    """Fold an out-of-range index back into [0, upper]."""
    if upper == 0:
        return 0
    while value < 0 or value > upper:
        if value < 0:
            value = -value
        if value > upper:
            value = 2 * upper - value
    return value


class _GeneticSearch:
    """One seeded GA run over axis indices of a sweep grid."""

    def __init__(self, obj: Objective, ga: GaConfig, spec: SweepSpec):
        self.obj = obj
        self.ga = ga
        self.axes = (
            sorted(spec.ttt_values),
            range_values(spec.th1_range),
            range_values(spec.th2_range),
        )
        self.upper = np.array([len(a) - 1 for a in self.axes])
        self.sigma = (
            ga.threshold_sigma_db / spec.th1_range[2],
            ga.threshold_sigma_db / spec.th2_range[2],
        )
        self.rng = np.random.default_rng(ga.seed)
        self.cache: dict[Genome, float] = {}

    def decode(self, genome: Genome) -> CopVector:
        return CopVector(*(axis[i] for axis, i in zip(self.axes, genome)))

    def fitness(self, population: np.ndarray) -> np.ndarray:
        """Look up known genomes and evaluate the new ones in one batch."""
        keys: list[Genome] = [(int(g[0]), int(g[1]), int(g[2])) for g in population]
        new = sorted({k for k in keys if k not in self.cache})
        if new:
            X = np.array([self.decode(k).as_tuple() for k in new], dtype=float)
            self.cache.update(zip(new, self.obj.evaluate_many(X).tolist()))
        return np.array([self.cache[k] for k in keys])

    def tournament(self, population: np.ndarray, fit: np.ndarray) -> np.ndarray:
        contenders = self.rng.integers(0, len(population), size=self.ga.tournament)
        return population[contenders[int(np.argmax(fit[contenders]))]]

    def crossover(
        self, a: np.ndarray, b: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        c1, c2 = a.copy(), b.copy()
        if self.rng.random() < self.ga.crossover_rate:
            swap = self.rng.random(3) < 0.5
            c1[swap], c2[swap] = b[swap], a[swap]
        return c1, c2

    def mutate(self, genome: np.ndarray) -> None:
        rate = self.ga.mutation_rate
        if self.rng.random() < rate:
            step = int(self.rng.choice(_TTT_STEPS))
            genome[0] = _reflect(int(genome[0]) + step, int(self.upper[0]))
        for gene in (1, 2):
            if self.rng.random() < rate:
                delta = int(round(self.rng.normal(0.0, self.sigma[gene - 1])))
                if delta == 0:
                    delta = 1 if self.rng.random() < 0.5 else -1
                upper = int(self.upper[gene])
                genome[gene] = _reflect(int(genome[gene]) + delta, upper)

    def ranked(self, population: np.ndarray, fit: np.ndarray) -> np.ndarray:
        """Indices by fitness descending, genome ascending on ties."""
        return np.lexsort((population[:, 2], population[:, 1], population[:, 0], -fit))

    def run(self) -> OptResult:
        ga = self.ga
        population = self.rng.integers(0, self.upper + 1, size=(ga.population, 3))
        fit = self.fitness(population)
        trace = [float(fit.max())]
        logger.info(f"GA generation 0: best {trace[-1]:.4f}")

        for generation in range(1, ga.generations):
            order = self.ranked(population, fit)
            children = [population[i].copy() for i in order[: ga.elitism]]
            while len(children) < ga.population:
                a = self.tournament(population, fit)
                b = self.tournament(population, fit)
                for child in self.crossover(a, b):
                    self.mutate(child)
                    if len(children) < ga.population:
                        children.append(child)
            population = np.array(children)
            fit = self.fitness(population)
            trace.append(float(fit.max()))
            logger.info(
                f"GA generation {generation}: best {trace[-1]:.4f}, "
                f"{len(self.cache)} evaluations"
            )

        best = min(self.cache, key=lambda k: (-self.cache[k], k))
        result = _result(
            "ga", self.obj, self.decode(best), self.cache[best], len(self.cache)
        )
        result.trace = trace
        return result


def ga_optimize(
    obj: Objective, ga: Optional[GaConfig] = None, spec: Optional[SweepSpec] = None
) -> OptResult:
    """
    Genetic search over the grid of spec (the full COP box by default).

    Genomes are integer indices into the TTT, threshold1 and threshold2
    axes, so every candidate is a grid point. Repeated genomes are not
    re-evaluated; evaluations counts distinct COPs.
    """
    result = _GeneticSearch(obj, ga or GaConfig(), spec or SweepSpec()).run()
    logger.info(
        f"GA: best {result.best} objective {result.objective:.4f} "
        f"after {result.evaluations} evaluations"
    )
    return result


def alpha_grid(n: int) -> list[float]:
    """n evenly spaced weights from 0 to 1 inclusive."""
    if n < 2:
        raise ValueError(f"An alpha sweep needs at least 2 points, got {n}")
    return [float(a) for a in np.linspace(0.0, 1.0, n)]


def alpha_sweep(
    objective_factory: Callable[[float], Objective],
    alphas: Sequence[float],
    grid: Sequence[CopVector],
) -> list[OptResult]:
    """Brute-force optimum for each weight, tracing the KPI trade-off."""
    results = []
    for alpha in alphas:
        results.append(brute_force(grid, objective_factory(alpha)))
    return results
