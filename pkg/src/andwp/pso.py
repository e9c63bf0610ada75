"""Bounded particle swarm optimization and supervised parameter tuning.

The swarm searches the closed box of denoiser parameters (iterations I,
threshold T, decay R) for the position maximizing a fitness function; in
supervised tuning the fitness is the PSNR of the denoised image against
a clean reference, so tuning requires the uncorrupted original.

Reproducibility: all draws come from numpy's counter-based Philox
generator seeded via ``numpy.random.SeedSequence``. Per iteration, one
inertia factor h is drawn and shared by the whole swarm, then the
cognitive and social factors r_p, r_g are drawn per particle per
dimension; this draw order is part of the determinism contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .denoising import FilterParams, denoise
from .image import check_image
from .metrics import psnr


@dataclass(frozen=True)
class SearchSpace:
    """Closed per-dimension bounds and velocity caps for the swarm.

    Defaults to the denoiser's parameter box: iterations in [3, 6]
    (integer-valued when decoded), threshold in [300, 1000], decay in
    [0.6, 0.95]. ``v_max`` defaults to 25% of each dimension's range.
    """

    lower: np.ndarray = field(default_factory=lambda: np.array([3.0, 300.0, 0.6]))
    upper: np.ndarray = field(default_factory=lambda: np.array([6.0, 1000.0, 0.95]))
    v_max: Optional[np.ndarray] = None

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        if lower.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper bounds must be 1-D arrays of equal length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        v_max = self.v_max
        v_max = 0.25 * (upper - lower) if v_max is None else np.asarray(v_max, dtype=np.float64)
        if v_max.shape != lower.shape or not np.all(v_max > 0):
            raise ValueError("v_max must be positive in every dimension")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "v_max", v_max)

    @property
    def dims(self) -> int:
        return self.lower.shape[0]


@dataclass(frozen=True)
class SwarmConfig:
    """Swarm size, iteration budget, learning factors, inertia range, seed.

    ``fitness_target`` optionally stops the search early once the global
    best reaches it; by default the swarm runs to ``max_iterations``.
    """

    swarm_size: int = 8
    max_iterations: int = 15
    psi_p: float = 2.0
    psi_g: float = 2.0
    inertia_min: float = 0.4
    inertia_max: float = 0.9
    seed: int = 0
    fitness_target: Optional[float] = None

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValueError(f"swarm_size must be >= 2, got {self.swarm_size}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        for name, psi in (("psi_p", self.psi_p), ("psi_g", self.psi_g)):
            if not 0.0 <= psi <= 4.0:
                raise ValueError(f"{name} must lie in [0, 4], got {psi}")
        if not 0.0 < self.inertia_min <= self.inertia_max <= 1.0:
            raise ValueError(
                f"inertia range must satisfy 0 < min <= max <= 1, "
                f"got [{self.inertia_min}, {self.inertia_max}]"
            )


@dataclass(frozen=True)
class OptimizationResult:
    """Best position/fitness found plus the per-iteration global-best trace.

    ``history[0]`` is the global best after initialization; one entry
    follows per completed iteration. The sequence is non-decreasing.
    """

    best_position: np.ndarray
    best_fitness: float
    history: list[float]


def velocity_update(velocity, position, pbest, gbest, h, r_p, r_g, psi_p, psi_g, v_max):
    """One velocity step: inertia plus cognitive and social attraction.

    v' = h*v + psi_p*r_p*(pbest - x) + psi_g*r_g*(gbest - x), then each
    component is clamped to [-v_max, v_max]. ``r_p``/``r_g`` may be
    scalars or per-dimension arrays in [0, 1].
    """
    velocity = np.asarray(velocity, dtype=np.float64)
    position = np.asarray(position, dtype=np.float64)
    v = (
        h * velocity
        + psi_p * np.asarray(r_p) * (np.asarray(pbest, dtype=np.float64) - position)
        + psi_g * np.asarray(r_g) * (np.asarray(gbest, dtype=np.float64) - position)
    )
    return np.clip(v, -np.asarray(v_max), np.asarray(v_max))


def position_update(position, velocity, space: SearchSpace):
    """One position step: x' = x + v', clamped into the search box."""
    x = np.asarray(position, dtype=np.float64) + np.asarray(velocity, dtype=np.float64)
    return np.clip(x, space.lower, space.upper)


def optimize(
    space: SearchSpace,
    cfg: SwarmConfig,
    fitness: Callable[[np.ndarray], float],
) -> OptimizationResult:
    """Maximize a fitness function over a bounded box with a particle swarm.

    Positions are initialized uniformly in the box and velocities to zero;
    each particle's personal best and the swarm's global best then improve
    monotonically (strict-improvement replacement, ties keeping the
    incumbent and, across particles, the lowest index). The fitness must
    return a finite real for every in-bounds position; a non-finite value
    aborts with a diagnostic naming the offending position. Positions
    unchanged since their last evaluation are not re-evaluated.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(cfg.seed)))
    n, d = cfg.swarm_size, space.dims

    positions = rng.uniform(space.lower, space.upper, size=(n, d))
    velocities = np.zeros((n, d))
    fits = np.array([_checked_fitness(fitness, positions[p]) for p in range(n)])
    last_eval_pos = positions.copy()

    pbest_pos = positions.copy()
    pbest_fit = fits.copy()
    g = int(np.argmax(pbest_fit))
    gbest_pos = pbest_pos[g].copy()
    gbest_fit = float(pbest_fit[g])
    history = [gbest_fit]

    for _ in range(cfg.max_iterations):
        if cfg.fitness_target is not None and gbest_fit >= cfg.fitness_target:
            break
        h = rng.uniform(cfg.inertia_min, cfg.inertia_max)
        r_p = rng.uniform(size=(n, d))
        r_g = rng.uniform(size=(n, d))
        for p in range(n):
            velocities[p] = velocity_update(
                velocities[p], positions[p], pbest_pos[p], gbest_pos,
                h, r_p[p], r_g[p], cfg.psi_p, cfg.psi_g, space.v_max,
            )
            positions[p] = position_update(positions[p], velocities[p], space)
            if not np.array_equal(positions[p], last_eval_pos[p]):
                fits[p] = _checked_fitness(fitness, positions[p])
                last_eval_pos[p] = positions[p]
            if fits[p] > pbest_fit[p]:
                pbest_fit[p] = fits[p]
                pbest_pos[p] = positions[p].copy()
        g = int(np.argmax(pbest_fit))
        if pbest_fit[g] > gbest_fit:
            gbest_fit = float(pbest_fit[g])
            gbest_pos = pbest_pos[g].copy()
        history.append(gbest_fit)

    return OptimizationResult(gbest_pos, gbest_fit, history)


def _checked_fitness(fitness, position) -> float:
    value = float(fitness(position))
    if not math.isfinite(value):
        raise ValueError(
            f"fitness returned non-finite value {value!r} at position {position.tolist()}"
        )
    return value


def decode_params(position, space: SearchSpace) -> FilterParams:
    """Map a continuous swarm position to denoiser parameters.

    The first dimension is rounded half-up to an integer iteration count
    and clamped to the box; threshold and decay pass through unchanged.
    """
    x = np.asarray(position, dtype=np.float64)
    lo = int(math.ceil(space.lower[0]))
    hi = int(math.floor(space.upper[0]))
    iterations = int(min(max(math.floor(x[0] + 0.5), lo), hi))
    return FilterParams(iterations=iterations, threshold=float(x[1]), decay=float(x[2]))


def _identical_fitness_cap(shape) -> float:
    # Strictly above any finite PSNR of same-shape 8-bit images: the best
    # non-identical pair differs in one pixel by 1, giving exactly
    # 10*log10(255^2 * M * N).
    h, w = shape
    return 10.0 * math.log10(255.0**2 * h * w) + 1.0


def tune(
    noisy,
    reference,
    space: Optional[SearchSpace] = None,
    cfg: Optional[SwarmConfig] = None,
) -> tuple[FilterParams, OptimizationResult]:
    """Search denoiser parameters maximizing PSNR against a clean reference.

    Supervised by construction: the fitness of a position is the PSNR of
    ``denoise(noisy, decode_params(position))`` against ``reference``, so
    the uncorrupted original is required. An identical restoration (the
    PSNR sentinel) is scored as a finite cap ranked above every attainable
    finite value. Fitness values are cached keyed by the decoded
    parameters, which is sound because decoding and denoising are
    deterministic.

    Returns the decoded best parameters and the optimization trace.
    """
    noisy = check_image(noisy)
    reference = check_image(reference)
    if noisy.shape != reference.shape:
        raise ValueError(f"image shapes differ: {noisy.shape} vs {reference.shape}")
    space = SearchSpace() if space is None else space
    if space.dims != 3:
        raise ValueError(f"parameter tuning needs a 3-D search space, got {space.dims} dims")
    cfg = SwarmConfig() if cfg is None else cfg
    cap = _identical_fitness_cap(noisy.shape)
    cache: dict[tuple, float] = {}

    def fitness(position) -> float:
        params = decode_params(position, space)
        key = (params.iterations, params.threshold, params.decay)
        if key not in cache:
            restored = denoise(noisy, params).restored
            value = psnr(reference, restored)
            cache[key] = cap if math.isinf(value) else value
        return cache[key]

    result = optimize(space, cfg, fitness)
    return decode_params(result.best_position, space), result


class SwarmTunedDenoiser(TransformerMixin, BaseEstimator):
    """Denoiser whose parameters are tuned by a particle swarm in ``fit``.

    ``fit(X, y)`` searches (iterations, threshold, decay) maximizing the
    PSNR of the denoised ``X`` against the clean reference ``y``;
    ``transform`` then denoises with the tuned parameters.

    Parameters
    ----------
    swarm_size : int, default=8
        Number of particles.
    max_iterations : int, default=15
        Swarm iteration budget.
    seed : int, default=0
        Seed for the swarm's random draws.
    space : SearchSpace, optional
        Parameter box; defaults to iterations [3, 6], threshold
        [300, 1000], decay [0.6, 0.95].

    Attributes
    ----------
    best_params_ : FilterParams
        Tuned denoiser parameters.
    optimization_result_ : OptimizationResult
        Best position, fitness, and per-iteration global-best trace.
    """

    def __init__(
        self,
        swarm_size: int = 8,
        max_iterations: int = 15,
        seed: int = 0,
        space: Optional[SearchSpace] = None,
    ):
        self.swarm_size = swarm_size
        self.max_iterations = max_iterations
        self.seed = seed
        self.space = space

    def fit(self, X, y):
        """Tune parameters on the noisy image ``X`` and clean reference ``y``."""
        cfg = SwarmConfig(
            swarm_size=self.swarm_size,
            max_iterations=self.max_iterations,
            seed=self.seed,
        )
        self.best_params_, self.optimization_result_ = tune(X, y, space=self.space, cfg=cfg)
        return self

    def transform(self, X) -> np.ndarray:
        """Denoise an image with the tuned parameters."""
        if not hasattr(self, "best_params_"):
            raise RuntimeError("SwarmTunedDenoiser must be fitted before transform")
        return denoise(X, self.best_params_).restored
