"""Impulse noise injection with ground-truth masks.

Random-valued impulses replace a pixel with a uniform draw from
{0, ..., 255}; fixed-valued (salt and pepper) impulses replace it with 0
or 255, each with equal probability. Every pixel is hit independently
with probability p.

Reproducibility: all draws come from numpy's counter-based Philox
generator, seeded through ``numpy.random.SeedSequence``, so identical
(seed, spec, image) triples reproduce identical outputs on any platform.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .image import check_image


class NoiseKind(enum.Enum):
    RANDOM_VALUED = "random"
    FIXED_VALUED = "fixed"


@dataclass(frozen=True)
class NoiseSpec:
    """Corruption recipe: impulse kind, per-pixel probability, and seed."""

    kind: NoiseKind = NoiseKind.RANDOM_VALUED
    probability: float = 0.4
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.kind, NoiseKind):
            raise TypeError(f"kind must be a NoiseKind, got {self.kind!r}")
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {self.probability}")


def corrupt(clean: np.ndarray, spec: NoiseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Corrupt an image with impulses, returning (noisy, truth mask).

    The mask flags exactly the pixels whose stored value changed: a random
    replacement that happens to reproduce the original is undetectable in
    principle and is not counted as noise.

    Draw order is pinned for reproducibility: the selection field first,
    then the replacement field, both full-image.
    """
    clean = check_image(clean)
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(spec.seed)))
    selected = rng.random(clean.shape) < spec.probability
    if spec.kind is NoiseKind.RANDOM_VALUED:
        replacement = rng.integers(0, 256, size=clean.shape, dtype=np.uint8)
    else:
        replacement = rng.integers(0, 2, size=clean.shape, dtype=np.uint8) * np.uint8(255)
    noisy = np.where(selected, replacement, clean)
    truth = noisy != clean
    return noisy, truth
