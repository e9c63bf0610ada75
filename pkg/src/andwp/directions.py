"""Direction sets and weights over the 5x5 window.

Four seven-pixel paths run through the window center along the main
diagonal, the horizontal, the anti-diagonal, and the vertical; each is
extended by two bent end pixels. Offsets are (row, col) pairs relative to
the center. Weights fall off with distance: 2 for the inner ring
(|s|, |t| <= 1), 0.5 for the bent end pixels, 1 for the straight far
pixels.
"""

from __future__ import annotations

import numpy as np

# The four directions, each as seven (s, t) offsets including the center.
DIRECTIONS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((-1, -2), (-2, -2), (-1, -1), (0, 0), (1, 1), (2, 2), (1, 2)),
    ((1, -2), (0, -2), (0, -1), (0, 0), (0, 1), (0, 2), (-1, 2)),
    ((2, -1), (2, -2), (1, -1), (0, 0), (-1, 1), (-2, 2), (-2, 1)),
    ((-2, -1), (-2, 0), (-1, 0), (0, 0), (1, 0), (2, 0), (2, 1)),
)

# Same paths with the center removed: the six offsets actually weighted.
CENTER_EXCLUDED: tuple[tuple[tuple[int, int], ...], ...] = tuple(
    tuple(o for o in direction if o != (0, 0)) for direction in DIRECTIONS
)

# Bent end pixels of the four paths; they carry the smallest weight.
END_OFFSETS = frozenset(
    [(-1, -2), (1, -2), (2, -1), (-2, -1), (1, 2), (-1, 2), (-2, 1), (2, 1)]
)

INNER_WEIGHT = 2.0
FAR_WEIGHT = 1.0
END_WEIGHT = 0.5


def weight_of(s: int, t: int) -> float:
    """Weight of the offset (s, t) in a direction sum."""
    if abs(s) <= 1 and abs(t) <= 1:
        return INNER_WEIGHT
    if (s, t) in END_OFFSETS:
        return END_WEIGHT
    return FAR_WEIGHT


# Array forms for vectorized code and the compiled restoration kernel.
OFFSETS_ARRAY = np.array(CENTER_EXCLUDED, dtype=np.int64)  # (4, 6, 2)
WEIGHTS_ARRAY = np.array(
    [[weight_of(s, t) for (s, t) in direction] for direction in CENTER_EXCLUDED],
    dtype=np.float64,
)  # (4, 6)

# All 24 non-center offsets of the 5x5 window (for the range check).
NEIGHBOR_OFFSETS = tuple(
    (s, t) for s in range(-2, 3) for t in range(-2, 3) if (s, t) != (0, 0)
)
