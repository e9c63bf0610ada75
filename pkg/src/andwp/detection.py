"""Impulse detection over 5x5 windows.

A pixel is declared noisy when it sits outside the open intensity range
of its 24 neighbors (range rule), or when the minimum of its four
weighted directional difference sums exceeds a threshold T. Both tests
use exact arithmetic: differences are integers and the weights are
halves, so every sum is exactly representable in float64 and comparisons
against T are reproducible across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .directions import CENTER_EXCLUDED, NEIGHBOR_OFFSETS, WEIGHTS_ARRAY, weight_of
from .image import check_image, check_window, pad_replicate


@dataclass(frozen=True)
class DetectionParams:
    """Detection threshold in weighted-absolute-intensity units."""

    threshold: float = 510.0

    def __post_init__(self):
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")


def direction_index(window, k: int) -> float:
    """Weighted sum of absolute center differences along direction k (1..4).

    Sums ``weight(s, t) * |window(s, t) - window(0, 0)|`` over the six
    non-center offsets of the direction's path.
    """
    w = check_window(window)
    if k not in (1, 2, 3, 4):
        raise ValueError(f"direction k must be in 1..4, got {k}")
    center = w[2, 2]
    total = 0.0
    for s, t in CENTER_EXCLUDED[k - 1]:
        total += weight_of(s, t) * abs(int(w[2 + s, 2 + t]) - int(center))
    return total


def min_direction_index(window) -> float:
    """Minimum of the four direction indices: the detection statistic r."""
    return min(direction_index(window, k) for k in (1, 2, 3, 4))


def classify_pixel(window, params: DetectionParams) -> bool:
    """Classify a window's center pixel; True means noisy.

    The center is noisy when it does not lie strictly inside the
    (min, max) range of the 24 non-center values, or when r exceeds the
    threshold. Equality with either extreme counts as noisy; on constant
    regions this flags every pixel, which restoration leaves unchanged.
    """
    w = check_window(window)
    center = w[2, 2]
    neighbors = [w[2 + s, 2 + t] for (s, t) in NEIGHBOR_OFFSETS]
    if center <= min(neighbors) or center >= max(neighbors):
        return True
    return min_direction_index(w) > params.threshold


def detect(img, params: DetectionParams) -> np.ndarray:
    """Classify every pixel of an image, returning a boolean noise map.

    Equivalent to ``classify_pixel(window_at(img, i, j), params)`` at each
    pixel, with replicate padding at the borders; computed vectorized over
    a frozen snapshot of the image.
    """
    img = check_image(img)
    if not isinstance(params, DetectionParams):
        params = DetectionParams(float(params))
    h, w = img.shape
    padded = pad_replicate(img)
    padded64 = padded.astype(np.int64)
    center = padded64[2 : 2 + h, 2 : 2 + w]

    r = np.full((h, w), np.inf)
    for k in range(4):
        d = np.zeros((h, w))
        for j, (s, t) in enumerate(CENTER_EXCLUDED[k]):
            shifted = padded64[2 + s : 2 + s + h, 2 + t : 2 + t + w]
            d += WEIGHTS_ARRAY[k, j] * np.abs(shifted - center)
        np.minimum(r, d, out=r)

    wmin = np.full((h, w), 255, dtype=np.uint8)
    wmax = np.zeros((h, w), dtype=np.uint8)
    for s, t in NEIGHBOR_OFFSETS:
        shifted = padded[2 + s : 2 + s + h, 2 + t : 2 + t + w]
        np.minimum(wmin, shifted, out=wmin)
        np.maximum(wmax, shifted, out=wmax)

    extreme = (img <= wmin) | (img >= wmax)
    return extreme | (r > params.threshold)


class ImpulseDetector(BaseEstimator):
    """Per-pixel impulse classifier with a scikit-learn estimator surface.

    Parameters
    ----------
    threshold : float, default=510.0
        Detection threshold on the minimum directional difference sum.
        Lower values flag more pixels.
    """

    def __init__(self, threshold: float = 510.0):
        self.threshold = threshold

    def fit(self, X, y=None):
        """Validate parameters and the input image; detection is stateless."""
        DetectionParams(self.threshold)
        check_image(X)
        return self

    def predict(self, X) -> np.ndarray:
        """Return the boolean noise map of a 2-D uint8 image."""
        return detect(X, DetectionParams(self.threshold))
