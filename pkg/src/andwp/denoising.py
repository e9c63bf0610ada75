"""Minimum-variance directional restoration and the iterated denoise loop.

Each detected pixel is replaced by the closed-form minimizer of the
variance of the direction whose six pixels have the smallest spread:
the (half-up rounded) mean of those six values. The loop alternates
detection and restoration for a fixed number of iterations, multiplying
the detection threshold by a decay rate after each pass.

The restoration sweep is sequential by contract: pixels are visited in
raster order and each restoration reads the live working image, so
repairs earlier in the scan feed later ones within the same iteration.
The sweep is JIT-compiled (numba) for throughput; the compiled kernel
and its pure-Python form (``_restore_sweep.py_func``) are the same
source and are differential-tested against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit
from sklearn.base import BaseEstimator, TransformerMixin

from .detection import DetectionParams, detect
from .directions import CENTER_EXCLUDED, OFFSETS_ARRAY
from .image import check_image, check_window


@dataclass(frozen=True)
class FilterParams:
    """Denoise loop parameters: pass count, initial threshold, decay rate."""

    iterations: int = 4
    threshold: float = 510.0
    decay: float = 0.8

    def __post_init__(self):
        if not (isinstance(self.iterations, (int, np.integer)) and self.iterations >= 1):
            raise ValueError(f"iterations must be an integer >= 1, got {self.iterations}")
        if not self.threshold > 0:
            raise ValueError(f"threshold must be > 0, got {self.threshold}")
        if not 0 < self.decay <= 1:
            raise ValueError(f"decay must lie in (0, 1], got {self.decay}")


@dataclass(frozen=True)
class IterationStats:
    """Observability record for one detect-restore pass."""

    iteration: int
    threshold: float
    flagged: int
    changed: int


@dataclass(frozen=True)
class DenoiseResult:
    """Restored image plus per-pass detection maps and statistics.

    ``ever_flagged`` is the union of all passes' detection maps;
    ``ever_changed`` is the union of pixels whose value was actually
    altered by a restoration (the map used for detector scoring, since a
    flagged pixel restored to its own value was noise-neutral).
    """

    restored: np.ndarray
    ever_flagged: np.ndarray
    ever_changed: np.ndarray
    stats: list[IterationStats] = field(default_factory=list)


def _direction_mean_ss(window: np.ndarray, k: int) -> tuple[float, float, int]:
    """Mean, sum of squared deviations, and raw sum of direction k's six values."""
    total = 0
    vals = []
    for s, t in CENTER_EXCLUDED[k - 1]:
        v = int(window[2 + s, 2 + t])
        vals.append(v)
        total += v
    mean = total / 6.0
    ss = 0.0
    for v in vals:
        dv = v - mean
        ss += dv * dv
    return mean, ss, total


def direction_stddev(window, k: int) -> float:
    """Population standard deviation of direction k's six non-center values."""
    w = check_window(window)
    if k not in (1, 2, 3, 4):
        raise ValueError(f"direction k must be in 1..4, got {k}")
    _, ss, _ = _direction_mean_ss(w, k)
    return float(np.sqrt(ss / 6.0))


def best_direction(window) -> int:
    """Direction (1..4) whose six values have minimum spread; ties to lowest k.

    The argmin is taken over the raw sum of squared deviations, which
    orders directions identically to the standard deviation.
    """
    w = check_window(window)
    best_k = 1
    best_ss = np.inf
    for k in (1, 2, 3, 4):
        _, ss, _ = _direction_mean_ss(w, k)
        if ss < best_ss:
            best_ss = ss
            best_k = k
    return best_k


def restore_pixel(window) -> int:
    """Restoration value for a window's center pixel.

    Over the best direction's six values {a..f}, the variance of
    {a, b, c, x, d, e, f} is a quadratic in x with positive curvature,
    minimized at x = (a+b+c+d+e+f)/6; that minimizer is returned rounded
    half-up ((sum + 3) // 6 in exact integer arithmetic) and clamped to
    [0, 255].
    """
    w = check_window(window)
    k = best_direction(w)
    _, _, total = _direction_mean_ss(w, k)
    x = (total + 3) // 6
    return int(min(max(x, 0), 255))


@njit(cache=True)
def _restore_sweep(work, flags, offsets):
    """Restore all flagged pixels of ``work`` in place, in raster order.

    Reads clamp to the image border (replicate padding) and see values
    already written earlier in the same sweep. ``offsets`` is the
    (4, 6, 2) table of center-excluded direction offsets.
    """
    h, w = work.shape
    vals = np.empty(6, dtype=np.int64)
    for i in range(h):
        for j in range(w):
            if not flags[i, j]:
                continue
            best_ss = np.inf
            best_total = np.int64(0)
            for k in range(4):
                total = np.int64(0)
                for m in range(6):
                    ii = i + offsets[k, m, 0]
                    jj = j + offsets[k, m, 1]
                    if ii < 0:
                        ii = 0
                    elif ii >= h:
                        ii = h - 1
                    if jj < 0:
                        jj = 0
                    elif jj >= w:
                        jj = w - 1
                    v = np.int64(work[ii, jj])
                    vals[m] = v
                    total += v
                mean = total / 6.0
                ss = 0.0
                for m in range(6):
                    dv = vals[m] - mean
                    ss += dv * dv
                if ss < best_ss:
                    best_ss = ss
                    best_total = total
            work[i, j] = np.uint8((best_total + 3) // 6)


def denoise(img, params: FilterParams) -> DenoiseResult:
    """Run the iterated detect-restore loop on an image.

    Each pass detects on a frozen snapshot of the working image with the
    current threshold, restores the flagged pixels in raster order with
    read-through to already-restored values, then multiplies the
    threshold by the decay rate. Non-flagged pixels are never modified.
    """
    img = check_image(img)
    if not isinstance(params, FilterParams):
        raise TypeError(f"params must be FilterParams, got {type(params).__name__}")
    work = img.copy()
    ever_flagged = np.zeros(img.shape, dtype=bool)
    ever_changed = np.zeros(img.shape, dtype=bool)
    stats: list[IterationStats] = []
    threshold = float(params.threshold)
    for n in range(1, params.iterations + 1):
        flags = detect(work, DetectionParams(threshold))
        before = work.copy()
        _restore_sweep(work, flags, OFFSETS_ARRAY)
        changed = work != before
        ever_flagged |= flags
        ever_changed |= changed
        stats.append(
            IterationStats(
                iteration=n,
                threshold=threshold,
                flagged=int(flags.sum()),
                changed=int(changed.sum()),
            )
        )
        threshold *= params.decay
    return DenoiseResult(work, ever_flagged, ever_changed, stats)


class MinVarianceDenoiser(TransformerMixin, BaseEstimator):
    """Impulse-noise denoiser with a scikit-learn transformer surface.

    Parameters
    ----------
    iterations : int, default=4
        Number of detect-restore passes.
    threshold : float, default=510.0
        Initial detection threshold.
    decay : float, default=0.8
        Multiplicative threshold decay applied after each pass.
    """

    def __init__(self, iterations: int = 4, threshold: float = 510.0, decay: float = 0.8):
        self.iterations = iterations
        self.threshold = threshold
        self.decay = decay

    def _params(self) -> FilterParams:
        return FilterParams(self.iterations, self.threshold, self.decay)

    def fit(self, X, y=None):
        """Validate parameters and the input image; denoising is stateless."""
        self._params()
        check_image(X)
        return self

    def transform(self, X) -> np.ndarray:
        """Return the restored copy of a 2-D uint8 image."""
        return denoise(X, self._params()).restored
