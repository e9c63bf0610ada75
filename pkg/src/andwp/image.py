"""Grayscale image validation, replicate padding, and 5x5 window extraction.

All pipeline stages exchange images as 2-D uint8 arrays of shape
(height, width). Boolean masks of the same shape mark noisy pixels.
"""

from __future__ import annotations

import numpy as np

# 5x5 windows reach 2 pixels past the center in every direction.
WINDOW_MARGIN = 2


def check_image(img) -> np.ndarray:
    """Validate and normalize an image to a contiguous 2-D uint8 array.

    Accepts uint8 arrays as-is and other integer arrays whose values fit
    in [0, 255]. Anything else raises ValueError/TypeError.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale image, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"image dimensions must be positive, got {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise TypeError(f"expected integer pixel values, got dtype {arr.dtype}")
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return np.ascontiguousarray(arr)


def check_mask(mask, shape=None) -> np.ndarray:
    """Validate a boolean mask, optionally against an expected shape."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D mask, got shape {arr.shape}")
    if arr.dtype != bool:
        raise TypeError(f"expected a boolean mask, got dtype {arr.dtype}")
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"mask shape {arr.shape} does not match image shape {tuple(shape)}")
    return np.ascontiguousarray(arr)


def check_window(window) -> np.ndarray:
    """Validate a 5x5 intensity window (int64, values in [0, 255])."""
    arr = np.asarray(window)
    if arr.shape != (5, 5):
        raise ValueError(f"expected a 5x5 window, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"expected integer window values, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() > 255:
        raise ValueError("window values must lie in [0, 255]")
    return arr.astype(np.int64)


def pad_replicate(img: np.ndarray, margin: int = WINDOW_MARGIN) -> np.ndarray:
    """Pad an image by clamping coordinates to the border (replicate/edge)."""
    return np.pad(img, margin, mode="edge")


def window_at(img: np.ndarray, row: int, col: int) -> np.ndarray:
    """Extract the 5x5 neighborhood centered at (row, col) as a copy.

    Out-of-bounds offsets are filled by replicate padding, so the window is
    well defined for every pixel of any image, 1x1 upward. The offset
    (s, t) in [-2, 2]^2 lives at ``window[2 + s, 2 + t]``; the center is
    ``window[2, 2]``. Raises IndexError for out-of-range centers.
    """
    img = check_image(img)
    h, w = img.shape
    if not (0 <= row < h and 0 <= col < w):
        raise IndexError(f"window center ({row}, {col}) outside image of shape {img.shape}")
    rows = np.clip(np.arange(row - 2, row + 3), 0, h - 1)
    cols = np.clip(np.arange(col - 2, col + 3), 0, w - 1)
    return img[np.ix_(rows, cols)].copy()
