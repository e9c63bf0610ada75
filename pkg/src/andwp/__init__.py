"""Impulse-noise removal for 8-bit grayscale images.

Detection scores each pixel by weighted absolute differences along four
directional neighbor sets in a 5x5 window; restoration replaces flagged
pixels with the mean of the most uniform direction; a particle swarm
tunes the filter's (iterations, threshold, decay) against a clean
reference by maximizing PSNR.
"""

from .denoising import (
    DenoiseResult,
    FilterParams,
    IterationStats,
    MinVarianceDenoiser,
    best_direction,
    denoise,
    direction_stddev,
    restore_pixel,
)
from .detection import (
    DetectionParams,
    ImpulseDetector,
    classify_pixel,
    detect,
    direction_index,
    min_direction_index,
)
from .metrics import (
    PSNR_IDENTICAL,
    EvaluationReport,
    build_report,
    miss_false,
    psnr,
    sensitivity_specificity,
)
from .noise import NoiseKind, NoiseSpec, corrupt
from .pgm import PgmError, load_pgm, read_pgm, save_pgm, write_pgm
from .pso import (
    OptimizationResult,
    SearchSpace,
    SwarmConfig,
    SwarmTunedDenoiser,
    optimize,
    tune,
)

__version__ = "0.1.0"

__all__ = [
    "DenoiseResult",
    "DetectionParams",
    "EvaluationReport",
    "FilterParams",
    "ImpulseDetector",
    "IterationStats",
    "MinVarianceDenoiser",
    "NoiseKind",
    "NoiseSpec",
    "OptimizationResult",
    "PSNR_IDENTICAL",
    "PgmError",
    "SearchSpace",
    "SwarmConfig",
    "SwarmTunedDenoiser",
    "best_direction",
    "build_report",
    "classify_pixel",
    "corrupt",
    "denoise",
    "detect",
    "direction_index",
    "direction_stddev",
    "load_pgm",
    "min_direction_index",
    "miss_false",
    "optimize",
    "psnr",
    "read_pgm",
    "restore_pixel",
    "save_pgm",
    "sensitivity_specificity",
    "tune",
    "write_pgm",
]
