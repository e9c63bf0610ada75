"""Restoration and detection quality metrics.

PSNR in dB for image fidelity; miss/false counts and sensitivity/
specificity percentages for detector quality against a ground-truth
corruption mask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .denoising import FilterParams, IterationStats
from .image import check_image, check_mask

#: Sentinel PSNR for identical images (zero MSE). Compares above every
#: finite value; rendered as the string "inf" in JSON reports.
PSNR_IDENTICAL = math.inf


def psnr(reference, test) -> float:
    """Peak signal-to-noise ratio, 10*log10(255^2 / MSE), in dB.

    Returns :data:`PSNR_IDENTICAL` (``math.inf``) when the images are
    identical. Raises ValueError on mismatched dimensions.
    """
    a = check_image(reference)
    b = check_image(test)
    if a.shape != b.shape:
        raise ValueError(f"image shapes differ: {a.shape} vs {b.shape}")
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return PSNR_IDENTICAL
    return 10.0 * math.log10(255.0**2 / mse)


def miss_false(truth, detected) -> tuple[int, int]:
    """Count undetected noisy pixels and wrongly flagged clean pixels.

    Returns (miss, false): miss = |truth & ~detected|,
    false = |~truth & detected|.
    """
    t = check_mask(truth)
    d = check_mask(detected, shape=t.shape)
    miss = int(np.count_nonzero(t & ~d))
    false = int(np.count_nonzero(~t & d))
    return miss, false


def sensitivity_specificity(truth, detected) -> tuple[float, float]:
    """Detector sensitivity and specificity as percentages.

    sensitivity = 100*TP/(TP+FN), specificity = 100*TN/(TN+FP). A measure
    with an empty denominator (no positives, or no negatives) is vacuously
    100; callers that need to surface that case can check the mask counts
    (see :func:`build_report`).
    """
    t = check_mask(truth)
    d = check_mask(detected, shape=t.shape)
    tp = int(np.count_nonzero(t & d))
    fn = int(np.count_nonzero(t & ~d))
    tn = int(np.count_nonzero(~t & ~d))
    fp = int(np.count_nonzero(~t & d))
    sensitivity = 100.0 * tp / (tp + fn) if (tp + fn) > 0 else 100.0
    specificity = 100.0 * tn / (tn + fp) if (tn + fp) > 0 else 100.0
    return sensitivity, specificity


@dataclass(frozen=True)
class EvaluationReport:
    """Per-run quality record: fidelity, detector counts, parameters used."""

    psnr_noisy_db: float
    psnr_restored_db: float
    miss: int
    false_positives: int
    sensitivity_pct: float
    specificity_pct: float
    sensitivity_vacuous: bool = False
    specificity_vacuous: bool = False
    params: Optional[FilterParams] = None
    iterations: Optional[list[IterationStats]] = None

    def to_dict(self) -> dict:
        """JSON-ready dict with stable key names.

        PSNR of identical images serializes as the string "inf";
        percentages are rounded to 2 decimal places.
        """
        return {
            "psnr_noisy_db": _json_db(self.psnr_noisy_db),
            "psnr_restored_db": _json_db(self.psnr_restored_db),
            "miss": self.miss,
            "false": self.false_positives,
            "sensitivity_pct": round(self.sensitivity_pct, 2),
            "specificity_pct": round(self.specificity_pct, 2),
            "sensitivity_vacuous": self.sensitivity_vacuous,
            "specificity_vacuous": self.specificity_vacuous,
            "params": params_to_dict(self.params) if self.params is not None else None,
            "iterations": [stats_to_dict(s) for s in self.iterations]
            if self.iterations is not None
            else None,
        }


def _json_db(value: float):
    return "inf" if math.isinf(value) else value


def params_to_dict(params: FilterParams) -> dict:
    return {
        "iterations": int(params.iterations),
        "threshold": float(params.threshold),
        "decay": float(params.decay),
    }


def stats_to_dict(s: IterationStats) -> dict:
    return {
        "iteration": s.iteration,
        "threshold": s.threshold,
        "flagged": s.flagged,
        "changed": s.changed,
    }


def build_report(
    clean,
    noisy,
    restored,
    truth,
    detected,
    params: Optional[FilterParams] = None,
    iterations: Optional[list[IterationStats]] = None,
) -> EvaluationReport:
    """Assemble the full evaluation record for one denoising run.

    ``detected`` should be the map of pixels the denoiser actually acted
    on (pixels replaced with a different value in some pass).
    """
    t = check_mask(truth)
    d = check_mask(detected, shape=t.shape)
    miss, false = miss_false(t, d)
    sen, spc = sensitivity_specificity(t, d)
    positives = int(np.count_nonzero(t))
    negatives = t.size - positives
    return EvaluationReport(
        psnr_noisy_db=psnr(clean, noisy),
        psnr_restored_db=psnr(clean, restored),
        miss=miss,
        false_positives=false,
        sensitivity_pct=sen,
        specificity_pct=spc,
        sensitivity_vacuous=positives == 0,
        specificity_vacuous=negatives == 0,
        params=params,
        iterations=iterations,
    )
