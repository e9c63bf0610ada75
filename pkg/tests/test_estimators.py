"""Scikit-learn estimator surface: get_params/set_params/clone round trips."""

import numpy as np
from sklearn.base import clone

from andwp.detection import ImpulseDetector
from andwp.denoising import MinVarianceDenoiser
from andwp.pso import SwarmTunedDenoiser


def small_image(seed=0):
    return np.random.default_rng(seed).integers(0, 256, size=(20, 20), dtype=np.uint8)


def test_clone_preserves_params():
    for est in (
        ImpulseDetector(threshold=321.0),
        MinVarianceDenoiser(iterations=2, threshold=400.0, decay=0.7),
        SwarmTunedDenoiser(swarm_size=3, max_iterations=2, seed=5),
    ):
        copy = clone(est)
        assert copy is not est
        assert copy.get_params() == est.get_params()


def test_set_params_returns_self():
    est = MinVarianceDenoiser()
    assert est.set_params(threshold=333.0) is est
    assert est.threshold == 333.0


def test_detector_fit_returns_self():
    img = small_image()
    est = ImpulseDetector()
    assert est.fit(img) is est
    out = est.predict(img)
    assert out.dtype == bool
    assert out.shape == img.shape


def test_denoiser_fit_transform():
    img = small_image(1)
    out = MinVarianceDenoiser(iterations=1).fit_transform(img)
    assert out.dtype == np.uint8
    assert out.shape == img.shape


def test_clone_then_fit_is_independent():
    img = small_image(2)
    clean = np.full_like(img, 100)
    est = SwarmTunedDenoiser(swarm_size=3, max_iterations=2, seed=1)
    est.fit(img, clean)
    fresh = clone(est)
    assert hasattr(est, "best_params_")
    assert not hasattr(fresh, "best_params_")


def test_validation_errors_surface_at_fit_time():
    # constructors must accept any value; invalid settings fail in fit
    est = MinVarianceDenoiser(iterations=0)
    assert est.get_params()["iterations"] == 0
    img = small_image(3)
    try:
        est.fit(img)
    except ValueError:
        pass
    else:
        raise AssertionError("expected invalid iterations to be rejected at fit")
