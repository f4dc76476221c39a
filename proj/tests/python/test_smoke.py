import math
import os

import numpy as np
import pytest

import gaitlock


def test_haar_round_trip():
    rng = np.random.default_rng(3)
    image = rng.normal(size=(16, 16))
    ll, lh, hl, hh = gaitlock.haar_dwt2(image)
    energy = sum(float((b ** 2).sum()) for b in (ll, lh, hl, hh))
    assert math.isclose(energy, float((image ** 2).sum()), rel_tol=1e-9)
    assert np.allclose(gaitlock.haar_idwt2(ll, lh, hl, hh), image, atol=1e-12)

    spike = np.zeros((2, 2))
    spike[0, 0] = 4
    assert [float(b[0, 0]) for b in gaitlock.haar_dwt2(spike)] == [2.0, 2.0, 2.0, 2.0]


def test_background_models_on_a_pixel_trace():
    trace = np.array([10, 10, 10, 50, 10], dtype=np.uint8).reshape(5, 1, 1)
    ref, t = gaitlock.background(trace, "cdm", "20")
    assert int(ref[0, 0]) == 10 and t == 20
    tie = np.array([9, 5, 9, 5], dtype=np.uint8).reshape(4, 1, 1)
    ref, t = gaitlock.background(tie, "histogram")
    assert int(ref[0, 0]) == 5 and t is None


def test_walker_end_to_end():
    frames, truth = gaitlock.generate(period_frames=20, stride_px=30, n_frames=140, noise_rate=0.005, seed=4)
    assert frames.shape == (140, 240, 352) and frames.dtype == np.uint8
    bg, _ = gaitlock.background(frames, "median")
    masks = gaitlock.segment_sequence(frames, bg)
    assert masks.shape == frames.shape
    widths = gaitlock.width_signal(masks)
    period = gaitlock.estimate_period(widths)
    assert abs(period - truth["period_frames"]) <= 1
    cycles = gaitlock.partition_cycles(widths, period)
    assert cycles and all(end - start + 1 == period for start, end, _ in cycles)
    info = gaitlock.analyze_silhouettes(masks)
    assert len(info["features"]) == len(gaitlock.feature_names()) == 14
    assert abs(info["features"][0] - 100.0) <= 2.0


def test_svm_xor_and_persistence(tmp_path):
    x = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
    y = ["a", "b", "b", "a"]
    rbf = gaitlock.train(x, y, kernel="rbf", c=10, sigma=0.5)
    assert rbf.predict_many(x) == y
    linear = gaitlock.train(x, y, kernel="linear", c=10)
    assert sum(p == t for p, t in zip(linear.predict_many(x), y)) <= 3
    for report in rbf.kkt(x, y):
        assert report["max_violation"] <= 1e-3

    path = tmp_path / "model.txt"
    rbf.save(path)
    back = gaitlock.SvmModel.load(path)
    assert back.to_text() == rbf.to_text()
    assert back.classes == ["a", "b"]
    assert gaitlock.kernel_eval([1, 2], [3, 4]) == 11.0


def test_metrics_and_errors(tmp_path):
    m = gaitlock.evaluate(["a", "a", "b"], ["a", "b", "b"])
    assert m["confusion"] == [[1, 1], [0, 1]]
    assert math.isclose(m["f_measure"], 0.75)

    with pytest.raises(gaitlock.Error) as info:
        gaitlock.evaluate(["a"], ["a", "b"])
    assert info.value.code == "LengthMismatch"

    with pytest.raises(gaitlock.Error) as info:
        gaitlock.run_pipeline(tmp_path / "missing", tmp_path / "work")
    assert info.value.stage == "ingestion"


def test_constant_signal_has_no_period():
    with pytest.raises(gaitlock.Error) as info:
        gaitlock.estimate_period([5.0] * 40)
    assert info.value.code == "NoPeriodicity"
