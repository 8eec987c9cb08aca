import logging
import math

import numpy as np
import pytest

from fractraffic.lib import dfa, synth
from fractraffic.lib.error import ScaleError
from fractraffic.lib.series import Profile, profile
from fractraffic.lib.util import log_spaced_integers


def brute_force_fluctuation(y, s):
    """F(s) with explicit loops and explicit normal equations."""
    n = len(y)
    count = n // s
    starts = [(v - 1) * s for v in range(1, count + 1)]
    starts += [n - (v - count) * s for v in range(count + 1, 2 * count + 1)]
    total = 0.0
    for start in starts:
        seg = [y[start + i] for i in range(s)]
        xs = [float(i + 1) for i in range(s)]
        sx = sum(xs)
        sy = sum(seg)
        sxx = sum(x * x for x in xs)
        sxy = sum(x * v for x, v in zip(xs, seg))
        slope = (s * sxy - sx * sy) / (s * sxx - sx * sx)
        intercept = (sy - slope * sx) / s
        total += sum((v - (slope * x + intercept)) ** 2 for x, v in zip(xs, seg)) / s
    return math.sqrt(total / (2 * count))


def test_segment_enumeration_n10_s4():
    grid = dfa.segment_profile(Profile(np.zeros(10)), 4, strict=False)
    assert grid.count == 2
    assert grid.ranges() == [(1, 4), (5, 8), (7, 10), (3, 6)]


def test_segment_enumeration_n10_s3():
    grid = dfa.segment_profile(Profile(np.zeros(10)), 3, strict=False)
    assert len(grid) == 6
    forward, backward = grid.ranges()[:3], grid.ranges()[3:]
    assert forward == [(1, 3), (4, 6), (7, 9)]
    assert backward == [(8, 10), (5, 7), (2, 4)]
    assert all(last != 10 for _, last in forward)
    assert all(first != 1 for first, _ in backward)


def test_exact_multiple_duplicates_coverage():
    grid = dfa.segment_profile(Profile(np.zeros(8)), 4, strict=False)
    assert len(grid) == 4
    assert grid.ranges()[:2] == grid.ranges()[2:][::-1]


def test_scale_limits():
    prof = Profile(np.zeros(100))
    with pytest.raises(ScaleError, match="scale below minimum"):
        dfa.segment_profile(prof, 3)
    with pytest.raises(ScaleError, match="scale too large"):
        dfa.segment_profile(prof, 26)
    assert len(dfa.segment_profile(prof, 25)) == 8


def test_segment_fluctuation_examples():
    linear = Profile([1.0, 2.0, 3.0, 4.0])
    grid = dfa.segment_profile(linear, 4, strict=False)
    assert dfa.segment_fluctuation(linear, grid, 1) == pytest.approx(0.0, abs=1e-15)

    constant = Profile([5.0] * 4)
    assert dfa.segment_fluctuation(constant, grid, 2) == pytest.approx(0.0, abs=1e-15)

    bump = Profile([0.0, 1.0, 0.0])
    grid = dfa.segment_profile(bump, 3, strict=False)
    assert dfa.segment_fluctuation(bump, grid, 1) == pytest.approx(2 / 9, abs=1e-12)


def test_matches_brute_force_on_seeded_series():
    for seed in range(20):
        n = 64 + 10 * seed
        if seed % 2:
            x = synth.gen_fgn(synth.GeneratorSpec(0.3 + 0.02 * seed, n, seed))
        else:
            x = synth.gen_white(synth.GeneratorSpec(0.5, n, seed, "white"))
        prof = profile(x)
        curve = dfa.fluctuation_function(prof, [4, 8, 16])
        for s, f in zip(curve.scales, curve.fluctuations):
            expected = brute_force_fluctuation(prof.values.tolist(), int(s))
            assert abs(f - expected) <= 1e-9


def test_linear_profile_gives_zero_fluctuation():
    # a constant-increment series has a linear profile
    prof = Profile(np.arange(256, dtype=float) * 0.3)
    curve = dfa.fluctuation_function(prof, [4, 8, 16, 32])
    assert np.all(np.abs(curve.fluctuations) < 1e-10)


def test_empty_scale_list():
    with pytest.raises(ScaleError):
        dfa.fluctuation_function(Profile(np.zeros(64)), [])


def test_affine_invariance():
    x = synth.gen_fgn(synth.GeneratorSpec(0.7, 2048, 3)).values
    scales = [4, 8, 16, 32, 64, 128]
    base = dfa.fluctuation_function(profile(x), scales).fluctuations
    shifted = dfa.fluctuation_function(profile(x + 1000.0), scales).fluctuations
    scaled = dfa.fluctuation_function(profile(x * 2.5), scales).fluctuations
    np.testing.assert_allclose(shifted, base, rtol=1e-9)
    np.testing.assert_allclose(scaled, base * 2.5, rtol=1e-9)


def test_fit_alpha_exact_power_laws():
    scales = np.array([4, 8, 16, 32, 64, 128])
    alpha, _ = dfa.fit_alpha(dfa.FluctuationCurve(scales, scales.astype(float)))
    assert alpha == pytest.approx(1.0, abs=1e-9)
    alpha, _ = dfa.fit_alpha(dfa.FluctuationCurve(scales, np.sqrt(scales)))
    assert alpha == pytest.approx(0.5, abs=1e-9)


def test_fit_alpha_needs_five_points():
    scales = np.array([4, 8, 16, 32, 64, 128])
    curve = dfa.FluctuationCurve(scales, scales.astype(float))
    with pytest.raises(ScaleError, match="scale range too narrow"):
        dfa.fit_alpha(curve, (8, 64))


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (0.3, dfa.ProcessType.ANTI_CORRELATED),
        (0.5, dfa.ProcessType.WHITE_NOISE),
        (0.515, dfa.ProcessType.WHITE_NOISE),
        (0.75, dfa.ProcessType.LONG_RANGE_CORRELATED),
        (1.0, dfa.ProcessType.ONE_OVER_F),
        (1.2, dfa.ProcessType.FBM),
    ],
)
def test_classify_alpha(alpha, expected):
    assert dfa.classify_alpha(alpha) is expected


def test_two_regime_crossover_recovered():
    scales = log_spaced_integers(4, 4096, 30)
    flucts = np.where(scales <= 64, scales**0.65, 64**0.65 * (scales / 64.0))
    result = dfa.detect_crossovers(dfa.FluctuationCurve(scales, flucts))

    assert len(result.regimes) == 2
    assert result.regimes[0].alpha == pytest.approx(0.65, abs=0.03)
    assert result.regimes[1].alpha == pytest.approx(1.0, abs=0.03)
    step = math.log(scales[1] / scales[0])
    assert abs(math.log(result.crossovers[0] / 64.0)) <= step
    assert result.regimes[0].scale_min == 4
    assert result.regimes[-1].scale_max == 4096
    assert result.classifications[1] is dfa.ProcessType.ONE_OVER_F


def test_pure_power_law_has_no_crossover():
    scales = log_spaced_integers(4, 4096, 20)
    result = dfa.detect_crossovers(dfa.FluctuationCurve(scales, scales**0.8))
    assert len(result.regimes) == 1
    assert result.crossovers == []
    assert result.global_alpha == pytest.approx(0.8, abs=1e-9)


@pytest.mark.parametrize("kind, hurst", [("white", 0.5), ("fgn", 0.5), ("fgn", 0.7)])
def test_monofractal_noise_keeps_one_regime(kind, hurst):
    make = synth.gen_white if kind == "white" else synth.gen_fgn
    for seed in range(5):
        x = make(synth.GeneratorSpec(hurst, 2**14, seed, kind))
        _, result = dfa.dfa(x)
        assert len(result.regimes) == 1, seed
        assert result.crossovers == []


def test_too_few_points_fall_back_to_one_regime(caplog):
    scales = log_spaced_integers(4, 512, 10)
    curve = dfa.FluctuationCurve(scales, scales**0.7)
    with caplog.at_level(logging.WARNING, logger="fractraffic.lib.dfa"):
        result = dfa.detect_crossovers(curve, max_regimes=3)
    assert len(result.regimes) == 1
    assert "support at most 1 regime" in caplog.text


def test_default_scales():
    scales = dfa.default_scales(2**16)
    assert scales[0] == 4
    assert scales[-1] == 2**14
    assert 15 <= len(scales) <= 20
    assert np.all(np.diff(scales) > 0)


@pytest.mark.parametrize("hurst", [0.2, 0.5, 0.8])
def test_alpha_tracks_hurst_on_fgn(hurst):
    alphas = []
    for seed in range(10):
        x = synth.gen_fgn(synth.GeneratorSpec(hurst, 2**16, seed))
        alphas.append(dfa.fit_alpha(dfa.fluctuation_function(profile(x)))[0])
    assert abs(np.mean(alphas) - hurst) <= 0.05


def test_white_noise_classification(white_16):
    alphas = []
    for seed in range(10):
        x = synth.gen_white(synth.GeneratorSpec(0.5, 2**16, seed, "white"))
        alphas.append(dfa.fit_alpha(dfa.fluctuation_function(profile(x)))[0])
    assert dfa.classify_alpha(np.mean(alphas)) is dfa.ProcessType.WHITE_NOISE

    _, result = dfa.dfa(white_16, max_regimes=1)
    assert 0.45 <= result.global_alpha <= 0.55


def test_differenced_fbm_scales_like_fgn():
    def mean_alpha(draw, seeds):
        alphas = []
        for seed in seeds:
            curve = dfa.fluctuation_function(profile(draw(seed)))
            alphas.append(dfa.fit_alpha(curve, (8, 1024))[0])
        return np.mean(alphas)

    def fbm_increments(seed):
        motion = synth.gen_fbm(synth.GeneratorSpec(0.7, 2**16, seed, "fbm"))
        return np.diff(motion.values)

    def fgn(seed):
        return synth.gen_fgn(synth.GeneratorSpec(0.7, 2**16, seed)).values

    differenced = mean_alpha(fbm_increments, range(5))
    assert abs(differenced - mean_alpha(fgn, range(5, 10))) <= 0.05


def test_motion_input_shifts_alpha_by_one():
    x = synth.gen_fbm(synth.GeneratorSpec(0.7, 2**14, 2, "fbm"))
    alpha, _ = dfa.fit_alpha(dfa.fluctuation_function(profile(x)))
    assert alpha == pytest.approx(1.7, abs=0.1)


def test_benchmark_rows_are_ordered():
    rows = dfa.dfa_benchmark(length=2**12, seeds=2)
    assert [r.name for r in rows] == [name for name, _ in dfa.BENCHMARK_PROCESSES]
    by_hurst = {r.hurst: r.alpha for r in rows}
    assert by_hurst[0.2] < by_hurst[0.5] < by_hurst[0.8]
