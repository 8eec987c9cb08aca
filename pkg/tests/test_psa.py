import logging

import numpy as np
import pytest

from fractraffic.lib import psa, synth
from fractraffic.lib.error import SeriesTooShortError, SpectralSupportError


def test_frequency_grid_contract():
    x = synth.gen_white(synth.GeneratorSpec(0.5, 1000, 1, "white"))
    spectrum = psa.periodogram(x)
    assert len(spectrum) == 500
    assert spectrum.frequencies[0] == 1 / 1000
    assert spectrum.frequencies[-1] == 0.5
    assert np.all(np.diff(spectrum.frequencies) > 0)
    assert np.all(spectrum.powers >= 0)


@pytest.mark.parametrize("length", [1000, 999])
@pytest.mark.parametrize("detrend", ["mean", "bridge"])
def test_parseval_identity(length, detrend):
    x = synth.gen_white(synth.GeneratorSpec(0.5, length, 2, "white"))
    spectrum = psa.periodogram(x, detrend=detrend)
    energy = np.sum(psa.preprocess(x.values, detrend) ** 2)
    assert abs(spectrum.total_power() - energy) / energy <= 1e-9


def test_constant_series_has_no_power():
    spectrum = psa.periodogram(np.full(128, 3.0))
    assert np.all(spectrum.powers == 0)


def test_single_bin_sinusoid():
    n = 1024
    k = np.arange(n)
    spectrum = psa.periodogram(np.cos(2 * np.pi * 8 * k / n))
    assert spectrum.powers[7] >= 0.999 * spectrum.powers.sum()


def test_too_short():
    with pytest.raises(SeriesTooShortError, match="series too short"):
        psa.periodogram(np.arange(63.0))


def test_exact_power_laws():
    freqs = np.arange(1, 513) / 1024
    fit = psa.fit_beta(psa.Spectrum(freqs, freqs**-1.0, 1024))
    assert fit.beta == pytest.approx(1.0, abs=1e-9)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.fit_band == (4 / 1024, 1 / 8)

    flat = psa.fit_beta(psa.Spectrum(freqs, np.full(freqs.size, 2.5), 1024))
    assert flat.beta == pytest.approx(0.0, abs=1e-9)


def test_insufficient_support():
    freqs = np.arange(1, 513) / 1024
    spectrum = psa.Spectrum(freqs, freqs**-1.0, 1024)
    with pytest.raises(SpectralSupportError, match="insufficient spectral support"):
        psa.fit_beta(spectrum, band=(0.1, 0.105))


def test_zero_bins_are_skipped_with_warning(caplog):
    freqs = np.arange(1, 513) / 1024
    powers = freqs**-2.0
    powers[20:25] = 0.0
    with caplog.at_level(logging.WARNING, logger="fractraffic.lib.psa"):
        fit = psa.fit_beta(psa.Spectrum(freqs, powers, 1024))
    assert fit.skipped == 5
    assert fit.beta == pytest.approx(2.0, abs=1e-9)
    assert "skipped 5 zero-power bins" in caplog.text


def test_beta_is_scale_invariant():
    x = synth.gen_fbm(synth.GeneratorSpec(0.6, 4096, 3, "fbm"))
    a = psa.psa_analyze(x).fit.beta
    b = psa.psa_analyze(x.values * 3.5).fit.beta
    assert a == pytest.approx(b, abs=1e-9)


def test_psa_estimate_relations():
    x = synth.gen_fbm(synth.GeneratorSpec(0.7, 4096, 4, "fbm"))
    ex = psa.psa_estimate(x)
    assert ex.hurst == pytest.approx((ex.beta - 1) / 2, abs=1e-12)
    assert ex.dimension == pytest.approx(2 - ex.hurst, abs=1e-12)
    assert ex.rho == pytest.approx(2 ** (2 * ex.hurst - 1) - 1, abs=1e-12)
    assert ex.hurst_err == pytest.approx(ex.beta_err / 2)


def test_segment_averaging():
    x = synth.gen_white(synth.GeneratorSpec(0.5, 4096, 5, "white"))
    spectrum = psa.periodogram(x, segments=4)
    assert spectrum.segment_length == 1024
    assert len(spectrum) == 512


def test_fbm_beta_median_over_seeds():
    betas = []
    for seed in range(20):
        x = synth.gen_fbm(synth.GeneratorSpec(0.7, 2**16, seed, "fbm"))
        betas.append(psa.psa_analyze(x).fit.beta)
    assert abs(np.median(betas) - 2.4) <= 0.2


def test_beta_increases_with_hurst():
    def median_beta(h):
        return np.median(
            [
                psa.psa_analyze(
                    synth.gen_fbm(synth.GeneratorSpec(h, 2**14, s, "fbm"))
                ).fit.beta
                for s in range(5)
            ]
        )

    assert median_beta(0.3) < median_beta(0.8)
