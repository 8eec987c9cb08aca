#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Power-spectral analysis: periodogram and log-log power-law fit.

A fractal series has S(w) ~ w^{-beta}; the fitted beta gives H, D and rho
through `fractraffic.lib.series.beta_relations`.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np
from scipy import fft

from .error import InputError, SpectralSupportError
from .series import MIN_ESTIMATION_LENGTH, as_series, beta_relations
from .util import ols_fit

logger = logging.getLogger(__name__)

MIN_FIT_BINS = 8

#: Upper edge of the default fit band, cycles per sample.
DEFAULT_BAND_HIGH = 1.0 / 8.0

DETREND_MODES = ("mean", "bridge")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Periodogram on the grid w_m = m / L, m = 1..floor(L/2).

    Attributes
    ----------
    frequencies : `numpy.ndarray`
        Cycles per sample, strictly increasing, zero frequency excluded.
    powers : `numpy.ndarray`
        Nonnegative |X_m|^2 / L.
    length : `int`
        Source series length N.
    segment_length : `int`
        Transform length L (equals N unless segment averaging is used).
    """

    frequencies: np.ndarray
    powers: np.ndarray
    length: int
    segment_length: int = 0

    def __post_init__(self):
        if not self.segment_length:
            object.__setattr__(self, "segment_length", int(self.length))

    def __len__(self):
        return int(self.frequencies.size)

    def total_power(self):
        """Sum of |X_m|^2 / L over all L bins (the DC bin is zero).

        Equals the energy of the preprocessed series (Parseval) in the
        single-segment mode.
        """
        weights = np.full(self.powers.size, 2.0)
        if self.segment_length % 2 == 0 and weights.size:
            weights[-1] = 1.0
        return float(np.dot(weights, self.powers))


@dataclass(frozen=True)
class SpectralFit:
    """Least-squares power-law fit.

    Attributes
    ----------
    beta : `float`
        Negative log-log slope.
    stderr : `float`
    fit_band : (`float`, `float`)
        Frequency interval used, cycles per sample.
    r_squared : `float`
    intercept : `float`
        Intercept of log S versus log w.
    bins : `int`
        Bins used.
    skipped : `int`
        Zero-power bins inside the band left out of the fit.
    """

    beta: float
    stderr: float
    fit_band: Tuple[float, float]
    r_squared: float
    intercept: float = 0.0
    bins: int = 0
    skipped: int = 0


class PsaResult(NamedTuple):
    spectrum: Spectrum
    fit: SpectralFit
    exponents: object


def default_band(length):
    """[4/N, 1/8] cycles per sample."""
    return (4.0 / length, DEFAULT_BAND_HIGH)


def preprocess(values, detrend="mean"):
    """Remove the mean, or the line through the end points and then the mean.

    ``"bridge"`` subtracts the straight line joining the first and last
    sample, so the periodic extension seen by the transform has no jump.
    """
    if detrend not in DETREND_MODES:
        raise InputError("unknown detrend mode %r" % detrend)
    values = np.asarray(values, dtype=float)
    if detrend == "bridge" and values.size > 1:
        ramp = np.linspace(values[0], values[-1], values.size)
        values = values - ramp
    return values - values.mean()


def periodogram(series, detrend="mean", segments=1):
    """Periodogram of the centred series, DC bin excluded.

    Parameters
    ----------
    series : `TimeSeries` or array_like
    detrend : `str`, optional
        ``"mean"`` or ``"bridge"``; see `preprocess`.
    segments : `int`, optional
        Average over this many non-overlapping segments (1 = plain
        periodogram).

    Returns
    -------
    `Spectrum`

    Raises
    ------
    SeriesTooShortError
        If N < 64.
    """
    series = as_series(series).require_length(MIN_ESTIMATION_LENGTH)
    n = len(series)
    segments = int(segments)
    if segments < 1:
        raise InputError("segments must be positive")
    seg_len = n // segments
    if seg_len < MIN_ESTIMATION_LENGTH:
        raise InputError("segments of %d samples are too short" % seg_len)

    values = series.values[: seg_len * segments].reshape(segments, seg_len)
    half = seg_len // 2
    powers = np.zeros(half)
    for block in values:
        coeffs = fft.rfft(preprocess(block, detrend))
        powers += np.abs(coeffs[1 : half + 1]) ** 2 / seg_len
    powers /= segments

    frequencies = np.arange(1, half + 1) / seg_len
    return Spectrum(frequencies, powers, n, seg_len)


def fit_beta(spectrum, band=None):
    """Fit log S = -beta log w + c over `band`.

    Parameters
    ----------
    spectrum : `Spectrum`
    band : (`float`, `float`) or `None`
        Inclusive frequency interval; `None` uses `default_band`.

    Returns
    -------
    `SpectralFit`

    Raises
    ------
    SpectralSupportError
        If fewer than 8 bins with positive power fall inside the band.
    """
    low, high = default_band(spectrum.length) if band is None else band
    if low > high:
        raise InputError("empty frequency band [%s, %s]" % (low, high))
    inside = (spectrum.frequencies >= low) & (spectrum.frequencies <= high)
    positive = inside & (spectrum.powers > 0)
    skipped = int(inside.sum() - positive.sum())
    if skipped:
        logger.warning("skipped %d zero-power bins in [%g, %g]", skipped, low, high)
    if positive.sum() < MIN_FIT_BINS:
        raise SpectralSupportError("insufficient spectral support")

    line = ols_fit(
        np.log(spectrum.frequencies[positive]), np.log(spectrum.powers[positive])
    )
    logger.debug("beta fit over %d bins in [%g, %g]", line.count, low, high)
    return SpectralFit(
        beta=-line.slope,
        stderr=line.stderr,
        fit_band=(float(low), float(high)),
        r_squared=line.r_squared,
        intercept=line.intercept,
        bins=line.count,
        skipped=skipped,
    )


def psa_analyze(series, band=None, detrend="bridge", segments=1):
    """Periodogram, fit and exponents in one pass."""
    spectrum = periodogram(series, detrend=detrend, segments=segments)
    fit = fit_beta(spectrum, band)
    exponents = beta_relations(beta=fit.beta, stderr=fit.stderr)
    return PsaResult(spectrum, fit, exponents)


def psa_estimate(series, band=None, detrend="bridge", segments=1):
    """`ExponentSet` completed from the fitted beta (H = (beta - 1) / 2)."""
    return psa_analyze(series, band, detrend, segments).exponents
