#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Time-scale analysis with a Morlet continuous wavelet transform.

For small scales the scalogram of a series with local regularity H(t)
behaves like

    Omega(t, a) = |W_x(t, a)|^2 ~ a^{2 H(t) + 1},

so a log-log regression of Omega against a at each instant gives a local
Hurst exponent, and the time average of H(t) gives a global one.
"""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy import signal

from .error import ConfigError, LocalHurstError
from .psa import preprocess
from .series import as_series, hurst_to_dimension

logger = logging.getLogger(__name__)

#: Shortest series the transform accepts.
MIN_TSA_LENGTH = 256

MIN_BAND_SCALES = 6

#: Span of the default regression band, from the smallest scale up.
BAND_OCTAVES = 3.0

#: Kernel support in units of the scale; exp(-32) is below double precision.
KERNEL_HALF_WIDTH = 8.0

_NORM = math.pi**-0.25


@dataclass(frozen=True)
class WaveletSpec:
    """Morlet wavelet and the scale grid it is evaluated on.

    Attributes
    ----------
    omega0 : `float`
        Centre frequency, at least 5.
    scale_min : `float`
        Smallest scale of the default grid, in samples.
    octaves : `float`
        Span of the default grid.
    scale_count : `int`
        Number of log-spaced scales in the default grid.
    scales : `tuple` of `float` or `None`
        Explicit grid; overrides the three fields above.
    smoothing : `int`
        Width in samples of the centred time window the scalogram is
        averaged over before the local regressions (1 disables it).
    band : (`float`, `float`) or `None`
        Scale interval of the local regressions; `None` is `default_band`
        of the grid.
    """

    omega0: float = 6.0
    scale_min: float = 16.0
    octaves: float = 4.0
    scale_count: int = 48
    scales: Optional[Tuple[float, ...]] = None
    smoothing: int = 1024
    band: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not self.omega0 >= 5.0:
            raise ConfigError("omega0 must be at least 5, got %r" % self.omega0)
        if int(self.smoothing) < 1:
            raise ConfigError("smoothing window must be positive")
        if self.scales is not None:
            object.__setattr__(self, "scales", tuple(float(a) for a in self.scales))
        grid = self.grid()
        if grid.size < 16:
            raise ConfigError("wavelet grid needs at least 16 scales")
        if grid[0] <= 0 or np.any(np.diff(grid) <= 0):
            raise ConfigError("wavelet scales must be positive and increasing")
        if math.log2(grid[-1] / grid[0]) < 3.0 - 1e-9:
            raise ConfigError("wavelet grid must span at least 3 octaves")
        if self.band is not None:
            low, high = self.band
            if low > high:
                raise ConfigError("empty wavelet band [%s, %s]" % (low, high))

    def grid(self):
        """Scales in samples, strictly increasing."""
        if self.scales is not None:
            return np.asarray(self.scales, dtype=float)
        return self.scale_min * 2.0 ** (
            self.octaves * np.arange(self.scale_count) / (self.scale_count - 1)
        )

    def regression_band(self):
        if self.band is not None:
            return tuple(float(a) for a in self.band)
        return default_band(self.grid())


def default_band(scales):
    """The lowest `BAND_OCTAVES` octaves of `scales`, at least 6 scales.

    Returns
    -------
    (`float`, `float`)
    """
    scales = np.asarray(scales, dtype=float)
    top = np.searchsorted(scales, scales[0] * 2.0**BAND_OCTAVES * (1 + 1e-12), "right")
    top = min(max(MIN_BAND_SCALES, int(top)), scales.size)
    return (float(scales[0]), float(scales[top - 1]))


def morlet(u, omega0=6.0):
    """phi(u) = pi^{-1/4} exp(i omega0 u) exp(-u^2 / 2)."""
    u = np.asarray(u, dtype=float)
    return _NORM * np.exp(1j * omega0 * u - 0.5 * u**2)


def cone_of_influence(length, scales):
    """Boolean mask (scale x time), `True` within a*sqrt(2) of either end."""
    t = np.arange(length)
    width = np.asarray(scales, dtype=float)[:, None] * math.sqrt(2.0)
    return (t[None, :] < width) | (t[None, :] > length - 1 - width)


@dataclass(frozen=True, eq=False)
class Scalogram:
    """Omega(t, a) on a scale x time grid.

    Attributes
    ----------
    scales : `numpy.ndarray`
        Shape (S,).
    values : `numpy.ndarray`
        Nonnegative, shape (S, N).
    mask : `numpy.ndarray` of `bool`
        `True` marks entries inside the cone of influence; they take no
        part in any regression.
    coefficients : `numpy.ndarray` or `None`
        Complex W_x(t, a) when the scalogram came from a transform.
    """

    scales: np.ndarray
    values: np.ndarray
    mask: np.ndarray
    coefficients: Optional[np.ndarray] = None

    def __post_init__(self):
        scales = np.asarray(self.scales, dtype=float)
        values = np.asarray(self.values, dtype=float)
        mask = np.asarray(self.mask, dtype=bool)
        if values.ndim != 2 or values.shape[0] != scales.size:
            raise ValueError("values must have one row per scale")
        if mask.shape != values.shape:
            raise ValueError("mask and values differ in shape")
        if np.any(values < 0):
            raise ValueError("scalogram values must be nonnegative")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mask", mask)

    @property
    def length(self):
        return int(self.values.shape[1])

    @property
    def energy(self):
        """E_x = sum over a of a^2 da sum over t of Omega(t, a)."""
        if self.scales.size > 1:
            da = np.gradient(self.scales)
        else:
            da = np.ones(1)
        return float(np.sum(self.scales**2 * da * self.values.sum(axis=1)))

    def smoothed(self, window):
        """Centred moving average over unmasked entries.

        The mask is unchanged; each kept entry becomes the mean of the
        unmasked values within ``window // 2`` samples of it.
        """
        window = min(int(window), self.length)
        if window <= 1:
            return self
        half = window // 2
        valid = ~self.mask
        weighted = np.where(valid, self.values, 0.0)
        # window sums and counts as differences of prefix sums
        zero = np.zeros((self.scales.size, 1))
        sums = np.concatenate([zero, np.cumsum(weighted, axis=1)], axis=1)
        counts = np.concatenate([zero, np.cumsum(valid, axis=1)], axis=1)
        t = np.arange(self.length)
        lo = np.clip(t - half, 0, self.length)
        hi = np.clip(t + half + 1, 0, self.length)
        total = sums[:, hi] - sums[:, lo]
        count = counts[:, hi] - counts[:, lo]
        with np.errstate(invalid="ignore", divide="ignore"):
            averaged = np.where(count > 0, total / np.maximum(count, 1), 0.0)
        averaged = np.where(valid, np.clip(averaged, 0.0, None), 0.0)
        return Scalogram(self.scales, averaged, self.mask, self.coefficients)


def morlet_cwt(series, spec=None):
    """Continuous wavelet transform and scalogram.

    W_x(t, a) = sum_s x(s) conj(phi_{t,a}(s)) with
    phi_{t,a}(s) = a^{-1/2} phi((s - t) / a), computed for each scale as a
    zero-padded FFT convolution with the sampled, truncated kernel.

    Parameters
    ----------
    series : `TimeSeries` or array_like
    spec : `WaveletSpec`, optional

    Returns
    -------
    `Scalogram`

    Raises
    ------
    SeriesTooShortError
        If N < 256.
    """
    spec = spec or WaveletSpec()
    series = as_series(series).require_length(
        MIN_TSA_LENGTH, "series too short for time-scale analysis"
    )
    x = series.values
    n = x.size
    scales = spec.grid()

    coefficients = np.empty((scales.size, n), dtype=complex)
    for i, a in enumerate(scales):
        half = min(int(math.ceil(KERNEL_HALF_WIDTH * a)), n - 1)
        k = np.arange(-half, half + 1)
        kernel = np.conj(morlet(k / a, spec.omega0)) / math.sqrt(a)
        # correlation with the kernel is convolution with it reversed
        coefficients[i] = signal.fftconvolve(x, kernel[::-1], mode="same")
    logger.debug("cwt of %d samples over %d scales", n, scales.size)

    values = np.abs(coefficients) ** 2
    return Scalogram(scales, values, cone_of_influence(n, scales), coefficients)


def _band_rows(scalogram, band):
    low, high = band
    return (scalogram.scales >= low * (1 - 1e-12)) & (
        scalogram.scales <= high * (1 + 1e-12)
    )


def local_hurst(scalogram, t, band):
    """H(t) = (slope of log Omega against log a over `band` - 1) / 2.

    Returns
    -------
    `float` or `None`
        `None` when fewer than 6 unmasked scales with Omega > 0 lie in
        the band at `t`.
    """
    rows = _band_rows(scalogram, band)
    column = scalogram.values[rows, t]
    usable = ~scalogram.mask[rows, t] & (column > 0)
    if usable.sum() < MIN_BAND_SCALES:
        return None
    x = np.log(scalogram.scales[rows][usable])
    y = np.log(column[usable])
    slope = np.polyfit(x, y, 1)[0]
    return (float(slope) - 1.0) / 2.0


class LocalHurstTrack(NamedTuple):
    """Local Hurst exponents over the instants where they are defined.

    Attributes
    ----------
    times : `numpy.ndarray` of `int`
    values : `numpy.ndarray`
    undefined : `int`
        Instants left out for lack of usable scales.
    """

    times: np.ndarray
    values: np.ndarray
    undefined: int = 0

    def __len__(self):
        return int(self.values.size)

    @property
    def h_min(self):
        return float(self.values.min()) if len(self) else math.nan

    @property
    def h_max(self):
        return float(self.values.max()) if len(self) else math.nan


def local_hurst_track(scalogram, band=None):
    """`local_hurst` at every instant, as one masked regression per column."""
    if band is None:
        band = default_band(scalogram.scales)
    rows = _band_rows(scalogram, band)
    omega = scalogram.values[rows]
    # 0/1 weights drop masked and zero entries from each column fit
    weight = (~scalogram.mask[rows] & (omega > 0)).astype(float)
    x = np.log(scalogram.scales[rows])[:, None]
    with np.errstate(divide="ignore"):
        y = np.where(weight > 0, np.log(np.where(omega > 0, omega, 1.0)), 0.0)

    count = weight.sum(axis=0)
    defined = count >= MIN_BAND_SCALES
    safe = np.where(defined, count, 1.0)
    x_mean = (weight * x).sum(axis=0) / safe
    y_mean = (weight * y).sum(axis=0) / safe
    # weighted normal equations, one slope per column
    dx = np.where(weight > 0, x - x_mean, 0.0)
    sxx = (dx**2).sum(axis=0)
    sxy = (dx * (y - y_mean)).sum(axis=0)
    defined &= sxx > 0
    slope = sxy[defined] / sxx[defined]

    undefined = int(defined.size - defined.sum())
    if undefined:
        logger.warning("local Hurst exponent undefined at %d instants", undefined)
    return LocalHurstTrack(np.flatnonzero(defined), (slope - 1.0) / 2.0, undefined)


def global_hurst(track):
    """Arithmetic mean of H(t) over the defined instants.

    Raises
    ------
    LocalHurstError
        If the track is empty.
    """
    if len(track) == 0:
        raise LocalHurstError("no valid local estimates")
    return math.fsum(np.asarray(track.values).tolist()) / len(track)


class TsaSummary(NamedTuple):
    hurst: float
    h_min: float
    h_max: float
    dimension: float


def tsa_analyze(series, spec=None, detrend="bridge"):
    """Transform, smooth and regress.

    Returns
    -------
    (`Scalogram`, `LocalHurstTrack`)
        The scalogram is the unsmoothed one.
    """
    spec = spec or WaveletSpec()
    series = as_series(series)
    prepared = series.with_values(preprocess(series.values, detrend))
    scalogram = morlet_cwt(prepared, spec)
    track = local_hurst_track(
        scalogram.smoothed(spec.smoothing), spec.regression_band()
    )
    return scalogram, track


def tsa_report(series, spec=None, detrend="bridge"):
    """Global H, its local range and D = 2 - H.

    Returns
    -------
    `TsaSummary`
    """
    _, track = tsa_analyze(series, spec, detrend)
    hurst = global_hurst(track)
    return TsaSummary(hurst, track.h_min, track.h_max, hurst_to_dimension(hurst))
