#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Time-series container and the exponent relations shared by all estimators.

The Hurst exponent H, the fractal dimension D, the spectral exponent beta
and the increment correlation coefficient rho are tied together by

    D = 2 - H,    beta = 2H + 1 = 5 - 2D,    rho = 2^(2H - 1) - 1.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .error import (
    EmptySeriesError,
    LagError,
    NonFiniteSampleError,
    SeriesTooShortError,
)

#: Shortest series any estimator accepts.
MIN_ESTIMATION_LENGTH = 64

#: Distance from 0.5 within which H counts as the Brownian boundary.
HURST_TOLERANCE = 1e-9


def _frozen_array(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Finite real-valued sequence: frame sizes in bytes or synthetic samples.

    Attributes
    ----------
    values : `numpy.ndarray`
        Read-only float array, every element finite.
    label : `str`
    timestamps : `None` or `numpy.ndarray`
        Capture times in seconds, kept as metadata only.
    """

    values: np.ndarray
    label: str = ""
    timestamps: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size == 0:
            raise EmptySeriesError("empty input")
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise NonFiniteSampleError("non-finite sample at index %d" % bad[0])
        object.__setattr__(self, "values", _frozen_array(values))
        if self.timestamps is not None:
            stamps = _frozen_array(self.timestamps)
            if stamps.shape != values.shape:
                raise ValueError("timestamps and values differ in length")
            object.__setattr__(self, "timestamps", stamps)

    def __len__(self):
        return int(self.values.size)

    def __str__(self):
        return '<series "%s" (N=%d)>' % (self.label, len(self))

    __repr__ = __str__

    def require_length(self, minimum, message="series too short"):
        """Raise `SeriesTooShortError` unless the series has `minimum` samples."""
        if len(self) < minimum:
            raise SeriesTooShortError(message)
        return self

    def with_values(self, values, label=None):
        """Same label (unless given), new samples, no timestamps."""
        return TimeSeries(values, self.label if label is None else label)


def as_series(data, label=""):
    """Coerce `data` to a validated `TimeSeries`.

    Parameters
    ----------
    data : `TimeSeries` or array_like
    label : `str`, optional
        Used only when `data` is not already a `TimeSeries`.
    """
    if isinstance(data, TimeSeries):
        return data
    return TimeSeries(data, label)


@dataclass(frozen=True, eq=False)
class Profile:
    """Cumulative sum of the mean-centred series.

    Attributes
    ----------
    values : `numpy.ndarray`
        Y(i) for i = 1..N, stored zero-based.
    mean : `float`
        Mean of the source series.
    """

    values: np.ndarray
    mean: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values))

    def __len__(self):
        return int(self.values.size)


class PersistenceClass(enum.Enum):
    """Persistence behaviour of a fractal process, one per H value.

    The value tuple is (label, side of D relative to 1.5, sign of rho).
    """

    PERSISTENT = ("persistent", "< 1.5", "positive")
    RANDOM_FBM = ("random fBm", "= 1.5", "zero")
    NON_PERSISTENT = ("non-persistent", "> 1.5", "negative")

    def __init__(self, label, dimension_side, rho_sign):
        self.label = label
        self.dimension_side = dimension_side
        self.rho_sign = rho_sign

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class ExponentSet:
    """H, D, beta and rho with standard errors, all derived from one value.

    Attributes
    ----------
    hurst, dimension, beta, rho : `float`
    hurst_err, dimension_err, beta_err, rho_err : `float`
        Nonnegative standard errors.
    """

    hurst: float
    dimension: float
    beta: float
    rho: float
    hurst_err: float = 0.0
    dimension_err: float = 0.0
    beta_err: float = 0.0
    rho_err: float = 0.0

    @property
    def persistence(self):
        return classify_hurst(self.hurst)


def mean(series):
    """Arithmetic mean using compensated summation.

    Raises
    ------
    EmptySeriesError
        If the series has no samples.
    """
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series)
    if np.size(values) == 0:
        raise EmptySeriesError("empty input")
    return math.fsum(np.ravel(values).tolist()) / np.size(values)


def profile(series):
    """Y(i) = sum_{k<=i} (x_k - <x>).

    Raises
    ------
    NonFiniteSampleError
        If a sample is NaN or infinite.
    """
    series = as_series(series)
    centre = mean(series)
    return Profile(np.cumsum(series.values - centre), centre)


def autocovariance(series, max_lag):
    """Biased sample autocovariance for lags ``0..max_lag``.

    Element k is ``(1/N) * sum_t (x_t - <x>)(x_{t+k} - <x>)``.

    Raises
    ------
    LagError
        If `max_lag` is negative or not smaller than the series length.
    """
    series = as_series(series)
    n = len(series)
    max_lag = int(max_lag)
    if max_lag >= n:
        raise LagError("lag exceeds series length")
    if max_lag < 0:
        raise LagError("lag must be nonnegative")
    centred = series.values - mean(series)
    return np.array(
        [np.dot(centred[: n - k], centred[k:]) / n for k in range(max_lag + 1)]
    )


def hurst_to_dimension(hurst):
    return 2.0 - hurst


def hurst_to_rho(hurst):
    """Correlation coefficient between successive increments."""
    return 2.0 ** (2.0 * hurst - 1.0) - 1.0


def rho_to_hurst(rho):
    """Inverse of `hurst_to_rho`; `rho` must exceed -1."""
    if not rho > -1.0:
        raise ValueError("rho must be greater than -1, got %r" % rho)
    return (math.log2(rho + 1.0) + 1.0) / 2.0


def beta_relations(hurst=None, beta=None, dimension=None, stderr=0.0):
    """Complete the exponent set from exactly one of H, beta or D.

    Parameters
    ----------
    hurst, beta, dimension : `float` or `None`
        Exactly one must be given.
    stderr : `float`, optional
        Standard error of the given value; propagated to the other fields
        (rho by first-order expansion).

    Returns
    -------
    `ExponentSet`
    """
    given = [v for v in (hurst, beta, dimension) if v is not None]
    if len(given) != 1:
        raise ValueError("give exactly one of hurst, beta, dimension")
    if not math.isfinite(given[0]):
        raise ValueError("exponent must be finite")
    stderr = abs(float(stderr))

    if hurst is not None:
        h, h_err = float(hurst), stderr
        b = 2.0 * h + 1.0
    elif beta is not None:
        b = float(beta)
        h, h_err = (b - 1.0) / 2.0, stderr / 2.0
    else:
        h, h_err = 2.0 - float(dimension), stderr
        b = 5.0 - 2.0 * float(dimension)

    return ExponentSet(
        hurst=h,
        dimension=hurst_to_dimension(h),
        beta=b,
        rho=hurst_to_rho(h),
        hurst_err=h_err,
        dimension_err=h_err,
        beta_err=2.0 * h_err,
        rho_err=math.log(2.0) * 2.0 ** (2.0 * h) * h_err,
    )


def classify_hurst(hurst):
    """Map H to its `PersistenceClass` (H = 0.5 within 1e-9 is random fBm)."""
    if abs(hurst - 0.5) <= HURST_TOLERANCE:
        return PersistenceClass.RANDOM_FBM
    if hurst > 0.5:
        return PersistenceClass.PERSISTENT
    return PersistenceClass.NON_PERSISTENT
