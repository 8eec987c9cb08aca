#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.stats import linregress

logger = logging.getLogger(__name__)


class LineFit(NamedTuple):
    """Ordinary least-squares line.

    Attributes
    ----------
    slope : `float`
    intercept : `float`
    stderr : `float`
        Standard error of the slope.
    r_squared : `float`
    count : `int`
        Number of points in the fit.
    """

    slope: float
    intercept: float
    stderr: float
    r_squared: float
    count: int

    def predict(self, x):
        return self.slope * np.asarray(x, dtype=float) + self.intercept


def ols_fit(x, y):
    """Fit ``y = slope * x + intercept`` by ordinary least squares.

    Parameters
    ----------
    x : array_like
    y : array_like

    Returns
    -------
    `LineFit`

    Raises
    ------
    ValueError
        If fewer than 3 points are given or all `x` are equal.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        raise ValueError("at least 3 points required, got %d" % x.size)
    if np.ptp(x) == 0:
        raise ValueError("all x values are equal")
    res = linregress(x, y)
    stderr = float(res.stderr)
    # linregress leaves stderr as nan on an exact fit for some inputs
    if not math.isfinite(stderr):
        stderr = 0.0
    return LineFit(
        slope=float(res.slope),
        intercept=float(res.intercept),
        stderr=stderr,
        r_squared=float(res.rvalue) ** 2,
        count=int(x.size),
    )


def log_spaced_integers(low, high, count):
    """Distinct integers spaced logarithmically between `low` and `high`.

    Parameters
    ----------
    low : `int`
    high : `int`
    count : `int`
        Number of requested points; rounding may merge some of them.

    Returns
    -------
    `numpy.ndarray` of `int`
        Strictly increasing, first element `low`, last element `high`.

    Examples
    --------
    >>> log_spaced_integers(4, 64, 5).tolist()
    [4, 8, 16, 32, 64]
    """
    if low < 1 or high < low:
        raise ValueError("invalid range [%s, %s]" % (low, high))
    grid = np.geomspace(low, high, num=max(int(count), 1))
    return np.unique(np.rint(grid).astype(np.int64))


def round_sig(value, digits=6):
    """Round a float to `digits` significant digits.

    Non-finite values become `None` so they serialize as JSON ``null``.

    Examples
    --------
    >>> round_sig(0.123456789)
    0.123457
    >>> round_sig(float("nan")) is None
    True
    """
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return None
    return float("%.*g" % (digits, value))


def format_sig(value, digits=6):
    """Format a float with `digits` significant digits (empty for `None`)."""
    value = round_sig(value, digits)
    if value is None:
        return ""
    return "%.*g" % (digits, value)
