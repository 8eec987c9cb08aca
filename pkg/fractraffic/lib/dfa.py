#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Detrended fluctuation analysis.

The profile Y is cut into N_s = floor(N/s) segments from the start and N_s
more from the end (2 N_s in total), a least-squares line is removed from
each, and

    F(s) = sqrt( (1 / 2N_s) * sum_v F^2(s, v) )

is fitted against s on log-log axes. The slope alpha classifies the process
(0.5 white noise, 0.5..1 long-range correlation, 1 1/f, above 1 fBm).
Changes of slope along the scale axis (crossovers) are located by a
piecewise-linear fit with up to three regimes.
"""

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .error import InputError, ScaleError
from .series import MIN_ESTIMATION_LENGTH, as_series, profile
from .synth import GeneratorKind, GeneratorSpec, gen_fgn
from .util import log_spaced_integers, ols_fit

logger = logging.getLogger(__name__)

MIN_SCALE = 4
MIN_FIT_POINTS = 5
MIN_REGIME_POINTS = 6
MAX_REGIMES = 3
DEFAULT_SCALE_COUNT = 20

#: Half-width of the equality bands around alpha = 0.5 and alpha = 1.
ALPHA_TOLERANCE = 0.02


class ProcessType(enum.Enum):
    ANTI_CORRELATED = "power-law anti-correlation"
    WHITE_NOISE = "white noise"
    LONG_RANGE_CORRELATED = "long-range power-law correlation"
    ONE_OVER_F = "1/f process"
    FBM = "fBm process"

    def __str__(self):
        return self.value


def classify_alpha(alpha):
    """Process type for a DFA exponent, with a 0.02 band at 0.5 and 1."""
    if abs(alpha - 0.5) <= ALPHA_TOLERANCE:
        return ProcessType.WHITE_NOISE
    if abs(alpha - 1.0) <= ALPHA_TOLERANCE:
        return ProcessType.ONE_OVER_F
    if alpha < 0.5:
        return ProcessType.ANTI_CORRELATED
    if alpha < 1.0:
        return ProcessType.LONG_RANGE_CORRELATED
    return ProcessType.FBM


@dataclass(frozen=True, eq=False)
class SegmentGrid:
    """Forward and backward segmentation of a profile at one scale.

    Attributes
    ----------
    scale : `int`
        Segment length s.
    count : `int`
        N_s = floor(N / s).
    starts : `numpy.ndarray`
        Zero-based start index of each of the 2 N_s segments; forward
        segments first, then backward segments counted from the end.
    """

    scale: int
    count: int
    starts: np.ndarray

    def __len__(self):
        return int(self.starts.size)

    def ranges(self):
        """One-based inclusive (first, last) index pairs, segment order."""
        return [(int(a) + 1, int(a) + self.scale) for a in self.starts]

    def indices(self):
        return self.starts[:, None] + np.arange(self.scale)


def segment_profile(prof, scale, strict=True):
    """Build the 2 N_s segments of length `scale`.

    Forward segment v covers (v-1)s+1..vs; backward segment v = N_s+1..2N_s
    covers N-(v-N_s)s+1..N-(v-N_s-1)s (one-based). When N is a multiple of
    s the backward pass repeats the forward coverage; it is still emitted.

    Parameters
    ----------
    prof : `Profile`
    scale : `int`
    strict : `bool`, optional
        Enforce 4 <= s <= N/4. When `False` only 1 <= s <= N is required.

    Raises
    ------
    ScaleError
        ``"scale below minimum"`` or ``"scale too large"``.
    """
    n = len(prof)
    s = int(scale)
    low, high = (MIN_SCALE, n / 4.0) if strict else (1, n)
    if s < low:
        raise ScaleError("scale below minimum")
    if s > high:
        raise ScaleError("scale too large")
    count = n // s
    forward = np.arange(count) * s
    backward = n - np.arange(1, count + 1) * s
    return SegmentGrid(s, count, np.concatenate([forward, backward]))


def _detrended_variance(segments):
    """Mean squared residual of a least-squares line, one per row."""
    s = segments.shape[-1]
    # centred abscissa: the fitted slope is then sum(x y) / sum(x x)
    x = np.arange(s) - (s - 1) / 2.0
    centred = segments - segments.mean(axis=-1, keepdims=True)
    sxx = float(np.dot(x, x))
    slope = centred @ x / sxx if sxx > 0 else np.zeros(centred.shape[:-1])
    residual = centred - slope[..., None] * x
    return np.mean(residual**2, axis=-1)


def segment_fluctuation(prof, grid, v):
    """F^2(s, v) of segment `v` (one-based, 1..2N_s)."""
    if not 1 <= v <= len(grid):
        raise InputError("segment %r outside 1..%d" % (v, len(grid)))
    start = int(grid.starts[v - 1])
    segment = prof.values[start : start + grid.scale]
    return float(_detrended_variance(segment[None, :])[0])


@dataclass(frozen=True, eq=False)
class FluctuationCurve:
    """F(s) at each scale of a strictly increasing grid.

    Attributes
    ----------
    scales : `numpy.ndarray` of `int`
    fluctuations : `numpy.ndarray`
    """

    scales: np.ndarray
    fluctuations: np.ndarray

    def __len__(self):
        return int(self.scales.size)

    def positive(self, scale_range=None):
        """Mask of points with F(s) > 0, optionally within `scale_range`."""
        mask = self.fluctuations > 0
        if scale_range is not None:
            low, high = scale_range
            mask &= (self.scales >= low) & (self.scales <= high)
        return mask


def default_scales(length, count=DEFAULT_SCALE_COUNT):
    """About `count` log-spaced integer scales from 4 to N/4."""
    high = length // 4
    if high < MIN_SCALE:
        raise ScaleError("series too short for DFA")
    return log_spaced_integers(MIN_SCALE, high, count)


def fluctuation_function(prof, scales=None):
    """F(s) for each scale.

    Parameters
    ----------
    prof : `Profile`
    scales : sequence of `int` or `None`
        Every scale must lie in [4, N/4]; `None` uses `default_scales`.

    Returns
    -------
    `FluctuationCurve`
    """
    if scales is None:
        scales = default_scales(len(prof))
    scales = np.unique(np.asarray(scales, dtype=np.int64))
    if scales.size == 0:
        raise ScaleError("empty scale list")

    fluctuations = np.empty(scales.size)
    for i, s in enumerate(scales):
        grid = segment_profile(prof, s)
        variances = _detrended_variance(prof.values[grid.indices()])
        # fixed summation order over segments, forward pass first
        fluctuations[i] = math.sqrt(math.fsum(variances.tolist()) / len(grid))
    return FluctuationCurve(scales, fluctuations)


def fit_alpha(curve, scale_range=None):
    """Slope of log F(s) against log s.

    Parameters
    ----------
    curve : `FluctuationCurve`
    scale_range : (`float`, `float`) or `None`
        Inclusive scale interval; `None` uses every point.

    Returns
    -------
    (`float`, `float`)
        alpha and its standard error.

    Raises
    ------
    ScaleError
        If fewer than 5 points with F(s) > 0 are in range.
    """
    line = _fit_curve(curve, scale_range)
    return line.slope, line.stderr


def _fit_curve(curve, scale_range=None):
    mask = curve.positive(scale_range)
    if mask.sum() < MIN_FIT_POINTS:
        raise ScaleError("scale range too narrow")
    return ols_fit(np.log(curve.scales[mask]), np.log(curve.fluctuations[mask]))


@dataclass(frozen=True)
class Regime:
    """One scaling regime of a fluctuation curve."""

    scale_min: int
    scale_max: int
    alpha: float
    stderr: float

    @property
    def process(self):
        return classify_alpha(self.alpha)


@dataclass(frozen=True)
class DfaResult:
    """Scaling regimes, crossovers and the single-line fit.

    Attributes
    ----------
    regimes : `list` of `Regime`
        Partition of the scale grid, in increasing scale order.
    crossovers : `list` of `float`
        Scale at each regime boundary.
    global_alpha : `float`
    global_stderr : `float`
    """

    regimes: List[Regime] = field(default_factory=list)
    crossovers: List[float] = field(default_factory=list)
    global_alpha: float = math.nan
    global_stderr: float = math.nan

    @property
    def classifications(self):
        return [r.process for r in self.regimes]


def _rss(x, y):
    coef = np.polyfit(x, y, 1)
    residual = y - np.polyval(coef, x)
    return float(np.dot(residual, residual))


def _partitions(n, regimes):
    """Breakpoint tuples splitting n points into `regimes` runs of >= 6."""
    if regimes == 1:
        yield ()
        return
    candidates = range(MIN_REGIME_POINTS, n - MIN_REGIME_POINTS + 1)
    for cuts in itertools.combinations(candidates, regimes - 1):
        bounds = (0,) + cuts + (n,)
        if all(b - a >= MIN_REGIME_POINTS for a, b in zip(bounds, bounds[1:])):
            yield cuts


def _crossover_scale(left, right, x_left, x_right):
    """Where two adjacent log-log lines meet, kept near the boundary.

    Falls back to the geometric midpoint of the boundary scales when the
    lines are parallel or meet more than one grid step away.
    """
    midpoint = math.exp((x_left[-1] + x_right[0]) / 2.0)
    if left.slope == right.slope:
        return midpoint
    x = (right.intercept - left.intercept) / (left.slope - right.slope)
    if x_left[-2] <= x <= x_right[1]:
        return math.exp(x)
    return midpoint


def detect_crossovers(curve, max_regimes=MAX_REGIMES):
    """Piecewise power-law fit with 1..`max_regimes` regimes.

    Every placement of breakpoints on the scale grid (at least six points
    per regime) is tried; for each regime count the least total squared
    residual wins. The count is then chosen by a small-sample information
    criterion, ``RSS_k + 2 * 3(k-1) * var(log F) / n``: each extra regime
    adds a slope, an intercept and a breakpoint, each charged against the
    variance of the log fluctuations. Ties go to fewer regimes.

    Returns
    -------
    `DfaResult`
    """
    if not 1 <= max_regimes <= MAX_REGIMES:
        raise InputError("max_regimes must be between 1 and %d" % MAX_REGIMES)
    mask = curve.positive()
    x = np.log(curve.scales[mask])
    y = np.log(curve.fluctuations[mask])
    scales = curve.scales[mask]
    n = x.size
    whole = _fit_curve(curve)

    allowed = min(max_regimes, n // MIN_REGIME_POINTS)
    if allowed < max_regimes and max_regimes > 1:
        logger.warning(
            "%d points support at most %d regime(s), %d requested",
            n,
            max(allowed, 1),
            max_regimes,
        )
    allowed = max(allowed, 1)

    best = {}
    for k in range(1, allowed + 1):
        for cuts in _partitions(n, k):
            bounds = (0,) + cuts + (n,)
            rss = sum(_rss(x[a:b], y[a:b]) for a, b in zip(bounds, bounds[1:]))
            if k not in best or rss < best[k][0]:
                best[k] = (rss, cuts)

    total = float(np.dot(y - y.mean(), y - y.mean()))
    # charge per extra parameter
    charge = 2.0 * (total / n) / n
    scores = {k: rss + 3 * (k - 1) * charge for k, (rss, _) in best.items()}
    lowest = min(scores.values())
    chosen = min(k for k, v in scores.items() if v <= lowest + 1e-12 * max(total, 1.0))
    logger.debug("crossover scores %s, chose %d regime(s)", scores, chosen)

    bounds = (0,) + best[chosen][1] + (n,)
    lines = [ols_fit(x[a:b], y[a:b]) for a, b in zip(bounds, bounds[1:])]
    regimes = [
        Regime(int(scales[a]), int(scales[b - 1]), line.slope, line.stderr)
        for (a, b), line in zip(zip(bounds, bounds[1:]), lines)
    ]
    crossovers = [
        _crossover_scale(lines[i], lines[i + 1], x[a:b], x[b:c])
        for i, (a, b, c) in enumerate(zip(bounds, bounds[1:], bounds[2:]))
    ]
    return DfaResult(regimes, crossovers, whole.slope, whole.stderr)


def dfa(series, scales=None, max_regimes=MAX_REGIMES, fit_range=None):
    """Profile, fluctuation function and regime detection for a series.

    Returns
    -------
    (`FluctuationCurve`, `DfaResult`)
    """
    series = as_series(series).require_length(MIN_ESTIMATION_LENGTH)
    curve = fluctuation_function(profile(series), scales)
    result = detect_crossovers(curve, max_regimes)
    if fit_range is not None:
        alpha, stderr = fit_alpha(curve, fit_range)
        result = DfaResult(result.regimes, result.crossovers, alpha, stderr)
    return curve, result


#: Known processes of the benchmark run: (name, H).
BENCHMARK_PROCESSES = (
    ("Brownian motion", 0.5),
    ("Persistence power-law", 0.8),
    ("Anti-persistence power-law", 0.2),
)


@dataclass(frozen=True)
class BenchmarkRow:
    name: str
    hurst: float
    alpha: float
    spread: float


def dfa_benchmark(length=2**14, seeds=5, processes=BENCHMARK_PROCESSES):
    """Fit alpha on fGn of known H; alpha should equal H for noise input.

    Returns
    -------
    `list` of `BenchmarkRow`
        Mean alpha and its sample standard deviation over `seeds` draws.
    """
    scales = default_scales(length)
    rows = []
    for name, hurst in processes:
        alphas = []
        for seed in range(seeds):
            spec = GeneratorSpec(hurst, length, seed, GeneratorKind.FGN)
            curve = fluctuation_function(profile(gen_fgn(spec)), scales)
            alphas.append(fit_alpha(curve)[0])
        spread = float(np.std(alphas, ddof=1)) if seeds > 1 else 0.0
        rows.append(BenchmarkRow(name, hurst, float(np.mean(alphas)), spread))
    return rows
