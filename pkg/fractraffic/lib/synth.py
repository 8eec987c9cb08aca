#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Seeded fractional Gaussian noise and fractional Brownian motion.

fGn is synthesized exactly from its autocovariance

    gamma(k) = 0.5 (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H})

by embedding it in a circulant matrix of size 2N and colouring white
Gaussian noise with the square root of its eigenvalues. When an eigenvalue
comes out negative the recursive conditional (Durbin-Levinson) method is
used instead. fBm is the cumulative sum of fGn.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``, so
``(kind, H, N, seed)`` fixes the output bits on every platform.
"""

import enum
import logging
from dataclasses import dataclass

import numpy as np
from scipy import fft

from .error import HurstRangeError, InputError, SynthesisError
from .series import TimeSeries

logger = logging.getLogger(__name__)

#: Largest N for which the quadratic recursive method is attempted.
HOSKING_MAX_LENGTH = 16384

#: Frame-size range used when rendering synthetic series as a trace.
ETHERNET_FRAME_RANGE = (64, 1518)

_EIGEN_TOLERANCE = 1e-10


class GeneratorKind(enum.Enum):
    FGN = "fgn"
    FBM = "fbm"
    WHITE = "white"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GeneratorSpec:
    """What to synthesize.

    Attributes
    ----------
    hurst : `float`
        Target Hurst exponent, strictly inside (0, 1).
    length : `int`
        Number of samples N.
    seed : `int`
        Unsigned 64-bit seed.
    kind : `GeneratorKind`
    """

    hurst: float
    length: int
    seed: int = 0
    kind: GeneratorKind = GeneratorKind.FGN

    def __post_init__(self):
        object.__setattr__(self, "kind", GeneratorKind(self.kind))
        if not 0.0 < float(self.hurst) < 1.0:
            raise HurstRangeError("Hurst out of range")
        if int(self.length) < 1:
            raise InputError("length must be positive, got %r" % self.length)
        if not 0 <= int(self.seed) < 2**64:
            raise InputError("seed must be an unsigned 64-bit integer")

    @property
    def label(self):
        if self.kind is GeneratorKind.WHITE:
            return "white-s%d" % self.seed
        return "%s-H%.2f-s%d" % (self.kind.value, self.hurst, self.seed)

    def rng(self):
        return np.random.Generator(np.random.PCG64(int(self.seed)))


def fgn_autocovariance(hurst, lags):
    """Model autocovariance of unit-variance fGn at integer `lags`."""
    k = np.abs(np.asarray(lags, dtype=float))
    two_h = 2.0 * hurst
    return 0.5 * (
        np.abs(k + 1.0) ** two_h - 2.0 * k**two_h + np.abs(k - 1.0) ** two_h
    )


def _circulant_fgn(gamma, rng):
    """Davies-Harte synthesis; returns `None` if the embedding is not PSD."""
    n = gamma.size - 1
    # first row of the 2N circulant that embeds the N+1 covariances
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eigenvalues = fft.fft(row).real
    if eigenvalues.min() < -_EIGEN_TOLERANCE * eigenvalues.max():
        return None
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    m = row.size
    noise = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    coloured = fft.fft(np.sqrt(eigenvalues / m) * noise)
    return coloured.real[:n]


def _hosking_fgn(gamma, rng):
    """Recursive conditional synthesis (Durbin-Levinson), O(N^2)."""
    n = gamma.size - 1
    noise = rng.standard_normal(n)
    out = np.empty(n)
    out[0] = noise[0]
    phi = np.zeros(n)
    variance = 1.0
    for t in range(1, n):
        # Durbin-Levinson: extend the order t-1 predictor by one lag, and
        # shrink the innovation variance by the new reflection coefficient
        previous = phi[: t - 1].copy()
        reflection = (gamma[t] - np.dot(previous, gamma[t - 1 : 0 : -1])) / variance
        phi[: t - 1] = previous - reflection * previous[::-1]
        phi[t - 1] = reflection
        variance *= 1.0 - reflection**2
        # x_t given x_0..x_{t-1}, newest sample first
        conditional_mean = np.dot(phi[:t], out[t - 1 :: -1])
        out[t] = conditional_mean + np.sqrt(variance) * noise[t]
    return out


def _require_kind(spec, kind):
    if spec.kind is not kind:
        raise InputError("generator spec kind is %s, expected %s" % (spec.kind, kind))


def gen_fgn(spec, method="auto"):
    """Exact fractional Gaussian noise.

    Parameters
    ----------
    spec : `GeneratorSpec`
        Must have kind fGn.
    method : `str`, optional
        ``"auto"`` (circulant, falling back to recursive), ``"circulant"``
        or ``"hosking"``.

    Returns
    -------
    `TimeSeries`
        Zero-mean, unit-variance model series.

    Raises
    ------
    SynthesisError
        If the circulant embedding fails and N is too large for the
        recursive method, or ``method="circulant"`` and the embedding fails.
    """
    _require_kind(spec, GeneratorKind.FGN)
    return TimeSeries(_fgn_values(spec, method), spec.label)


def _fgn_values(spec, method="auto"):
    if method not in ("auto", "circulant", "hosking"):
        raise InputError("unknown synthesis method %r" % method)
    n = int(spec.length)
    gamma = fgn_autocovariance(spec.hurst, np.arange(n + 1))
    rng = spec.rng()

    if method == "hosking":
        return _hosking_fgn(gamma, rng)

    values = _circulant_fgn(gamma, rng)
    if values is not None:
        return values
    if method == "circulant" or n > HOSKING_MAX_LENGTH:
        raise SynthesisError("synthesis failed, increase N")
    logger.warning(
        "circulant embedding not nonnegative for H=%s N=%d, using recursive method",
        spec.hurst,
        n,
    )
    return _hosking_fgn(gamma, spec.rng())


def gen_fbm(spec, method="auto"):
    """Fractional Brownian motion as the cumulative sum of an fGn draw.

    The returned samples are B_H(1)..B_H(N); B_H(0) = 0 is implicit, so the
    first sample equals the first fGn increment drawn with the same seed.
    """
    _require_kind(spec, GeneratorKind.FBM)
    return TimeSeries(np.cumsum(_fgn_values(spec, method)), spec.label)


def gen_white(spec):
    """I.i.d. standard Gaussian samples."""
    _require_kind(spec, GeneratorKind.WHITE)
    return TimeSeries(spec.rng().standard_normal(int(spec.length)), spec.label)


_GENERATORS = {
    GeneratorKind.FGN: gen_fgn,
    GeneratorKind.FBM: gen_fbm,
    GeneratorKind.WHITE: gen_white,
}


def generate(spec):
    """Dispatch on ``spec.kind``."""
    return _GENERATORS[spec.kind](spec)


def to_frame_sizes(series, frame_range=ETHERNET_FRAME_RANGE):
    """Affinely map a series onto integer frame sizes.

    The minimum sample becomes ``frame_range[0]`` and the maximum
    ``frame_range[1]``; a constant series maps to the lower bound.

    Returns
    -------
    `numpy.ndarray` of `int`
    """
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series)
    low, high = frame_range
    span = float(np.ptp(values))
    if span == 0.0:
        return np.full(values.size, low, dtype=np.int64)
    scaled = low + (values - values.min()) * (high - low) / span
    return np.rint(scaled).astype(np.int64)
