#!/usr/bin/env python3
# -*- coding: utf-8 -*-
class FractalError(Exception):
    """Base class for all exceptions in the fractraffic package"""


class InputError(FractalError):
    """Exception raised when user-supplied data or settings are invalid"""


class EmptySeriesError(InputError):
    """Exception raised when a series has no samples"""


class NonFiniteSampleError(InputError):
    """Exception raised when a series contains NaN or infinity"""


class SeriesTooShortError(InputError):
    """Exception raised when a series is shorter than an estimator needs"""


class TraceFormatError(InputError):
    """Exception raised when a trace file cannot be parsed"""


class ConfigError(InputError):
    """Exception raised when there is an error in the analysis configuration"""


class HurstRangeError(InputError):
    """Exception raised when a Hurst exponent lies outside (0, 1)"""


class LagError(InputError):
    """Exception raised when an autocovariance lag is out of range"""


class EstimationError(FractalError):
    """Base class for estimator failures"""


class SpectralSupportError(EstimationError):
    """Exception raised when a spectral band holds too few usable bins"""


class ScaleError(EstimationError):
    """Exception raised when a DFA scale or scale range is unusable"""


class SynthesisError(EstimationError):
    """Exception raised when a synthetic series cannot be generated"""


class LocalHurstError(EstimationError):
    """Exception raised when no local Hurst estimate is defined"""
