"""fractraffic - fractal and long-range dependence analysis of network traffic

Estimates the Hurst exponent of frame-size traces with three methods
(power-spectral analysis, detrended fluctuation analysis and a Morlet
time-scale analysis) and synthesizes seeded fGn/fBm for validation.
"""

__version__ = "0.1.0"
__author__ = "fractraffic Contributors"
__license__ = "MIT"

from .lib import AnalysisConfig, HurstReport, TimeSeries, analyze

__all__ = ["AnalysisConfig", "HurstReport", "TimeSeries", "analyze"]
