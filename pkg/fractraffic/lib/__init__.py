"""fractraffic library - series, generators, estimators and reports."""

from .config import AnalysisConfig, load_config, load_preset
from .dfa import detect_crossovers, fit_alpha, fluctuation_function
from .error import EstimationError, FractalError, InputError
from .psa import periodogram, psa_estimate
from .report import HurstReport, analyze, emit_plot_data, emit_report
from .series import ExponentSet, TimeSeries, beta_relations, profile
from .synth import GeneratorSpec, gen_fbm, gen_fgn, gen_white
from .trace import TraceFile, load_trace
from .tsa import WaveletSpec, morlet_cwt, tsa_report

__all__ = [
    "AnalysisConfig",
    "EstimationError",
    "ExponentSet",
    "FractalError",
    "GeneratorSpec",
    "HurstReport",
    "InputError",
    "TimeSeries",
    "TraceFile",
    "WaveletSpec",
    "analyze",
    "beta_relations",
    "detect_crossovers",
    "emit_plot_data",
    "emit_report",
    "fit_alpha",
    "fluctuation_function",
    "gen_fbm",
    "gen_fgn",
    "gen_white",
    "load_config",
    "load_preset",
    "load_trace",
    "morlet_cwt",
    "periodogram",
    "profile",
    "psa_estimate",
    "tsa_report",
]
