#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Three-method analysis of one series and its report formats.

JSON schema (keys in this order)::

    {
      "label": str, "length": int, "verdict": bool,
      "psa": {"H", "H_err", "D", "D_err", "beta", "beta_err", "rho",
              "rho_err", "r_squared", "band": [lo, hi], "error"},
      "dfa": {"regimes": [{"scale_min", "scale_max", "alpha", "alpha_err",
                           "classification"}, ...],
              "crossovers": [...], "alpha", "alpha_err", "error"},
      "tsa": {"H", "H_min", "H_max", "D", "undefined", "error"},
      "config": {...AnalysisConfig fields...}
    }

A block that failed has ``"error"`` set to the message and `null` values.
Numbers are rounded to 6 significant digits in CSV and table output only.
JSON floats are written at full double precision instead, so that
`report_from_json` rebuilds exactly the values `analyze` produced.
"""

import asyncio
import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import dfa as dfa_mod
from . import psa as psa_mod
from . import tsa as tsa_mod
from .config import AnalysisConfig
from .error import FractalError, TraceFormatError
from .series import as_series, profile
from .util import LineFit, format_sig, ols_fit

logger = logging.getLogger(__name__)

#: Shortest series `analyze` accepts.
MIN_ANALYSIS_LENGTH = 256

#: Margin around 0.5 that H and alpha must clear for the LRD verdict.
LRD_MARGIN = dfa_mod.ALPHA_TOLERANCE

VERDICT_LRD = "fractal with LRD"
VERDICT_NONE = "no evidence of LRD"

CSV_HEADER = (
    "label",
    "method",
    "H",
    "H_err",
    "D",
    "beta",
    "rho",
    "alpha1",
    "alpha1_err",
    "alpha2",
    "alpha2_err",
    "alpha3",
    "alpha3_err",
    "crossover1",
    "crossover2",
    "H_min",
    "H_max",
    "error",
)

REPORT_FORMATS = ("json", "csv", "table")


def _num(value):
    """Plain float, `None` for missing or non-finite values."""
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass(frozen=True)
class PsaBlock:
    hurst: Optional[float] = None
    hurst_err: Optional[float] = None
    dimension: Optional[float] = None
    dimension_err: Optional[float] = None
    beta: Optional[float] = None
    beta_err: Optional[float] = None
    rho: Optional[float] = None
    rho_err: Optional[float] = None
    r_squared: Optional[float] = None
    band: Optional[Tuple[float, float]] = None
    error: Optional[str] = None

    def to_dict(self):
        return {
            "H": self.hurst,
            "H_err": self.hurst_err,
            "D": self.dimension,
            "D_err": self.dimension_err,
            "beta": self.beta,
            "beta_err": self.beta_err,
            "rho": self.rho,
            "rho_err": self.rho_err,
            "r_squared": self.r_squared,
            "band": list(self.band) if self.band is not None else None,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d):
        band = d.get("band")
        return cls(
            d.get("H"),
            d.get("H_err"),
            d.get("D"),
            d.get("D_err"),
            d.get("beta"),
            d.get("beta_err"),
            d.get("rho"),
            d.get("rho_err"),
            d.get("r_squared"),
            tuple(band) if band is not None else None,
            d.get("error"),
        )


@dataclass(frozen=True)
class RegimeRow:
    scale_min: int
    scale_max: int
    alpha: Optional[float]
    alpha_err: Optional[float]
    classification: str


@dataclass(frozen=True)
class DfaBlock:
    regimes: Tuple[RegimeRow, ...] = ()
    crossovers: Tuple[float, ...] = ()
    alpha: Optional[float] = None
    alpha_err: Optional[float] = None
    error: Optional[str] = None

    def to_dict(self):
        return {
            "regimes": [asdict(r) for r in self.regimes],
            "crossovers": list(self.crossovers),
            "alpha": self.alpha,
            "alpha_err": self.alpha_err,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            tuple(RegimeRow(**r) for r in d.get("regimes", ())),
            tuple(d.get("crossovers", ())),
            d.get("alpha"),
            d.get("alpha_err"),
            d.get("error"),
        )


@dataclass(frozen=True)
class TsaBlock:
    hurst: Optional[float] = None
    h_min: Optional[float] = None
    h_max: Optional[float] = None
    dimension: Optional[float] = None
    undefined: int = 0
    error: Optional[str] = None

    def to_dict(self):
        return {
            "H": self.hurst,
            "H_min": self.h_min,
            "H_max": self.h_max,
            "D": self.dimension,
            "undefined": self.undefined,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            d.get("H"),
            d.get("H_min"),
            d.get("H_max"),
            d.get("D"),
            d.get("undefined", 0),
            d.get("error"),
        )


@dataclass
class Artifacts:
    """Intermediate objects kept for plot export; never serialized."""

    spectrum: Optional[psa_mod.Spectrum] = None
    spectral_band: Optional[Tuple[float, float]] = None
    curve: Optional[dfa_mod.FluctuationCurve] = None
    track: Optional[tsa_mod.LocalHurstTrack] = None


@dataclass(frozen=True)
class HurstReport:
    """Everything `analyze` found about one series.

    Attributes
    ----------
    label : `str`
    length : `int`
    psa : `PsaBlock`
    dfa : `DfaBlock`
    tsa : `TsaBlock`
    config : `dict`
        `AnalysisConfig.to_dict` of the run.
    verdict : `bool`
        `True` for "fractal with LRD".
    artifacts : `Artifacts`
    """

    label: str
    length: int
    psa: PsaBlock
    dfa: DfaBlock
    tsa: TsaBlock
    config: dict
    verdict: bool = False
    artifacts: Optional[Artifacts] = field(default=None, compare=False, repr=False)

    @property
    def verdict_text(self):
        return VERDICT_LRD if self.verdict else VERDICT_NONE

    def to_dict(self):
        return {
            "label": self.label,
            "length": self.length,
            "verdict": self.verdict,
            "psa": self.psa.to_dict(),
            "dfa": self.dfa.to_dict(),
            "tsa": self.tsa.to_dict(),
            "config": self.config,
        }


def lrd_verdict(psa, dfa):
    """0.5 < H_PSA < 1 and some DFA exponent in (0.5, 1.5), with margin."""
    if psa.error is not None or psa.hurst is None:
        return False
    if not 0.5 + LRD_MARGIN < psa.hurst < 1.0:
        return False
    alphas = [r.alpha for r in dfa.regimes] + [dfa.alpha]
    return any(a is not None and 0.5 + LRD_MARGIN < a < 1.5 for a in alphas)


def _psa_block(values, config, artifacts):
    try:
        result = psa_mod.psa_analyze(
            values, config.psa_band, config.psa_detrend, config.psa_segments
        )
    except FractalError as e:
        logger.warning("PSA failed: %s", e)
        return PsaBlock(error=str(e))
    artifacts.spectrum = result.spectrum
    artifacts.spectral_band = result.fit.fit_band
    ex = result.exponents
    return PsaBlock(
        _num(ex.hurst),
        _num(ex.hurst_err),
        _num(ex.dimension),
        _num(ex.dimension_err),
        _num(ex.beta),
        _num(ex.beta_err),
        _num(ex.rho),
        _num(ex.rho_err),
        _num(result.fit.r_squared),
        result.fit.fit_band,
    )


def _dfa_scales(length, config):
    if config.dfa_scales is not None:
        return config.dfa_scales
    return dfa_mod.default_scales(length, config.dfa_scale_count)


def _dfa_block(series, config, artifacts):
    try:
        curve, result = dfa_mod.dfa(
            series,
            _dfa_scales(len(series), config),
            config.max_regimes,
            config.dfa_fit_range,
        )
    except FractalError as e:
        logger.warning("DFA failed: %s", e)
        return DfaBlock(error=str(e))
    artifacts.curve = curve
    regimes = tuple(
        RegimeRow(
            r.scale_min, r.scale_max, _num(r.alpha), _num(r.stderr), str(r.process)
        )
        for r in result.regimes
    )
    return DfaBlock(
        regimes,
        tuple(_num(c) for c in result.crossovers),
        _num(result.global_alpha),
        _num(result.global_stderr),
    )


def _tsa_block(values, config, artifacts):
    try:
        _, track = tsa_mod.tsa_analyze(
            values, config.wavelet_spec(), config.tsa_detrend
        )
        hurst = tsa_mod.global_hurst(track)
    except FractalError as e:
        logger.warning("TSA failed: %s", e)
        return TsaBlock(error=str(e))
    artifacts.track = track
    return TsaBlock(
        _num(hurst),
        _num(track.h_min),
        _num(track.h_max),
        _num(2.0 - hurst),
        int(track.undefined),
    )


def _prepare(series, config):
    series = as_series(series).require_length(MIN_ANALYSIS_LENGTH)
    config = config or AnalysisConfig()
    if config.integrate:
        motion = series.with_values(profile(series).values)
    else:
        motion = series
    return series, motion, config


def _assemble(series, config, psa, dfa, tsa, artifacts):
    report = HurstReport(
        label=series.label,
        length=len(series),
        psa=psa,
        dfa=dfa,
        tsa=tsa,
        config=config.to_dict(),
        verdict=lrd_verdict(psa, dfa),
        artifacts=artifacts,
    )
    logger.info("%s: %s", series.label or "series", report.verdict_text)
    return report


async def analyze_async(series, config=None, executor=None):
    """Run the three estimator blocks concurrently on `executor`.

    Parameters
    ----------
    series : `TimeSeries` or array_like
        At least 256 samples.
    config : `AnalysisConfig`, optional
    executor : `concurrent.futures.Executor`, optional
        `None` uses the loop's default executor.

    Returns
    -------
    `HurstReport`
    """
    series, motion, config = _prepare(series, config)
    artifacts = Artifacts()
    loop = asyncio.get_running_loop()
    psa, dfa, tsa = await asyncio.gather(
        loop.run_in_executor(executor, _psa_block, motion, config, artifacts),
        loop.run_in_executor(executor, _dfa_block, series, config, artifacts),
        loop.run_in_executor(executor, _tsa_block, motion, config, artifacts),
    )
    return _assemble(series, config, psa, dfa, tsa, artifacts)


def analyze(series, config=None):
    """Synchronous `analyze_async`.

    Raises
    ------
    SeriesTooShortError
        If the series has fewer than 256 samples.
    """
    as_series(series).require_length(MIN_ANALYSIS_LENGTH)
    return asyncio.run(analyze_async(series, config))


def _json_bytes(report):
    text = json.dumps(report.to_dict(), indent=2, allow_nan=False)
    return (text + "\n").encode("utf-8")


def _csv_rows(report):
    psa, dfa, tsa = report.psa, report.dfa, report.tsa
    blank = {k: "" for k in CSV_HEADER}

    row = dict(blank, label=report.label, method="PSA", error=psa.error or "")
    row.update(
        H=format_sig(psa.hurst),
        H_err=format_sig(psa.hurst_err),
        D=format_sig(psa.dimension),
        beta=format_sig(psa.beta),
        rho=format_sig(psa.rho),
    )
    yield row

    row = dict(blank, label=report.label, method="DFA", error=dfa.error or "")
    if dfa.alpha is not None:
        row.update(H=format_sig(dfa.alpha), D=format_sig(2.0 - dfa.alpha))
    row.update(H_err=format_sig(dfa.alpha_err))
    for i, regime in enumerate(dfa.regimes[:3], 1):
        row["alpha%d" % i] = format_sig(regime.alpha)
        row["alpha%d_err" % i] = format_sig(regime.alpha_err)
    for i, scale in enumerate(dfa.crossovers[:2], 1):
        row["crossover%d" % i] = format_sig(scale)
    yield row

    row = dict(blank, label=report.label, method="TSA", error=tsa.error or "")
    row.update(
        H=format_sig(tsa.hurst),
        D=format_sig(tsa.dimension),
        H_min=format_sig(tsa.h_min),
        H_max=format_sig(tsa.h_max),
    )
    yield row


def _csv_bytes(report):
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(_csv_rows(report))
    return out.getvalue().encode("utf-8")


def _pm(value, err):
    if value is None:
        return "-"
    if err is None:
        return format_sig(value)
    return "%s ± %s" % (format_sig(value), format_sig(err))


def _table_bytes(report):
    psa, dfa, tsa = report.psa, report.dfa, report.tsa
    lines = ["%s (N=%d)" % (report.label or "series", report.length), ""]

    lines.append("PSA")
    if psa.error:
        lines.append("  error: %s" % psa.error)
    else:
        for name, value, err in (
            ("H", psa.hurst, psa.hurst_err),
            ("D", psa.dimension, psa.dimension_err),
            ("beta", psa.beta, psa.beta_err),
            ("rho", psa.rho, psa.rho_err),
        ):
            lines.append("  %-6s %s" % (name, _pm(value, err)))
    lines.append("")

    lines.append("DFA")
    if dfa.error:
        lines.append("  error: %s" % dfa.error)
    else:
        lines.append("  %-12s %-22s %s" % ("scales", "alpha", "classification"))
        for r in dfa.regimes:
            scales = "%d-%d" % (r.scale_min, r.scale_max)
            alpha = _pm(r.alpha, r.alpha_err)
            lines.append("  %-12s %-22s %s" % (scales, alpha, r.classification))
        if dfa.crossovers:
            crossings = ", ".join(format_sig(c) for c in dfa.crossovers)
            lines.append("  crossovers at s = %s" % crossings)
        lines.append("  global alpha %s" % _pm(dfa.alpha, dfa.alpha_err))
    lines.append("")

    lines.append("TSA")
    if tsa.error:
        lines.append("  error: %s" % tsa.error)
    else:
        lines.append("  %-10s %-10s %-10s %s" % ("H", "Min{H(t)}", "Max{H(t)}", "D"))
        lines.append(
            "  %-10s %-10s %-10s %s"
            % tuple(
                format_sig(v) for v in (tsa.hurst, tsa.h_min, tsa.h_max, tsa.dimension)
            )
        )
    lines.append("")

    lines.append("verdict: %s" % report.verdict_text)
    return ("\n".join(lines) + "\n").encode("utf-8")


_EMITTERS = {"json": _json_bytes, "csv": _csv_bytes, "table": _table_bytes}


def emit_report(report, fmt="json"):
    """Serialize a report as ``json``, ``csv`` or ``table`` bytes."""
    try:
        emitter = _EMITTERS[fmt]
    except KeyError:
        raise ValueError("unknown report format %r" % fmt) from None
    return emitter(report)


def report_from_json(data):
    """Inverse of ``emit_report(report, "json")`` (artifacts are not kept)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        d = json.loads(data)
        return HurstReport(
            label=d["label"],
            length=d["length"],
            psa=PsaBlock.from_dict(d["psa"]),
            dfa=DfaBlock.from_dict(d["dfa"]),
            tsa=TsaBlock.from_dict(d["tsa"]),
            config=d["config"],
            verdict=d["verdict"],
        )
    except (ValueError, KeyError, TypeError) as e:
        raise TraceFormatError("not a report: %s" % e) from None


def _loglog_rows(x, y, line):
    keep = (x > 0) & (y > 0)
    lx, ly = np.log10(x[keep]), np.log10(y[keep])
    return zip(lx, ly, line.predict(lx))


def emit_plot_data(obj, band=None):
    """Plot-ready CSV for a curve, spectrum or local Hurst track.

    Curves and spectra give ``x,y,fit_y`` in log10 coordinates, where
    ``fit_y`` is the least-squares line (over all points for a curve, over
    `band` or the default band for a spectrum). Tracks give ``t,H_t`` for
    the instants where H(t) is defined.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if isinstance(obj, tsa_mod.LocalHurstTrack):
        writer.writerow(("t", "H_t"))
        writer.writerows(
            (int(t), repr(float(h))) for t, h in zip(obj.times, obj.values)
        )
        return out.getvalue().encode("utf-8")

    if isinstance(obj, dfa_mod.FluctuationCurve):
        x, y = obj.scales.astype(float), obj.fluctuations
        keep = y > 0
        line = ols_fit(np.log10(x[keep]), np.log10(y[keep]))
    elif isinstance(obj, psa_mod.Spectrum):
        x, y = obj.frequencies, obj.powers
        fit = psa_mod.fit_beta(obj, band)
        line = LineFit(
            slope=-fit.beta,
            intercept=fit.intercept / math.log(10.0),
            stderr=fit.stderr,
            r_squared=fit.r_squared,
            count=fit.bins,
        )
    else:
        raise TypeError("cannot export %s as plot data" % type(obj).__name__)

    writer.writerow(("x", "y", "fit_y"))
    writer.writerows(
        (repr(float(a)), repr(float(b)), repr(float(c)))
        for a, b, c in _loglog_rows(x, y, line)
    )
    return out.getvalue().encode("utf-8")


def plot_files(report):
    """(file name, bytes) for each plot artifact of a report."""
    label = report.label or "series"
    arts = report.artifacts or Artifacts()
    files = []
    if arts.spectrum is not None:
        data = emit_plot_data(arts.spectrum, arts.spectral_band)
        files.append(("%s_psa.csv" % label, data))
    if arts.curve is not None:
        files.append(("%s_dfa.csv" % label, emit_plot_data(arts.curve)))
    if arts.track is not None:
        files.append(("%s_tsa.csv" % label, emit_plot_data(arts.track)))
    return files
