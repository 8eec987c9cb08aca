#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Generator and estimator self-checks run by ``fractraffic validate``.

Each check synthesizes seeded signals with known exponents and compares
the estimators against them, or compares a fast implementation against a
direct one. Sizes are kept moderate so the suite finishes in seconds.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dfa, psa, series, synth, tsa

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def __str__(self):
        mark = "PASS" if self.passed else "FAIL"
        return "%s %s (%s)" % (mark, self.name, self.detail)


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[], CheckResult]


def _result(name, passed, detail):
    return CheckResult(name, bool(passed), detail)


def check_exponent_identities():
    name = "exponent identities"
    worst = 0.0
    for h in np.linspace(0.01, 0.99, 1000):
        ex = series.beta_relations(hurst=h)
        worst = max(
            worst,
            abs(ex.dimension - (2.0 - h)),
            abs(ex.beta - (5.0 - 2.0 * ex.dimension)),
            abs(ex.rho - (2.0 ** (2.0 * h - 1.0) - 1.0)),
        )
    worst = max(worst, abs(series.hurst_to_rho(0.5)))
    return _result(name, worst <= 1e-12, "max deviation %.1e" % worst)


def check_generator_correlation(seeds=20, length=2**12, hurst=0.7):
    name = "fGn lag-1 correlation"
    target = 2.0 ** (2.0 * hurst - 1.0) - 1.0
    lag1 = []
    for seed in range(seeds):
        x = synth.gen_fgn(synth.GeneratorSpec(hurst, length, seed))
        acov = series.autocovariance(x, 1)
        lag1.append(acov[1] / acov[0])
    got = float(np.mean(lag1))
    return _result(
        name, abs(got - target) <= 0.02, "%.4f vs %.4f" % (got, target)
    )


def _brute_fluctuation(y, s):
    n = len(y)
    count = n // s
    total = 0.0
    starts = [v * s for v in range(count)] + [n - (v + 1) * s for v in range(count)]
    for start in starts:
        seg = y[start : start + s]
        i = np.arange(s, dtype=float)
        slope, intercept = np.polyfit(i, seg, 1)
        total += float(np.mean((seg - (slope * i + intercept)) ** 2))
    return math.sqrt(total / (2 * count))


def check_dfa_oracle(seed=3, length=256):
    name = "DFA matches direct loop"
    x = synth.gen_white(synth.GeneratorSpec(0.5, length, seed, "white"))
    prof = series.profile(x)
    curve = dfa.fluctuation_function(prof, [4, 8, 16])
    worst = max(
        abs(f - _brute_fluctuation(prof.values, int(s)))
        for s, f in zip(curve.scales, curve.fluctuations)
    )
    return _result(name, worst <= 1e-9, "max deviation %.1e" % worst)


def check_dfa_accuracy(hurst=0.7, length=2**14, seeds=3):
    name = "DFA alpha on fGn(H=%.1f)" % hurst
    alphas = []
    for seed in range(seeds):
        x = synth.gen_fgn(synth.GeneratorSpec(hurst, length, seed))
        curve = dfa.fluctuation_function(series.profile(x))
        alphas.append(dfa.fit_alpha(curve)[0])
    got = float(np.mean(alphas))
    return _result(name, abs(got - hurst) <= 0.05, "alpha %.3f" % got)


def check_psa(hurst=0.7, length=2**14, seed=5):
    name = "PSA beta on fBm(H=%.1f)" % hurst
    x = synth.gen_fbm(synth.GeneratorSpec(hurst, length, seed, "fbm"))
    result = psa.psa_analyze(x)
    parseval = psa.periodogram(x, detrend="mean")
    energy = float(np.sum(psa.preprocess(x.values, "mean") ** 2))
    relative = abs(parseval.total_power() - energy) / energy
    target = 2.0 * hurst + 1.0
    ok = abs(result.fit.beta - target) <= 0.25 and relative <= 1e-9
    detail = "beta %.3f vs %.1f, Parseval %.1e" % (result.fit.beta, target, relative)
    return _result(name, ok, detail)


def check_cwt_oracle(seed=11, length=1024, points=5):
    name = "CWT matches direct summation"
    x = synth.gen_white(synth.GeneratorSpec(0.5, length, seed, "white")).values
    spec = tsa.WaveletSpec()
    scalogram = tsa.morlet_cwt(x, spec)
    rng = np.random.Generator(np.random.PCG64(seed))
    s = np.arange(length)
    worst = 0.0
    for _ in range(points):
        i = int(rng.integers(scalogram.scales.size))
        t = int(rng.integers(length))
        a = scalogram.scales[i]
        kernel = np.conj(tsa.morlet((s - t) / a, spec.omega0))
        direct = np.sum(x * kernel) / math.sqrt(a)
        got = scalogram.coefficients[i, t]
        worst = max(worst, abs(got - direct) / max(abs(direct), 1e-300))
    return _result(name, worst < 1e-6, "max relative error %.1e" % worst)


def check_tsa(hurst=0.7, length=2**14, seed=2):
    name = "TSA global H on fBm(H=%.1f)" % hurst
    x = synth.gen_fbm(synth.GeneratorSpec(hurst, length, seed, "fbm"))
    _, track = tsa.tsa_analyze(x)
    estimate = tsa.global_hurst(track)
    q1, q3 = np.percentile(track.values, [25, 75])
    ok = abs(estimate - hurst) <= 0.12 and q3 - q1 < 0.35
    return _result(name, ok, "H %.3f, IQR of H(t) %.3f" % (estimate, q3 - q1))


CHECKS = (
    Check("identities", check_exponent_identities),
    Check("generator", check_generator_correlation),
    Check("dfa-oracle", check_dfa_oracle),
    Check("dfa", check_dfa_accuracy),
    Check("psa", check_psa),
    Check("cwt-oracle", check_cwt_oracle),
    Check("tsa", check_tsa),
)


def run_checks(checks=CHECKS):
    """Run every check; an exception counts as a failure of that check."""
    results = []
    for check in checks:
        try:
            result = check.run()
        except Exception as e:
            logger.debug("check %s raised", check.name, exc_info=True)
            detail = "raised %s: %s" % (type(e).__name__, e)
            result = CheckResult(check.name, False, detail)
        logger.info("%s", result)
        results.append(result)
    return results


def benchmark_table(rows):
    """Text table of `dfa.dfa_benchmark` rows."""
    lines = ["%-28s %-6s %-8s %s" % ("process", "H", "alpha", "spread")]
    for row in rows:
        lines.append(
            "%-28s %-6.2f %-8.4f %.4f" % (row.name, row.hurst, row.alpha, row.spread)
        )
    return "\n".join(lines)
