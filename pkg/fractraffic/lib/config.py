#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import dataclasses
import json
import logging
import os
from pathlib import Path
from typing import Optional, Tuple

import yaml

from .error import ConfigError
from .tsa import WaveletSpec

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(asctime).19s] [%(name)s] [%(levelname)s] %(message)s"

PRESETS_ENV = "FRACTRAFFIC_PRESETS_BASE"


class RobustFileHandler(logging.FileHandler):
    """FileHandler that ignores EINVAL when flushing"""

    def flush(self):
        try:
            super().flush()
        except OSError as e:
            # some platforms report a stale handle as EINVAL on flush
            if e.errno != 22:
                raise


def configure_logger(logger, log_file=None, log_format=None, log_level=logging.INFO):
    """Attach a file or stream handler to a logger.

    Parameters
    ----------
    logger : `logging.Logger` or `str`
        Logger or logger name.
    log_file : `str`, file-like or `None`
        Path to append to, a stream, or `None` for stderr.
    log_format : `str` or `None`
    log_level : `int`

    Returns
    -------
    `logging.Logger`
    """
    if isinstance(log_file, (str, os.PathLike)):
        handler = RobustFileHandler(
            os.fspath(log_file), mode="a", encoding="utf-8", errors="replace"
        )
    else:
        handler = logging.StreamHandler(log_file)

    if isinstance(logger, str):
        logger = logging.getLogger(logger)

    handler.setFormatter(logging.Formatter(log_format))
    logger.addHandler(handler)
    logger.setLevel(log_level)
    return logger


def parse_log_level(name):
    level = getattr(logging, str(name).upper(), None)
    if not isinstance(level, int):
        raise ConfigError("unknown log level %r" % name)
    return level


def configure_logging(level="warning", log_file=None):
    """Root logging on stderr, plus `log_file` when given.

    Report output goes to stdout, so nothing here writes there.
    """
    level = parse_log_level(level)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)
    if log_file is not None:
        configure_logger(logging.getLogger(), log_file, LOG_FORMAT, level)


def _int(value):
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ValueError("expected an integer, got %r" % (value,))
    number = float(value)
    if number != int(number):
        raise ValueError("expected an integer, got %r" % (value,))
    return int(number)


def _float(value):
    if isinstance(value, bool):
        raise ValueError("expected a number, got %r" % (value,))
    return float(value)


def _bool(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "yes", "on", "1"):
        return True
    if isinstance(value, str) and value.lower() in ("false", "no", "off", "0"):
        return False
    raise ValueError("expected a boolean, got %r" % (value,))


def _optional(convert):
    def wrapper(value):
        if value is None or (isinstance(value, str) and value.lower() == "none"):
            return None
        return convert(value)

    return wrapper


def _pair(value):
    if isinstance(value, str):
        value = yaml.safe_load("[%s]" % value.strip("[]() "))
    low, high = value
    low, high = float(low), float(high)
    if low > high:
        raise ValueError("interval [%s, %s] is empty" % (low, high))
    return (low, high)


def _int_tuple(value):
    if isinstance(value, str):
        value = yaml.safe_load("[%s]" % value.strip("[]() "))
    return tuple(_int(v) for v in value)


def _detrend(value):
    if value not in ("mean", "bridge"):
        raise ValueError("detrend must be 'mean' or 'bridge', got %r" % (value,))
    return value


_CONVERTERS = {
    "dfa_scales": _optional(_int_tuple),
    "dfa_scale_count": _int,
    "dfa_fit_range": _optional(_pair),
    "max_regimes": _int,
    "psa_band": _optional(_pair),
    "psa_detrend": _detrend,
    "psa_segments": _int,
    "omega0": _float,
    "tsa_scale_min": _float,
    "tsa_octaves": _float,
    "tsa_scale_count": _int,
    "tsa_smoothing": _int,
    "tsa_band": _optional(_pair),
    "tsa_detrend": _detrend,
    "integrate": _bool,
    "seed": _int,
}


@dataclasses.dataclass(frozen=True)
class AnalysisConfig:
    """Every tunable of `analyze`.

    Attributes
    ----------
    dfa_scales : `tuple` of `int` or `None`
        Explicit DFA grid; `None` uses `dfa_scale_count` log-spaced scales.
    dfa_scale_count : `int`
    dfa_fit_range : (`float`, `float`) or `None`
        Scale interval of the global alpha fit.
    max_regimes : `int`
    psa_band : (`float`, `float`) or `None`
        Frequency band, cycles per sample; `None` is [4/N, 1/8].
    psa_detrend : `str`
    psa_segments : `int`
    omega0 : `float`
    tsa_scale_min, tsa_octaves : `float`
    tsa_scale_count, tsa_smoothing : `int`
    tsa_band : (`float`, `float`) or `None`
    tsa_detrend : `str`
        Detrending applied before the wavelet transform, as `psa_detrend`.
    integrate : `bool`
        Cumulatively sum the input before the spectral and wavelet blocks.
    seed : `int`
        Echoed in reports; used by the self-check suite.
    """

    dfa_scales: Optional[Tuple[int, ...]] = None
    dfa_scale_count: int = 20
    dfa_fit_range: Optional[Tuple[float, float]] = None
    max_regimes: int = 3
    psa_band: Optional[Tuple[float, float]] = None
    psa_detrend: str = "bridge"
    psa_segments: int = 1
    omega0: float = 6.0
    tsa_scale_min: float = 16.0
    tsa_octaves: float = 4.0
    tsa_scale_count: int = 48
    tsa_smoothing: int = 1024
    tsa_band: Optional[Tuple[float, float]] = None
    tsa_detrend: str = "bridge"
    integrate: bool = True
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.max_regimes <= 3:
            raise ConfigError("max_regimes must be between 1 and 3")
        if self.dfa_scale_count < 5:
            raise ConfigError("dfa_scale_count must be at least 5")
        if self.psa_segments < 1:
            raise ConfigError("psa_segments must be positive")

    @classmethod
    def from_mapping(cls, mapping, base=None):
        """Build from a plain mapping, on top of `base` (defaults if `None`).

        Raises
        ------
        ConfigError
            On an unknown key or a value of the wrong type.
        """
        values = (base or cls()).to_dict()
        for key, raw in (mapping or {}).items():
            key = str(key).replace("-", "_")
            if key not in _CONVERTERS:
                raise ConfigError("unknown config key %r" % key)
            try:
                values[key] = _CONVERTERS[key](raw)
            except (TypeError, ValueError) as e:
                raise ConfigError("bad value for %s: %s" % (key, e)) from None
        return cls(**values)

    def to_dict(self):
        """Plain mapping in field order; tuples become lists."""
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    def wavelet_spec(self):
        try:
            return WaveletSpec(
                omega0=self.omega0,
                scale_min=self.tsa_scale_min,
                octaves=self.tsa_octaves,
                scale_count=self.tsa_scale_count,
                smoothing=self.tsa_smoothing,
                band=self.tsa_band,
            )
        except ConfigError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigError(str(e)) from None


def _parse_key_values(text, path):
    conf = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigError("%s: line %d is not key = value" % (path, lineno))
        try:
            conf[key.strip()] = yaml.safe_load(value.strip())
        except yaml.YAMLError:
            raise ConfigError("%s: bad value at line %d" % (path, lineno)) from None
    return conf


def load_config(path):
    """Read a config file into a mapping.

    ``.yaml``/``.yml`` files are read with PyYAML, ``.json`` files with
    json, anything else as ``key = value`` lines with ``#`` comments.

    Raises
    ------
    ConfigError
        If the file does not parse or is not a mapping.
    OSError
        If the file cannot be read.
    """
    path = str(path)
    with open(path, "r", encoding="utf-8") as fp:
        text = fp.read()
    try:
        if path.endswith((".yaml", ".yml")):
            conf = yaml.safe_load(text)
        elif path.endswith(".json"):
            conf = json.loads(text)
        else:
            conf = _parse_key_values(text, path)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigError("cannot parse %s: %s" % (path, e)) from None
    if conf is None:
        return {}
    if not isinstance(conf, dict):
        raise ConfigError("%s does not hold a mapping" % path)
    return conf


def presets_dir():
    """Directory holding ``*.json`` presets; `FRACTRAFFIC_PRESETS_BASE` wins."""
    base = os.environ.get(PRESETS_ENV)
    if base:
        return Path(base)
    return Path(__file__).resolve().parent.parent / "presets"


def list_presets():
    """(name, description) of every readable preset, sorted by name."""
    presets = []
    directory = presets_dir()
    if not directory.exists():
        return presets
    for preset_file in sorted(directory.glob("*.json")):
        try:
            with open(preset_file, "r", encoding="utf-8") as fp:
                data = json.load(fp)
        except (OSError, ValueError) as e:
            logger.warning("failed to read preset %s: %s", preset_file, e)
            continue
        presets.append((preset_file.stem, data.get("description", "")))
    return presets


def load_preset(name="default"):
    """`AnalysisConfig` from a packaged preset, or from a path to one.

    Raises
    ------
    ConfigError
        If the preset is missing or invalid.
    """
    if "/" in name or "\\" in name or name.endswith(".json"):
        preset_path = Path(name)
    else:
        preset_path = presets_dir() / ("%s.json" % name)
    try:
        with open(preset_path, "r", encoding="utf-8") as fp:
            data = json.load(fp)
    except OSError:
        raise ConfigError("no preset named %r" % name) from None
    except ValueError as e:
        raise ConfigError("preset %r is not valid JSON: %s" % (name, e)) from None
    logger.debug("loaded preset %s from %s", data.get("name", name), preset_path)
    return AnalysisConfig.from_mapping(data.get("analysis", {}))


def resolve_config(preset="default", config_file=None, overrides=None):
    """Preset, then config file, then explicit overrides; later wins."""
    config = load_preset(preset)
    if config_file is not None:
        config = AnalysisConfig.from_mapping(load_config(config_file), config)
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    if overrides:
        config = AnalysisConfig.from_mapping(overrides, config)
    return config
