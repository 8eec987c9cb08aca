#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Frame-size trace ingestion.

Three line-oriented UTF-8 formats are read:

- ``sizes``: one frame size in bytes per line,
- ``timed``: ``timestamp_seconds,size_bytes`` per line,
- ``values``: one finite real per line (raw synthetic samples).

Blank lines and lines starting with ``#`` are ignored. The path ``-``
reads standard input.
"""

import enum
import logging
import math
import os
import sys
from dataclasses import dataclass

from .error import TraceFormatError
from .series import TimeSeries

logger = logging.getLogger(__name__)

MAX_FRAME_SIZE = 2**20


class TraceFormat(enum.Enum):
    SIZES = "sizes"
    TIMED = "timed"
    VALUES = "values"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TraceFile:
    """A trace on disk (or ``-`` for stdin) and how to read it.

    Attributes
    ----------
    path : `str`
    format : `TraceFormat`
    label : `str`
        Direction label such as ``SERV-1``; defaults to the file stem.
    """

    path: str
    format: TraceFormat = TraceFormat.SIZES
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "format", TraceFormat(self.format))
        if not self.label:
            if self.path == "-":
                label = "stdin"
            else:
                label = os.path.splitext(os.path.basename(self.path))[0]
            object.__setattr__(self, "label", label)

    def __str__(self):
        return '<trace "%s" (%s)>' % (self.path, self.format)

    __repr__ = __str__


def _parse_size(text, lineno):
    try:
        size = int(text)
    except ValueError:
        raise TraceFormatError("malformed line %d" % lineno) from None
    if size <= 0:
        raise TraceFormatError("nonpositive size at line %d" % lineno)
    if size > MAX_FRAME_SIZE:
        raise TraceFormatError("size exceeds 2^20 at line %d" % lineno)
    return size


def _parse_real(text, lineno):
    try:
        value = float(text)
    except ValueError:
        raise TraceFormatError("malformed line %d" % lineno) from None
    if not math.isfinite(value):
        raise TraceFormatError("malformed line %d" % lineno)
    return value


def parse_lines(lines, fmt=TraceFormat.SIZES):
    """Parse trace lines.

    Parameters
    ----------
    lines : iterable of `str`
    fmt : `TraceFormat` or `str`

    Returns
    -------
    (`list` of `float`, `list` of `float` or `None`)
        Values in file order and, for the timed format, their timestamps.

    Raises
    ------
    TraceFormatError
    """
    fmt = TraceFormat(fmt)
    values = []
    stamps = [] if fmt is TraceFormat.TIMED else None
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if fmt is TraceFormat.SIZES:
            values.append(_parse_size(line, lineno))
        elif fmt is TraceFormat.VALUES:
            values.append(_parse_real(line, lineno))
        else:
            fields = line.split(",")
            if len(fields) != 2:
                raise TraceFormatError("malformed line %d" % lineno)
            stamp = _parse_real(fields[0].strip(), lineno)
            if stamps and stamp < stamps[-1]:
                raise TraceFormatError("timestamps decrease at line %d" % lineno)
            stamps.append(stamp)
            values.append(_parse_size(fields[1].strip(), lineno))
    if not values:
        raise TraceFormatError("empty trace")
    return values, stamps


def _decoded(lines):
    """Decode byte lines as UTF-8, one line at a time; `str` lines pass."""
    for lineno, line in enumerate(lines, 1):
        if isinstance(line, bytes):
            try:
                line = line.decode("utf-8")
            except UnicodeDecodeError:
                raise TraceFormatError("invalid UTF-8 at line %d" % lineno) from None
        yield line


def load_trace(trace):
    """Read a `TraceFile` into a `TimeSeries`.

    Timestamps of the timed format are kept as metadata only; the series is
    per frame, not binned.

    Raises
    ------
    TraceFormatError
        On a malformed, empty, out-of-range or non-UTF-8 trace.
    OSError
        If the file cannot be opened.
    """
    if trace.path == "-":
        stream = getattr(sys.stdin, "buffer", sys.stdin)
        values, stamps = parse_lines(_decoded(stream), trace.format)
    else:
        with open(trace.path, "rb") as fp:
            values, stamps = parse_lines(_decoded(fp), trace.format)
    logger.debug("read %d samples from %s", len(values), trace)
    return TimeSeries(values, trace.label, stamps)


def dump_lines(values, fmt=TraceFormat.SIZES):
    """Render samples as trace lines (sizes as integers, values as reals)."""
    fmt = TraceFormat(fmt)
    if fmt is TraceFormat.SIZES:
        return "".join("%d\n" % v for v in values)
    if fmt is TraceFormat.VALUES:
        return "".join("%r\n" % float(v) for v in values)
    raise TraceFormatError("cannot write the %s format" % fmt)
