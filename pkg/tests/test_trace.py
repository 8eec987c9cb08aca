import io

import pytest

from fractraffic.lib import trace
from fractraffic.lib.error import TraceFormatError


def test_sizes_format(write_trace):
    path = write_trace("serv.csv", "1500\n64\n512\n")
    series = trace.load_trace(trace.TraceFile(path))
    assert series.values.tolist() == [1500, 64, 512]
    assert series.label == "serv"
    assert series.timestamps is None


def test_timed_format_keeps_timestamps(write_trace):
    path = write_trace("t.csv", "0.001,1500\n0.002,64\n")
    series = trace.load_trace(trace.TraceFile(path, "timed", "SERV-2"))
    assert series.values.tolist() == [1500, 64]
    assert series.timestamps.tolist() == [0.001, 0.002]
    assert series.label == "SERV-2"


def test_values_format(write_trace):
    path = write_trace("raw.txt", "0.5\n-1.25\n3e-3\n")
    series = trace.load_trace(trace.TraceFile(path, trace.TraceFormat.VALUES))
    assert series.values.tolist() == [0.5, -1.25, 0.003]


def test_comments_and_blank_lines_are_skipped(write_trace):
    path = write_trace("c.csv", "# frame sizes\n1500\n\n  64  \n")
    assert trace.load_trace(trace.TraceFile(path)).values.tolist() == [1500, 64]


@pytest.mark.parametrize(
    "text, fmt, message",
    [
        ("1500\nabc\n", "sizes", "malformed line 2"),
        ("1500\n1.5\n", "sizes", "malformed line 2"),
        ("", "sizes", "empty trace"),
        ("# nothing\n\n", "sizes", "empty trace"),
        ("1500\n0\n", "sizes", "nonpositive size at line 2"),
        ("-4\n", "sizes", "nonpositive size at line 1"),
        ("1048577\n", "sizes", "size exceeds 2\\^20 at line 1"),
        ("0.1,100\n0.05,100\n", "timed", "timestamps decrease at line 2"),
        ("0.1,100,3\n", "timed", "malformed line 1"),
        ("0.1\n", "timed", "malformed line 1"),
        ("1.0\nnan\n", "values", "malformed line 2"),
    ],
)
def test_rejections(write_trace, text, fmt, message):
    path = write_trace("bad.csv", text)
    with pytest.raises(TraceFormatError, match=message):
        trace.load_trace(trace.TraceFile(path, fmt))


def test_invalid_utf8_names_the_line(tmp_path):
    path = tmp_path / "latin1.csv"
    path.write_bytes(b"1500\n64\n\xe9\xff12\n512\n")
    with pytest.raises(TraceFormatError, match="invalid UTF-8 at line 3"):
        trace.load_trace(trace.TraceFile(str(path)))


def test_invalid_utf8_on_stdin(monkeypatch):
    stdin = io.TextIOWrapper(io.BytesIO(b"100\n\xff\n"), encoding="utf-8")
    monkeypatch.setattr("sys.stdin", stdin)
    with pytest.raises(TraceFormatError, match="invalid UTF-8 at line 2"):
        trace.load_trace(trace.TraceFile("-"))


def test_largest_frame_is_accepted():
    values, _ = trace.parse_lines(["1048576"])
    assert values == [2**20]


def test_equal_timestamps_are_allowed():
    values, stamps = trace.parse_lines(["1.0,10", "1.0,20"], "timed")
    assert values == [10, 20]
    assert stamps == [1.0, 1.0]


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("100\n200\n"))
    series = trace.load_trace(trace.TraceFile("-"))
    assert series.values.tolist() == [100, 200]
    assert series.label == "stdin"


def test_missing_file():
    with pytest.raises(OSError):
        trace.load_trace(trace.TraceFile("/nonexistent/missing.csv"))


def test_unknown_format():
    with pytest.raises(ValueError):
        trace.TraceFile("a.csv", "pcap")


def test_dump_lines():
    assert trace.dump_lines([64, 1518]) == "64\n1518\n"
    text = trace.dump_lines([0.1, -2.0], trace.TraceFormat.VALUES)
    assert trace.parse_lines(text.splitlines(), "values")[0] == [0.1, -2.0]
    with pytest.raises(TraceFormatError):
        trace.dump_lines([1], trace.TraceFormat.TIMED)
