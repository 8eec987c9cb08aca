import logging

import pytest

from fractraffic.lib import synth


@pytest.fixture(autouse=True)
def restore_root_logging():
    """Drop root handlers and levels a test installed through the CLI."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


@pytest.fixture
def presets_dir(monkeypatch, tmp_path):
    """Create a temporary presets directory and point lookups at it.

    Sets `FRACTRAFFIC_PRESETS_BASE` so `load_preset` and `list_presets`
    read from ``<tmp_path>/presets`` instead of the packaged directory.
    """
    presets = tmp_path / "presets"
    presets.mkdir(parents=True, exist_ok=True)
    monkeypatch.setenv("FRACTRAFFIC_PRESETS_BASE", str(presets))
    return presets


@pytest.fixture
def write_trace(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture(scope="session")
def fgn_07():
    return synth.gen_fgn(synth.GeneratorSpec(0.7, 2**16, 1))


@pytest.fixture(scope="session")
def white_16():
    return synth.gen_white(synth.GeneratorSpec(0.5, 2**16, 4, "white"))


@pytest.fixture(scope="session")
def fgn_short():
    return synth.gen_fgn(synth.GeneratorSpec(0.7, 4096, 9))
