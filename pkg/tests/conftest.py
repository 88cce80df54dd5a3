import os

import numpy as np
import pytest

ACCEPTANCE_LOG = []


@pytest.fixture
def record_criterion():
    """Collect one line per acceptance criterion for the terminal summary."""

    def record(tag, passed, detail):
        ACCEPTANCE_LOG.append((tag, bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for tag, passed, detail in ACCEPTANCE_LOG:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {tag}: {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def tmp_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("RETINT_OUTDIR", raising=False)
    return tmp_path


def pytest_configure(config):
    os.environ.setdefault("PYTHONHASHSEED", "0")
