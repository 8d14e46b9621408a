import os
from pathlib import Path

import numpy as np
import pytest

HERE = Path(__file__).parent


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def golden_dir() -> Path:
    return Path(os.environ.get("QCLONE_GOLDEN_DIR", HERE / "golden"))


@pytest.fixture
def corpus_dir() -> Path:
    return HERE / "corpus"


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
