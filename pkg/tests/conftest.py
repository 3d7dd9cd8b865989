import io
import json
import numpy as np
import pytest

from clifford_kernels.cli import run
from clifford_kernels.config import Config


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def cli(monkeypatch):
    monkeypatch.setattr(Config, "DEBUG", False)

    def invoke(*argv: str) -> tuple[int, str]:
        out = io.StringIO()
        code = run(argv, out=out)
        return code, out.getvalue()

    yield invoke


@pytest.fixture
def cli_json(cli):
    def invoke(*argv: str) -> tuple[int, dict]:
        code, text = cli(*argv)
        return code, (json.loads(text) if text else {})
    yield invoke
