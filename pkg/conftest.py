from fractions import Fraction

import pytest

from src.dependencies import reset_settings


def F(text) -> Fraction:
    return Fraction(text)


def fr(*values) -> list:
    return [Fraction(v) for v in values]


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    """Every test reads settings fresh and logs under its own tmp dir."""
    monkeypatch.setenv("DP1_LCT_LOG_DIR", str(tmp_path / "logs"))
    reset_settings()
    yield
    reset_settings()
