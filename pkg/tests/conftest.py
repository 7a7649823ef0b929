# tests/conftest.py

import json
import math

import pytest
from click.testing import CliRunner

from cli.main import cli
from polyharm.config.settings import load_run_settings
from polyharm.variational.geometry import ModelPair

A3 = 0.5 * math.acos((2 * math.sqrt(10) - 11) / 9)
A4 = 0.5 * math.acos((math.sqrt(105) - 19) / 16)
A5 = 0.5 * math.acos((6 * math.sqrt(6) - 29) / 25)


@pytest.fixture
def run():
    return load_run_settings(threads=1)


@pytest.fixture
def ball():
    return ModelPair.ball_to_sphere


@pytest.fixture
def invoke(tmp_path):
    """
    Запускает CLI и возвращает (результат, разобранный JSON-отчёт или None).
    """
    runner = CliRunner()

    def _invoke(*args):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["--log-dir", str(tmp_path / "logs"), *args, "--out", str(out)])
        report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
        return result, report

    return _invoke
