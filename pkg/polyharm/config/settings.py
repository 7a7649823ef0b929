# polyharm/config/settings.py

import logging
import os
from pathlib import Path

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from polyharm.variational.errors import DomainError

# Загружаем переменные окружения из .env
load_dotenv()

logger = logging.getLogger(__name__)

# Базовая директория проекта
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Логирование
LOG_LEVEL = os.getenv("POLYHARM_LOG_LEVEL", "INFO")
LOG_DIR = os.getenv("POLYHARM_LOG_DIR", "logs")

# Значения по умолчанию; переменные POLYHARM_* разбираются в load_run_settings

# Параллелизм: максимум одновременно работающих сканирований
THREADS = os.cpu_count() or 1

# Квадратура
QUAD_TOL_ABS = 1e-12
QUAD_TOL_REL = 1e-10
QUAD_MAX_LEVEL = 9

# Поиск корней
GRID_SIZE = 512
ROOT_XTOL = 1e-12
ROOT_MATCH_TOL = 1e-9
ANGLE_CHUNK = 64

ENV_PREFIX = "POLYHARM_"


class RunSettings(BaseModel):
    """
    Параметры одного запуска: значения по умолчанию, окружение, файл --config, флаги.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    threads: int = Field(THREADS, ge=1, description="Число рабочих потоков")
    quad_tol_abs: float = Field(QUAD_TOL_ABS, gt=0, description="Абсолютный допуск квадратуры")
    quad_tol_rel: float = Field(QUAD_TOL_REL, gt=0, description="Относительный допуск квадратуры")
    quad_max_level: int = Field(QUAD_MAX_LEVEL, ge=1, le=14, description="Максимальный уровень квадратуры")
    grid_size: int = Field(GRID_SIZE, ge=8, description="Размер сетки углов")
    root_xtol: float = Field(ROOT_XTOL, gt=0, description="Допуск метода Брента")
    root_match_tol: float = Field(ROOT_MATCH_TOL, gt=0, description="Допуск совпадения корней")
    angle_chunk: int = Field(ANGLE_CHUNK, ge=1, description="Углов за один векторный проход")
    tol: float = Field(1e-9, gt=0, description="Допуск невязки первой вариации")


def _normalize_key(key: str) -> str:
    key = key.strip().lower()
    if key.startswith(ENV_PREFIX.lower()):
        key = key[len(ENV_PREFIX):]
    return key.replace("-", "_")


def environment_values() -> dict[str, str]:
    """
    Сырые строки POLYHARM_* для полей RunSettings; приведение типов выполняет pydantic.
    """
    values = {}
    for name in RunSettings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw
    return values


def load_run_settings(config_path: str | Path | None = None, **overrides) -> RunSettings:
    """
    Собирает параметры запуска.

    :param config_path: Путь к плоскому файлу key=value (необязательно).
    :param overrides: Явные значения флагов; None игнорируется.
    :return: Неизменяемый RunSettings.
    """
    values: dict = environment_values()
    if config_path is not None:
        path = Path(config_path)
        if not path.is_file():
            raise DomainError(f"Файл конфигурации не найден: {path}")
        values.update({_normalize_key(k): v for k, v in dotenv_values(path).items() if v is not None})
        logger.info(f"Загружен файл конфигурации {path}: {sorted(values)}")
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunSettings(**values)
    except ValidationError as e:
        raise DomainError(f"Некорректные параметры запуска: {e}") from e
