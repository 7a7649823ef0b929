# polyharm/variational/quadrature.py

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from polyharm.config import settings
from .errors import AccuracyError
from .jets import Perturbation2

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

_HALF_PI = math.pi / 2.0

# Шаг нулевого уровня и граница по t
H0 = 0.5
T_MAX = 3.5

# Узлы прижимаются к [RHO_MIN, RHO_MAX]
RHO_MIN = 1e-9
RHO_MAX = 1.0 - 1e-12

# Порог шума округления в единицах eps относительно ∫|f|
NOISE_FACTOR = 1000.0


@dataclass
class QuadratureResult:
    """
    Значение интеграла (скаляр кольца), оценка погрешности, достигнутый уровень и число узлов.
    """
    value: Any
    error: float
    level: int
    nodes: int


def _level_abscissae(level: int) -> np.ndarray:
    if level == 0:
        count = int(T_MAX / H0)
        return H0 * np.arange(-count, count + 1, dtype=float)
    h = H0 / 2 ** level
    positive = np.arange(h, T_MAX + 1e-12, 2 * h)
    return np.concatenate([-positive[::-1], positive])


def tanh_sinh_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Узлы и веса, добавляемые на данном уровне правила tanh-sinh на (0, 1).

    x(t) = 1 / (1 + exp(-π sinh t)), вес dx/dt без множителя шага.

    :param level: Уровень (шаг H0 / 2^level).
    :return: Узлы и веса.
    """
    t = _level_abscissae(level)
    u = _HALF_PI * np.sinh(t)
    x = 1.0 / (1.0 + np.exp(-2.0 * u))
    w = 0.5 * _HALF_PI * np.cosh(t) / np.cosh(u) ** 2
    return np.clip(x, RHO_MIN, RHO_MAX), w


def _components(value, nodes: np.ndarray) -> tuple[list[np.ndarray], bool]:
    if isinstance(value, Perturbation2):
        raw, is_p2 = [value.v0, value.v1, value.v2], True
    else:
        raw, is_p2 = [value], False
    shape = np.broadcast_shapes(nodes.shape, *(np.shape(c) for c in raw))
    return [np.broadcast_to(np.asarray(c, dtype=float), shape) for c in raw], is_p2


def _neumaier_sum(values: np.ndarray) -> np.ndarray:
    # Компенсированное суммирование вдоль последней оси
    total = np.zeros(values.shape[:-1])
    comp = np.zeros(values.shape[:-1])
    for j in range(values.shape[-1]):
        y = values[..., j]
        t = total + y
        comp += np.where(np.abs(total) >= np.abs(y), (total - t) + y, (y - t) + total)
        total = t
    return total + comp


def _rebuild(parts: list, is_p2: bool):
    parts = [p.item() if np.ndim(p) == 0 else p for p in parts]
    return Perturbation2(*parts) if is_p2 else parts[0]


def integrate(
    func: Callable[[np.ndarray], Any],
    *,
    tol_abs: float | None = None,
    tol_rel: float | None = None,
    min_level: int = 3,
    max_level: int | None = None,
    compensated: bool = False,
    strict: bool = True,
) -> QuadratureResult:
    """
    Адаптивная квадратура tanh-sinh на (0, 1) с удвоением уровней.

    func получает массив узлов формы (N,) и возвращает скаляр кольца, последняя ось
    которого соответствует узлам. Каждый слот Perturbation2 интегрируется отдельно.
    Сходимость: разность соседних уровней не превосходит
    max(tol_abs, tol_rel·|I|, шум округления).

    :param func: Подынтегральная функция.
    :param tol_abs: Абсолютный допуск.
    :param tol_rel: Относительный допуск.
    :param min_level: Минимальный уровень перед проверкой сходимости.
    :param max_level: Максимальный уровень; при min_level == max_level правило фиксировано.
    :param compensated: Компенсированное суммирование.
    :param strict: Бросать AccuracyError при отсутствии сходимости.
    :return: QuadratureResult.
    """
    tol_abs = settings.QUAD_TOL_ABS if tol_abs is None else tol_abs
    tol_rel = settings.QUAD_TOL_REL if tol_rel is None else tol_rel
    max_level = settings.QUAD_MAX_LEVEL if max_level is None else max_level
    summation = _neumaier_sum if compensated else (lambda a: np.sum(a, axis=-1))

    totals = abs_totals = previous = None
    is_p2 = False
    nodes_used = 0
    error = math.inf
    for level in range(max_level + 1):
        x, w = tanh_sinh_nodes(level)
        nodes_used += x.size
        comps, is_p2 = _components(func(x), x)
        part = [summation(c * w) for c in comps]
        abs_part = [summation(np.abs(c) * w) for c in comps]
        if totals is None:
            totals, abs_totals = part, abs_part
        else:
            totals = [a + b for a, b in zip(totals, part)]
            abs_totals = [a + b for a, b in zip(abs_totals, abs_part)]
        h = H0 / 2 ** level
        estimates = [h * t for t in totals]
        if previous is not None:
            converged = True
            error = 0.0
            for est, prev, mag in zip(estimates, previous, abs_totals):
                diff = np.abs(est - prev)
                floor = NOISE_FACTOR * np.finfo(float).eps * h * mag
                bound = np.maximum(np.maximum(tol_abs, tol_rel * np.abs(est)), floor)
                converged &= bool(np.all(diff <= bound))
                error = max(error, float(np.max(np.maximum(diff, floor))))
            if level >= min_level and (converged or level == max_level == min_level):
                logger.debug(f"Квадратура сошлась на уровне {level}, узлов {nodes_used}, оценка {error:.3e}")
                return QuadratureResult(_rebuild(estimates, is_p2), error, level, nodes_used)
        previous = estimates

    message = f"Квадратура не сошлась до уровня {max_level}: оценка погрешности {error:.3e}"
    if strict:
        raise AccuracyError(message, estimate=error)
    logger.warning(message)
    return QuadratureResult(_rebuild(previous, is_p2), error, max_level, nodes_used)
