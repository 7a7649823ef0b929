# polyharm/variational/warped_domain.py

import logging
import math

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ArityError, DomainError, IntegrationError
from .geometry import WarpFn
from .jets import Jet
from .models import OdeRecord, PoleAngleRecord, PoleSeriesRecord, SeriesInductionReport

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

SQRT10 = math.sqrt(10.0)

# Минимальная размерность для постоянных би- и тригармонических отображений
MIN_DIMENSION = {2: 5, 3: 7}

# Размерности, при которых бигармоническое уравнение на f совместимо с условиями на полюсе
SHOOTING_DIMENSIONS = (5, 6)

# До этого индекса q(j) безопасно вычисляется в int64
INT64_SERIES_LIMIT = 1_000_000


def _require_order(order: int, n: int) -> None:
    if order not in MIN_DIMENSION:
        raise DomainError(f"Поддерживаются порядки 2 и 3, получено {order}")
    if n < MIN_DIMENSION[order]:
        raise DomainError(f"Для порядка {order} нужна размерность n >= {MIN_DIMENSION[order]}, получено {n}")


def pole_angle(order: int, n: int) -> float | None:
    """
    Угол a, при котором условие на полюсе ρ = 0 (f = ρ + O(ρ³)) выполнено.

    order 2: cos 2a = 2(n-4)/(1-n);
    order 3: 6(n-1)²x² + 4(n-1)(3n-19)x + 4(n-4)(3n-23) = 0, x = cos²a.

    :param order: 2 или 3.
    :param n: Размерность.
    :return: Угол в (0, π/2) или None.
    """
    _require_order(order, n)
    if order == 2:
        c = 2 * (n - 4) / (1 - n)
        return 0.5 * math.acos(c) if -1 < c < 1 else None
    a2 = 6 * (n - 1) ** 2
    a1 = 4 * (n - 1) * (3 * n - 19)
    a0 = 4 * (n - 4) * (3 * n - 23)
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return None
    roots = [(-a1 + s * math.sqrt(disc)) / (2 * a2) for s in (1, -1)]
    inside = sorted(x for x in roots if 0 < x < 1)
    if not inside:
        return None
    return math.acos(math.sqrt(inside[0]))


def pole_angle_record(order: int, n: int) -> PoleAngleRecord:
    name = "biharmonic" if order == 2 else "triharmonic"
    return PoleAngleRecord(tag=f"pole-angle:{name}-n{n}", order=order, n=n, a=pole_angle(order, n))


def _derivatives(jet: Jet, count: int) -> list:
    if jet.order < count - 1:
        raise ArityError(f"Нужен джет f порядка >= {count - 1}, получено {jet.order}")
    return list(jet.coeffs[:count])


def biharmonic_residual(n: int, a: float, f, f1, f2):
    return (n - 1) * math.cos(2 * a) + 2 * f * f2 + 2 * (n - 4) * f1 * f1


def triharmonic_residual(n: int, a: float, f, f1, f2, f3, f4):
    c2 = math.cos(2 * a)
    cs = math.cos(a) ** 2
    ff2 = f * f2
    f1_sq = f1 * f1
    return (
        4 * (n - 1) * (2 * c2 + 1) * ff2
        + 4 * f1_sq * ((n - 1) * (2 * (n - 5) * c2 + n - 6) + (-2 * n ** 2 + 33 * n - 103) * ff2)
        + (n - 1) ** 2 * cs * (3 * c2 - 1)
        - 4 * f * f * f * f4
        + 4 * (11 - 2 * n) * ff2 * ff2
        + 16 * (n ** 2 - 10 * n + 24) * f1_sq * f1_sq
        - 12 * (n - 5) * f * f * f3 * f1
    )


def _reduced(f, f1, f2, f3, f4):
    ff2 = f * f2
    f1_sq = f1 * f1
    return (
        -3 * f * f * f * f4
        - 9 * ff2 * ff2
        + (8 * SQRT10 - 26) * ff2
        + 36 * f1_sq * f1_sq
        - 18 * f * f * f3 * f1
        + 2 * f1_sq * (45 * ff2 + 8 * SQRT10 - 35)
        - 16 * SQRT10 + 34
    )


def ode_residual(order: int, n: int, a: float, jet: Jet):
    """
    Невязка уравнения на f для постоянного отображения φ_a: B^n_f -> S^n.

    order 2: (n-1)cos 2a + 2ff'' + 2(n-4)f'²;
    order 3: полная тригармоническая невязка при произвольных n и a.

    :param order: 2 или 3.
    :param n: Размерность.
    :param a: Угол.
    :param jet: Джет f в точке ρ0 порядка >= 2 (order 2) или >= 4 (order 3).
    :return: Невязка.
    """
    if order == 2:
        return biharmonic_residual(n, a, *_derivatives(jet, 3))
    if order == 3:
        return triharmonic_residual(n, a, *_derivatives(jet, 5))
    raise DomainError(f"Поддерживаются порядки 2 и 3, получено {order}")


def reduced_residual(jet: Jet):
    """
    Тригармоническая невязка при n = 7, a = a_3 с точными коэффициентами при √10.

    Совпадает с 3/4 полной невязки ode_residual(3, 7, a_3, jet).
    """
    return _reduced(*_derivatives(jet, 5))


def _first_integral(n: int, rho, f, f1):
    if n == 5:
        return f * f1 - rho
    return f ** 4 * f1 * f1 - f ** 4


def shoot_ode(n: int, rho0: float = 1e-6, slope: float = 1.0, rtol: float = 1e-12,
              atol: float = 1e-14, samples: int = 2001) -> OdeRecord:
    """
    Интегрирует ff'' + (n-4)f'² = n-4 от ρ0 до 1 с данными f(ρ0) = ρ0, f'(ρ0) = slope.

    При slope = 1 решение совпадает с f = ρ. Отклонение, размах первого интеграла
    (n=5: ff' - ρ; n=6: f⁴f'² - f⁴) и невязка уравнения считаются на равномерной сетке.

    :param n: 5 или 6.
    :param rho0: Начальная точка.
    :param slope: Начальная производная.
    :param rtol: Относительный допуск шага.
    :param atol: Абсолютный допуск шага.
    :param samples: Число точек сетки.
    :return: OdeRecord.
    """
    if n not in SHOOTING_DIMENSIONS:
        raise DomainError(f"Уравнение совместимо с полюсом только при n в {SHOOTING_DIMENSIONS}, получено {n}")
    if not 0 < rho0 < 1:
        raise DomainError(f"Начальная точка должна лежать в (0, 1), получено {rho0}")
    a = pole_angle(2, n)

    def rhs(_, y):
        f, f1 = y
        return [f1, (n - 4) * (1.0 - f1 * f1) / f]

    def hits_zero(_, y):
        return y[0]

    hits_zero.terminal = True

    solution = solve_ivp(rhs, (rho0, 1.0), [rho0, slope], method="DOP853",
                         rtol=rtol, atol=atol, dense_output=True, events=hits_zero)
    if not solution.success or solution.t[-1] < 1.0:
        raise IntegrationError(f"Интегрирование при n={n} прервано: {solution.message}")

    grid = np.linspace(rho0, 1.0, samples)
    f, f1 = solution.sol(grid)
    f2 = (n - 4) * (1.0 - f1 * f1) / f
    integral = _first_integral(n, grid, f, f1)
    residual = biharmonic_residual(n, a, f, f1, f2)
    record = OdeRecord(
        tag=f"rigidity:biharmonic-n{n}",
        n=n, rho0=rho0, slope=slope,
        deviation=float(np.max(np.abs(f - grid))),
        first_integral_drift=float(np.max(integral) - np.min(integral)),
        max_residual=float(np.max(np.abs(residual))),
        steps=int(solution.t.size),
        tolerance=rtol,
    )
    logger.info(f"Стрельба n={n}, f'(ρ0)={slope}: отклонение {record.deviation:.3e}, шагов {record.steps}")
    return record


def series_factor(j) -> tuple:
    """
    q(j) = α + β√10 с целыми α = -6j³ - 27j² + 2j + 24 и β = 4j + 12.
    """
    return -6 * j ** 3 - 27 * j ** 2 + 2 * j + 24, 4 * j + 12


def series_induction_check(max_index: int) -> SeriesInductionReport:
    """
    Проверяет, что q(j) ≠ 0 при j = 1..J.

    Ноль α + β√10 с целыми α, β возможен только при α = β = 0, поэтому проверка точная.

    :param max_index: J >= 1.
    :return: SeriesInductionReport.
    """
    if max_index < 1:
        raise DomainError(f"Нужно J >= 1, получено {max_index}")
    dtype = np.int64 if max_index <= INT64_SERIES_LIMIT else object
    j = np.arange(1, max_index + 1, dtype=np.int64).astype(dtype)
    alpha, beta = series_factor(j)
    all_nonzero = bool(np.all((alpha != 0) | (beta != 0)))
    values = alpha.astype(float) + beta.astype(float) * SQRT10

    signs = np.sign(values)
    changes = np.nonzero(signs[1:] != signs[:-1])[0]
    sign_change = [int(changes[0]) + 1, int(changes[0]) + 2] if changes.size else None
    window = values[1:min(max_index, 100)]
    decreasing = bool(np.all(np.diff(window) < 0)) if window.size > 1 else True

    head = [
        {"j": int(j[i]), "alpha": int(alpha[i]), "beta": int(beta[i]), "value": float(values[i])}
        for i in range(min(max_index, 10))
    ]
    logger.info(f"q(j) проверено до J={max_index}: все ненулевые={all_nonzero}, смена знака {sign_change}")
    return SeriesInductionReport(
        tag="series-induction:q",
        max_index=max_index,
        head=head,
        all_nonzero=all_nonzero,
        sign_change_between=sign_change,
        decreasing_from_two=decreasing,
    )


def pole_series_check(coefficients: tuple[float, ...], max_order: int = 8, tol: float = 1e-12) -> PoleSeriesRecord:
    """
    Коэффициенты Тейлора приведённой тригармонической невязки в ρ = 0
    для f = ρ + b3 ρ³ + b5 ρ⁵ + ...

    Коэффициент при ρ² равен 144(√10 + 2)·b3.

    :param coefficients: b3, b5, ...
    :param max_order: Порядок разложения невязки.
    :param tol: Порог, ниже которого коэффициент считается нулём.
    :return: PoleSeriesRecord.
    """
    if max_order < 0:
        raise DomainError(f"Порядок разложения должен быть неотрицательным, получено {max_order}")
    warp = WarpFn("series", tuple(coefficients))
    f = Jet(warp.derivatives(0.0, max_order + 5))
    shifted = [f]
    for _ in range(4):
        shifted.append(shifted[-1].shift())
    residual = _reduced(*(jet.truncate(max_order) for jet in shifted))
    series = [float(c) for c in residual.taylor()]
    scale = max(1.0, max(abs(b) for b in coefficients) if coefficients else 1.0)
    first = next((i for i, c in enumerate(series) if abs(c) > tol * scale), None)
    logger.debug(f"Ряд невязки для {warp.label()}: {series}")
    return PoleSeriesRecord(
        tag="pole-series:triharmonic",
        coefficients=list(coefficients),
        residual_series=series,
        first_nonzero_order=first,
    )
