# polyharm/variational/criticality.py

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from polyharm.config.settings import RunSettings, load_run_settings
from .energy import EnergySpec, Variant, energy
from .errors import DomainError
from .geometry import Bump, ModelPair, ProfileFamily, standard_bumps
from .models import ConjectureRecord, CriticalAngleRecord, PolynomialReport, SobolevConstraint, SobolevReport
from .utils import run_parallel

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

# Границы сканирования угла
ANGLE_MARGIN = 1e-4

# Верхняя граница размерности для сканов
MAX_DIMENSION = 40


@dataclass
class Variation:
    """
    Вариация энергии и оценка погрешности квадратуры.
    """
    value: float | np.ndarray
    error: float


def variations(a, bump: Bump, model: ModelPair, spec: EnergySpec, s: float = 0.0, **quadrature):
    """
    Энергия постоянного профиля a + s·v в кольце Perturbation2.

    :param a: Угол или массив углов в (0, π/2).
    :param bump: Допустимая пробная функция.
    :param model: Пара моделей.
    :param spec: Функционал.
    :param s: Точка, в которой берутся вариации.
    :return: QuadratureResult со слотами (E, dE/ds, d²E/ds²).
    """
    bump.require_admissible(spec.r)
    base = np.asarray(a, dtype=float)
    profile = ProfileFamily(base[:, None] if base.ndim == 1 else float(base), bump)
    profile.require_proper()
    return energy(profile, model, spec, "perturbation", s, **quadrature)


def first_variation(a, bump: Bump, model: ModelPair, spec: EnergySpec, **quadrature) -> Variation:
    """
    F_v(a) = dE/ds при s = 0.

    :param a: Угол или массив углов.
    :param bump: Пробная функция, обращающаяся в ноль до порядка r-1 при ρ = 1.
    :param model: Пара моделей.
    :param spec: Функционал.
    :return: Variation.
    """
    result = variations(a, bump, model, spec, **quadrature)
    return Variation(result.value.v1, result.error)


def _scan_values(grid: np.ndarray, bump: Bump, model: ModelPair, spec: EnergySpec,
                 run: RunSettings, **quadrature) -> np.ndarray:
    chunks = [grid[i:i + run.angle_chunk] for i in range(0, grid.size, run.angle_chunk)]
    values = []
    for chunk in chunks:
        result = first_variation(chunk, bump, model, spec, **quadrature)
        values.append(np.broadcast_to(result.value, chunk.shape))
    return np.concatenate(values)


def _brackets(grid: np.ndarray, values: np.ndarray, evaluate) -> list[tuple[float, float]]:
    brackets = []
    signs = np.sign(values)
    for i in range(grid.size - 1):
        if signs[i] == 0:
            continue
        if signs[i] * signs[i + 1] < 0:
            brackets.append((grid[i], grid[i + 1]))
    # Нули, попавшие точно в узлы сетки, пересканируются с учетверённым разрешением
    for i in np.flatnonzero(signs == 0):
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
        fine = np.linspace(lo, hi, 9)
        fine_values = evaluate(fine)
        fine_signs = np.sign(fine_values)
        inner = [(fine[j], fine[j + 1]) for j in range(8) if fine_signs[j] * fine_signs[j + 1] < 0]
        brackets.extend(inner or [(grid[i], grid[i])])
    return brackets


def find_critical_angles(r: int, n: int, variant: Variant = "standard", tol: float | None = None,
                         grid_size: int | None = None, run: RunSettings | None = None,
                         compensated: bool = False) -> list[CriticalAngleRecord]:
    """
    Углы a, при которых постоянный профиль слабо r-гармоничен (в слабой форме).

    Сканирование F_v по сетке в (1e-4, π/2 - 1e-4), уточнение смен знака методом Брента
    и проверка совпадения корней для трёх пробных функций.

    :param r: Порядок энергии.
    :param n: Размерность.
    :param variant: standard или es.
    :param tol: Допуск нормированной невязки.
    :param grid_size: Размер сетки.
    :param run: Параметры запуска.
    :param compensated: Компенсированное суммирование в квадратуре.
    :return: Список CriticalAngleRecord (пустой, если корней нет или n < 2r+1).
    """
    run = run or load_run_settings()
    tol = run.tol if tol is None else tol
    grid_size = run.grid_size if grid_size is None else grid_size
    if not sobolev_check(r, n).member:
        logger.warning(f"n={n} вне класса Соболева W^{r},2 (нужно n >= {2 * r + 1}), сканирование пропущено")
        return []

    model = ModelPair.ball_to_sphere(n)
    spec = EnergySpec(r, variant)
    bumps = standard_bumps(r)
    quadrature = dict(tol_abs=run.quad_tol_abs, tol_rel=run.quad_tol_rel,
                      max_level=run.quad_max_level, compensated=compensated)

    def evaluate(a, bump=bumps[0]):
        return first_variation(a, bump, model, spec, **quadrature).value

    grid = np.linspace(ANGLE_MARGIN, math.pi / 2 - ANGLE_MARGIN, grid_size)
    values = _scan_values(grid, bumps[0], model, spec, run, **quadrature)
    peak_angle = float(grid[np.argmax(np.abs(values))])
    scales = {bump.label(): abs(float(evaluate(peak_angle, bump))) for bump in bumps}
    logger.debug(f"r={r}, n={n}: масштабы вариаций {scales}")

    references = reference_angles(r, n)
    records: list[CriticalAngleRecord] = []
    for lo, hi in _brackets(grid, values, lambda a: evaluate(a)):
        roots = []
        for bump in bumps:
            if lo == hi:
                roots.append(lo)
                continue
            f_lo, f_hi = float(evaluate(lo, bump)), float(evaluate(hi, bump))
            if f_lo * f_hi > 0:
                logger.debug(f"Пробная функция {bump.label()} не меняет знак на [{lo:.6f}, {hi:.6f}]")
                continue
            roots.append(brentq(lambda a: float(evaluate(a, bump)), lo, hi, xtol=run.root_xtol, rtol=4 * np.finfo(float).eps))
        if len(roots) < len(bumps) or max(roots) - min(roots) > run.root_match_tol:
            logger.warning(f"r={r}, n={n}: корни на [{lo:.6f}, {hi:.6f}] не согласованы между пробными функциями: {roots}")
            continue
        root = roots[0]
        if any(abs(root - rec.a) <= run.root_match_tol for rec in records):
            continue
        absolute = {bump.label(): abs(float(evaluate(root, bump))) for bump in bumps}
        residuals = {
            label: value / scales[label] if scales[label] > 0 else 0.0
            for label, value in absolute.items()
        }
        if max(residuals.values()) > tol:
            logger.warning(f"r={r}, n={n}: невязка в корне {root:.12f} превышает допуск: {residuals}")
            continue
        closest = min(references, key=lambda ref: abs(ref - root)) if references else None
        records.append(CriticalAngleRecord(
            tag=f"critical-angle:r{r}-n{n}",
            r=r, variant=variant, n=n, a=root,
            absolute_residuals=absolute,
            normalized_residuals=residuals,
            tolerance=tol,
            sobolev_ok=True,
            closed_form=closest,
            closed_form_deviation=abs(closest - root) if closest is not None else None,
        ))
    logger.info(f"r={r}, n={n}, {variant}: найдено корней {len(records)}")
    return records


def dimension_scan(r: int, n_min: int, n_max: int, variant: Variant = "standard",
                   run: RunSettings | None = None) -> dict[int, list[CriticalAngleRecord]]:
    """
    Запускает find_critical_angles для каждой размерности диапазона.

    :param r: Порядок энергии.
    :param n_min: Нижняя граница (>= 2r+1).
    :param n_max: Верхняя граница (<= 40).
    :param variant: standard или es.
    :param run: Параметры запуска.
    :return: Словарь n -> найденные корни.
    """
    run = run or load_run_settings()
    if n_min < 2 * r + 1 or n_max > MAX_DIMENSION or n_min > n_max:
        raise DomainError(f"Диапазон размерностей [{n_min}, {n_max}] должен лежать в [{2 * r + 1}, {MAX_DIMENSION}]")
    dims = list(range(n_min, n_max + 1))
    logger.info(f"Сканирование r={r} ({variant}) по n в [{n_min}, {n_max}]")
    results = run_parallel(lambda n: find_critical_angles(r, n, variant, run=run), dims, run.threads)
    return dict(zip(dims, results))


def _angle_from_cos_squared(x: float) -> float:
    return math.acos(math.sqrt(x))


def criticality_polynomial(r: int, n: int) -> PolynomialReport:
    """
    Условие критичности постоянного профиля как многочлен от x = cos²a.

    r=2: 2(n-1)x + n - 7; r=3: 3(n-1)²x² + 2(n-1)(3n-19)x + 2(n-4)(3n-23);
    r=5: ((n-1)x + 2n - 8)·P3(x).

    :param r: 2, 3 или 5.
    :param n: Размерность.
    :return: PolynomialReport с корнями в (0, 1).
    """
    if r == 2:
        coefficients = [2 * (n - 1), n - 7]
    elif r == 3:
        coefficients = [3 * (n - 1) ** 2, 2 * (n - 1) * (3 * n - 19), 2 * (n - 4) * (3 * n - 23)]
    elif r == 5:
        cubic = [
            5 * (n - 1) ** 3,
            2 * (n - 1) ** 2 * (17 * n - 138),
            4 * (n - 1) * (27 * n ** 2 - 475 * n + 1984),
            24 * (n - 6) * (n - 8) * (7 * n - 79),
        ]
        linear = [n - 1, 2 * n - 8]
        coefficients = [int(c) for c in np.convolve(np.array(linear, dtype=object), np.array(cubic, dtype=object))]
    else:
        raise DomainError(f"Явный многочлен известен для r в (2, 3, 5), получено {r}")

    if len(coefficients) == 2:
        candidates = [-coefficients[1] / coefficients[0]]
    elif len(coefficients) == 3:
        a2, a1, a0 = coefficients
        disc = a1 * a1 - 4 * a2 * a0
        candidates = [] if disc < 0 else [(-a1 + s * math.sqrt(disc)) / (2 * a2) for s in (1, -1)]
    else:
        found = np.polynomial.Polynomial([float(c) for c in coefficients[::-1]]).roots()
        candidates = [float(z.real) for z in found if abs(z.imag) <= 1e-10 * (1 + abs(z.real))]
    roots = sorted({x for x in candidates if 0 < x < 1})
    poly = np.polynomial.Polynomial([float(c) for c in coefficients[::-1]])
    return PolynomialReport(
        tag=f"criticality-polynomial:r{r}-n{n}",
        r=r, n=n,
        coefficients=coefficients,
        value_at_zero=float(poly(0.0)),
        value_at_one=float(poly(1.0)),
        roots=roots,
        angles=[_angle_from_cos_squared(x) for x in roots],
    )


def conjecture_angle(r: int) -> ConjectureRecord:
    """
    Предполагаемый критический угол при n = 2r+1:
    a_r = ½ arccos((√((r²-1)(2r-1)) - r² - r + 1) / r²).

    :param r: Порядок (>= 2).
    :return: ConjectureRecord без найденного значения.
    """
    if r < 2:
        raise DomainError(f"Формула определена для r >= 2, получено {r}")
    argument = (math.sqrt((r * r - 1) * (2 * r - 1)) - r * r - r + 1) / (r * r)
    if not -1 < argument < 1:
        raise DomainError(f"Аргумент arccos вне (-1, 1): {argument}")
    return ConjectureRecord(tag=f"conjecture:r{r}", r=r, n=2 * r + 1, argument=argument, a=0.5 * math.acos(argument))


def verify_conjecture(r: int, run: RunSettings | None = None) -> ConjectureRecord:
    """
    Сравнивает предсказанный угол с результатом слабого сканирования при n = 2r+1.
    """
    predicted = conjecture_angle(r)
    # При r = 8 слагаемые велики по модулю, суммирование компенсированное
    found = find_critical_angles(r, predicted.n, run=run, compensated=r >= 8)
    closest = min(found, key=lambda rec: abs(rec.a - predicted.a)) if found else None
    return predicted.model_copy(update=dict(
        found=closest.a if closest else None,
        deviation=abs(closest.a - predicted.a) if closest else None,
        roots_found=len(found),
    ))


def reference_angles(r: int, n: int) -> list[float]:
    """
    Известные замкнутые значения критических углов для (r, n).
    """
    refs = []
    if n == 2 * r + 1:
        refs.append(conjecture_angle(r).a)
    if r in (2, 3, 5):
        refs.extend(criticality_polynomial(r, n).angles)
    return sorted(set(refs))


def sobolev_check(r: int, n: int) -> SobolevReport:
    """
    Принадлежность постоянного профиля классу W^{r,2}: сходимость ∫ρ^e dρ при e > -1.

    r чётное: k = 1..r/2, слагаемые Δ^k (показатель n-4k-1) и ∇Δ^{k-1} (n-4(k-1)-3);
    r нечётное: k = 0..(r-1)/2, слагаемые Δ^k (n-4k-1) и ∇Δ^k (n-4k-3).

    :param r: Порядок (>= 1).
    :param n: Размерность (>= 2).
    :return: SobolevReport.
    """
    if r < 1 or n < 2:
        raise DomainError(f"Нужно r >= 1 и n >= 2, получено r={r}, n={n}")
    constraints = []
    if r % 2 == 0:
        for k in range(1, r // 2 + 1):
            for term, shift, offset in (("gradient", k - 1, 3), ("laplacian", k, 1)):
                exponent = n - 4 * shift - offset
                constraints.append(SobolevConstraint(
                    k=k, term=term, exponent=exponent,
                    inequality=f"n - {4 * shift + offset} > -1", passed=exponent > -1,
                ))
    else:
        for k in range(0, (r - 1) // 2 + 1):
            for term, offset in (("laplacian", 1), ("gradient", 3)):
                exponent = n - 4 * k - offset
                constraints.append(SobolevConstraint(
                    k=k, term=term, exponent=exponent,
                    inequality=f"n - {4 * k + offset} > -1", passed=exponent > -1,
                ))
    member = all(c.passed for c in constraints)
    return SobolevReport(tag=f"sobolev:r{r}-n{n}", r=r, n=n, constraints=constraints, member=member)
