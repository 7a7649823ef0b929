# polyharm/variational/stability.py

import logging
import math
from dataclasses import dataclass

from polyharm.config.settings import RunSettings, load_run_settings
from .criticality import Variation, conjecture_angle, variations
from .energy import Drift, EnergySpec, Variant
from .errors import DomainError
from .geometry import Bump, ModelPair
from .models import StabilityRecord
from .utils import run_parallel

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

# Порог первой вариации, после которого вторая вариация интерпретируется
FIRST_VARIATION_GATE = 1e-8

# Кратность оценки погрешности для вердикта unstable
VERDICT_FACTOR = 10.0

_SQRT6 = math.sqrt(6.0)


@dataclass(frozen=True)
class StabilityCase:
    """
    Именованный случай: порядок, вариант, размерность, пробная функция и эталон.
    """
    name: str
    r: int
    variant: Variant
    n: int
    bump: Bump
    reference: float | None = None
    angle: float | None = None
    es5_drift: Drift = "h2"

    @property
    def a(self) -> float:
        if self.angle is not None:
            return self.angle
        return conjecture_angle(self.r).a

    @property
    def spec(self) -> EnergySpec:
        return EnergySpec(self.r, self.variant, self.es5_drift)

    @property
    def tag(self) -> str:
        return f"instability:{self.name}"


REFERENCE_CASES: dict[str, StabilityCase] = {
    case.name: case for case in (
        StabilityCase("r3-n7", 3, "standard", 7, Bump(3),
                      2948 * math.sqrt(2 / 5) / 63 - 12812 / 315),
        StabilityCase("r4-n9-std", 4, "standard", 9, Bump(4),
                      9799 * math.sqrt(5) / (12 * math.sqrt(21)) - 43415 / 84),
        StabilityCase("r4-n9-es", 4, "es", 9, Bump(4),
                      2546 * math.sqrt(5) / (3 * math.sqrt(21)) - 11090 / 21),
        StabilityCase("r5-n11-std", 5, "standard", 11, Bump(7),
                      48 * (47124133 * _SQRT6 - 116365497) / 446875),
        StabilityCase("r5-n11-es", 5, "es", 11, Bump(8),
                      128 * (268481902 * _SQRT6 + 60060 * math.sqrt(86362 * _SQRT6 - 197208) - 673907943) / 7596875,
                      es5_drift="h1"),
        # Для r = 2 эталонных значений нет, проверяется только знак.
        # При n = 6 пробная функция (1-ρ)² даёт положительную вторую вариацию
        StabilityCase("r2-n5", 2, "standard", 5, Bump(2)),
        StabilityCase("r2-n6", 2, "standard", 6, Bump(3), angle=0.5 * math.acos(-4 / 5)),
    )
}

CALIBRATION_CASE = "r3-n7"


def second_variation(a: float, bump: Bump, model: ModelPair, spec: EnergySpec, **quadrature) -> Variation:
    """
    d²E/ds² при s = 0 для постоянного профиля a + s·v.

    :param a: Угол в (0, π/2).
    :param bump: Допустимая пробная функция.
    :param model: Пара моделей.
    :param spec: Функционал.
    :return: Variation (слот v2 и оценка погрешности).
    """
    result = variations(a, bump, model, spec, **quadrature)
    return Variation(result.value.v2, result.error)


def _raw_case(case: StabilityCase, run: RunSettings) -> tuple[float, float, float]:
    result = variations(
        case.a, case.bump, ModelPair.ball_to_sphere(case.n), case.spec,
        tol_abs=run.quad_tol_abs, tol_rel=run.quad_tol_rel, max_level=run.quad_max_level,
    )
    logger.debug(f"{case.name}: F = {result.value.v1:.3e}, d²E/ds² = {result.value.v2:.9f}")
    return float(result.value.v1), float(result.value.v2), result.error


def calibration_constant(run: RunSettings | None = None) -> float:
    """
    Константа c*, переводящая вычисленную вторую вариацию в шкалу эталонных значений.

    Подбирается по случаю r = 3, n = 7.
    """
    run = run or load_run_settings()
    case = REFERENCE_CASES[CALIBRATION_CASE]
    _, raw, _ = _raw_case(case, run)
    if raw == 0:
        raise DomainError("Нулевая вторая вариация в калибровочном случае")
    return case.reference / raw


def _record(case: StabilityCase, raw: tuple[float, float, float], calibration: float) -> StabilityRecord:
    first, second, error = raw
    value = calibration * second
    error = abs(calibration) * error
    verdict = "unstable" if value < -VERDICT_FACTOR * error else "inconclusive"
    if abs(first) > FIRST_VARIATION_GATE:
        logger.warning(f"{case.name}: первая вариация {first:.3e} не близка к нулю, вердикт не выносится")
        verdict = "inconclusive"
    return StabilityRecord(
        tag=case.tag,
        r=case.r, variant=case.variant, n=case.n, a=case.a, bump=case.bump.label(),
        first_variation=first,
        raw_second_variation=second,
        second_variation=value,
        error_estimate=error,
        calibration_constant=calibration,
        reference=case.reference,
        ratio=value / case.reference if case.reference else None,
        verdict=verdict,
    )


def reference_stability_suite(names: list[str] | None = None, run: RunSettings | None = None) -> list[StabilityRecord]:
    """
    Вторые вариации для эталонных случаев неустойчивости.

    Калибровочная константа подбирается по случаю r3-n7 и применяется ко всем случаям.

    :param names: Имена случаев (по умолчанию все).
    :param run: Параметры запуска.
    :return: Список StabilityRecord.
    """
    run = run or load_run_settings()
    names = list(REFERENCE_CASES) if names is None else names
    unknown = [name for name in names if name not in REFERENCE_CASES]
    if unknown:
        raise DomainError(f"Неизвестные случаи: {unknown}")
    wanted = names if CALIBRATION_CASE in names else [CALIBRATION_CASE] + names
    logger.info(f"Запуск набора устойчивости: {wanted}")
    raws = dict(zip(wanted, run_parallel(lambda name: _raw_case(REFERENCE_CASES[name], run), wanted, run.threads)))
    calibration = REFERENCE_CASES[CALIBRATION_CASE].reference / raws[CALIBRATION_CASE][1]
    logger.info(f"Калибровочная константа c* = {calibration:.12f}")
    records = [_record(REFERENCE_CASES[name], raws[name], calibration) for name in names]
    for rec in records:
        logger.info(f"{rec.tag}: d²E/ds² = {rec.second_variation:.6f}, вердикт {rec.verdict}")
    return records


def stability_case(r: int, n: int, a: float, bump: Bump, variant: Variant = "standard",
                   run: RunSettings | None = None, es5_drift: Drift = "h2") -> StabilityRecord:
    """
    Вторая вариация для произвольного случая с той же калибровкой.
    """
    run = run or load_run_settings()
    bump.require_admissible(r)
    case = StabilityCase(f"r{r}-n{n}-{variant}", r, variant, n, bump, angle=a, es5_drift=es5_drift)
    calibration = calibration_constant(run)
    return _record(case, _raw_case(case, run), calibration)
