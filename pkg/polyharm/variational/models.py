# polyharm/variational/models.py

import json
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, SerializeAsAny


class Record(BaseModel):
    """
    Базовая запись отчёта. Каждая запись несёт тег результата.
    """
    model_config = ConfigDict(frozen=True)

    tag: str = Field("", description="Идентификатор результата")

    def flat(self) -> dict:
        """
        Плоское представление для CSV и XLSX: вложенные структуры кодируются в JSON.
        """
        out = {}
        for key, value in self.model_dump(mode="json").items():
            out[key] = json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else value
        return out


class CriticalAngleRecord(Record):
    r: int = Field(description="Порядок энергии")
    variant: Literal["standard", "es"] = Field(description="Вариант функционала")
    n: int = Field(description="Размерность")
    a: float = Field(description="Критический угол в (0, π/2)")
    absolute_residuals: dict[str, float] = Field(
        description="|F_v(a)| для каждой пробной функции"
    )
    normalized_residuals: dict[str, float] = Field(
        description="|F_v(a)|, делённое на |F_v| в угле максимума сетки; сравнивается с tolerance"
    )
    tolerance: float = Field(description="Допуск нормированной невязки")
    sobolev_ok: bool = Field(description="Принадлежность классу Соболева W^{r,2}")
    closed_form: Optional[float] = Field(None, description="Эталонное значение угла")
    closed_form_deviation: Optional[float] = Field(None, description="Отклонение от эталона")


class PolynomialReport(Record):
    r: int
    n: int
    variable: str = Field("x = cos^2 a", description="Переменная многочлена")
    coefficients: list[int] = Field(description="Точные коэффициенты, старшая степень первой")
    value_at_zero: float
    value_at_one: float
    roots: list[float] = Field(description="Корни в допустимом интервале")
    angles: list[float] = Field(description="Соответствующие углы")


class SobolevConstraint(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int
    term: str = Field(description="Слагаемое: laplacian или gradient")
    exponent: int = Field(description="Показатель ρ в подынтегральном выражении")
    inequality: str
    passed: bool


class SobolevReport(Record):
    r: int
    n: int
    constraints: list[SobolevConstraint]
    member: bool


class ConjectureRecord(Record):
    r: int
    n: int
    argument: float = Field(description="Аргумент arccos")
    a: float = Field(description="Предсказанный угол")
    found: Optional[float] = Field(None, description="Угол, найденный сканированием")
    deviation: Optional[float] = None
    roots_found: Optional[int] = None
    tolerance: float = 1e-7


class StabilityRecord(Record):
    r: int
    variant: Literal["standard", "es"]
    n: int
    a: float
    bump: str
    first_variation: float = Field(description="F_v(a), должна быть близка к нулю")
    raw_second_variation: float = Field(description="d²E/ds² без калибровки")
    second_variation: float = Field(description="d²E/ds² после калибровки, на единицу Vol(S^{n-1})")
    error_estimate: float = Field(description="Оценка погрешности квадратуры после калибровки")
    calibration_constant: float
    reference: Optional[float] = Field(None, description="Эталонное значение")
    ratio: Optional[float] = Field(None, description="Отношение к эталону")
    verdict: Literal["unstable", "inconclusive"]


class WindowReport(Record):
    order: Literal[2, 3]
    n: int
    b_squared: float
    bound: float
    inside: bool


class EllipsoidPolynomialReport(Record):
    order: Literal[2, 3]
    n: int
    b: float
    variable: str
    coefficients: list[float] = Field(description="Коэффициенты, старшая степень первой")
    roots: list[float]
    angles: list[float]
    window: WindowReport
    closed_form: Optional[float] = None


class WindowCertificate(Record):
    n: int
    samples: int
    max_boundary_polynomial: float = Field(description="max P_{b*}(x) на (0,1), должен быть < 0")
    min_comparison_factor: float = Field(description="min Q_{b*}(x) на (0,1), должен быть > 0")
    certified: bool


class PoleAngleRecord(Record):
    order: Literal[2, 3]
    n: int
    a: Optional[float] = None


class OdeRecord(Record):
    n: int
    rho0: float
    slope: float
    deviation: float = Field(description="sup |f - ρ| на [ρ0, 1]")
    first_integral_drift: float = Field(description="Размах первого интеграла вдоль траектории")
    max_residual: float = Field(description="max невязки бигармонического уравнения")
    steps: int
    tolerance: float


class SeriesInductionReport(Record):
    max_index: int
    head: list[dict[str, float | int]] = Field(description="q(j) = α + β√10 для первых j")
    all_nonzero: bool
    sign_change_between: Optional[list[int]] = None
    decreasing_from_two: bool


class PoleSeriesRecord(Record):
    coefficients: list[float] = Field(description="b3, b5, ... функции искривления")
    residual_series: list[float] = Field(description="Коэффициенты Тейлора невязки в ρ = 0")
    first_nonzero_order: Optional[int] = None


class RunReport(BaseModel):
    """
    Отчёт одного запуска команды.
    """
    command: str
    parameters: dict
    records: list[SerializeAsAny[Record]] = Field(default_factory=list)
    tolerances: dict[str, float] = Field(default_factory=dict)
    references: list[str] = Field(default_factory=list)
    wall_time: float = 0.0
