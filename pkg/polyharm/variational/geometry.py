# polyharm/variational/geometry.py

import logging
import math
import re
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import AdmissibilityError, DomainError
from .jets import Jet, Perturbation2, analytic_derivatives, compose, ring_pow

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

WarpKind = Literal["identity", "sin", "sinh", "series"]
Ring = Literal["double", "perturbation"]


@dataclass(frozen=True)
class WarpFn:
    """
    Функция искривления f или h метрики dρ² + f(ρ)² g_S.

    :param kind: identity (евклидов шар), sin (сфера), sinh (гиперболическое пространство)
                 или series: ρ + b3 ρ³ + b5 ρ⁵ + ...
    :param coefficients: Коэффициенты b3, b5, ... для series.
    """
    kind: WarpKind = "identity"
    coefficients: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("identity", "sin", "sinh", "series"):
            raise DomainError(f"Неизвестный вид функции искривления: {self.kind}")
        if self.kind != "series" and self.coefficients:
            raise DomainError("Коэффициенты задаются только для series")

    @property
    def upper(self) -> float:
        return math.pi if self.kind == "sin" else math.inf

    def derivatives(self, x, count: int) -> list:
        """
        Производные w^(k)(x), k = 0..count-1, в точке x (скаляр кольца).
        """
        if self.kind == "identity":
            return ([x, 1.0] + [0.0] * count)[:count]
        if self.kind in ("sin", "sinh"):
            return analytic_derivatives(self.kind, x, count)
        out = ([x, 1.0] + [0.0] * count)[:count]
        for j, b in enumerate(self.coefficients, start=1):
            m = 2 * j + 1
            if b == 0:
                continue
            for k in range(min(count, m + 1)):
                factor = b * math.factorial(m) / math.factorial(m - k)
                term = factor * ring_pow(x, m - k) if m > k else factor
                out[k] = out[k] + term
        return out

    def jet(self, rho0, order: int) -> Jet:
        return warp_jet(self, rho0, order)

    def compose(self, alpha: Jet, shift: int = 0) -> Jet:
        """
        Джет w^(shift)(α(ρ)) для джета профиля α.

        :param alpha: Джет профиля.
        :param shift: Порядок производной w.
        :return: Джет того же порядка.
        """
        derivs = self.derivatives(alpha.value, alpha.order + 1 + shift)
        return compose(alpha, derivs[shift:])

    def label(self) -> str:
        if self.kind == "series":
            return "series(" + ", ".join(f"{b:g}" for b in self.coefficients) + ")"
        return self.kind


def warp_jet(w: WarpFn, rho0, order: int) -> Jet:
    """
    Джет порядка K функции искривления в точке ρ0 (число или массив узлов).

    :param w: Функция искривления.
    :param rho0: Точка внутри открытого интервала определения.
    :param order: Порядок K.
    :return: Джет с коэффициентами w^(i)(ρ0).
    """
    values = np.asarray(rho0, dtype=float)
    if np.any(values <= 0) or np.any(values >= w.upper):
        raise DomainError(f"Точка {rho0} вне интервала определения функции {w.kind}")
    jet = Jet(w.derivatives(rho0, order + 1))
    if np.any(np.asarray(jet.value) <= 0):
        raise DomainError(f"Функция {w.label()} неположительна в точке {rho0}")
    return jet


@dataclass(frozen=True)
class ModelPair:
    """
    Пара моделей: область M = dρ² + f² g_S и цель N = dα² + h² g_S размерности n.
    """
    n: int
    f: WarpFn = field(default_factory=lambda: WarpFn("identity"))
    h: WarpFn = field(default_factory=lambda: WarpFn("sin"))

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"Размерность должна быть целым числом >= 2, получено {self.n}")

    @classmethod
    def ball_to_sphere(cls, n: int) -> "ModelPair":
        return cls(n, WarpFn("identity"), WarpFn("sin"))


@dataclass(frozen=True)
class Bump:
    """
    Пробная функция v(ρ) = scale · ρ^m · (1 - ρ)^k.

    :param vanishing_order: k - порядок обращения в ноль при ρ = 1.
    :param power_at_zero: m.
    :param scale: Множитель.
    """
    vanishing_order: int
    power_at_zero: int = 0
    scale: float = 1.0

    def __post_init__(self):
        if self.vanishing_order < 1 or self.power_at_zero < 0:
            raise DomainError(f"Нужно k >= 1 и m >= 0, получено k={self.vanishing_order}, m={self.power_at_zero}")

    def label(self) -> str:
        core = f"(1-rho)^{self.vanishing_order}"
        if self.power_at_zero == 1:
            core = "rho" + core
        elif self.power_at_zero > 1:
            core = f"rho^{self.power_at_zero}" + core
        return core if self.scale == 1.0 else f"{self.scale:g}*{core}"

    def is_admissible(self, r: int) -> bool:
        return self.vanishing_order >= r

    def require_admissible(self, r: int) -> None:
        if not self.is_admissible(r):
            raise AdmissibilityError(
                f"Пробная функция {self.label()} не обращается в ноль до порядка {r - 1} при ρ = 1"
            )

    def derivatives(self, rho, count: int) -> list:
        """
        Производные v^(i)(ρ), i = 0..count-1, по формуле Лейбница.
        """
        m, k = self.power_at_zero, self.vanishing_order
        rho = np.asarray(rho, dtype=float)
        one_minus = 1.0 - rho

        def left(i):
            if i > m:
                return 0.0
            return math.factorial(m) / math.factorial(m - i) * rho ** (m - i)

        def right(j):
            if j > k:
                return 0.0
            return (-1) ** j * math.factorial(k) / math.factorial(k - j) * one_minus ** (k - j)

        out = []
        for i in range(count):
            total = 0.0
            for j in range(i + 1):
                a, b = left(j), right(i - j)
                if isinstance(a, float) and a == 0 or isinstance(b, float) and b == 0:
                    continue
                total = total + math.comb(i, j) * a * b
            out.append(self.scale * total)
        return out


# Стандартные пробные функции для проверки корней
def standard_bumps(r: int) -> tuple[Bump, Bump, Bump]:
    return Bump(r), Bump(r + 1), Bump(r, power_at_zero=1)


@dataclass(frozen=True, eq=False)
class ProfileFamily:
    """
    Семейство профилей α_s(ρ) = base + slope·ρ + s·v(ρ).

    base может быть массивом формы (A, 1) для векторного перебора углов.
    """
    base: float | np.ndarray
    bump: Bump | None = None
    slope: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.base, dtype=float)
        if self.slope == 0.0 and (np.any(values <= 0) or np.any(values >= math.pi)):
            raise DomainError(f"Постоянный профиль должен лежать в (0, π), получено {self.base}")

    @property
    def is_constant(self) -> bool:
        return self.slope == 0.0

    def require_proper(self) -> None:
        """
        Проверяет, что профиль постоянный и угол лежит строго в (0, π/2).
        """
        values = np.asarray(self.base, dtype=float)
        if not self.is_constant:
            raise DomainError("Ожидался постоянный профиль")
        if np.any(values <= 0) or np.any(values >= math.pi / 2):
            raise DomainError(f"Угол должен лежать строго в (0, π/2), получено {self.base}")

    def jet(self, rho, order: int, ring: Ring = "double", s: float = 0.0) -> Jet:
        return profile_jet(self, rho, order, ring, s)


def profile_jet(profile: ProfileFamily, rho, order: int, ring: Ring = "double", s: float = 0.0) -> Jet:
    """
    Джет профиля в точке ρ.

    В кольце double коэффициенты - производные α_s; в кольце perturbation слот v1
    несёт v^(i)(ρ), слот v2 равен нулю.

    :param profile: Семейство профилей.
    :param rho: Точка или массив узлов.
    :param order: Порядок K.
    :param ring: double или perturbation.
    :param s: Параметр семейства.
    :return: Джет порядка K.
    """
    if ring not in ("double", "perturbation"):
        raise DomainError(f"Неизвестное кольцо: {ring}")
    base = [profile.base + profile.slope * np.asarray(rho, dtype=float), profile.slope] + [0.0] * order
    base = base[:order + 1]
    if profile.slope == 0.0 and order >= 1:
        base[1] = 0.0
    bump = profile.bump.derivatives(rho, order + 1) if profile.bump is not None else [0.0] * (order + 1)
    coeffs = []
    for b, v in zip(base, bump):
        shifted = b + s * v if s != 0.0 else b
        if ring == "perturbation":
            coeffs.append(Perturbation2(shifted, v, 0.0))
        else:
            coeffs.append(shifted)
    return Jet(coeffs)


_BUMP_RE = re.compile(r"^(?:bump:)?\s*(?:rho(?:\^(\d+))?\s*\*?\s*)?\(1-rho\)\^(\d+)$")


def parse_warp(text: str) -> WarpFn:
    """
    Разбирает функцию искривления из строки: identity, sin, sinh или series:b3=...,b5=...

    :param text: Описание.
    :return: WarpFn.
    """
    text = text.strip().lower()
    if text in ("identity", "sin", "sinh"):
        return WarpFn(text)
    if not text.startswith("series:"):
        raise DomainError(f"Не удалось разобрать функцию искривления: {text}")
    coefficients: dict[int, float] = {}
    for part in filter(None, text[len("series:"):].split(",")):
        key, _, value = part.partition("=")
        key = key.strip()
        if not re.fullmatch(r"b\d+", key) or int(key[1:]) < 3 or int(key[1:]) % 2 == 0:
            raise DomainError(f"Ожидался нечётный индекс b3, b5, ..., получено {key}")
        try:
            coefficients[int(key[1:])] = float(value)
        except ValueError as e:
            raise DomainError(f"Некорректное значение коэффициента {key}: {value}") from e
    top = max(coefficients, default=1)
    return WarpFn("series", tuple(coefficients.get(m, 0.0) for m in range(3, top + 1, 2)))


def parse_bump(text: str) -> Bump:
    """
    Разбирает пробную функцию вида bump:(1-rho)^k или bump:rho^m(1-rho)^k.

    :param text: Описание.
    :return: Bump.
    """
    normalized = text.replace(" ", "").lower()
    match = _BUMP_RE.match(normalized)
    if match is None:
        raise DomainError(f"Не удалось разобрать пробную функцию: {text}")
    power, vanishing = match.groups()
    has_rho = "rho" in normalized.split("(1-rho)")[0]
    power_at_zero = int(power) if power is not None else (1 if has_rho else 0)
    return Bump(int(vanishing), power_at_zero=power_at_zero)
