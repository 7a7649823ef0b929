# polyharm/variational/energy.py

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import ArityError, DomainError, UnsupportedError
from .geometry import ModelPair, ProfileFamily, Ring, warp_jet
from .jets import Jet, compose, guarded_sqrt, ring_pow
from .quadrature import QuadratureResult, integrate

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

Variant = Literal["standard", "es"]

# Множитель при члене (n-3)·α̇τ·ḟ/f в скобке ES-5: h''(α) или h'(α)
Drift = Literal["h2", "h1"]

# Порядки, для которых известен функционал Eells-Sampson
ES_ORDERS = (2, 3, 4, 5)


@dataclass(frozen=True)
class EnergySpec:
    """
    Функционал E_r (standard) или E_r^ES (es).

    es5_drift выбирает множитель в члене (n-3)·α̇τ·ḟ/f скобки ES-5.
    По умолчанию h''(α); с h'(α) воспроизводится эталонное значение
    второй вариации для r = 5, n = 11.
    """
    r: int
    variant: Variant = "standard"
    es5_drift: Drift = "h2"

    def __post_init__(self):
        if self.r < 2:
            raise DomainError(f"Порядок энергии должен быть >= 2, получено {self.r}")
        if self.variant not in ("standard", "es"):
            raise DomainError(f"Неизвестный вариант функционала: {self.variant}")
        if self.variant == "es" and self.r not in ES_ORDERS:
            raise UnsupportedError(f"Вариант ES определён только для r в {ES_ORDERS}, получено r={self.r}")
        if self.es5_drift not in ("h2", "h1"):
            raise DomainError(f"Неизвестный множитель скобки ES-5: {self.es5_drift}")

    @property
    def jet_order(self) -> int:
        # Поправка ES-5 дифференцирует α̇τh''/h, нужен порядок 3
        return max(self.r, 3) if self.variant == "es" and self.r == 5 else self.r

    def label(self) -> str:
        return f"E{self.r}" + ("^ES" if self.variant == "es" and self.r >= 4 else "")


class _Frame:
    """
    Общие джеты в узлах: f, ḟ/f, h(α), h'(α), h''(α), τ_α и коэффициенты рекурсии.
    """

    def __init__(self, model: ModelPair, rho, alpha: Jet):
        order = alpha.order
        if order < 2:
            raise ArityError(f"Для поля натяжения нужен джет профиля порядка >= 2, получено {order}")
        m = order - 2
        n1 = model.n - 1
        f = warp_jet(model.f, rho, m + 1)
        self.n = model.n
        self.order = m
        self.f = f.truncate(m)
        self.f_dot = f.shift()
        self.alpha = alpha.truncate(m)
        self.alpha_dot = alpha.shift().truncate(m)
        alpha_ddot = alpha.shift().shift()
        derivs = model.h.derivatives(alpha.value, m + 3)
        self.h = compose(self.alpha, derivs[0:])
        self.h1 = compose(self.alpha, derivs[1:])
        self.h2 = compose(self.alpha, derivs[2:])
        f_sq = self.f * self.f
        # Коэффициенты при Ṫ и T в чётной рекурсии
        self.drift = (self.f_dot / self.f) * n1
        self.potential = (self.h1 * self.h1 / f_sq) * n1
        self.tau = alpha_ddot + self.drift * self.alpha_dot - (self.h * self.h1 / f_sq) * n1
        self.volume = ring_pow(self.f.value, model.n - 1)


def tension(model: ModelPair, rho, alpha: Jet, as_jet: bool = False):
    """
    Поле натяжения τ_α = α̈ + (n-1)(ḟ/f)α̇ - (n-1) h(α)h'(α)/f².

    :param model: Пара моделей.
    :param rho: Точка или массив узлов.
    :param alpha: Джет профиля порядка K >= 2.
    :param as_jet: Вернуть джет порядка K-2 вместо значения.
    :return: Значение или джет τ_α.
    """
    tau = _Frame(model, rho, alpha).tau
    return tau if as_jet else tau.value


@dataclass
class TStack:
    """
    Джеты T_2 = τ_α, T_4, ... и квадраты нечётных T_{2k+1} в узлах.
    """
    even: dict[int, Jet] = field(default_factory=dict)
    odd_squared: dict = field(default_factory=dict)

    def odd(self, index: int):
        """
        T_{2k+1} как неотрицательный корень.
        """
        return guarded_sqrt(self.odd_squared[index])

    def value(self, index: int):
        if index % 2 == 0:
            return self.even[index].value
        return self.odd(index)


def _build_stack(frame: _Frame, r: int) -> TStack:
    top = r // 2
    top_order = r - 2 * top
    if frame.order < r - 2:
        raise ArityError(f"Для T_{r} нужен джет профиля порядка >= {r}")
    stack = TStack()
    stack.even[2] = frame.tau.truncate(top_order + 2 * (top - 1))
    for j in range(2, top + 1):
        o = top_order + 2 * (top - j)
        prev = stack.even[2 * j - 2]
        dot = prev.shift()
        stack.even[2 * j] = (
            dot.shift()
            + frame.drift.truncate(o) * dot.truncate(o)
            - frame.potential.truncate(o) * prev.truncate(o)
        )
    potential = frame.potential.value
    for j in range(1, top + 1):
        t = stack.even[2 * j]
        if t.order >= 1:
            stack.odd_squared[2 * j + 1] = t[1] * t[1] + potential * t[0] * t[0]
    return stack


def t_stack(model: ModelPair, rho, alpha: Jet, r: int) -> TStack:
    """
    Рекурсия T_{2k} = T̈ + (n-1)(ḟ/f)Ṫ - (n-1)(h'(α)²/f²)T и T_{2k+1} = √(Ṫ² + (n-1)(h'²/f²)T²).

    :param model: Пара моделей.
    :param rho: Точка или массив узлов.
    :param alpha: Джет профиля порядка >= r.
    :param r: Старший индекс.
    :return: TStack.
    """
    if alpha.order < r:
        raise ArityError(f"Для T_{r} нужен джет профиля порядка >= {r}, получено {alpha.order}")
    return _build_stack(_Frame(model, rho, alpha), r)


def _lagrangian_from_jet(model: ModelPair, rho, alpha: Jet, spec: EnergySpec):
    frame = _Frame(model, rho, alpha)
    stack = _build_stack(frame, spec.r)
    r = spec.r
    if r % 2 == 0:
        core = stack.even[r].value * stack.even[r].value
    else:
        core = stack.odd_squared[r]
    value = core * frame.volume * 0.5
    if spec.variant != "es" or r < 4:
        return value

    n1 = model.n - 1
    f0 = frame.f.value
    alpha_dot = frame.alpha_dot.value
    tau = frame.tau.value
    h0, h1, h2 = frame.h.value, frame.h1.value, frame.h2.value
    if r == 4:
        return value + alpha_dot * alpha_dot * tau * tau * h2 * h2 / (f0 * f0) * frame.volume * (0.5 * n1)

    # ES-5: производная α̇τh''/h через джеты первого порядка
    weight = h2 if spec.es5_drift == "h2" else h1
    ratio = frame.alpha_dot.truncate(1) * frame.tau.truncate(1) * frame.h2.truncate(1) / frame.h.truncate(1)
    bracket = (
        h0 * ratio[1]
        + alpha_dot * alpha_dot * tau * h1 * h2 / h0
        + alpha_dot * tau * weight * frame.f_dot.value / f0 * (model.n - 3)
    )
    t4 = stack.even[4].value
    cross = alpha_dot * alpha_dot * tau * (tau * h1 * h1 * h2 * h2 / (f0 * f0) * n1 - t4 * h2 * h2 * 2.0)
    correction = (bracket * bracket + cross) / (f0 * f0) * n1
    return value + correction * frame.volume * 0.5


def lagrangian(rho, profile: ProfileFamily, model: ModelPair, spec: EnergySpec,
               ring: Ring = "double", s: float = 0.0):
    """
    Лагранжиан L_r (или L_r^ES) в точке ρ.

    :param rho: Точка или массив узлов.
    :param profile: Семейство профилей.
    :param model: Пара моделей.
    :param spec: Функционал.
    :param ring: double или perturbation.
    :param s: Параметр семейства.
    :return: Скаляр кольца.
    """
    alpha = profile.jet(rho, spec.jet_order, ring, s)
    return _lagrangian_from_jet(model, rho, alpha, spec)


def energy(profile: ProfileFamily, model: ModelPair, spec: EnergySpec,
           ring: Ring = "double", s: float = 0.0, **quadrature) -> QuadratureResult:
    """
    E = ∫₀¹ L dρ без множителя Vol(S^{n-1}).

    В кольце perturbation слоты результата - энергия и её первая и вторая вариации по s.

    :param profile: Семейство профилей.
    :param model: Пара моделей.
    :param spec: Функционал.
    :param ring: double или perturbation.
    :param s: Параметр семейства.
    :param quadrature: Параметры integrate (tol_abs, tol_rel, min_level, max_level, compensated).
    :return: QuadratureResult со значением в кольце.
    """
    return integrate(lambda rho: lagrangian(rho, profile, model, spec, ring, s), **quadrature)


def es_equivalence_witness(profile: ProfileFamily, model: ModelPair, r: int, samples,
                           s: float = 0.0) -> float:
    """
    max по k <= r-4 и точкам выборки величины |α̇ · T_{2(k+1)} · h''(α)/h(α)|.

    Ноль означает, что критерий совпадения E_r и E_r^ES выполнен в выборке.

    :param profile: Семейство профилей.
    :param model: Пара моделей.
    :param r: Порядок (>= 4).
    :param samples: Точки ρ.
    :param s: Параметр семейства.
    :return: Свидетель.
    """
    if r < 4:
        raise DomainError(f"Свидетель определён для r >= 4, получено {r}")
    top = r - 3
    rho = np.asarray(samples, dtype=float)
    alpha = profile.jet(rho, 2 * top, "double", s)
    frame = _Frame(model, rho, alpha)
    stack = _build_stack(frame, 2 * top)
    factor = frame.alpha_dot.value * frame.h2.value / frame.h.value
    witness = 0.0
    for k in range(0, r - 3):
        term = np.abs(factor * stack.even[2 * (k + 1)].value)
        witness = max(witness, float(np.max(term)))
    return witness
