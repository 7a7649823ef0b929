# polyharm/variational/ellipsoid.py

import logging
import math
from dataclasses import dataclass

import numpy as np

from .criticality import Variation
from .errors import ArityError, DomainError
from .geometry import Bump, ProfileFamily, Ring
from .jets import Jet, jet_analytic
from .models import EllipsoidPolynomialReport, WindowCertificate, WindowReport
from .quadrature import QuadratureResult, integrate

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

# Минимальная размерность, при которой постоянный профиль имеет конечную энергию порядка 2 и 3
SOBOLEV_DIMENSION = {2: 5, 3: 7}

# Допуск на мнимую часть корней кубического многочлена
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class EllipsoidConfig:
    """
    Цель E^n(b) = {|x|² + y²/b² = 1} в координатах α: метрика k(α)² dα² + sin²α g_S.

    :param n: Размерность.
    :param b: Полуось, b > 0.
    """
    n: int
    b: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"Размерность должна быть целым числом >= 2, получено {self.n}")
        if not self.b > 0:
            raise DomainError(f"Полуось эллипсоида должна быть положительной, получено {self.b}")

    @property
    def b2(self) -> float:
        return self.b * self.b

    def k(self, alpha):
        """
        k(α) = √(cos²α + b² sin²α).
        """
        return np.sqrt(np.cos(alpha) ** 2 + self.b2 * np.sin(alpha) ** 2)


def _require_sobolev(order: int, n: int) -> None:
    if order not in SOBOLEV_DIMENSION:
        raise DomainError(f"Энергии эллипсоида определены для порядков 2 и 3, получено {order}")
    if n < SOBOLEV_DIMENSION[order]:
        raise DomainError(f"Для порядка {order} нужна размерность n >= {SOBOLEV_DIMENSION[order]}, получено {n}")


def _tension_jet(rho, alpha: Jet, config: EllipsoidConfig) -> tuple[Jet, Jet, Jet]:
    order = alpha.order
    if order < 2:
        raise ArityError(f"Для поля натяжения нужен джет профиля порядка >= 2, получено {order}")
    m = order - 2
    n1 = config.n - 1
    base = alpha.truncate(m)
    alpha_dot = alpha.shift().truncate(m)
    alpha_ddot = alpha.shift().shift()
    s = jet_analytic("sin", base)
    c = jet_analytic("cos", base)
    k2 = c * c + s * s * config.b2
    r = Jet.variable(rho, m)
    tau = (
        alpha_ddot
        + alpha_dot * n1 / r
        + (s * c / k2) * (alpha_dot * alpha_dot * (config.b2 - 1.0) - n1 / (r * r))
    )
    return tau, c, k2


def ellipsoid_tension(rho, alpha: Jet, config: EllipsoidConfig, as_jet: bool = False):
    """
    Поле натяжения в E^n(b):
    τ_α = α̈ + (n-1)α̇/ρ - (n-1) sinα cosα/(ρ² k²) + (k'/k)α̇².

    :param rho: Точка или массив узлов в (0, 1).
    :param alpha: Джет профиля порядка K >= 2.
    :param config: Параметры эллипсоида.
    :param as_jet: Вернуть джет порядка K-2.
    :return: Значение или джет τ_α.
    """
    if np.any(np.asarray(rho) <= 0):
        raise DomainError(f"Точка {rho} вне интервала (0, 1)")
    tau, _, _ = _tension_jet(rho, alpha, config)
    return tau if as_jet else tau.value


def ellipsoid_lagrangian(rho, alpha: Jet, config: EllipsoidConfig, order: int):
    """
    L_2 = τ² k² ρ^{n-1}; L_3 = ρ^{n-1}[(n-1) τ² cos²α / ρ² + (d/dρ (k τ))²].

    Радиальное слагаемое L_3 - квадрат ковариантной производной поля τ_α ∂/∂α.
    """
    volume = rho ** (config.n - 1)
    if order == 2:
        tau, _, k2 = _tension_jet(rho, alpha.truncate(2), config)
        return tau.value * tau.value * k2.value * volume
    if order == 3:
        tau, c, k2 = _tension_jet(rho, alpha.truncate(3), config)
        radial = (jet_analytic("sqrt", k2) * tau)[1]
        tangential = tau.value * tau.value * c.value * c.value * (config.n - 1) / (rho * rho)
        return (tangential + radial * radial) * volume
    raise DomainError(f"Энергии эллипсоида определены для порядков 2 и 3, получено {order}")


def ellipsoid_energy(profile: ProfileFamily, config: EllipsoidConfig, order: int,
                     ring: Ring = "double", s: float = 0.0, **quadrature) -> QuadratureResult:
    """
    Би- или триэнергия ∫₀¹ L dρ отображения B^n -> E^n(b).

    При b = 1 лагранжианы вдвое больше сферических L_2, L_3.

    :param profile: Семейство профилей.
    :param config: Параметры эллипсоида.
    :param order: 2 или 3.
    :param ring: double или perturbation.
    :param s: Параметр семейства.
    :return: QuadratureResult.
    """
    _require_sobolev(order, config.n)
    return integrate(
        lambda rho: ellipsoid_lagrangian(rho, profile.jet(rho, order, ring, s), config, order),
        **quadrature,
    )


def ellipsoid_first_variation(a, bump: Bump, config: EllipsoidConfig, order: int, **quadrature) -> Variation:
    """
    dE/ds при s = 0 для постоянного профиля a + s·v.

    :param a: Угол или массив углов в (0, π/2).
    :param bump: Пробная функция, обращающаяся в ноль до порядка order-1 при ρ = 1.
    :param config: Параметры эллипсоида.
    :param order: 2 или 3.
    :return: Variation.
    """
    bump.require_admissible(order)
    base = np.asarray(a, dtype=float)
    profile = ProfileFamily(base[:, None] if base.ndim == 1 else float(base), bump)
    profile.require_proper()
    result = ellipsoid_energy(profile, config, order, "perturbation", **quadrature)
    return Variation(result.value.v1, result.error)


def _window(order: int, n: int, b: float) -> WindowReport:
    _require_sobolev(order, n)
    if not b > 0:
        raise DomainError(f"Полуось эллипсоида должна быть положительной, получено {b}")
    bound = (n - 1) / (2 * (n - 4)) if order == 2 else (n - 1) / (4 * (n - 6))
    b2 = b * b
    name = "bienergy" if order == 2 else "trienergy"
    return WindowReport(tag=f"window:{name}", order=order, n=n, b_squared=b2, bound=bound, inside=0 < b2 < bound)


def biharmonic_window(n: int, b: float) -> WindowReport:
    """
    Окно существования слабо бигармонических φ_a: 0 < b² < (n-1)/(2(n-4)), граница не входит.
    """
    return _window(2, n, b)


def triharmonic_window(n: int, b: float) -> WindowReport:
    """
    Окно существования слабо тригармонических φ_a: 0 < b² < (n-1)/(4(n-6)).
    """
    return _window(3, n, b)


def biharmonic_coefficients(n, b2) -> list:
    """
    Коэффициенты P_2(y), y = tan²a, старшая степень первой.

    Работают с любыми числами, включая символы sympy.
    """
    return [2 * b2 * (n - 4) - n + 1, 4 * (n - 4), 3 * (n - 3) / b2]


def triharmonic_coefficients(n, b2) -> list:
    """
    Коэффициенты P_b(x) = A_3 x³ + A_2 x² + A_1 x + A_0, x = cos²a.
    """
    a3 = (b2 - 1) * (2 * (n - 4) * b2 - 3 * (n - 3)) * (4 * (n - 6) * b2 - 5 * (n - 5))
    a2 = -b2 * (24 * (n - 4) * (n - 6) * b2 ** 2 + (-62 * n ** 2 + 566 * n - 1224) * b2
                + 41 * n ** 2 - 332 * n + 651)
    a1 = 2 * b2 * (12 * (n - 4) * (n - 6) * b2 ** 2 + (-17 * n ** 2 + 149 * n - 312) * b2
                   + (n - 1) * (2 * n - 5))
    a0 = -2 * b2 ** 2 * (n - 4) * (4 * (n - 6) * b2 - n + 1)
    return [a3, a2, a1, a0]


def _real_roots(coefficients: list[float]) -> list[float]:
    trimmed = np.trim_zeros(np.asarray(coefficients, dtype=float), "f")
    if trimmed.size < 2:
        return []
    found = np.polynomial.Polynomial(trimmed[::-1]).roots()
    return sorted(float(z.real) for z in found if abs(z.imag) <= IMAG_TOL * (1 + abs(z.real)))


def biharmonic_polynomial(n: int, b: float) -> EllipsoidPolynomialReport:
    """
    P_2(y) и его положительные корни с углами a = arctan √y.

    :param n: Размерность (>= 5).
    :param b: Полуось.
    :return: EllipsoidPolynomialReport.
    """
    window = biharmonic_window(n, b)
    coefficients = [float(c) for c in biharmonic_coefficients(n, b * b)]
    roots = [y for y in _real_roots(coefficients) if y > 0]
    closed = closed_form_angle(n, b) if window.inside else None
    logger.debug(f"P_2 при n={n}, b={b}: коэффициенты {coefficients}, корни {roots}")
    return EllipsoidPolynomialReport(
        tag="ellipsoid-polynomial:bienergy",
        order=2, n=n, b=b, variable="y = tan^2 a",
        coefficients=coefficients,
        roots=roots,
        angles=[math.atan(math.sqrt(y)) for y in roots],
        window=window,
        closed_form=closed,
    )


def triharmonic_polynomial(n: int, b: float) -> EllipsoidPolynomialReport:
    """
    P_b(x) и его корни в (0, 1) с углами a = arccos √x.

    :param n: Размерность (>= 7).
    :param b: Полуось.
    :return: EllipsoidPolynomialReport.
    """
    window = triharmonic_window(n, b)
    coefficients = [float(c) for c in triharmonic_coefficients(n, b * b)]
    roots = [x for x in _real_roots(coefficients) if 0 < x < 1]
    logger.debug(f"P_b при n={n}, b={b}: коэффициенты {coefficients}, корни {roots}")
    return EllipsoidPolynomialReport(
        tag="ellipsoid-polynomial:trienergy",
        order=3, n=n, b=b, variable="x = cos^2 a",
        coefficients=coefficients,
        roots=roots,
        angles=[math.acos(math.sqrt(x)) for x in roots],
        window=window,
    )


def closed_form_angle(n: int, b: float) -> float:
    """
    Явный угол слабо бигармонического φ_a: B^n -> E^n(b):
    a = arctan √(-(√(-(n-1)(2b²(n-4) - 3n + 9)) + 2b(n-4)) / (2b³(n-4) - bn + b)).

    :param n: Размерность.
    :param b: Полуось внутри окна.
    :return: Угол в (0, π/2).
    """
    window = biharmonic_window(n, b)
    if not window.inside:
        raise DomainError(f"(n={n}, b={b}) вне окна: b² = {window.b_squared} >= {window.bound}")
    inner = -(n - 1) * (2 * b * b * (n - 4) - 3 * n + 9)
    if inner <= 0:
        raise DomainError(f"Неположительный аргумент внутреннего корня: {inner}")
    ratio = -(math.sqrt(inner) + 2 * b * (n - 4)) / (2 * b ** 3 * (n - 4) - b * n + b)
    if ratio <= 0:
        raise DomainError(f"Неположительный аргумент внешнего корня: {ratio}")
    return math.atan(math.sqrt(ratio))


def boundary_polynomial(n, x):
    """
    P_b(x) на границе окна b² = b*² = (n-1)/(4(n-6)).
    """
    return x / (4 * (n - 6)) * (
        -3 * (n - 5) * (n - 1) ** 2
        - (n - 1) * (27 * n ** 2 - 268 * n + 601) * x
        - 2 * (3 * n - 23) * (5 * n ** 2 - 49 * n + 104) * x ** 2
    )


def comparison_factor(n, b2, x):
    """
    Q_b(x) из разложения P_{b*}(x) - P_b(x) = (1-x)(4(n-6)b² + 1 - n)/(4(n-6)) · Q_b(x).
    """
    return (
        x * (30 * n ** 2 * x + 3 * n ** 2 - 286 * n * x - 18 * n + 616 * x + 15)
        + 4 * (n - 6) * (7 * n - 25) * (1 - x) * x * b2
        + 8 * (n - 6) * (n - 4) * (1 - x) ** 2 * b2 ** 2
    )


def boundary_comparison_factor(n, x):
    """
    Q_b(x) при b² = b*².
    """
    return (
        (n - 4) * (n - 1) ** 2
        + 2 * (n - 4) * (n - 1) * (9 * n - 59) * x
        + (47 * n ** 3 - 790 * n ** 2 + 4239 * n - 7096) * x ** 2
    ) / (2 * (n - 6))


def window_certificate(n: int, samples: int = 1001) -> WindowCertificate:
    """
    Выборочная проверка обратного утверждения для тригармонического окна:
    P_{b*} < 0 и Q_{b*} > 0 на (0, 1).

    :param n: Размерность (>= 7).
    :param samples: Число точек сетки на [0, 1], концы исключаются.
    :return: WindowCertificate.
    """
    _require_sobolev(3, n)
    if samples < 3:
        raise DomainError(f"Нужно не меньше 3 точек сетки, получено {samples}")
    x = np.linspace(0.0, 1.0, samples)[1:-1]
    p_max = float(np.max(boundary_polynomial(n, x)))
    q_min = float(np.min(boundary_comparison_factor(n, x)))
    certified = p_max < 0 < q_min
    logger.info(f"Сертификат окна n={n}: max P = {p_max:.6g}, min Q = {q_min:.6g}, certified={certified}")
    return WindowCertificate(
        tag=f"window-certificate:n{n}",
        n=n, samples=samples,
        max_boundary_polynomial=p_max,
        min_comparison_factor=q_min,
        certified=certified,
    )
