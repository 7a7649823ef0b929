# polyharm/variational/jets.py

import logging
import math
from typing import Sequence

import numpy as np

from .errors import ArityError, DomainError, SingularityError

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

# Максимальный поддерживаемый порядок джета
MAX_ORDER = 16

# Порог, ниже которого отрицательные аргументы корня считаются ошибкой округления
SQRT_CLAMP = 1e-15

_SCALARS = (int, float, np.ndarray, np.number)


def _is_zero(x) -> bool:
    # Точный скалярный ноль можно пропускать без потери результата
    return isinstance(x, (int, float)) and x == 0


def _mul(a, b):
    if _is_zero(a) or _is_zero(b):
        return 0.0
    return a * b


def _add(a, b):
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    return a + b


def _value_is_zero(x) -> bool:
    return bool(np.any(np.asarray(x) == 0))


class Perturbation2:
    """
    Элемент кольца R[s]/(s^3): значение v0, первая вариация v1 и вторая вариация v2.

    Функция g действует по правилу цепочки:
    g(x) = (g(x0), g'(x0) x1, g''(x0) x1^2 + g'(x0) x2).
    Компоненты могут быть числами или массивами numpy одинаковой формы.
    """
    __slots__ = ("v0", "v1", "v2")
    __array_ufunc__ = None

    def __init__(self, v0, v1=0.0, v2=0.0):
        self.v0 = v0
        self.v1 = v1
        self.v2 = v2

    def __repr__(self):
        return f"Perturbation2({self.v0!r}, {self.v1!r}, {self.v2!r})"

    @staticmethod
    def _coerce(other):
        if isinstance(other, Perturbation2):
            return other
        if isinstance(other, _SCALARS):
            return Perturbation2(other)
        return None

    @property
    def value(self):
        return self.v0

    def apply(self, g0, g1, g2) -> "Perturbation2":
        """
        Применяет функцию по её значению и двум производным в точке v0.

        :param g0: g(v0).
        :param g1: g'(v0).
        :param g2: g''(v0).
        :return: Образ элемента.
        """
        return Perturbation2(
            g0,
            _mul(g1, self.v1),
            _add(_mul(g2, _mul(self.v1, self.v1)), _mul(g1, self.v2)),
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Perturbation2(self.v0 + other.v0, _add(self.v1, other.v1), _add(self.v2, other.v2))

    __radd__ = __add__

    def __neg__(self):
        return Perturbation2(-self.v0, _mul(-1.0, self.v1), _mul(-1.0, self.v2))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        v1 = _add(_mul(self.v0, other.v1), _mul(self.v1, other.v0))
        v2 = _add(
            _add(_mul(self.v0, other.v2), _mul(self.v2, other.v0)),
            _mul(2.0, _mul(self.v1, other.v1)),
        )
        return Perturbation2(self.v0 * other.v0, v1, v2)

    __rmul__ = __mul__

    def reciprocal(self) -> "Perturbation2":
        if _value_is_zero(self.v0):
            raise SingularityError("Деление на элемент с нулевым значением")
        inv = 1.0 / self.v0
        return self.apply(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if _is_zero(other.v1) and _is_zero(other.v2):
            if _value_is_zero(other.v0):
                raise SingularityError("Деление на элемент с нулевым значением")
            inv = 1.0 / other.v0
            return Perturbation2(self.v0 * inv, _mul(self.v1, inv), _mul(self.v2, inv))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            if p == 0:
                return Perturbation2(self.v0 ** 0)
            if p == 1:
                return self
            return self.apply(
                self.v0 ** p,
                p * self.v0 ** (p - 1),
                p * (p - 1) * self.v0 ** (p - 2),
            )
        if np.any(np.asarray(self.v0) <= 0):
            raise DomainError(f"Нецелая степень {p} определена только для положительных значений")
        return self.apply(
            self.v0 ** p,
            p * self.v0 ** (p - 1),
            p * (p - 1) * self.v0 ** (p - 2),
        )

    def sin(self):
        s, c = np.sin(self.v0), np.cos(self.v0)
        return self.apply(s, c, -s)

    def cos(self):
        s, c = np.sin(self.v0), np.cos(self.v0)
        return self.apply(c, -s, -c)

    def sinh(self):
        s, c = np.sinh(self.v0), np.cosh(self.v0)
        return self.apply(s, c, s)

    def cosh(self):
        s, c = np.sinh(self.v0), np.cosh(self.v0)
        return self.apply(c, s, c)

    def sqrt(self):
        if np.any(np.asarray(self.v0) <= 0):
            raise DomainError("Корень из неположительного значения")
        q = np.sqrt(self.v0)
        return self.apply(q, 0.5 / q, -0.25 / (q * self.v0))


# Диспетчеры элементарных функций для скаляров кольца

def value_part(x):
    """
    Значащая часть скаляра кольца (v0 для Perturbation2, сам скаляр иначе).
    """
    return x.v0 if isinstance(x, Perturbation2) else x


def sin(x):
    return x.sin() if isinstance(x, Perturbation2) else np.sin(x)


def cos(x):
    return x.cos() if isinstance(x, Perturbation2) else np.cos(x)


def sinh(x):
    return x.sinh() if isinstance(x, Perturbation2) else np.sinh(x)


def cosh(x):
    return x.cosh() if isinstance(x, Perturbation2) else np.cosh(x)


def sqrt(x):
    if isinstance(x, Perturbation2):
        return x.sqrt()
    if np.any(np.asarray(x) <= 0):
        raise DomainError("Корень из неположительного значения")
    return np.sqrt(x)


def ring_pow(x, p):
    """
    Степень скаляра кольца. Нецелые степени требуют положительного значения.
    """
    if isinstance(x, Perturbation2):
        return x ** p
    if not (isinstance(p, (int, np.integer)) and p >= 0) and np.any(np.asarray(x) <= 0):
        raise DomainError(f"Нецелая степень {p} определена только для положительных значений")
    return x ** p


def guarded_sqrt(x):
    """
    Корень из неотрицательной по построению величины (сумма квадратов).

    Аргументы из [-1e-15, 0) считаются нулём, более отрицательные - ошибкой.
    Для Perturbation2 нулевое значение недопустимо: производная корня в нуле не определена.

    :param x: Скаляр кольца.
    :return: Неотрицательный корень.
    """
    v = np.asarray(value_part(x), dtype=float)
    if np.any(v < -SQRT_CLAMP):
        raise DomainError(f"Отрицательный аргумент корня: {float(np.min(v))}")
    if isinstance(x, Perturbation2):
        return x.sqrt()
    return np.sqrt(np.where(v < 0, 0.0, v)) if isinstance(x, np.ndarray) else math.sqrt(max(float(x), 0.0))


class Jet:
    """
    Усечённый ряд Тейлора порядка K: coeffs[i] - i-я производная в базовой точке.

    Коэффициенты - скаляры кольца: числа, массивы numpy или Perturbation2.
    При операциях джетов разного порядка результат усекается до меньшего.
    """
    __slots__ = ("coeffs",)
    __array_ufunc__ = None

    def __init__(self, coeffs: Sequence):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ArityError("Джет должен содержать хотя бы значение")
        if len(coeffs) - 1 > MAX_ORDER:
            raise ArityError(f"Порядок джета {len(coeffs) - 1} превышает максимальный {MAX_ORDER}")
        self.coeffs = coeffs

    def __repr__(self):
        return f"Jet({list(self.coeffs)!r})"

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        return cls((value,) + (0.0,) * order)

    @classmethod
    def variable(cls, value, order: int) -> "Jet":
        """
        Джет независимой переменной x в точке value.
        """
        if order == 0:
            return cls((value,))
        return cls((value, 1.0) + (0.0,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self):
        return self.coeffs[0]

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ArityError(f"Нельзя повысить порядок джета с {self.order} до {order}")
        return Jet(self.coeffs[:order + 1])

    def shift(self) -> "Jet":
        """
        Производная: сдвиг коэффициентов, порядок уменьшается на единицу.
        """
        if self.order == 0:
            raise ArityError("Сдвиг джета нулевого порядка")
        return Jet(self.coeffs[1:])

    def taylor(self) -> list:
        """
        Коэффициенты Тейлора a_i / i!.
        """
        return [c / math.factorial(i) if not _is_zero(c) else 0.0 for i, c in enumerate(self.coeffs)]

    def _align(self, other: "Jet"):
        k = min(self.order, other.order)
        return self.coeffs[:k + 1], other.coeffs[:k + 1]

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            return Jet(_add(x, y) for x, y in zip(a, b))
        if isinstance(other, _SCALARS + (Perturbation2,)):
            return Jet((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Jet(_mul(-1.0, c) for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, (Jet, Perturbation2) + _SCALARS):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (Perturbation2,) + _SCALARS):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            out = []
            for k in range(len(a)):
                acc = 0.0
                for i in range(k + 1):
                    term = _mul(a[i], b[k - i])
                    if not _is_zero(term):
                        acc = _add(acc, _mul(math.comb(k, i), term) if 0 < i < k else term)
                out.append(acc)
            return Jet(out)
        if isinstance(other, _SCALARS + (Perturbation2,)):
            return Jet(_mul(c, other) for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            a, b = self._align(other)
            b0 = b[0]
            if _value_is_zero(value_part(b0)):
                raise SingularityError("Деление на джет с нулевым свободным членом")
            q = []
            for k in range(len(a)):
                acc = a[k]
                for i in range(1, k + 1):
                    term = _mul(b[i], q[k - i])
                    if not _is_zero(term):
                        acc = _add(acc, _mul(-math.comb(k, i), term))
                q.append(acc / b0 if not _is_zero(acc) else 0.0)
            return Jet(q)
        if isinstance(other, _SCALARS + (Perturbation2,)):
            if _value_is_zero(value_part(other)):
                raise SingularityError("Деление джета на ноль")
            return Jet(c / other if not _is_zero(c) else 0.0 for c in self.coeffs)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _SCALARS + (Perturbation2,)):
            return Jet.constant(other, self.order) / self
        return NotImplemented

    def __pow__(self, p):
        if not isinstance(p, (int, np.integer)) or p < 0:
            return jet_analytic("pow", self, p)
        result = Jet.constant(1.0, self.order)
        base = self
        while p:
            if p & 1:
                result = result * base
            p >>= 1
            if p:
                base = base * base
        return result


def compose(jet: Jet, derivatives: Sequence) -> Jet:
    """
    Композиция g(jet) по производным g^(k) в точке jet.value, k = 0..K.

    :param jet: Внутренний джет порядка K.
    :param derivatives: Не менее K+1 скаляров кольца.
    :return: Джет g∘jet того же порядка.
    """
    order = jet.order
    if len(derivatives) < order + 1:
        raise ArityError(f"Нужно {order + 1} производных, передано {len(derivatives)}")
    delta = Jet((0.0,) + jet.coeffs[1:])
    result = Jet.constant(derivatives[0], order)
    power = Jet.constant(1.0, order)
    for k in range(1, order + 1):
        power = power * delta
        if not _is_zero(derivatives[k]):
            result = result + power * (derivatives[k] / math.factorial(k))
    return result


def analytic_derivatives(fn: str, x, count: int, p: float | None = None) -> list:
    """
    Производные элементарной функции в точке x (скаляр кольца), порядки 0..count-1.

    :param fn: Имя функции: sin, cos, sinh, cosh, sqrt, pow.
    :param x: Точка.
    :param count: Число производных.
    :param p: Показатель для pow.
    :return: Список производных.
    """
    if fn in ("sin", "cos"):
        s, c = sin(x), cos(x)
        cycle = [s, c, -s, -c] if fn == "sin" else [c, -s, -c, s]
        return [cycle[k % 4] for k in range(count)]
    if fn in ("sinh", "cosh"):
        s, c = sinh(x), cosh(x)
        cycle = [s, c] if fn == "sinh" else [c, s]
        return [cycle[k % 2] for k in range(count)]
    if fn in ("sqrt", "pow"):
        p = 0.5 if fn == "sqrt" else p
        if p is None:
            raise DomainError("Для pow нужен показатель степени")
        integral = float(p).is_integer() and p >= 0
        if not integral and np.any(np.asarray(value_part(x)) <= 0):
            raise DomainError(f"{fn} определена только для положительного свободного члена")
        out = []
        falling = 1.0
        for k in range(count):
            if integral and k > p:
                out.append(0.0)
            else:
                out.append(falling * ring_pow(x, int(p - k) if integral else p - k))
            falling *= (p - k)
        return out
    raise DomainError(f"Неизвестная функция: {fn}")


def jet_analytic(fn: str, jet: Jet, p: float | None = None) -> Jet:
    """
    Применяет аналитическую функцию к джету.

    :param fn: sin, cos, sinh, cosh, sqrt или pow.
    :param jet: Аргумент.
    :param p: Показатель для pow.
    :return: Джет образа.
    """
    if fn == "sqrt" and np.any(np.asarray(value_part(jet.value)) <= 0):
        raise DomainError("Корень из джета с неположительным свободным членом")
    return compose(jet, analytic_derivatives(fn, jet.value, jet.order + 1, p))


def jet_binary(op: str, a: Jet, b: Jet) -> Jet:
    """
    Бинарная операция над джетами одного порядка.

    :param op: '+', '-', '*' или '/'.
    :return: Результат того же порядка.
    """
    if a.order != b.order:
        raise ArityError(f"Порядки джетов не совпадают: {a.order} и {b.order}")
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise DomainError(f"Неизвестная операция: {op}")


def jet_shift(a: Jet) -> Jet:
    return a.shift()
