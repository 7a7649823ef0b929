# polyharm/variational/errors.py


class PolyharmError(Exception):
    """
    Базовая ошибка движка. Каждый класс несёт код завершения процесса для CLI.
    """
    exit_code = 1


class DomainError(PolyharmError, ValueError):
    """
    Аргумент вне области определения (точка вне интервала, корень из неположительного
    числа, нарушенное предусловие окна и т.п.).
    """
    exit_code = 3


class SingularityError(DomainError, ZeroDivisionError):
    """
    Деление на элемент с нулевой значащей частью.
    """


class ArityError(DomainError):
    """
    Порядок джета недостаточен для запрошенной операции.
    """


class AdmissibilityError(DomainError):
    """
    Пробная функция не обращается в ноль на границе с нужным порядком.
    """


class UnsupportedError(DomainError):
    """
    Запрошенный вариант функционала не поддерживается.
    """


class AccuracyError(PolyharmError, ArithmeticError):
    """
    Требуемая точность не достигнута.

    :param message: Описание ошибки.
    :param estimate: Последняя оценка погрешности.
    """
    exit_code = 4

    def __init__(self, message: str, estimate: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate


class IntegrationError(AccuracyError):
    """
    Сбой интегрирования ОДУ (например, шаг стал слишком малым).
    """
