# polyharm/variational/utils.py

import asyncio
import logging
from typing import Callable, Iterable, TypeVar

from asgiref.sync import sync_to_async

from polyharm.config import settings

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


async def _gather_limited(func: Callable[[T], R], items: list[T], threads: int) -> list[R]:
    semaphore = asyncio.Semaphore(threads)
    worker = sync_to_async(func, thread_sensitive=False)

    async def _run(item):
        async with semaphore:
            return await worker(item)

    return await asyncio.gather(*(_run(item) for item in items))


def run_parallel(func: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """
    Выполняет чистую функцию над набором параметров в пуле потоков.

    Порядок результатов совпадает с порядком входа. Первое исключение пробрасывается.

    :param func: Функция одного аргумента.
    :param items: Аргументы.
    :param threads: Предел одновременных задач (по умолчанию POLYHARM_THREADS).
    :return: Список результатов.
    """
    items = list(items)
    threads = settings.THREADS if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug(f"Параллельный запуск {len(items)} задач, потоков: {threads}")
    return asyncio.run(_gather_limited(func, items, threads))
