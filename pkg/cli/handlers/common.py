# cli/handlers/common.py

import functools
import logging
import time
from typing import Callable

import click

from polyharm.config.settings import RunSettings, load_run_settings
from polyharm.variational.errors import PolyharmError
from polyharm.variational.models import Record, RunReport
from polyharm.variational.tasks import export_report_csv, export_report_json, export_report_xlsx

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)


def output_options(func: Callable) -> Callable:
    """
    Общие флаги вывода отчёта: --out (JSON), --csv, --xlsx.
    """
    @click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="JSON-отчёт")
    @click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="CSV-проекция записей")
    @click.option("--xlsx", "xlsx_path", type=click.Path(dir_okay=False), default=None, help="Отчёт Excel")
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def run_settings(ctx: click.Context, **overrides) -> RunSettings:
    """
    Параметры запуска из --config группы, окружения и флагов команды.
    """
    obj = ctx.find_root().obj or {}
    try:
        return load_run_settings(obj.get("config"), threads=obj.get("threads"), **overrides)
    except PolyharmError as e:
        logger.error(f"Некорректная конфигурация: {e}", exc_info=True)
        click.echo(f"Ошибка: {e}", err=True)
        ctx.exit(e.exit_code)


def execute(
    ctx: click.Context,
    command: str,
    parameters: dict,
    produce: Callable[[], list[Record]],
    *,
    tolerances: dict[str, float] | None = None,
    references: list[str] | None = None,
    out_path: str | None = None,
    csv_path: str | None = None,
    xlsx_path: str | None = None,
) -> RunReport:
    """
    Выполняет команду, собирает RunReport и сохраняет его.

    Ошибки движка логируются и превращаются в код завершения класса ошибки.

    :param ctx: Контекст click.
    :param command: Имя команды.
    :param parameters: Эхо параметров.
    :param produce: Функция, возвращающая записи отчёта.
    :param tolerances: Использованные допуски.
    :param references: Теги результатов.
    :return: RunReport.
    """
    started = time.perf_counter()
    logger.info(f"Запуск команды {command} с параметрами {parameters}")
    try:
        records = produce()
    except PolyharmError as e:
        logger.error(f"Команда {command} завершилась ошибкой: {e}", exc_info=True)
        click.echo(f"Ошибка: {e}", err=True)
        ctx.exit(e.exit_code)

    report = RunReport(
        command=command,
        parameters=parameters,
        records=records,
        tolerances=tolerances or {},
        references=references if references is not None else sorted({rec.tag for rec in records}),
        wall_time=round(time.perf_counter() - started, 3),
    )
    logger.info(f"Команда {command} завершена за {report.wall_time} с, записей: {len(records)}")

    if out_path:
        export_report_json(report, out_path)
    else:
        click.echo(report.model_dump_json(indent=2))
    if csv_path:
        export_report_csv(report, csv_path)
    if xlsx_path:
        export_report_xlsx(report, xlsx_path)
    return report
