# polyharm/variational/tasks.py

import csv
import logging
from pathlib import Path

import openpyxl

from .models import RunReport

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)


def _flat_rows(report: RunReport) -> tuple[list[str], list[dict]]:
    rows = [record.flat() for record in report.records]
    headers: list[str] = []
    for row in rows:
        for key in row:
            if key not in headers:
                headers.append(key)
    return headers, rows


def export_report_json(report: RunReport, path: str | Path) -> Path | None:
    """
    Сохраняет отчёт в JSON.

    :param report: Отчёт запуска.
    :param path: Путь к файлу.
    :return: Путь к сохранённому файлу или None при ошибке.
    """
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Отчёт {report.command} сохранён в {path}")
        return path
    except OSError as e:
        logger.error(f"Ошибка при сохранении JSON-отчёта: {e}", exc_info=True)
        return None


def export_report_csv(report: RunReport, path: str | Path) -> Path | None:
    """
    Плоская проекция записей отчёта в CSV: одна строка на запись.
    """
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        headers, rows = _flat_rows(report)
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=headers)
            writer.writeheader()
            writer.writerows(rows)
        logger.info(f"CSV с {len(rows)} записями сохранён в {path}")
        return path
    except OSError as e:
        logger.error(f"Ошибка при сохранении CSV-отчёта: {e}", exc_info=True)
        return None


def export_report_xlsx(report: RunReport, path: str | Path) -> Path | None:
    """
    Экспорт отчёта в Excel: лист с записями и лист с параметрами запуска.

    :param report: Отчёт запуска.
    :param path: Путь к файлу.
    :return: Путь к сохранённому файлу или None при ошибке.
    """
    logger.info(f"Начало экспорта отчёта {report.command} в Excel.")
    try:
        workbook = openpyxl.Workbook()
        sheet = workbook.active
        sheet.title = "Записи"

        headers, rows = _flat_rows(report)
        sheet.append(headers)
        for row in rows:
            sheet.append([row.get(key) for key in headers])
        logger.debug(f"Заполнено {len(rows)} строк записей.")

        params = workbook.create_sheet("Параметры")
        params.append(["Ключ", "Значение"])
        params.append(["command", report.command])
        for key, value in report.parameters.items():
            params.append([key, str(value)])
        for key, value in report.tolerances.items():
            params.append([f"tolerance:{key}", value])
        params.append(["wall_time", report.wall_time])

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        workbook.save(path)
        logger.info(f"Экспорт завершён. Файл сохранён по пути: {path}")
        return path
    except OSError as e:
        logger.error(f"Ошибка при экспорте отчёта в Excel: {e}", exc_info=True)
        return None
