# tests/test_tasks.py

import csv
import json

import openpyxl
import pytest

from polyharm.variational.models import PoleAngleRecord, RunReport, WindowReport
from polyharm.variational.tasks import export_report_csv, export_report_json, export_report_xlsx


@pytest.fixture
def report():
    return RunReport(
        command="warped",
        parameters={"order": 3, "n": 7},
        records=[
            PoleAngleRecord(tag="pole-angle:triharmonic-n7", order=3, n=7, a=0.87),
            WindowReport(tag="window:trienergy", order=3, n=7, b_squared=1.0, bound=1.5, inside=True),
        ],
        tolerances={"tol": 1e-9},
        references=["pole condition"],
        wall_time=0.125,
    )


def test_json_keeps_subclass_fields(report, tmp_path):
    path = export_report_json(report, tmp_path / "out" / "report.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["command"] == "warped"
    assert data["records"][0]["a"] == 0.87
    assert data["records"][1]["bound"] == 1.5


def test_csv_has_union_of_columns(report, tmp_path):
    path = export_report_csv(report, tmp_path / "report.csv")
    with path.open(encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert len(rows) == 2
    assert rows[0]["tag"] == "pole-angle:triharmonic-n7"
    assert rows[0]["bound"] == ""
    assert rows[1]["inside"] == "True"


def test_xlsx_has_records_and_parameters(report, tmp_path):
    path = export_report_xlsx(report, tmp_path / "report.xlsx")
    workbook = openpyxl.load_workbook(path)
    records = workbook["Записи"]
    assert records.max_row == 3
    assert records.cell(row=1, column=1).value == "tag"
    params = {row[0]: row[1] for row in workbook["Параметры"].iter_rows(min_row=2, values_only=True)}
    assert params["command"] == "warped"
    assert params["tolerance:tol"] == 1e-9


def test_unwritable_path_returns_none(report, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    assert export_report_json(report, blocker / "report.json") is None
