# cli/handlers/conjecture.py

import logging

import click

from polyharm.variational.criticality import conjecture_angle, verify_conjecture
from .common import execute, output_options, run_settings

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)


@click.command("conjecture")
@click.option("--r", "orders", type=click.IntRange(min=2), multiple=True, required=True,
              help="Порядок (можно повторять)")
@click.option("--verify", is_flag=True, help="Сравнить со сканированием при n = 2r+1")
@output_options
@click.pass_context
def conjecture(ctx, orders, verify, out_path, csv_path, xlsx_path):
    """
    Предполагаемый критический угол a_r при n = 2r+1.
    """
    run = run_settings(ctx)

    def produce():
        if verify:
            return [verify_conjecture(r, run=run) for r in orders]
        return [conjecture_angle(r) for r in orders]

    execute(ctx, "conjecture", dict(r=list(orders), verify=verify), produce,
            tolerances=dict(residual=run.tol, root_match=run.root_match_tol),
            out_path=out_path, csv_path=csv_path, xlsx_path=xlsx_path)
