# cli/handlers/warped.py

import logging

import click

from polyharm.variational.errors import DomainError
from polyharm.variational.geometry import parse_warp
from polyharm.variational.warped_domain import pole_angle_record, pole_series_check, series_induction_check, shoot_ode
from .common import execute, output_options, run_settings

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)


@click.command("warped")
@click.option("--order", type=click.IntRange(2, 3), default=2, show_default=True)
@click.option("--n", "n", type=int, default=None, help="Размерность области")
@click.option("--ode", is_flag=True, help="Стрельба для бигармонического уравнения на f")
@click.option("--slope", type=float, default=1.0, show_default=True, help="f'(ρ0) при стрельбе")
@click.option("--series", is_flag=True, help="Проверка q(j) ≠ 0")
@click.option("--max", "max_index", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--pole-series", "warp", default=None, help="Ряд невязки для series:b3=...,b5=...")
@click.option("--series-order", type=click.IntRange(0, 12), default=8, show_default=True)
@output_options
@click.pass_context
def warped(ctx, order, n, ode, slope, series, max_index, warp, series_order, out_path, csv_path, xlsx_path):
    """
    Обратная задача: какие искривлённые шары B^n_f допускают постоянные поли-гармонические отображения.
    """
    if (ode or not (series or warp)) and n is None:
        raise click.UsageError("Нужна размерность --n")
    if ode and order != 2:
        raise click.UsageError("--ode определён только для --order 2")
    run_settings(ctx)

    def produce():
        records = []
        if ode:
            records.append(shoot_ode(n, slope=slope))
        if series:
            records.append(series_induction_check(max_index))
        if warp is not None:
            fn = parse_warp(warp)
            if fn.kind != "series":
                raise DomainError(f"Ожидалась функция вида series:b3=..., получено {warp}")
            records.append(pole_series_check(fn.coefficients, series_order))
        if not records:
            records.append(pole_angle_record(order, n))
        return records

    execute(
        ctx, "warped",
        dict(order=order, n=n, ode=ode, slope=slope, series=series, max=max_index,
             pole_series=warp, series_order=series_order),
        produce,
        out_path=out_path, csv_path=csv_path, xlsx_path=xlsx_path,
    )
