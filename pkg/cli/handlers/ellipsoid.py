# cli/handlers/ellipsoid.py

import logging

import click

from polyharm.variational.ellipsoid import (
    biharmonic_polynomial,
    biharmonic_window,
    triharmonic_polynomial,
    triharmonic_window,
    window_certificate,
)
from .common import execute, output_options, run_settings

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)


@click.command("ellipsoid")
@click.option("--order", type=click.IntRange(2, 3), required=True, help="2 - бигармонические, 3 - тригармонические")
@click.option("--n", "n", type=int, required=True, help="Размерность")
@click.option("--b", "b", type=float, required=True, help="Полуось эллипсоида")
@click.option("--window", is_flag=True, help="Только проверка окна существования")
@click.option("--certificate", is_flag=True, help="Сертификат обратного утверждения для тригармонического окна")
@click.option("--samples", type=click.IntRange(min=3), default=1001, show_default=True)
@output_options
@click.pass_context
def ellipsoid(ctx, order, n, b, window, certificate, samples, out_path, csv_path, xlsx_path):
    """
    Постоянные профили в эллипсоид E^n(b): окна, многочлены и явный угол.
    """
    if certificate and order != 3:
        raise click.UsageError("--certificate определён только для --order 3")
    run_settings(ctx)

    def produce():
        if window:
            return [biharmonic_window(n, b) if order == 2 else triharmonic_window(n, b)]
        records = [biharmonic_polynomial(n, b) if order == 2 else triharmonic_polynomial(n, b)]
        if certificate:
            records.append(window_certificate(n, samples))
        return records

    execute(
        ctx, "ellipsoid",
        dict(order=order, n=n, b=b, window=window, certificate=certificate, samples=samples),
        produce,
        out_path=out_path, csv_path=csv_path, xlsx_path=xlsx_path,
    )
