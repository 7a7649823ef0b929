# cli/handlers/critical.py

import logging

import click

from polyharm.variational.criticality import criticality_polynomial, dimension_scan
from .common import execute, output_options, run_settings

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)

VARIANTS = {"std": "standard", "standard": "standard", "es": "es"}


@click.command("critical")
@click.option("--r", "r", type=click.IntRange(min=2), required=True, help="Порядок энергии")
@click.option("--variant", type=click.Choice(sorted(VARIANTS)), default="std", show_default=True)
@click.option("--n-min", type=int, required=True, help="Нижняя граница размерности")
@click.option("--n-max", type=int, required=True, help="Верхняя граница размерности")
@click.option("--tol", type=float, default=None, help="Допуск нормированной невязки")
@click.option("--grid-size", type=int, default=None, help="Размер сетки углов")
@click.option("--polynomial", is_flag=True, help="Добавить явный многочлен (r = 2, 3, 5)")
@output_options
@click.pass_context
def critical(ctx, r, variant, n_min, n_max, tol, grid_size, polynomial, out_path, csv_path, xlsx_path):
    """
    Критические углы постоянных профилей по диапазону размерностей.
    """
    run = run_settings(ctx, tol=tol, grid_size=grid_size)
    variant = VARIANTS[variant]

    def produce():
        found = dimension_scan(r, n_min, n_max, variant, run=run)
        records = [rec for n in sorted(found) for rec in found[n]]
        if polynomial:
            records.extend(criticality_polynomial(r, n) for n in range(n_min, n_max + 1))
        return records

    execute(
        ctx, "critical",
        dict(r=r, variant=variant, n_min=n_min, n_max=n_max, grid_size=run.grid_size, polynomial=polynomial),
        produce,
        tolerances=dict(residual=run.tol, root_match=run.root_match_tol, brent=run.root_xtol,
                        quadrature_abs=run.quad_tol_abs, quadrature_rel=run.quad_tol_rel),
        out_path=out_path, csv_path=csv_path, xlsx_path=xlsx_path,
    )
