# cli/handlers/stability.py

import logging

import click

from polyharm.variational.geometry import parse_bump
from polyharm.variational.stability import REFERENCE_CASES, VERDICT_FACTOR, reference_stability_suite, stability_case
from .common import execute, output_options, run_settings

# Настройка логирования для данного модуля
logger = logging.getLogger(__name__)


@click.command("stability")
@click.option("--case", "case_name", type=click.Choice(["all"] + list(REFERENCE_CASES)), default=None,
              help="Эталонный случай или all")
@click.option("--r", "r", type=click.IntRange(min=2), default=None, help="Порядок энергии")
@click.option("--n", "n", type=int, default=None, help="Размерность")
@click.option("--a", "a", type=float, default=None, help="Угол в (0, π/2)")
@click.option("--bump", default=None, help="Пробная функция, например bump:(1-rho)^3")
@click.option("--variant", type=click.Choice(["std", "es"]), default="std", show_default=True)
@click.option("--es5-drift", type=click.Choice(["h2", "h1"]), default="h2", show_default=True,
              help="Множитель члена (n-3)·α̇τ·ḟ/f в скобке ES-5")
@output_options
@click.pass_context
def stability(ctx, case_name, r, n, a, bump, variant, es5_drift, out_path, csv_path, xlsx_path):
    """
    Вторая вариация энергии в критических точках.
    """
    generic = (r, n, a, bump)
    if case_name is None and any(value is None for value in generic):
        raise click.UsageError("Нужен --case или полный набор --r --n --a --bump")
    if case_name is not None and any(value is not None for value in generic):
        raise click.UsageError("--case нельзя сочетать с --r --n --a --bump")
    run = run_settings(ctx)
    variant = "standard" if variant == "std" else "es"

    def produce():
        if case_name is not None:
            return reference_stability_suite(None if case_name == "all" else [case_name], run=run)
        return [stability_case(r, n, a, parse_bump(bump), variant, run=run, es5_drift=es5_drift)]

    parameters = dict(case=case_name) if case_name else dict(r=r, n=n, a=a, bump=bump, variant=variant, es5_drift=es5_drift)
    execute(
        ctx, "stability", parameters, produce,
        tolerances=dict(verdict_factor=VERDICT_FACTOR, quadrature_abs=run.quad_tol_abs,
                        quadrature_rel=run.quad_tol_rel),
        out_path=out_path, csv_path=csv_path, xlsx_path=xlsx_path,
    )
