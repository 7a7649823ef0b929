# cli/handlers/sobolev.py

import click

from polyharm.variational.criticality import sobolev_check
from .common import execute, output_options, run_settings


@click.command("sobolev")
@click.option("--r", "r", type=click.IntRange(min=1), required=True)
@click.option("--n", "n", type=click.IntRange(min=2), required=True)
@output_options
@click.pass_context
def sobolev(ctx, r, n, out_path, csv_path, xlsx_path):
    """
    Принадлежность постоянного профиля классу W^{r,2}.
    """
    run_settings(ctx)
    execute(ctx, "sobolev", dict(r=r, n=n), lambda: [sobolev_check(r, n)],
            out_path=out_path, csv_path=csv_path, xlsx_path=xlsx_path)
