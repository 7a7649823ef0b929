# cli/main.py

import logging
from pathlib import Path

import click

from polyharm import __version__
from polyharm.config import settings

# Импорты обработчиков
from cli.handlers.conjecture import conjecture
from cli.handlers.critical import critical
from cli.handlers.ellipsoid import ellipsoid
from cli.handlers.sobolev import sobolev
from cli.handlers.stability import stability
from cli.handlers.warped import warped

logger = logging.getLogger(__name__)


def setup_logging(level: str, log_dir: str) -> None:
    """
    Настраивает корневой логгер: файл polyharm.log в каталоге логов и консоль.

    :param level: Уровень логирования.
    :param log_dir: Каталог для файла логов.
    """
    Path(log_dir).mkdir(parents=True, exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[
            logging.FileHandler(Path(log_dir) / "polyharm.log", encoding="utf-8"),
            logging.StreamHandler()
        ],
        force=True,
    )


@click.group()
@click.option("--config", type=click.Path(dir_okay=False), default=None, help="Файл key=value с параметрами")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Число рабочих потоков")
@click.option("--log-level", default=None, help="Уровень логирования")
@click.option("--log-dir", default=None, help="Каталог логов")
@click.version_option(version=__version__, message="%(version)s")
@click.pass_context
def cli(ctx, config, threads, log_level, log_dir):
    """
    Вариационный движок для поли-гармонических вращательно-симметричных отображений.
    """
    setup_logging(log_level or settings.LOG_LEVEL, log_dir or settings.LOG_DIR)
    ctx.obj = {"config": config, "threads": threads}


# Регистрация команд
cli.add_command(critical)
cli.add_command(stability)
cli.add_command(ellipsoid)
cli.add_command(warped)
cli.add_command(sobolev)
cli.add_command(conjecture)


def main():
    """
    Точка входа командной строки.
    """
    cli()


if __name__ == "__main__":
    main()
