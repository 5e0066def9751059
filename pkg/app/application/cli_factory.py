# app/application/cli_factory.py
import argparse

from app.application.commands import register_commands
from app.application.config import settings


def create_parser() -> argparse.ArgumentParser:
    """Фабрика парсера командной строки"""
    parser = argparse.ArgumentParser(
        prog="dip",
        description="Сходимость двухслойного Deep Inverse Prior: потоки, теория, сетки",
    )
    parser.add_argument(
        "--version", action="version", version=f"{settings.APP_NAME} {settings.APP_VERSION}"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    # Регистрируем подкоманды
    register_commands(subparsers)

    return parser
