# app/main.py
import sys
from typing import List, Optional

from app.application.cli_factory import create_parser
from app.application.config import settings
from app.core.exceptions.handler import run_with_error_handling
from app.utils.logging import setup_logging


def main(argv: Optional[List[str]] = None) -> int:
    """Разобрать аргументы, выполнить подкоманду и вернуть код завершения"""
    parser = create_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    return run_with_error_handling(
        lambda: args.handler(args), debug=settings.APP_ENV == "development"
    )


def run():
    """Функция для запуска через poetry scripts"""
    sys.exit(main())


if __name__ == "__main__":
    run()
