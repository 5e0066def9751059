# app/cli/common.py
import argparse
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel

from app.application.config import settings
from app.core.activation import get_activation
from app.core.exceptions import ValidationError
from app.core.model import DipNetwork, init_network
from app.core.problem import InverseProblem, make_problem
from app.schemas import RunConfig
from app.storage import read_matrix
from app.utils.seeding import derive_seed

logger = logging.getLogger(__name__)

ConfigType = TypeVar("ConfigType", bound=BaseModel)

# Потоки seed одиночного запуска
PROBLEM_STREAM = 0
NETWORK_STREAM = 1


def load_config(
    path: Optional[str], model: Type[ConfigType], overrides: Optional[Dict[str, Any]] = None
) -> ConfigType:
    """
    Прочитать JSON-конфигурацию и применить переопределения флагов

    json.JSONDecodeError и pydantic ValidationError пробрасываются,
    обработчик ошибок CLI превращает их в код 1 с диагностикой.
    """
    if not path:
        raise ValidationError("--config is required", field="config")
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValidationError("Config root must be a JSON object", field="<root>")
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    return model.model_validate(data)


def output_dir(flag: Optional[str], configured: Optional[str]) -> Path:
    """--out > поле конфигурации > settings.OUTPUT_DIR"""
    directory = Path(flag or configured or settings.OUTPUT_DIR)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def provenance(command: str, config: BaseModel, seed: int) -> Dict[str, Any]:
    """Провенанс артефакта: команда, полная конфигурация и seed"""
    return {
        "command": command,
        "version": settings.APP_VERSION,
        "seed": seed,
        "config": config.model_dump(mode="json"),
    }


def build_instance(cfg: RunConfig) -> Tuple[InverseProblem, DipNetwork]:
    """Задача и сеть одиночного запуска из seed конфигурации"""
    problem = cfg.problem
    A = read_matrix(problem.operator_path) if problem.operator_kind == "custom" else None
    prob = make_problem(
        problem.m,
        problem.n,
        problem.noise_level,
        derive_seed(cfg.seed, PROBLEM_STREAM),
        operator_kind=problem.operator_kind,
        A=A,
        signal_scale=problem.signal_scale,
    )
    network = cfg.network
    net = init_network(
        network.k,
        network.d,
        problem.n,
        get_activation(network.activation),
        derive_seed(cfg.seed, NETWORK_STREAM),
        network.v_distribution,
    )
    return prob, net


def add_common_arguments(parser: argparse.ArgumentParser):
    """Флаги, общие для всех подкоманд"""
    parser.add_argument("--config", metavar="PATH", help="JSON-файл конфигурации")
    parser.add_argument("--seed", type=int, metavar="N", help="Переопределить seed")
    parser.add_argument(
        "--threads", type=int, metavar="N", help="Число потоков (иначе DIP_THREADS или число CPU)"
    )
    parser.add_argument("--out", metavar="DIR", help="Каталог артефактов")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Уровень логирования",
    )
