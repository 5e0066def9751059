"""
Базовые схемы для всех DTO в приложении
"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

# Граница для 64-битных зерен
SEED_LIMIT = 2**64


class BaseDTO(BaseModel):
    """Базовый DTO: строгие поля, ±inf/nan сериализуются как константы JSON"""

    model_config = ConfigDict(
        populate_by_name=True,
        extra="forbid",
        ser_json_inf_nan="constants",
    )


class FrozenDTO(BaseDTO):
    """Неизменяемый DTO (результаты, безопасные для агрегации между потоками)"""

    model_config = ConfigDict(
        populate_by_name=True,
        extra="forbid",
        ser_json_inf_nan="constants",
        frozen=True,
    )


class ProvenanceMixin(BaseModel):
    """Миксин для провенанса артефактов"""

    provenance: Optional[Dict[str, Any]] = Field(
        None,
        description="Полная конфигурация и seed, с которыми получен артефакт",
    )
