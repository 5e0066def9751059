# app/application/config.py
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Загружаем .env файл
load_dotenv()


class Settings(BaseSettings):
    """Конфигурация приложения"""

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        extra="allow",
    )

    # App
    APP_NAME: str = "DIP Convergence Lab"
    APP_VERSION: str = "0.1.0"
    APP_ENV: str = "development"
    LOG_LEVEL: str = "INFO"

    # Артефакты
    OUTPUT_DIR: Path = Path("runs")

    # Параллелизм: переменная окружения перекрывает число потоков по умолчанию
    DIP_THREADS: Optional[int] = Field(None, ge=1)

    # Бюджет сетки в условных единицах работы (см. estimate_cost)
    WORK_BUDGET: float = Field(5e13, gt=0)

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        return str(v).upper()

    def default_threads(self) -> int:
        """Число потоков, если оно не задано флагом --threads"""
        if self.DIP_THREADS:
            return self.DIP_THREADS
        return os.cpu_count() or 1


class FlowSettings(BaseSettings):
    """Настройки градиентного потока по умолчанию (режим воспроизведения)"""

    model_config = SettingsConfigDict(env_prefix="FLOW_")

    STEP_SIZE: float = Field(1.0, gt=0)
    MAX_STEPS: int = Field(25000, ge=1)
    LOSS_THRESHOLD: float = Field(1e-7, gt=0)
    RECORD_EVERY: int = Field(100, ge=1)


class TheorySettings(BaseSettings):
    """Настройки численных констант теории"""

    model_config = SettingsConfigDict(env_prefix="THEORY_")

    # Квадратура Гаусса–Эрмита
    QUADRATURE_NODES: int = Field(200, ge=2)
    QUADRATURE_MAX_NODES: int = Field(3200, ge=2)
    QUADRATURE_TOL: float = Field(1e-10, gt=0)

    # Порог численного ранга: для A умножается на max(m, n), для H на n
    RANK_REL_TOL: float = Field(1e-10, gt=0)

    # C1 из оценки ширины; откалибровано по границе k×m (k=900, m=25, n=60, d=500)
    C1: float = Field(6.8e-4, gt=0)

    # C2 из оценки времени сходимости; масштабный множитель без калибровки
    C2: float = Field(1.0, gt=0)

    # Вероятность отказа для chernoff_k при n = 1, когда 1/n не лежит в (0, 1)
    CHERNOFF_FALLBACK_FAILURE: float = Field(0.1, gt=0, lt=1)


settings = Settings()
flow_settings = FlowSettings()
theory_settings = TheorySettings()
