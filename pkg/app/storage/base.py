# app/storage/base.py
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Generic, Optional, Type, TypeVar, Union

from pydantic import BaseModel

logger = logging.getLogger(__name__)

ModelType = TypeVar("ModelType", bound=BaseModel)


def atomic_write_text(path: Path, text: str):
    """Запись через временный файл и os.replace: файл либо старый, либо новый"""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class JsonRepository(Generic[ModelType]):
    """Репозиторий pydantic-моделей в JSON-файлах каталога"""

    def __init__(self, model: Type[ModelType], directory: Union[str, Path]):
        self.model = model
        self.directory = Path(directory)

    def path(self, name: str) -> Path:
        return self.directory / name

    def exists(self, name: str) -> bool:
        return self.path(name).is_file()

    def save(
        self, obj: ModelType, name: str, provenance: Optional[Dict[str, Any]] = None
    ) -> Path:
        """
        Сохранить объект

        Args:
            obj: модель
            name: имя файла в каталоге
            provenance: провенанс; записывается, если у модели есть такое поле
        """
        if provenance is not None and "provenance" in type(obj).model_fields:
            obj = obj.model_copy(update={"provenance": provenance})
        target = self.path(name)
        atomic_write_text(target, obj.model_dump_json(indent=2) + "\n")
        logger.debug(f"Saved {self.model.__name__} to {target}")
        return target

    def load(self, name: str) -> ModelType:
        """Прочитать объект; ошибки валидации pydantic пробрасываются"""
        target = self.path(name)
        return self.model.model_validate_json(target.read_text(encoding="utf-8"))

    def delete(self, name: str) -> bool:
        target = self.path(name)
        if target.exists():
            target.unlink()
            return True
        return False
