import logging
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, ValidationError

from pseudomix.exceptions import InvalidInputError
from pseudomix.io.models import ReportFile, StateFile

logger = logging.getLogger(__name__)

Model = TypeVar("Model", bound=BaseModel)


def _read(path: Path | str, model: type[Model]) -> Model:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InvalidInputError(f"Cannot read {path}: {e}") from e
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise InvalidInputError(f"Malformed {model.__name__} in {path}: {e}") from e


def _write(path: Path | str, data: BaseModel) -> Path:
    path = Path(path)
    path.write_text(data.model_dump_json(indent=2) + "\n")
    logger.debug(f"Wrote {type(data).__name__} to {path}")
    return path


def read_state(path: Path | str) -> StateFile:
    """Load a state file; missing or malformed files raise InvalidInputError."""
    return _read(path, StateFile)


def write_state(path: Path | str, state: StateFile) -> Path:
    return _write(path, state)


def read_report(path: Path | str) -> ReportFile:
    return _read(path, ReportFile)


def write_report(path: Path | str, report: ReportFile) -> Path:
    return _write(path, report)
