"""Reading JSON documents into schemas, with line/field diagnostics on failure."""

import json
from pathlib import Path
from typing import Optional, Sequence, TypeVar, Union

from pydantic import BaseModel, ValidationError

from sheafnet.core.errors import ParseError

M = TypeVar("M", bound=BaseModel)


def _line_of(text: str, loc: Sequence[Union[str, int]]) -> Optional[int]:
    """Line of the innermost named key on the error path, first occurrence."""
    for part in reversed(loc):
        if isinstance(part, str):
            index = text.find(f'"{part}"')
            if index >= 0:
                return text.count("\n", 0, index) + 1
    return None


def _field_path(loc: Sequence[Union[str, int]]) -> Optional[str]:
    path = ""
    for part in loc:
        path += f"[{part}]" if isinstance(part, int) else (f".{part}" if path else part)
    return path or None


def parse_document(text: str, model: type[M], path: Optional[str] = None) -> M:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed document: {exc.msg}", line=exc.lineno, path=path) from None
    try:
        return model.model_validate(raw)
    except ValidationError as exc:
        error = exc.errors()[0]
        loc = error["loc"]
        raise ParseError(error["msg"], line=_line_of(text, loc), field=_field_path(loc), path=path) from None


def load_document(path: Union[str, Path], model: type[M]) -> M:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path=str(path)) from None
    return parse_document(text, model, str(path))
