"""JSON input documents: a Lie algebra with optional J and metric, or a frame."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .complex_structure import InnerMetric, LinearComplexStructure
from .exact_core import ShapeError
from .frame_fields import Frame
from .lie_algebra import LieAlgebra


class ParseError(ValueError):
    def __init__(self, message: str, location: str):
        super().__init__(f"{location}: {message}")
        self.message = message
        self.location = location


@dataclass(frozen=True)
class AlgebraDocument:
    algebra: LieAlgebra
    J: LinearComplexStructure | None = None
    metric: InnerMetric | None = None

    kind = "lie_algebra"

    def to_json(self) -> dict:
        out = {"algebra": self.algebra.to_json()}
        if self.J is not None:
            out["J"] = self.J.to_json()
        if self.metric is not None:
            out["metric"] = self.metric.to_json()
        return out


@dataclass(frozen=True)
class FrameDocument:
    frame: Frame

    kind = "frame"

    def to_json(self) -> dict:
        return self.frame.to_json()


Document = AlgebraDocument | FrameDocument


def dumps(data) -> str:
    """Canonical text form: two-space indent, key order as built, trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def serialize(doc: Document) -> str:
    return dumps(doc.to_json())


def digest(text: str | bytes) -> str:
    if isinstance(text, str):
        text = text.encode("utf-8")
    return "sha256:" + hashlib.sha256(text).hexdigest()


def _section(data: dict, key: str, builder):
    try:
        return builder(data[key])
    except ParseError as exc:
        raise ParseError(exc.message, f"$.{key}{exc.location[1:]}") from None
    except (KeyError, TypeError, ValueError, ShapeError, AttributeError, IndexError) as exc:
        raise ParseError(_describe(exc), f"$.{key}") from None


def _describe(exc: Exception) -> str:
    if isinstance(exc, KeyError):
        return f"missing field {exc.args[0]!r}"
    return str(exc) or type(exc).__name__


def from_json(data) -> Document:
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object", "$")
    if "fields" in data or "half_dim" in data:
        try:
            return FrameDocument(Frame.from_json(data))
        except (KeyError, TypeError, ValueError, ShapeError, AttributeError, IndexError) as exc:
            raise ParseError(_describe(exc), "$.fields" if "fields" in data else "$") from None
    if "algebra" not in data:
        raise ParseError("expected an 'algebra' object or a frame with 'half_dim' and 'fields'", "$")
    unknown = set(data) - {"algebra", "J", "metric"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", "$")
    algebra = _section(data, "algebra", LieAlgebra.from_json)
    J = _section(data, "J", LinearComplexStructure.from_json) if "J" in data else None
    metric = _section(data, "metric", InnerMetric.from_json) if "metric" in data else None
    for name, m in (("J", J), ("metric", metric)):
        if m is not None and m.dim != algebra.dim:
            raise ParseError(f"{name} is {m.dim}x{m.dim} but the algebra has dimension {algebra.dim}", f"$.{name}")
    return AlgebraDocument(algebra, J, metric)


def parse(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_json(data)
