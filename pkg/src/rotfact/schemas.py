"""JSON payload models and serialization for the command line."""

from __future__ import annotations

import json
import math
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter

_STRICT = ConfigDict(strict=True, extra="forbid")

Vec3 = Annotated[list[float], Field(min_length=3, max_length=3)]
Vec4 = Annotated[list[float], Field(min_length=4, max_length=4)]
Matrix3 = Annotated[list[Vec3], Field(min_length=3, max_length=3)]
Complex = Annotated[list[float], Field(min_length=2, max_length=2)]
JonesPayload = Annotated[list[Complex], Field(min_length=2, max_length=2)]


class AnglesPayload(BaseModel):
    model_config = _STRICT

    first: float
    middle: float
    last: float
    degenerate: bool | None = None
    sign: Literal[-1, 1] | None = None


class PolAttenuatorPayload(BaseModel):
    model_config = _STRICT

    type: Literal["pol_attenuator"]
    lam: float = Field(alias="lambda")


class IntAttenuatorPayload(BaseModel):
    model_config = _STRICT

    type: Literal["int_attenuator"]
    sigma: float


class RotatorPayload(BaseModel):
    model_config = _STRICT

    type: Literal["rotator"]
    matrix: Matrix3


ElementPayload = Annotated[
    Union[PolAttenuatorPayload, IntAttenuatorPayload, RotatorPayload],
    Field(discriminator="type"),
]


class ApplyPayload(BaseModel):
    model_config = _STRICT

    element: ElementPayload
    stokes: Vec4


QUATERNION = TypeAdapter(Vec4, config=_STRICT)
STOKES = TypeAdapter(Vec4, config=_STRICT)
MATRIX = TypeAdapter(Matrix3, config=_STRICT)
JONES = TypeAdapter(JonesPayload, config=_STRICT)
ANGLES = TypeAdapter(Union[Vec3, AnglesPayload], config=_STRICT)
APPLY = TypeAdapter(ApplyPayload)


def _reject_constant(name):
    raise ValueError(f"non-finite JSON constant {name}")


def loads(text: str):
    """``json.loads`` that refuses NaN and Infinity."""
    return json.loads(text, parse_constant=_reject_constant)


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(x + 0.0, ".17g")


def dumps(obj) -> str:
    """Compact JSON with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items())
        return "{" + ",".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "tolist"):
        return dumps(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")
