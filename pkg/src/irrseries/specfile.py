"""Loading series specification files (JSON) into series instances."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .hancl import ProductSeq
from .seqdsl import SeqError, fact_from_json, sequence_from_json
from .series import SeriesInstance

SCHEMA_VERSION = "1"


class SpecError(ValueError):
    """Invalid specification: schema violation, bad expression or bad value."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("irrseries").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc, name: str) -> None:
    try:
        jsonschema.validate(doc, load_schema(name))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SpecError(f"{name} schema: {where}: {exc.message}") from None


@dataclass
class SeriesSpec:
    series: SeriesInstance
    product: ProductSeq | None = None
    params: dict = field(default_factory=dict)
    doc: dict = field(default_factory=dict)

    @property
    def form(self) -> str:
        return self.series.form


def build_spec(doc: dict) -> SeriesSpec:
    validate(doc, "series_spec")
    first = int(doc.get("first_index", 1))
    try:
        params = {k: Fraction(str(v)) for k, v in doc.get("params", {}).items()}
        facts = [fact_from_json(f) for f in doc.get("facts", [])]
        a = sequence_from_json(doc["a"], name="a", first_index=first, env=params)
        b = sequence_from_json(doc["b"], name="b", first_index=first, env={**params, "a": a})
        d = None
        if "d" in doc:
            d = sequence_from_json(doc["d"], name="d", first_index=first,
                                   env={**params, "a": a, "b": b})
    except (SeqError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(str(exc)) from None
    on_d = tuple(f for f in facts if f.on == "d")
    if on_d and d is None:
        raise SpecError("facts refer to d but the spec has no d sequence")
    series = SeriesInstance(a, b, doc["form"], tuple(f for f in facts if f.on != "d"))
    product = ProductSeq(d, on_d) if d is not None else None
    return SeriesSpec(series, product, params, doc)


def load_spec(path) -> SeriesSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return build_spec(doc)
