"""Component library: loading, validation and the functional-service filter.

A catalog is immutable after load. Intrinsic invariants (unique ids, rating
range, size cap) are checked eagerly at parse time; coverage against a
quality model's leaves is checked separately because the service loads the
catalog once while criteria travel with each request.
"""

from __future__ import annotations

import io
import json
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateId,
    MissingLeaf,
    ParseError,
    RatingOutOfRange,
    UnknownCriterion,
)

MAX_COMPONENTS_DEFAULT = 10_000


@dataclass(frozen=True)
class Component:
    id: str
    name: str
    services: frozenset[str]
    ratings: Mapping[str, float]      # leaf_id -> raw rating in (0, scale_max]
    raw_cost: float                   # currency units, >= 0
    raw_time: float                   # hours, >= 0


@dataclass(frozen=True)
class Catalog:
    library_name: str
    components: tuple[Component, ...]
    scale_max: float


def parse_catalog(obj, max_components: int = MAX_COMPONENTS_DEFAULT) -> Catalog:
    if not isinstance(obj, dict):
        raise ParseError("catalog", "top level must be an object")
    library = obj.get("library", "")
    if not isinstance(library, str):
        raise ParseError("catalog.library", "must be a string")
    scale_max = obj.get("scale_max", 10)
    if not isinstance(scale_max, (int, float)) or scale_max <= 0:
        raise ParseError("catalog.scale_max", f"must be a positive number, got {scale_max!r}")
    scale_max = float(scale_max)
    raw_components = obj.get("components")
    if not isinstance(raw_components, list):
        raise ParseError("catalog.components", "missing or not a list")
    if len(raw_components) > max_components:
        raise ParseError(
            "catalog.components",
            f"{len(raw_components)} components exceed the library cap of {max_components}")

    components = []
    seen: set[str] = set()
    for idx, raw in enumerate(raw_components):
        loc = f"catalog.components[{idx}]"
        if not isinstance(raw, dict):
            raise ParseError(loc, "expected an object")
        cid = raw.get("id")
        if not isinstance(cid, str) or not cid:
            raise ParseError(loc, "missing or empty 'id'")
        if cid in seen:
            raise DuplicateId(cid)
        seen.add(cid)
        name = raw.get("name", cid)
        services_raw = raw.get("services", [])
        if not isinstance(services_raw, list) or not all(isinstance(s, str) for s in services_raw):
            raise ParseError(f"{loc}.services", "must be a list of strings")
        ratings_raw = raw.get("ratings")
        if not isinstance(ratings_raw, dict):
            raise ParseError(f"{loc}.ratings", "missing or not an object")
        ratings = {}
        for leaf_id, value in ratings_raw.items():
            if not isinstance(value, (int, float)):
                raise ParseError(f"{loc}.ratings['{leaf_id}']", "rating must be a number")
            value = float(value)
            if not (0 < value <= scale_max):
                raise RatingOutOfRange(cid, leaf_id, value, scale_max)
            ratings[leaf_id] = value
        cost = raw.get("cost", 0.0)
        time = raw.get("time", 0.0)
        for field, value in (("cost", cost), ("time", time)):
            if not isinstance(value, (int, float)) or value < 0:
                raise ParseError(f"{loc}.{field}", f"must be a non-negative number, got {value!r}")
        components.append(Component(
            id=cid, name=name, services=frozenset(services_raw),
            ratings=ratings, raw_cost=float(cost), raw_time=float(time)))

    return Catalog(library, tuple(components), scale_max)


def load_catalog(source, max_components: int = MAX_COMPONENTS_DEFAULT,
                 leaf_ids: Iterable[str] | None = None) -> Catalog:
    """Load from a path, byte stream or bytes; optionally check leaf coverage."""
    if isinstance(source, (str, os.PathLike)):
        try:
            with open(source, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise ParseError(str(source), f"cannot read file: {exc}")
    elif isinstance(source, bytes):
        data = source
    elif isinstance(source, io.IOBase) or hasattr(source, "read"):
        data = source.read()
    else:
        raise ParseError("catalog", f"unsupported source type {type(source).__name__}")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError("catalog", f"invalid JSON: {exc}")
    catalog = parse_catalog(obj, max_components=max_components)
    if leaf_ids is not None:
        validate_coverage(catalog, leaf_ids)
    return catalog


def validate_coverage(catalog: Catalog, leaf_ids: Iterable[str]) -> None:
    """Every component must rate exactly the quality model's leaves."""
    leaves = set(leaf_ids)
    for comp in catalog.components:
        for leaf_id in comp.ratings:
            if leaf_id not in leaves:
                raise UnknownCriterion(comp.id, leaf_id)
        for leaf_id in leaves:
            if leaf_id not in comp.ratings:
                raise MissingLeaf(leaf_id, comp.id)


def filter_functional(catalog: Catalog | Sequence[Component],
                      required_services: Iterable[str]) -> list[Component]:
    """Components whose service tags contain all required tags, input order kept."""
    components = catalog.components if isinstance(catalog, Catalog) else catalog
    required = frozenset(required_services)
    return [c for c in components if required <= c.services]


def catalog_to_dict(catalog: Catalog) -> dict:
    """Round-trippable plain representation (load -> dump -> load is identity)."""
    return {
        "library": catalog.library_name,
        "scale_max": catalog.scale_max,
        "components": [
            {
                "id": c.id,
                "name": c.name,
                "services": sorted(c.services),
                "ratings": dict(sorted(c.ratings.items())),
                "cost": c.raw_cost,
                "time": c.raw_time,
            }
            for c in catalog.components
        ],
    }
