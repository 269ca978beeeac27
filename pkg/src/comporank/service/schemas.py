"""Pydantic request models for the HTTP API.

Schema-level violations (wrong types, alpha outside [0,1], empty alphas)
are rejected with 400 before any domain code runs; domain invariants
(reciprocity, judgment scale, CR threshold, rating ranges) are checked by
the core modules and surface as structured 422 payloads.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class TreeNodeModel(BaseModel):
    id: str
    name: str | None = None
    children: list["TreeNodeModel"] = []
    weight: float | None = None


class CriteriaModel(BaseModel):
    tree: TreeNodeModel
    matrices: dict[str, list[list[float]]] = {}


class ComponentModel(BaseModel):
    id: str
    name: str | None = None
    services: list[str] = []
    ratings: dict[str, float]
    cost: float = Field(0.0, ge=0)
    time: float = Field(0.0, ge=0)


class CatalogModel(BaseModel):
    library: str = ""
    scale_max: float = Field(10.0, gt=0)
    components: list[ComponentModel]


class WeightsRequest(BaseModel):
    criteria: CriteriaModel
    cr_threshold: float = Field(0.10, gt=0)


class RankRequest(BaseModel):
    criteria: CriteriaModel
    required_services: list[str] = []
    alpha: float = Field(0.5, ge=0, le=1)
    threshold: float = 0.0
    cost_cap: float | None = Field(None, gt=0)
    time_cap: float | None = Field(None, gt=0)
    cr_threshold: float = Field(0.10, gt=0)
    catalog: CatalogModel | None = None


class SensitivityRequest(RankRequest):
    alphas: list[float] = Field(min_length=1)
