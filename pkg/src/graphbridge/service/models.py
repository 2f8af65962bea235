"""Pydantic request/response models for the REST surface."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class PredicateClause(BaseModel):
    attr: str
    op: str
    value: Any


class ViewSpecModel(BaseModel):
    viewId: str
    kind: Literal["frame", "predicate"]
    frameId: Optional[str] = None
    predicate: Optional[list[PredicateClause]] = None

    @model_validator(mode="after")
    def _check_kind_fields(self):
        if self.kind == "frame" and self.frameId is None:
            raise ValueError("frame view requires frameId")
        if self.kind == "predicate" and not self.predicate:
            raise ValueError("predicate view requires predicate clauses")
        return self


class DatasetSource(BaseModel):
    """A dataset given inline or by server-side path (exactly one)."""

    dataset: Optional[dict] = None
    path: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.dataset is None) == (self.path is None):
            raise ValueError("provide exactly one of 'dataset' or 'path'")
        return self


class ViolationModel(BaseModel):
    rule: str
    element: str
    detail: str = ""


class ValidateResponse(BaseModel):
    valid: bool
    violations: list[ViolationModel]


class LayoutRequest(DatasetSource):
    views: list[ViewSpecModel]
    seed: int = 1
    iterations: int = Field(default=300, ge=1)


class ViewLayoutModel(BaseModel):
    viewId: str
    seed: int
    iterations: int
    positions: dict[str, tuple[float, float]]


class LayoutResponse(BaseModel):
    views: list[ViewLayoutModel]


class HealthResponse(BaseModel):
    status: str
    version: str
