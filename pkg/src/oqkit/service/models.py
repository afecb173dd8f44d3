"""Pydantic request/response schemas for the oqkit service."""

from __future__ import annotations

from pydantic import BaseModel, Field

WeightList = list[int]


class DecomposeRequest(BaseModel):
    type: str = Field(description="series plus rank, e.g. A1 or G2")
    kind: str = Field(description="simple | projective | injective | tilting")
    l: int
    weight: WeightList


class FactorsRequest(BaseModel):
    type: str
    l: int
    weight: WeightList
    mode: str = "general"  # tilting only: general | kl


class SimpleCharRequest(BaseModel):
    type: str
    l: int
    weight: WeightList
    depth: int = 12


class KLRequest(BaseModel):
    type: str
    y: str
    w: str
    affine: bool | None = None  # inferred from the words when omitted


class PredicatesRequest(BaseModel):
    type: str
    l: int
    weight: WeightList


class SpecialBlockRequest(BaseModel):
    type: str
    l: int
    weight: WeightList


class GenericMultRequest(BaseModel):
    type: str
    weight: WeightList
    mu: WeightList


class TableEntry(BaseModel):
    wt: WeightList
    mult: int


class TableResponse(BaseModel):
    subject: str
    complete: bool
    entries: list[TableEntry]


class DecomposeResponse(BaseModel):
    kind: str
    classical_weight: WeightList
    finite_weight: WeightList
    l: int


class CharValue(BaseModel):
    wt: WeightList
    c: int


class CharResponse(BaseModel):
    window_tops: list[WeightList]
    window_depth: int
    values: list[CharValue]


class KLResponse(BaseModel):
    coeffs: list[int]
    text: str


class PredicatesResponse(BaseModel):
    dominant: bool
    antidominant: bool
    regular: bool
    l_regular: bool
    special: bool
    steinberg: bool
    verma_simple: bool
    verma_projective: bool
    proj_injective: bool


class SpecialBlockResponse(BaseModel):
    is_special: bool
    f_image: WeightList | None
    g_of_f: WeightList | None


class GenericMultResponse(BaseModel):
    value: int


class ErrorBody(BaseModel):
    code: str
    message: str
