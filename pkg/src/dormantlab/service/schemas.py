"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class PCurvatureRequest(BaseModel):
    p: int
    potentials: list[list[int]] = Field(
        description="Coefficient lists (ascending) for f_2, ..., f_n"
    )


class RationalEntry(BaseModel):
    num: list[int]
    den: list[int]


class PCurvatureResponse(BaseModel):
    dormant: bool
    psi: Optional[list[list[RationalEntry]]] = Field(
        default=None, description="Present only when the p-curvature is nonzero"
    )


class EnumerateRequest(BaseModel):
    p: int


class NTableEntry(BaseModel):
    triple: list[int]
    count: int


class NTableMeta(BaseModel):
    source: str
    tool_version: str


class NTableDoc(BaseModel):
    p: int
    labels: list[int]
    N: list[NTableEntry]
    meta: NTableMeta


class EnumerateResponse(BaseModel):
    table: NTableDoc
    total: int
    histogram: dict[str, int] = Field(
        description="Sorted triple (comma-joined) to number of enumerated opers"
    )


class DegreeRequest(BaseModel):
    table: NTableDoc
    g: int
    r: int
    rho: list[int]
    method: Literal["character", "graph", "both"] = "character"
    seed: int = 0


class DegreeResponse(BaseModel):
    character: Optional[int] = None
    graph: Optional[int] = None
    graph_values: Optional[list[int]] = None
    agree: Optional[bool] = None


class ProfileRequest(BaseModel):
    ell: int
    p: int
    base: list[int] = Field(description="Ascending coefficients of the rank-2 potential f_2")
    witness: Literal["sym"] = "sym"


class SheafProfileDoc(BaseModel):
    rank: int
    degree: int
    splitting: list[int]


class ProfileResponse(BaseModel):
    base: list[int]
    order: int
    exponents: dict[str, list[int]]
    kernel: SheafProfileDoc
    image: SheafProfileDoc
    h0: int
    certificate: bool
    paper_guarantee: bool


class VerlindeRequest(BaseModel):
    p: int
    g: int
    r: int


class JoshiRequest(BaseModel):
    p: int
    n: int
    g: int


class ClosedFormResponse(BaseModel):
    value: int
    residual: float
    terms: int


class ErrorBody(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorBody
