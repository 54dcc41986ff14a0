"""Pydantic request/response models for the HTTP service.

Scalars travel as exact strings ("p" or "p/q"); approximate values are
explicitly suffixed _approx, mirroring the CLI reports.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class RequestBase(BaseModel):
    max_pairs: int | None = None
    max_bitmap_bits: int | None = None


class FamilyModel(BaseModel):
    kind: str
    gap: int = 1
    ratio: str = "2"
    radius: int = 1
    seed: int = 0
    universe: int | None = None


class StatsRequest(RequestBase):
    elements: list[str]
    stats: list[str]


class StatsResponse(BaseModel):
    diff_card: int | None = None
    delta_card: int | None = None
    ratio_card: int | None = None
    product_card: int | None = None
    slope_card: int | None = None


class VerifyRequest(RequestBase):
    statement: str
    elements: list[str] | None = None
    points: list[str] | None = None
    family: FamilyModel | None = None
    size: int | None = None
    product: bool = False
    m: int = 1
    n: int = 1
    depth: str = "ratio-only"
    slopes: list[str] | None = None
    per_line: int | None = None
    exhaustive_small: bool = False


class AuditRecordModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    statement_id: str
    sizes: dict[str, int]
    lhs: str
    rhs: str
    ratio: str
    approx_ratio: str
    holds: str
    witnesses: dict | None = None
    notes: list[str] = Field(default_factory=list)
    error: str | None = None


class RecordsResponse(BaseModel):
    records: list[AuditRecordModel]


class RichlineRequest(RequestBase):
    elements: list[str]


class RichlineResponse(BaseModel):
    d: str
    count: int
    bound: str
    bound_approx: str
    points: list[str]
    histogram: list[tuple[str, int]]


class ScanRequest(RequestBase):
    families: list[FamilyModel]
    sizes: list[int]


class SearchRequest(RequestBase):
    n: int
    universe: int
    objective: str
    seed: int
    iterations: int = 50_000
    initial_temperature: float = 2.0
    cooling_rate: float = 0.999
    restarts: int = 4
    trace_every: int = 1_000


class SearchResponse(BaseModel):
    config: dict
    best_set: list[str]
    best_score: str
    trace: list[tuple[int, str]]
    rng: dict
    aborted: bool


class HealthResponse(BaseModel):
    status: str
    version: str
