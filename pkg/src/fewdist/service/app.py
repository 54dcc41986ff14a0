"""HTTP service wrapping the core workbench.

Endpoints mirror the CLI verbs and return the same payloads. Domain and
parse errors map to 400, feasibility refusals to 413. Audit records
with holds=false are ordinary responses, not HTTP errors.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DomainError, FeasibilityError, ParseError
from ..geometry import PointSet, cartesian_square, parse_pointset
from ..limits import DEFAULT_LIMITS, Limits
from ..numset import NumSet, parse_scalar
from ..reports import build_richline, build_search_report, build_stats, run_verify
from ..search import FamilySpec, SearchConfig, anneal, generate_family, scan
from .schemas import (
    FamilyModel,
    HealthResponse,
    RecordsResponse,
    RichlineRequest,
    RichlineResponse,
    ScanRequest,
    SearchRequest,
    SearchResponse,
    StatsRequest,
    StatsResponse,
    VerifyRequest,
)

app = FastAPI(
    title="fewdist",
    version=__version__,
    description="Exact set calculus, statement audits, and extremal search "
    "over the HTTP boundary.",
)


@app.exception_handler(DomainError)
@app.exception_handler(ParseError)
async def _bad_request(request: Request, exc: Exception):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(FeasibilityError)
async def _infeasible(request: Request, exc: Exception):
    return JSONResponse(status_code=413, content={"detail": str(exc)})


def _limits(req) -> Limits:
    if req.max_pairs is None and req.max_bitmap_bits is None:
        return DEFAULT_LIMITS
    return Limits(
        max_pairs=req.max_pairs or DEFAULT_LIMITS.max_pairs,
        max_bitmap_bits=req.max_bitmap_bits or DEFAULT_LIMITS.max_bitmap_bits,
    )


def _numset(elements: list[str]) -> NumSet:
    return NumSet(parse_scalar(e) for e in elements)


def _pointset(points: list[str]) -> PointSet:
    return parse_pointset("\n".join(points), source="<request>")


def _family_spec(model: FamilyModel) -> FamilySpec:
    return FamilySpec(
        kind=model.kind,
        gap=model.gap,
        ratio=parse_scalar(model.ratio),
        radius=model.radius,
        seed=model.seed,
        universe=model.universe,
    )


@app.get("/health", response_model=HealthResponse)
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/stats", response_model=StatsResponse, response_model_exclude_none=True)
def stats(req: StatsRequest) -> dict:
    return build_stats(_numset(req.elements), req.stats, limits=_limits(req))


@app.post("/verify", response_model=RecordsResponse, response_model_exclude_none=True)
def verify(req: VerifyRequest) -> dict:
    limits = _limits(req)
    numset = None
    pointset = None
    needs_points = req.statement in ("solymosi", "ungar")
    if req.family is not None:
        if req.size is None:
            raise DomainError("family instance requires size")
        A = generate_family(_family_spec(req.family), req.size)
        if needs_points:
            pointset = cartesian_square(A, limits=limits)
        else:
            numset = A
    elif req.points is not None:
        pointset = _pointset(req.points)
    elif req.elements is not None:
        if needs_points and req.product:
            pointset = cartesian_square(_numset(req.elements), limits=limits)
        elif needs_points:
            raise DomainError(
                f"{req.statement} needs points (or elements with product=true)"
            )
        else:
            numset = _numset(req.elements)
    slopes = [parse_scalar(s) for s in req.slopes] if req.slopes is not None else None
    records = run_verify(
        req.statement,
        numset=numset,
        pointset=pointset,
        m=req.m,
        n=req.n,
        depth=req.depth,
        slopes=slopes,
        per_line=req.per_line,
        exhaustive_small=req.exhaustive_small,
        limits=limits,
    )
    return {"records": [rec.to_dict() for rec in records]}


@app.post("/richline", response_model=RichlineResponse)
def richline(req: RichlineRequest) -> dict:
    return build_richline(_numset(req.elements), limits=_limits(req))


@app.post("/scan", response_model=RecordsResponse, response_model_exclude_none=True)
def run_scan(req: ScanRequest) -> dict:
    specs = [_family_spec(f) for f in req.families]
    records = scan(specs, req.sizes, limits=_limits(req))
    return {"records": [rec.to_dict() for rec in records]}


@app.post("/search", response_model=SearchResponse)
def run_search(req: SearchRequest) -> dict:
    config = SearchConfig(
        n=req.n,
        universe=req.universe,
        objective=req.objective,
        seed=req.seed,
        iterations=req.iterations,
        initial_temperature=req.initial_temperature,
        cooling_rate=req.cooling_rate,
        restarts=req.restarts,
        trace_every=req.trace_every,
    )
    state = anneal(config, limits=_limits(req))
    return build_search_report(config, state)
