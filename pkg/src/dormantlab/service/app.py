"""FastAPI service wrapping the core computations.

Every pipeline stage is an endpoint; the CLI is a thin client over this
app (in-process by default).  Domain errors map onto HTTP statuses:
malformed input is 400, violated mathematical preconditions are 409, and
internal inconsistencies are 500, always with an {"error": {code, message}}
body naming the originating exception.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..closed_form import joshi_sln, verlinde_sl2
from ..errors import (
    CasimirSingular,
    DormantlabError,
    IncompatibleOddPart,
    InputError,
    NotDormant,
)
from ..fusion import build_ring, characters, degree
from ..graphs import canonical_graphs, graph_degree
from ..io import doc_to_ntable, ntable_to_doc
from ..oper import (
    CompanionOper,
    image_profile,
    kernel_sheaf_profile,
    symmetric_power,
    to_companion,
)
from ..poly import Poly
from ..sl2 import enumerate_dormant_sl2, ntable
from . import schemas

PRECONDITION_ERRORS = (NotDormant, IncompatibleOddPart, CasimirSingular)

app = FastAPI(title="dormantlab", version=__version__)


@app.exception_handler(DormantlabError)
async def _domain_error(_: Request, exc: DormantlabError) -> JSONResponse:
    if isinstance(exc, PRECONDITION_ERRORS):
        status = 409
    elif isinstance(exc, InputError):
        status = 400
    else:
        status = 500
    body = schemas.ErrorResponse(
        error=schemas.ErrorBody(code=type(exc).__name__, message=str(exc))
    )
    return JSONResponse(status_code=status, content=body.model_dump())


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/pcurvature", response_model=schemas.PCurvatureResponse, response_model_exclude_none=True)
def pcurvature(req: schemas.PCurvatureRequest) -> schemas.PCurvatureResponse:
    oper = CompanionOper([Poly(c, req.p) for c in req.potentials], req.p)
    psi = oper.connection().p_curvature()
    if psi.is_zero():
        return schemas.PCurvatureResponse(dormant=True)
    grid = [
        [
            schemas.RationalEntry(num=list(e.num.coeffs), den=list(e.den.coeffs))
            for e in row
        ]
        for row in psi.psi.entries
    ]
    return schemas.PCurvatureResponse(dormant=False, psi=grid)


@app.post("/enumerate-sl2", response_model=schemas.EnumerateResponse)
def enumerate_sl2(req: schemas.EnumerateRequest) -> schemas.EnumerateResponse:
    enumeration = enumerate_dormant_sl2(req.p)
    table = ntable(req.p, enumeration)
    histogram: dict[str, int] = {}
    for _, radii in enumeration:
        key = ",".join(str(x) for x in sorted(radii))
        histogram[key] = histogram.get(key, 0) + 1
    doc = ntable_to_doc(table, source=f"enumerate-sl2 p={req.p}")
    return schemas.EnumerateResponse(
        table=schemas.NTableDoc(**doc),
        total=len(enumeration),
        histogram=dict(sorted(histogram.items())),
    )


@app.post("/degree", response_model=schemas.DegreeResponse, response_model_exclude_none=True)
def degree_endpoint(req: schemas.DegreeRequest) -> schemas.DegreeResponse:
    table = doc_to_ntable(req.table.model_dump())
    rho = tuple(req.rho)
    char_val = None
    graph_vals = None
    if req.method in ("character", "both"):
        ring = build_ring(table)
        chars = characters(ring, seed=req.seed)
        char_val = degree(ring, req.g, req.r, rho, chars)
    if req.method in ("graph", "both"):
        graphs = canonical_graphs(req.g, req.r)
        graph_vals = [graph_degree(gr, table, rho) for gr in graphs]
    agree = None
    if req.method == "both":
        agree = all(v == char_val for v in graph_vals)
    elif req.method == "graph":
        agree = len(set(graph_vals)) == 1
    return schemas.DegreeResponse(
        character=char_val,
        graph=graph_vals[0] if graph_vals else None,
        graph_values=graph_vals,
        agree=agree,
    )


@app.post("/profile", response_model=schemas.ProfileResponse)
def profile(req: schemas.ProfileRequest) -> schemas.ProfileResponse:
    if req.ell < 2:
        raise InputError("ell must be >= 2")
    base = CompanionOper([Poly(req.base, req.p)], req.p)
    if not base.is_dormant():
        raise NotDormant(f"base potential {req.base} is not dormant at p={req.p}")
    conn, _ = symmetric_power(base, 2 * req.ell - 2)
    witness = to_companion(conn)
    exponents = {
        str(pt): list(witness.exponents(pt).exponents) for pt in (0, 1, "inf")
    }
    kernel = kernel_sheaf_profile(witness, require_dormant=False)
    image, h0 = image_profile(witness, require_dormant=False)
    certificate = h0 == 0
    guarantee = (req.p + 2) / 4 > req.ell > 3 and req.p > 2 * (2 * req.ell - 1)
    return schemas.ProfileResponse(
        base=req.base,
        order=witness.order,
        exponents=exponents,
        kernel=schemas.SheafProfileDoc(
            rank=kernel.rank, degree=kernel.degree, splitting=list(kernel.splitting)
        ),
        image=schemas.SheafProfileDoc(
            rank=image.rank, degree=image.degree, splitting=list(image.splitting)
        ),
        h0=h0,
        certificate=certificate,
        paper_guarantee=bool(guarantee),
    )


@app.post("/closed-form/verlinde-sl2", response_model=schemas.ClosedFormResponse)
def closed_form_verlinde(req: schemas.VerlindeRequest) -> schemas.ClosedFormResponse:
    res = verlinde_sl2(req.p, req.g, req.r)
    return schemas.ClosedFormResponse(value=res.value, residual=res.residual, terms=res.terms)


@app.post("/closed-form/joshi-sln", response_model=schemas.ClosedFormResponse)
def closed_form_joshi(req: schemas.JoshiRequest) -> schemas.ClosedFormResponse:
    res = joshi_sln(req.p, req.n, req.g)
    return schemas.ClosedFormResponse(value=res.value, residual=res.residual, terms=res.terms)
