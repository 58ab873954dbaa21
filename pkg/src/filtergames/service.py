"""HTTP front end: a FastAPI service wrapping the job layer.

Every endpoint is a pure function of its request body; responses are emitted
through the same canonical serializer as the CLI, so a given request body
yields byte-identical output no matter which front end ran it.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import jobs, schemas
from .errors import FilterGameError
from .serialize import canonical_dumps

_STATUS_BY_KIND = {"parse": 400}


def _payload(result: dict) -> Response:
    return Response(content=canonical_dumps(result), media_type="application/json")


def create_app() -> FastAPI:
    app = FastAPI(
        title="filtergames",
        description=(
            "Finite-horizon referee, strategy constructions, and checkers for "
            "two integer games played against filters on the natural numbers."
        ),
        version="0.1.0",
    )

    @app.exception_handler(FilterGameError)
    async def domain_error(request: Request, exc: FilterGameError) -> JSONResponse:
        status = _STATUS_BY_KIND.get(exc.kind, 422)
        return JSONResponse(
            status_code=status, content={"error": {"kind": exc.kind, "message": str(exc)}}
        )

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/v1/play")
    async def play_endpoint(req: schemas.PlayRequest) -> Response:
        return _payload(jobs.run_play(req))

    @app.post("/v1/refute-two")
    async def refute_two_endpoint(req: schemas.RefuteTwoRequest) -> Response:
        return _payload(jobs.run_refute_two(req))

    @app.post("/v1/steal")
    async def steal_endpoint(req: schemas.StealRequest) -> Response:
        return _payload(jobs.run_steal(req))

    @app.post("/v1/extract-g")
    async def extract_g_endpoint(req: schemas.ExtractGRequest) -> Response:
        return _payload(jobs.run_extract_g(req))

    @app.post("/v1/build-gh")
    async def build_gh_endpoint(req: schemas.BuildGHRequest) -> Response:
        return _payload(jobs.run_build_gh(req))

    @app.post("/v1/defeat-one")
    async def defeat_one_endpoint(req: schemas.DefeatOneRequest) -> Response:
        return _payload(jobs.run_defeat_one(req))

    @app.post("/v1/check/enum-bounded")
    async def check_enum_endpoint(req: schemas.CheckEnumBoundedRequest) -> Response:
        return _payload(jobs.run_check_enum_bounded(req))

    @app.post("/v1/check/escape")
    async def check_escape_endpoint(req: schemas.CheckEscapeRequest) -> Response:
        return _payload(jobs.run_check_escape(req))

    @app.post("/v1/check/rare")
    async def check_rare_endpoint(req: schemas.CheckRareRequest) -> Response:
        return _payload(jobs.run_check_rare(req))

    return app


app = create_app()
