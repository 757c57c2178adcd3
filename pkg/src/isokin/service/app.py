"""FastAPI application exposing the scenario operations over HTTP.

Run with ``isokin serve`` or ``uvicorn isokin.service.app:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers, schemas

app = FastAPI(title="isokin", version="0.1.0",
              description="Isoline calculus of unsteady planar scalar fields: "
                          "characteristics, verification campaigns, exports.")

_STATUS = {"degenerate_point": 409, "export_failed": 422, "config": 422}


@app.exception_handler(handlers.ServiceError)
async def service_error_handler(request: Request, exc: handlers.ServiceError):
    return JSONResponse(
        status_code=_STATUS.get(exc.code, 400),
        content=schemas.ErrorEnvelope(code=exc.code, message=exc.message).model_dump())


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "service": "isokin", "version": "0.1.0"}


@app.post("/characteristics", response_model=schemas.CharacteristicsResponse)
def characteristics(req: schemas.CharacteristicsRequest) -> schemas.CharacteristicsResponse:
    return handlers.run_characteristics(req)


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    return handlers.run_verify(req)


@app.post("/export", response_model=schemas.ExportResponse)
def export(req: schemas.ExportRequest) -> schemas.ExportResponse:
    return handlers.run_export(req)
