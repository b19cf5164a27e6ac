"""
FastAPI app for filterfunc: evaluate filters and rough approximations over HTTP
"""

import logging
import os
import secrets
from pathlib import Path
from typing import Any, Dict, List

from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from filterfunc import __version__
from filterfunc.core import rough
from filterfunc.core.catalog import VOCABULARY, parse_filter_list
from filterfunc.core.errors import FilterFuncError, OutOfUniverse
from filterfunc.core.universe import EventSelector, select_events
from filterfunc.io.modelfile import parse_model_file
from filterfunc.io.reports import evaluate_table

logger = logging.getLogger(__name__)

app = FastAPI(title="filterfunc API", version=__version__)

TOKEN_ENV = "FILTERFUNC_API_TOKEN"
TOKEN_HEADER = "X-FilterFunc-Token"
OPEN_PATHS = frozenset({"/", "/health"})
PLACEHOLDER_TOKEN = "replace_with_a_strong_random_token"

# <root>/filterfunc/api/service.py
load_dotenv(Path(__file__).resolve().parents[2] / ".env")


class TokenAuth:
    """Shared-token check for every path outside OPEN_PATHS."""

    def __init__(self, token: str):
        self._token = token

    @classmethod
    def from_environment(cls) -> "TokenAuth":
        token = os.getenv(TOKEN_ENV, "").strip()
        if not token:
            raise RuntimeError(f"{TOKEN_ENV} is not set; the API will not start without it")
        if token == PLACEHOLDER_TOKEN:
            raise RuntimeError(f"{TOKEN_ENV} still holds the .env.example placeholder; "
                               "generate a random token first")
        return cls(token)

    def permits(self, request: Request) -> bool:
        if request.url.path in OPEN_PATHS:
            return True
        supplied = request.headers.get(TOKEN_HEADER, "")
        return bool(supplied) and secrets.compare_digest(supplied, self._token)


@app.on_event("startup")
async def load_token() -> None:
    app.state.auth = TokenAuth.from_environment()


@app.middleware("http")
async def check_token(request: Request, call_next):
    if not request.app.state.auth.permits(request):
        return JSONResponse(status_code=401, content={"detail": "Unauthorized"})
    return await call_next(request)


@app.exception_handler(FilterFuncError)
async def filterfunc_error_handler(request: Request, exc: FilterFuncError):
    """Library validation errors are the caller's fault."""
    logger.info("Rejected %s: %s", request.url.path, exc)
    return JSONResponse(status_code=400, content={
        "detail": str(exc), "error": type(exc).__name__})


class EvaluateRequest(BaseModel):
    """Model text, filter names and an event selector."""
    model: str
    filters: List[str]
    events: str = "nonempty"


class ApproximateRequest(BaseModel):
    """Model text and the labels of one event."""
    model: str
    event: List[str]


@app.get("/health")
async def health_check():
    """Basic health check endpoint."""
    return {'status': 'healthy', 'service': 'filterfunc API'}


@app.get("/")
async def root():
    """Root endpoint with basic info."""
    return {
        'message': 'filterfunc API is running',
        'version': __version__,
        'filters': list(VOCABULARY),
        'endpoints': ['/health', '/evaluate', '/approximate'],
    }


@app.post("/evaluate")
async def evaluate(body: EvaluateRequest) -> Dict[str, Any]:
    """Evaluate filters on the selected events of a model."""
    try:
        selector = EventSelector(body.events)
    except ValueError:
        raise HTTPException(
            status_code=400,
            detail=f"events must be one of {[s.value for s in EventSelector]}") from None
    model = parse_model_file(body.model)
    named = parse_filter_list(",".join(body.filters))
    frame = evaluate_table(model.mass, named, select_events(model.family, selector))
    columns = [c for c in frame.columns if c not in ("varname", "event")]
    rows = [
        {
            'event': record['event'],
            'varname': int(record['varname']),
            'values': {c: float(record[c]) for c in columns},
        }
        for record in frame.to_dict(orient="records")
    ]
    logger.info("Evaluated %d filter column(s) on %d event(s)", len(columns), len(rows))
    return {'columns': columns, 'rows': rows}


@app.post("/approximate")
async def approximate(body: ApproximateRequest) -> Dict[str, Any]:
    """Lower and upper approximation of an event with mu, gamma and alpha."""
    model = parse_model_file(body.model)
    universe = model.universe
    try:
        event = universe.mask(body.event)
    except KeyError as e:
        raise OutOfUniverse(f"label {e.args[0]!r} is not in the universe") from None
    result = rough.approximate(model.family, event)
    return {
        'event': universe.render(event),
        'lower': list(universe.labels_of(result.lower)),
        'upper': list(universe.labels_of(result.upper)),
        'mu_lower': result.mu_lower,
        'mu_upper': result.mu_upper,
        'gamma': rough.gamma(model.family, event),
        'alpha': rough.accuracy(model.family, event),
    }
