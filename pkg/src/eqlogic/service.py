"""HTTP face of the workbench.

Stateless service wrapping the same operations layer the CLI uses: one
POST endpoint per subcommand, file contents travel in the request body.
Every request that reaches an operation returns 200 with a status field
(ok, proof-error, or input-error); malformed request bodies get the
usual 422 from validation.

Run with: uvicorn eqlogic.service:app
"""

from __future__ import annotations

from fastapi import FastAPI
from pydantic import BaseModel, Field

from . import reports

app = FastAPI(
    title="eqlogic",
    description="Multi-sorted equational logic workbench",
    version="0.1.0",
)


class CheckRequest(BaseModel):
    theory: str
    proof: str


class EvalRequest(BaseModel):
    theory: str
    model: str
    term: str
    env: str = ""
    ctx: str | None = None


class SatisfiesRequest(BaseModel):
    theory: str
    model: str


class SoundRequest(BaseModel):
    theory: str
    model: str
    proof: str


class CompleteRequest(BaseModel):
    theory: str
    proof: str


class CountermodelRequest(BaseModel):
    theory: str
    equation: str
    max_size: int = Field(ge=1)
    budget: int = Field(default=10_000_000, ge=1)


class ErrorInfo(BaseModel):
    kind: str
    message: str
    line: int | None = None
    column: int | None = None


class JudgmentInfo(BaseModel):
    context: dict[str, str]
    sort: str
    lhs: str
    rhs: str


class CheckResponse(BaseModel):
    status: str
    text: str
    judgment: JudgmentInfo | None = None
    error: ErrorInfo | None = None


class EvalResponse(BaseModel):
    status: str
    text: str
    value: str | None = None
    error: ErrorInfo | None = None


class SatisfiesResponse(BaseModel):
    status: str
    text: str
    holds: bool | None = None
    results: dict[str, str] | None = None
    failed: str | None = None
    witness: dict[str, str] | None = None
    error: ErrorInfo | None = None


class SoundResponse(BaseModel):
    status: str
    text: str
    sound: bool | None = None
    judgment: JudgmentInfo | None = None
    error: ErrorInfo | None = None


class CompleteResponse(BaseModel):
    status: str
    text: str
    judgment: JudgmentInfo | None = None
    proof: str | None = None
    size: int | None = None
    error: ErrorInfo | None = None


class CountermodelResponse(BaseModel):
    status: str
    text: str
    found: bool | None = None
    max_size: int | None = None
    sizes: dict[str, int] | None = None
    model: str | None = None
    witness: dict[str, str] | None = None
    error: ErrorInfo | None = None


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/check", response_model=CheckResponse, response_model_exclude_none=True)
def check(req: CheckRequest):
    return reports.run_check(req.theory, req.proof).payload


@app.post("/eval", response_model=EvalResponse, response_model_exclude_none=True)
def eval_endpoint(req: EvalRequest):
    return reports.run_eval(req.theory, req.model, req.term, req.env, req.ctx).payload


@app.post("/satisfies", response_model=SatisfiesResponse, response_model_exclude_none=True)
def satisfies(req: SatisfiesRequest):
    return reports.run_satisfies(req.theory, req.model).payload


@app.post("/sound", response_model=SoundResponse, response_model_exclude_none=True)
def sound(req: SoundRequest):
    return reports.run_sound(req.theory, req.model, req.proof).payload


@app.post("/complete", response_model=CompleteResponse, response_model_exclude_none=True)
def complete(req: CompleteRequest):
    return reports.run_complete(req.theory, req.proof).payload


@app.post("/countermodel", response_model=CountermodelResponse, response_model_exclude_none=True)
def countermodel(req: CountermodelRequest):
    return reports.run_countermodel(req.theory, req.equation, req.max_size, req.budget).payload
