"""JSON HTTP facade over parsing, inversion, diagnostics, and evaluation.

Stateless: every request carries the full system text.  Parse and
transformation problems come back as ``{ok: false, error, line, column}``
with status 400; evaluation is capped server-side so a nonterminating
system cannot pin the process.  The built web playground, when present,
is served at ``/``.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from fastapi import FastAPI
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import corpus
from .diagnostics import compare
from .engine import Query, evaluate
from .engine.errors import EngineError
from .inversion import InversionError, InversionTask, invert_system, registered_inverters
from .syntax import ParseError, format_system, format_tuple, parse, parse_query, to_latex

EVAL_CALL_CAP = int(os.environ.get("CCSINV_EVAL_CAP", str(10**7)))

KIND_LABELS = {"trivial": "TRIV", "full": "FULL", "partial": "PART", "semi": "SEMI"}


class InvertRequest(BaseModel):
    ccs_text: str
    function: str
    I: list[int] = []
    O: list[int] = []
    inverter: str = "partial"


class DiagnoseRequest(BaseModel):
    ccs_text: str


class EvalRequest(BaseModel):
    ccs_text: str
    query_text: str
    mode: str = "all"
    budget: Optional[int] = None


class LatexRequest(BaseModel):
    ccs_text: str


def _bad_request(error: str, line: Optional[int] = None, column: Optional[int] = None):
    return JSONResponse(
        {"ok": False, "error": error, "line": line, "column": column},
        status_code=400,
    )


def _parse_or_400(text: str):
    try:
        return parse(text), None
    except ParseError as e:
        d = e.diagnostics[0]
        return None, _bad_request(d.message, d.line, d.column)


def create_app() -> FastAPI:
    app = FastAPI(title="ccsinv", version="0.1.0")

    @app.post("/api/invert")
    def invert(req: InvertRequest):
        system, err = _parse_or_400(req.ccs_text)
        if err is not None:
            return err
        if req.inverter not in registered_inverters():
            return _bad_request(f"unknown rule inverter {req.inverter!r}")
        try:
            task = InversionTask.of(system, req.function, req.I, req.O, req.inverter)
            report = invert_system(system, task)
        except InversionError as e:
            return _bad_request(str(e))
        label = KIND_LABELS.get(req.inverter, req.inverter.upper())
        table = compare([("ORIG", system), (label, report.produced)])
        return {
            "ok": True,
            "inverted_ccs_text": format_system(report.produced),
            "warnings": list(report.warnings),
            "diagnostics_table": {**table.to_dict(), "text": table.render()},
            "error": None,
        }

    @app.post("/api/diagnose")
    def diagnose(req: DiagnoseRequest):
        system, err = _parse_or_400(req.ccs_text)
        if err is not None:
            return err
        table = compare([("ORIG", system)])
        return {
            "ok": True,
            "diagnostics_table": {**table.to_dict(), "text": table.render()},
            # lets clients (the playground's task dialog) offer valid
            # index ranges without re-implementing the grammar
            "symbols": [
                {"name": s.name, "arity_in": s.arity_in, "arity_out": s.arity_out}
                for s in system.defined_symbols()
            ],
        }

    @app.post("/api/eval")
    def eval_query(req: EvalRequest):
        system, err = _parse_or_400(req.ccs_text)
        if err is not None:
            return err
        if req.mode not in ("all", "first"):
            return _bad_request(f"mode must be 'all' or 'first', got {req.mode!r}")
        try:
            fn, args = parse_query(req.query_text, system)
        except ParseError as e:
            d = e.diagnostics[0]
            return _bad_request(d.message, d.line, d.column)
        budget = min(req.budget, EVAL_CALL_CAP) if req.budget is not None else EVAL_CALL_CAP
        if budget < 0:
            return _bad_request("budget must be non-negative")
        try:
            outcome = evaluate(system, Query(fn, args), mode=req.mode, budget=budget)
        except EngineError as e:
            return _bad_request(str(e))
        return {
            "ok": True,
            "results": [format_tuple(r) for r in outcome.results],
            "rewrite_steps": outcome.stats.rewrite_steps,
            "function_calls": outcome.stats.function_calls,
            "exhausted": outcome.stats.exhausted,
        }

    @app.post("/api/latex")
    def latex(req: LatexRequest):
        system, err = _parse_or_400(req.ccs_text)
        if err is not None:
            return err
        return {"ok": True, "latex": to_latex(system)}

    @app.get("/api/examples")
    def examples():
        return {
            "examples": [
                {"name": name, "description": corpus.description(name)}
                for name in corpus.names()
            ]
        }

    @app.get("/api/examples/{name}")
    def example(name: str):
        try:
            return PlainTextResponse(corpus.source(name))
        except KeyError as e:
            return JSONResponse(
                {"ok": False, "error": e.args[0], "line": None, "column": None},
                status_code=404,
            )

    ui_dir = _find_ui_dir()
    if ui_dir is not None:
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def index():
            return (
                "<!doctype html><title>ccsinv</title>"
                "<h1>ccsinv API</h1>"
                "<p>The web playground is not built. The JSON API lives under "
                "<code>/api</code>; see <a href='/docs'>/docs</a>.</p>"
            )

    return app


def _find_ui_dir() -> Optional[str]:
    env = os.environ.get("CCSINV_UI_DIR")
    candidates = [Path(env)] if env else []
    candidates.append(Path.cwd() / "frontend" / "dist")
    candidates.append(Path(__file__).resolve().parent.parent.parent / "frontend" / "dist")
    for c in candidates:
        if c.is_dir() and (c / "index.html").is_file():
            return str(c)
    return None
