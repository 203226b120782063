"""Backtracking evaluation of ground queries with exact accounting.

Two interchangeable kernels implement the search: a compiled extension
(built from ``_ckernel.pyx``) and a pure-Python twin (``_pykernel``).
The compiled one is picked at import time when present; set
``CCSINV_PURE=1`` to force the pure kernel.  Results and counters are
identical by construction and by test.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional

from ..terms import App, System, Term, is_ground
from .compilesys import compile_system, decode_term, encode_term
from .errors import EngineError, InstantiationFault, UnknownSymbolError
from .tracer import Trace, trace as _trace_impl

from . import _pykernel

try:
    from . import _ckernel  # compiled at build time; optional
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

_KERNELS = {"pure": _pykernel}
if _ckernel is not None:
    _KERNELS["compiled"] = _ckernel

if _ckernel is not None and os.environ.get("CCSINV_PURE", "") in ("", "0"):
    _DEFAULT = "compiled"
else:
    _DEFAULT = "pure"


def kernel_name() -> str:
    """Name of the kernel used by default in this process."""
    return _DEFAULT


def available_kernels() -> list[str]:
    return sorted(_KERNELS)


@dataclass(frozen=True)
class Query:
    fn: str
    args: tuple[Term, ...]


@dataclass
class EvalStats:
    rewrite_steps: int
    function_calls: int
    budget: Optional[int] = None
    exhausted: bool = False


@dataclass
class EvalOutcome:
    results: list[tuple[Term, ...]]
    stats: EvalStats


def evaluate(
    system: System,
    query: Query,
    mode: str = "all",
    budget: Optional[int] = None,
    kernel: Optional[str] = None,
) -> EvalOutcome:
    """Enumerate the ground result tuples of ``query`` against ``system``.

    ``mode="all"`` explores the entire search space; ``mode="first"``
    stops at the first result.  ``budget`` caps function calls; when it
    runs out the outcome carries the results found so far and
    ``stats.exhausted`` is set.
    """
    if mode not in ("all", "first"):
        raise ValueError(f"mode must be 'all' or 'first', got {mode!r}")
    if budget is not None and budget < 0:
        raise ValueError("budget must be non-negative")
    sym = system.signature.get(query.fn)
    if sym is None or not sym.is_defined:
        raise UnknownSymbolError(query.fn)
    if len(query.args) != sym.arity_in:
        raise EngineError(
            f"{query.fn} takes {sym.arity_in} arguments, got {len(query.args)}")
    args = tuple(encode_term(t) for t in query.args)
    program = compile_system(system)
    impl = _KERNELS[kernel or _DEFAULT]
    raw, calls, steps, exhausted = impl.run(
        program, query.fn, args, mode == "first", -1 if budget is None else budget)
    results = [tuple(decode_term(t) for t in tup) for tup in raw]
    return EvalOutcome(results, EvalStats(steps, calls, budget, exhausted))


def trace(system: System, query: Query, budget: Optional[int] = None) -> Trace:
    """Full-search evaluation that also records the goal tree."""
    sym = system.signature.get(query.fn)
    if sym is None or not sym.is_defined:
        raise UnknownSymbolError(query.fn)
    if len(query.args) != sym.arity_in:
        raise EngineError(
            f"{query.fn} takes {sym.arity_in} arguments, got {len(query.args)}")
    for t in query.args:
        if not is_ground(t):
            raise EngineError("query arguments must be ground")
    return _trace_impl(system, (query.fn, query.args), budget)


# ---------- unary numerals ----------


def unary(n: int) -> Term:
    """The unary numeral s^n(0)."""
    if n < 0:
        raise ValueError("unary numerals are non-negative")
    t: Term = App("0")
    for _ in range(n):
        t = App("s", (t,))
    return t


def unary_value(term: Term) -> int:
    """Integer value of a unary numeral; ValueError if not one."""
    n = 0
    while isinstance(term, App) and term.ctor == "s" and len(term.args) == 1:
        n += 1
        term = term.args[0]
    if isinstance(term, App) and term.ctor == "0" and not term.args:
        return n
    raise ValueError("not a unary numeral")
