"""Inversion toolkit for oriented conditional constructor rewriting systems.

Parse a system, invert selected functions by input/output index sets,
evaluate ground queries against original and inverted systems with exact
rewrite-step/function-call accounting, and analyze paradigm properties.
"""

from .terms import (
    App,
    ArityError,
    Condition,
    Rule,
    Symbol,
    System,
    Term,
    Var,
    alpha_equal,
    match,
    match_tuple,
    rename_apart,
    unify,
)
from .syntax import ParseDiagnostic, ParseError, format_system, parse, parse_query, to_latex
from .inversion import (
    Demand,
    InversionError,
    InversionReport,
    InversionTask,
    IOSet,
    RuleInverter,
    full_inverse,
    inverse_name,
    invert_rule,
    invert_system,
    register_inverter,
)
from .engine import EvalOutcome, EvalStats, Query, evaluate, kernel_name, trace, unary, unary_value
from .diagnostics import ComparisonTable, PropertyReport, analyze, compare

__version__ = "0.1.0"

__all__ = [
    "App", "ArityError", "ComparisonTable", "Condition", "Demand", "EvalOutcome",
    "EvalStats", "InversionError", "InversionReport", "InversionTask", "IOSet",
    "ParseDiagnostic", "ParseError", "PropertyReport", "Query", "Rule",
    "RuleInverter", "Symbol", "System", "Term", "Var", "alpha_equal", "analyze",
    "compare", "evaluate", "format_system", "full_inverse", "inverse_name",
    "invert_rule", "invert_system", "kernel_name", "match", "match_tuple",
    "parse", "parse_query", "register_inverter", "rename_apart", "to_latex",
    "trace", "unary", "unary_value", "unify",
]
