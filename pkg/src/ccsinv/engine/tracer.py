"""Structured evaluation traces.

This is a direct, recursive rendering of the evaluation semantics on
plain terms and substitutions.  It is intentionally independent of the
kernels in `_pykernel`/`_ckernel`: tests cross-check results and counters
between the two paths.  Being recursive it is only meant for desk-scale
queries (the node count equals the number of function calls, and the
recursion depth grows with the search depth).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from ..syntax import format_call, format_tuple
from ..terms import System, Term, is_ground, match_tuple, substitute, substitute_all
from .errors import EngineError, InstantiationFault, UnknownSymbolError

_DEPTH_LIMIT = 15_000


@dataclass
class CondEval:
    """One condition evaluated under the bindings current at that point."""

    index: int              # 1-based position of the condition in its rule
    call: str               # the instantiated condition goal
    node: Optional["TraceNode"] = None
    matches: int = 0        # results that extended the bindings

    def to_dict(self) -> dict:
        return {
            "condition": self.index,
            "call": self.call,
            "matches": self.matches,
            "node": self.node.to_dict() if self.node else None,
        }


@dataclass
class RuleAttempt:
    rule_index: int         # 1-based within the rules of the goal's symbol
    matched: bool
    conditions: list[CondEval] = field(default_factory=list)
    yields: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "rule": self.rule_index,
            "matched": self.matched,
            "conditions": [c.to_dict() for c in self.conditions],
            "yields": list(self.yields),
        }


@dataclass
class TraceNode:
    goal: str
    calls_at_entry: int
    steps_at_entry: int
    attempts: list[RuleAttempt] = field(default_factory=list)

    def node_count(self) -> int:
        count = 0
        stack = [self]
        while stack:
            node = stack.pop()
            count += 1
            for a in node.attempts:
                for c in a.conditions:
                    if c.node is not None:
                        stack.append(c.node)
        return count

    def to_dict(self) -> dict:
        return {
            "goal": self.goal,
            "calls_at_entry": self.calls_at_entry,
            "steps_at_entry": self.steps_at_entry,
            "rules": [a.to_dict() for a in self.attempts],
        }


@dataclass
class Trace:
    root: Optional[TraceNode]
    results: list[tuple[Term, ...]]
    function_calls: int
    rewrite_steps: int
    exhausted: bool

    def to_dict(self) -> dict:
        return {
            "results": [format_tuple(r) for r in self.results],
            "function_calls": self.function_calls,
            "rewrite_steps": self.rewrite_steps,
            "exhausted": self.exhausted,
            "tree": self.root.to_dict() if self.root else None,
        }

    def to_json(self, indent: int = 2) -> str:
        # the tree nests as deep as the search went; give the recursive
        # dict/json machinery room to follow it
        import json

        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 4 * _DEPTH_LIMIT))
        try:
            return json.dumps(self.to_dict(), indent=indent)
        finally:
            sys.setrecursionlimit(old)


class _Budget(Exception):
    pass


class _Tracer:
    def __init__(self, system: System, budget: Optional[int]):
        self.system = system
        self.rules = {s.name: system.rules_of(s.name) for s in system.defined_symbols()}
        self.budget = budget
        self.calls = 0
        self.steps = 0

    def solve(self, fn: str, args: tuple[Term, ...], attach, sink=None) -> list[tuple[Term, ...]]:
        if self.budget is not None and self.calls >= self.budget:
            raise _Budget()
        node = TraceNode(format_call(fn, args), self.calls, self.steps)
        attach(node)
        self.calls += 1
        rules = self.rules.get(fn)
        if rules is None:
            raise UnknownSymbolError(fn)
        results: list[tuple[Term, ...]] = []
        for ri, rule in enumerate(rules, start=1):
            subst = match_tuple(rule.params, args)
            attempt = RuleAttempt(ri, subst is not None)
            node.attempts.append(attempt)
            if subst is None:
                continue
            for sigma in self.conditions(rule, 0, subst, attempt):
                self.steps += 1
                out = substitute_all(sigma, rule.results)
                for t in out:
                    if not is_ground(t):
                        raise InstantiationFault(
                            f"unbound variable in the results of a {rule.fn} rule")
                attempt.yields.append(format_tuple(out))
                results.append(out)
                if sink is not None:
                    sink.append(out)
        return results

    def conditions(self, rule, idx, subst, attempt):
        if idx == len(rule.conditions):
            yield subst
            return
        cond = rule.conditions[idx]
        goal_args = substitute_all(subst, cond.args)
        for t in goal_args:
            if not is_ground(t):
                raise InstantiationFault(
                    f"unbound variable in an argument of condition {cond.fn} "
                    f"of a {rule.fn} rule")
        ce = CondEval(idx + 1, format_call(cond.fn, goal_args))
        attempt.conditions.append(ce)
        sub_results = self.solve(cond.fn, goal_args, lambda n: setattr(ce, "node", n))
        for res in sub_results:
            extended = match_tuple(cond.results, res, subst)
            if extended is None:
                continue
            ce.matches += 1
            yield from self.conditions(rule, idx + 1, extended, attempt)


def trace(system: System, query: tuple[str, tuple[Term, ...]], budget: Optional[int] = None) -> Trace:
    """Evaluate a ground goal, recording the full search tree.

    The tree has one node per function call; rule attempts record the
    match outcome and, per condition evaluation, the subtree it spawned.
    """
    fn, args = query
    tracer = _Tracer(system, budget)
    holder: list[TraceNode] = []
    found: list[tuple[Term, ...]] = []
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, _DEPTH_LIMIT))
    try:
        tracer.solve(fn, args, holder.append, sink=found)
        return Trace(holder[0], found, tracer.calls, tracer.steps, False)
    except _Budget:
        root = holder[0] if holder else None
        return Trace(root, found, tracer.calls, tracer.steps, True)
    except RecursionError:
        raise EngineError(
            "the search went too deep for the tracing evaluator; "
            "use evaluate(), whose kernels are depth-unbounded") from None
    finally:
        sys.setrecursionlimit(old_limit)
