"""Compilation of systems into the kernel's flat representation.

Kernel terms are nested pairs ``(constructor_name, args_tuple)``; kernel
patterns additionally use a plain ``int`` for a variable, indexing a
per-rule-activation environment list.  This keeps the hot loop free of
attribute access and lets bindings share structure with the subject.
"""

from __future__ import annotations

from sys import intern

from ..terms import App, Rule, System, Term, Var


class CompiledRule:
    __slots__ = ("fn", "nv", "params", "conds", "results", "var_names")

    def __init__(self, fn, nv, params, conds, results, var_names):
        self.fn = fn
        self.nv = nv
        self.params = params
        self.conds = conds  # tuple of (fn, arg_patterns, result_patterns)
        self.results = results
        self.var_names = var_names


def encode_term(term: Term):
    # iterative: subject terms (e.g. unary numerals) can be very deep
    stack: list[list] = [[term, 0, []]]
    result = None
    while stack:
        frame = stack[-1]
        t = frame[0]
        if isinstance(t, Var):
            raise ValueError(f"term is not ground: variable {t.name}")
        if frame[1] == len(t.args):
            stack.pop()
            enc = (intern(t.ctor), tuple(frame[2]))
            if stack:
                stack[-1][2].append(enc)
            else:
                result = enc
        else:
            child = t.args[frame[1]]
            frame[1] += 1
            stack.append([child, 0, []])
    return result


def decode_term(value) -> App:
    stack: list[list] = [[value, 0, []]]
    result = None
    while stack:
        frame = stack[-1]
        args = frame[0][1]
        if frame[1] == len(args):
            stack.pop()
            dec = App(frame[0][0], tuple(frame[2]))
            if stack:
                stack[-1][2].append(dec)
            else:
                result = dec
        else:
            child = args[frame[1]]
            frame[1] += 1
            stack.append([child, 0, []])
    return result


def _encode_pattern(term: Term, slots: dict[str, int]):
    if isinstance(term, Var):
        slot = slots.get(term.name)
        if slot is None:
            slot = len(slots)
            slots[term.name] = slot
        return slot
    return (intern(term.ctor), tuple(_encode_pattern(a, slots) for a in term.args))


def compile_rule(rule: Rule) -> CompiledRule:
    slots: dict[str, int] = {}
    params = tuple(_encode_pattern(t, slots) for t in rule.params)
    conds = tuple(
        (intern(c.fn),
         tuple(_encode_pattern(t, slots) for t in c.args),
         tuple(_encode_pattern(t, slots) for t in c.results))
        for c in rule.conditions
    )
    results = tuple(_encode_pattern(t, slots) for t in rule.results)
    names = [""] * len(slots)
    for name, slot in slots.items():
        names[slot] = name
    return CompiledRule(intern(rule.fn), len(slots), params, conds, results, tuple(names))


def compile_system(system: System) -> dict:
    """Map every defined symbol to its compiled rules (possibly empty)."""
    program: dict[str, list[CompiledRule]] = {
        intern(s.name): [] for s in system.defined_symbols()
    }
    for rule in system.rules:
        program[intern(rule.fn)].append(compile_rule(rule))
    return {fn: tuple(rules) for fn, rules in program.items()}
