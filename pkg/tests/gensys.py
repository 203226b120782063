"""Seeded random well-formed systems for property tests.

Systems are constructor systems by construction: defined symbols appear
only at rule and condition roots.  All defined symbols are reachable from
``f0`` through conditions (unreachable ones are dropped), so demand-driven
transformations see the whole system.
"""

from __future__ import annotations

import random

from ccsinv.terms import App, Condition, Rule, Symbol, System, Var

VAR_POOL = ("x", "y", "z", "u", "w")


def _pattern(rng: random.Random, ctors, vars_used: list[str], depth: int):
    """A pattern term; may introduce fresh variables or repeat old ones."""
    roll = rng.random()
    if roll < 0.35:
        if vars_used and rng.random() < 0.4:
            return Var(rng.choice(vars_used))
        name = VAR_POOL[len(vars_used) % len(VAR_POOL)] + str(len(vars_used) // len(VAR_POOL) or "")
        if name in vars_used:
            name = f"{name}{len(vars_used)}"
        vars_used.append(name)
        return Var(name)
    name, arity = rng.choice(ctors)
    if depth <= 0:
        name, arity = rng.choice([c for c in ctors if c[1] == 0])
    return App(name, tuple(_pattern(rng, ctors, vars_used, depth - 1) for _ in range(arity)))


def _term_over(rng: random.Random, ctors, vars_used: list[str], depth: int = 1):
    """A term preferring already-introduced variables (may still add one)."""
    if vars_used and rng.random() < 0.55:
        return Var(rng.choice(vars_used))
    return _pattern(rng, ctors, vars_used, depth)


def random_system(seed: int) -> System:
    rng = random.Random(seed)
    ctors = [("n", 0), ("m", 0)]
    for i in range(rng.randint(0, 2)):
        ctors.append((f"c{i}", rng.randint(1, 2)))
    fns = [(f"f{i}", rng.randint(0, 2), rng.randint(0, 2)) for i in range(rng.randint(1, 3))]

    rules = []
    for name, n_in, n_out in fns:
        for _ in range(rng.randint(1, 3)):
            vars_used: list[str] = []
            params = tuple(_pattern(rng, ctors, vars_used, 2) for _ in range(n_in))
            conds = []
            for _ in range(rng.randint(0, 2)):
                gname, g_in, g_out = rng.choice(fns)
                cargs = tuple(_term_over(rng, ctors, vars_used) for _ in range(g_in))
                cres = tuple(_pattern(rng, ctors, vars_used, 1) for _ in range(g_out))
                conds.append(Condition(gname, cargs, cres))
            results = tuple(_term_over(rng, ctors, vars_used) for _ in range(n_out))
            rules.append(Rule(name, params, results, tuple(conds)))

    signature = {name: Symbol.defined(name, n_in, n_out) for name, n_in, n_out in fns}
    for cname, arity in ctors:
        signature[cname] = Symbol.constructor(cname, arity)
    return _reachable_part(System(signature, tuple(rules)), "f0")


def _reachable_part(system: System, root: str) -> System:
    reached = {root}
    frontier = [root]
    while frontier:
        fn = frontier.pop()
        for rule in system.rules_of(fn):
            for c in rule.conditions:
                if c.fn not in reached:
                    reached.add(c.fn)
                    frontier.append(c.fn)
    rules = tuple(r for r in system.rules if r.fn in reached)
    signature = {
        name: sym for name, sym in system.signature.items()
        if not sym.is_defined or name in reached
    }
    return System(signature, rules)


def corpus_of(n: int, seed: int = 20240) -> list[System]:
    return [random_system(seed + k) for k in range(n)]
