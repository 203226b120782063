"""Pure-Python evaluation kernel.

Exhaustive backtracking evaluation of a ground goal against a compiled
program, with exact accounting:

* ``function_calls``  -- one per goal dispatch, successful or not,
* ``rewrite_steps``   -- one per successful rule application anywhere.

A goal is solved by trying its rules in order; a matching rule processes
its conditions left to right, enumerating every result of each condition
goal and backtracking over the alternatives.  There is no memoization:
repeated goals are re-solved and re-counted.

The search is driven by an explicit frame machine rather than recursion:
with a nonterminating system and a call budget B the active search path
grows to depth ~B, far beyond any call stack.  Frames form a producer/
consumer chain; control walks along it carrying one of three signals
(PULL for "next result", EMIT carrying a result, DONE for exhaustion).

The Cython kernel (`_ckernel.pyx`) is a line-by-line twin of this module;
keep the two in sync.
"""

from __future__ import annotations

from .errors import InstantiationFault, UnknownSymbolError

_PULL, _EMIT, _DONE = 0, 1, 2


class _Solve:
    """Enumerates the results of one goal ``fn(args)``."""

    __slots__ = ("fn", "args", "consumer", "rules", "ri", "child", "entered")

    def __init__(self, fn, args, consumer):
        self.fn = fn
        self.args = args
        self.consumer = consumer
        self.rules = None
        self.ri = 0
        self.child = None
        self.entered = False


class _Conds:
    """Enumerates the results of a matched rule from condition ``idx`` on."""

    __slots__ = ("rule", "env", "idx", "consumer", "sub", "deeper", "trail", "emitted")

    def __init__(self, rule, env, idx, consumer):
        self.rule = rule
        self.env = env
        self.idx = idx
        self.consumer = consumer
        self.sub = None      # _Solve of this condition's goal
        self.deeper = None   # _Conds for idx+1 under the current bindings
        self.trail = None    # env slots bound by the current result match
        self.emitted = False


def _match(p, s, env):
    if type(p) is int:
        b = env[p]
        if b is None:
            env[p] = s
            return True
        return b == s
    if p[0] != s[0]:
        return False
    for q, t in zip(p[1], s[1]):
        if not _match(q, t, env):
            return False
    return True


def _match_seq(pats, subjects, env):
    for p, s in zip(pats, subjects):
        if not _match(p, s, env):
            return False
    return True


def _match_trail(p, s, env, trail):
    if type(p) is int:
        b = env[p]
        if b is None:
            env[p] = s
            trail.append(p)
            return True
        return b == s
    if p[0] != s[0]:
        return False
    for q, t in zip(p[1], s[1]):
        if not _match_trail(q, t, env, trail):
            return False
    return True


def _match_seq_trail(pats, subjects, env, trail):
    for p, s in zip(pats, subjects):
        if not _match_trail(p, s, env, trail):
            return False
    return True


def _inst(p, env, rule, what):
    if type(p) is int:
        v = env[p]
        if v is None:
            raise InstantiationFault(
                f"unbound variable {rule.var_names[p]} in {what} of a {rule.fn} rule")
        return v
    if not p[1]:
        return p
    return (p[0], tuple(_inst(a, env, rule, what) for a in p[1]))


def _inst_seq(pats, env, rule, what):
    return tuple(_inst(p, env, rule, what) for p in pats)


def run(program, fn, args, mode_first, budget):
    """Evaluate ``fn(args)``; returns (results, calls, steps, exhausted).

    ``budget`` bounds function_calls (-1 for unbounded); on exhaustion the
    search stops immediately and the results found so far are returned.
    """
    results = []
    calls = 0
    steps = 0
    exhausted = False
    root = _Solve(fn, args, None)
    cur = root
    sig = _PULL
    val = None
    while True:
        if cur is None:
            # the root's consumer: collect a result or finish
            if sig == _EMIT:
                results.append(val)
                if mode_first:
                    break
                cur, sig, val = root, _PULL, None
                continue
            break
        if type(cur) is _Solve:
            f = cur
            if not f.entered:
                f.entered = True
                if calls == budget:
                    exhausted = True
                    break
                calls += 1
                rules = program.get(f.fn)
                if rules is None:
                    raise UnknownSymbolError(f.fn)
                f.rules = rules
            if sig == _EMIT:
                cur = f.consumer  # relay the rule's result to whoever asked
                continue
            if sig == _PULL and f.child is not None:
                cur = f.child
                continue
            # DONE from the child, or a fresh PULL: try further rules
            f.child = None
            rules = f.rules
            ri = f.ri
            nxt = None
            while ri < len(rules):
                rule = rules[ri]
                ri += 1
                env = [None] * rule.nv
                if _match_seq(rule.params, f.args, env):
                    nxt = _Conds(rule, env, 0, f)
                    break
            f.ri = ri
            if nxt is None:
                cur, sig, val = f.consumer, _DONE, None
            else:
                f.child = nxt
                cur, sig, val = nxt, _PULL, None
            continue
        c = cur
        rule = c.rule
        conds = rule.conds
        if c.idx == len(conds):
            # all conditions hold: one successful rule application
            if sig == _PULL and not c.emitted:
                c.emitted = True
                steps += 1
                out = _inst_seq(rule.results, c.env, rule, "the results")
                cur, sig, val = c.consumer, _EMIT, out
            else:
                cur, sig, val = c.consumer, _DONE, None
            continue
        if c.sub is None:
            cfn, cargs, _cres = conds[c.idx]
            gargs = _inst_seq(cargs, c.env, rule, f"a condition argument of {cfn}")
            c.sub = _Solve(cfn, gargs, c)
            cur, sig, val = c.sub, _PULL, None
            continue
        if c.deeper is not None:
            if sig == _PULL:
                cur = c.deeper
                continue
            if sig == _EMIT:
                cur = c.consumer  # relay upward
                continue
            # DONE: the deeper chain is exhausted under these bindings
            c.deeper = None
            env = c.env
            for slot in c.trail:
                env[slot] = None
            c.trail = None
            cur, sig, val = c.sub, _PULL, None
            continue
        # a signal from this condition's goal
        if sig == _EMIT:
            trail = []
            if _match_seq_trail(conds[c.idx][2], val, c.env, trail):
                c.trail = trail
                c.deeper = _Conds(rule, c.env, c.idx + 1, c)
                cur, sig, val = c.deeper, _PULL, None
            else:
                env = c.env
                for slot in trail:
                    env[slot] = None
                cur, sig, val = c.sub, _PULL, None
            continue
        if sig == _DONE:
            c.sub = None
            cur, sig, val = c.consumer, _DONE, None
            continue
        raise AssertionError("unexpected PULL at an active condition")
    return results, calls, steps, exhausted
