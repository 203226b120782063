"""Rule and system inversion driven by input/output index sets.

A direction for a defined symbol is a pair of index sets ``(I, O)``: the
selected original inputs and outputs become the inputs of the new symbol,
everything else becomes its output.  Four rule inverters are built in:

* ``trivial`` -- keeps the original direction (I = all inputs, O = empty),
* ``full``    -- swaps everything (I empty, O = all outputs),
* ``partial`` -- any I, O = all outputs,
* ``semi``    -- any I, any O.

``invert_system`` propagates directions through the whole program: every
condition of an inverted rule gives rise to a new demand, computed from
what is known at that point, so one source symbol may come out in several
directions (one definition per demand).  The number of demands is finite,
so propagation always terminates.

Further rule inverters can be registered with :func:`register_inverter`;
the driver checks every returned rule against the head-shape contract.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .terms import (
    Condition,
    Rule,
    Symbol,
    System,
    Term,
    vars_of,
    vars_of_all,
)


class InversionError(Exception):
    """A rule could not be inverted for the requested direction."""

    def __init__(self, message: str, chain: Optional[list["Demand"]] = None):
        self.chain = chain or []
        if self.chain:
            path = " -> ".join(inverse_name(d) for d in self.chain)
            message = f"{message} (demand chain: {path})"
        super().__init__(message)


class ContractViolation(InversionError):
    """A rule inverter returned a rule that breaks the inversion contract."""


@dataclass(frozen=True)
class IOSet:
    """Sorted 1-based index sets selecting inputs and outputs of a symbol."""

    inputs: frozenset[int]
    outputs: frozenset[int]

    @classmethod
    def of(cls, inputs: Iterable[int] = (), outputs: Iterable[int] = ()) -> "IOSet":
        return cls(frozenset(inputs), frozenset(outputs))

    def check_against(self, symbol: Symbol) -> None:
        bad_i = [i for i in self.inputs if not 1 <= i <= symbol.arity_in]
        bad_o = [j for j in self.outputs if not 1 <= j <= symbol.arity_out]
        if bad_i or bad_o:
            raise InversionError(
                f"io-set {render_ioset(self)} out of range for {symbol.name} "
                f"({symbol.arity_in} inputs, {symbol.arity_out} outputs)"
            )


def render_ioset(ioset: IOSet) -> str:
    ins = ",".join(map(str, sorted(ioset.inputs)))
    outs = ",".join(map(str, sorted(ioset.outputs)))
    return "{" + ins + "}{" + outs + "}"


@dataclass(frozen=True)
class Demand:
    """A direction request for one defined symbol of the source system."""

    symbol: Symbol
    ioset: IOSet

    @classmethod
    def of(cls, symbol: Symbol, inputs: Iterable[int] = (), outputs: Iterable[int] = ()) -> "Demand":
        return cls(symbol, IOSet.of(inputs, outputs))

    @property
    def is_trivial(self) -> bool:
        return (self.ioset.inputs == frozenset(range(1, self.symbol.arity_in + 1))
                and not self.ioset.outputs)

    @property
    def keeps_all_outputs(self) -> bool:
        return self.ioset.outputs == frozenset(range(1, self.symbol.arity_out + 1))

    def arity_in(self) -> int:
        return len(self.ioset.inputs) + len(self.ioset.outputs)

    def arity_out(self) -> int:
        return (self.symbol.arity_in - len(self.ioset.inputs)) + (
            self.symbol.arity_out - len(self.ioset.outputs))


def inverse_name(demand: Demand) -> str:
    """Name of the inverted symbol; the trivial direction keeps the name."""
    if demand.is_trivial:
        return demand.symbol.name
    return demand.symbol.name + render_ioset(demand.ioset)


def inverse_symbol(demand: Demand) -> Symbol:
    return Symbol.defined(inverse_name(demand), demand.arity_in(), demand.arity_out())


@dataclass
class InvertedRule:
    rule: Rule
    demands: list[Demand]
    warnings: list[str] = field(default_factory=list)


# ---------- rule inverters ----------


class RuleInverter:
    """Interface of a rule inverter; subclass and register to plug in."""

    name: str = ""

    def admits(self, demand: Demand) -> bool:
        """Whether this inverter accepts the direction of ``demand``."""
        return True

    def invert_rule(self, rule: Rule, demand: Demand) -> InvertedRule:
        raise NotImplementedError


def _split_head(rule: Rule, demand: Demand) -> tuple[tuple[Term, ...], tuple[Term, ...]]:
    ins = sorted(demand.ioset.inputs)
    outs = sorted(demand.ioset.outputs)
    params = tuple(rule.params[i - 1] for i in ins) + tuple(rule.results[j - 1] for j in outs)
    rest_i = [rule.params[i - 1] for i in range(1, len(rule.params) + 1) if i not in demand.ioset.inputs]
    rest_o = [rule.results[j - 1] for j in range(1, len(rule.results) + 1) if j not in demand.ioset.outputs]
    return params, tuple(rest_i) + tuple(rest_o)


class TrivialInverter(RuleInverter):
    name = "trivial"

    def admits(self, demand: Demand) -> bool:
        return demand.is_trivial

    def invert_rule(self, rule: Rule, demand: Demand) -> InvertedRule:
        demands = [
            Demand.of(_symbol_for(c.fn, len(c.args), len(c.results)),
                      range(1, len(c.args) + 1), ())
            for c in rule.conditions
        ]
        return InvertedRule(rule, demands)


class FullInverter(RuleInverter):
    name = "full"

    def admits(self, demand: Demand) -> bool:
        return not demand.ioset.inputs and demand.keeps_all_outputs

    def invert_rule(self, rule: Rule, demand: Demand) -> InvertedRule:
        params, results = _split_head(rule, demand)
        conds = []
        demands = []
        for c in reversed(rule.conditions):
            sub = Demand.of(_symbol_for(c.fn, len(c.args), len(c.results)),
                            (), range(1, len(c.results) + 1))
            conds.append(Condition(inverse_name(sub), c.results, c.args))
            demands.append(sub)
        new_rule = Rule(inverse_name(demand), params, results, tuple(conds))
        return InvertedRule(new_rule, demands)


class _SchedulingInverter(RuleInverter):
    """Shared dataflow scheduling of partial and semi inversion.

    Conditions are scheduled one by one; for the selected condition the
    positions whose variables are already known move to the input side,
    the rest become its outputs, and those outputs extend the known set.
    """

    force_all_outputs = False

    def select(self, pending: list[tuple[int, Condition]], known: set[str]) -> Optional[int]:
        """Index into ``pending`` of the condition to schedule next."""
        raise NotImplementedError

    def invert_rule(self, rule: Rule, demand: Demand) -> InvertedRule:
        params, results = _split_head(rule, demand)
        known = vars_of_all(params)
        pending = list(enumerate(rule.conditions))
        conds: list[Condition] = []
        demands: list[Demand] = []
        while pending:
            pick = self.select(pending, known)
            if pick is None:
                names = ", ".join(c.fn for _, c in pending)
                raise InversionError(
                    f"{self.name} inversion of a {rule.fn} rule is stuck: "
                    f"no condition has fully known outputs (pending: {names})"
                )
            _, cond = pending.pop(pick)
            ins = [i for i in range(1, len(cond.args) + 1)
                   if vars_of(cond.args[i - 1]) <= known]
            outs = [j for j in range(1, len(cond.results) + 1)
                    if vars_of(cond.results[j - 1]) <= known]
            if self.force_all_outputs:
                assert len(outs) == len(cond.results), "selection policy broke eligibility"
            sub = Demand.of(_symbol_for(cond.fn, len(cond.args), len(cond.results)), ins, outs)
            new_args = tuple(cond.args[i - 1] for i in ins) + tuple(cond.results[j - 1] for j in outs)
            new_outs = (tuple(cond.args[i - 1] for i in range(1, len(cond.args) + 1) if i not in sub.ioset.inputs)
                        + tuple(cond.results[j - 1] for j in range(1, len(cond.results) + 1)
                                if j not in sub.ioset.outputs))
            conds.append(Condition(inverse_name(sub), new_args, new_outs))
            known |= vars_of_all(new_outs)
            demands.append(sub)
        warnings = []
        extra = vars_of_all(results) - known
        if extra:
            names = ", ".join(sorted(extra))
            warnings.append(
                f"extra variables in inverted {inverse_name(demand)} rule: {names}")
        new_rule = Rule(inverse_name(demand), params, results, tuple(conds))
        return InvertedRule(new_rule, demands, warnings)


class PartialInverter(_SchedulingInverter):
    name = "partial"
    force_all_outputs = True

    def admits(self, demand: Demand) -> bool:
        return demand.keeps_all_outputs

    def select(self, pending: list[tuple[int, Condition]], known: set[str]) -> Optional[int]:
        # rightmost condition (in source order) whose outputs are all known
        best = None
        for k, (pos, cond) in enumerate(pending):
            if all(vars_of(s) <= known for s in cond.results):
                if best is None or pos > pending[best][0]:
                    best = k
        return best


class SemiInverter(_SchedulingInverter):
    name = "semi"

    def select(self, pending: list[tuple[int, Condition]], known: set[str]) -> Optional[int]:
        # most fully-known argument and result positions; leftmost on ties
        def score(cond: Condition) -> int:
            return sum(1 for t in cond.args + cond.results if vars_of(t) <= known)

        best, best_score, best_pos = None, -1, -1
        for k, (pos, cond) in enumerate(pending):
            s = score(cond)
            if s > best_score or (s == best_score and pos < best_pos):
                best, best_score, best_pos = k, s, pos
        return best


def _symbol_for(fn: str, arity_in: int, arity_out: int) -> Symbol:
    # a condition occurrence carries the full arities of its symbol
    return Symbol.defined(fn, arity_in, arity_out)


# ---------- registry ----------

_REGISTRY: dict[str, RuleInverter] = {}


def register_inverter(name: str, inverter: RuleInverter) -> None:
    """Make an inverter selectable by name. Duplicate names are rejected."""
    if name in _REGISTRY:
        raise ValueError(f"rule inverter {name!r} is already registered")
    inverter.name = name
    _REGISTRY[name] = inverter


def get_inverter(name: str) -> RuleInverter:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"unknown rule inverter {name!r} (have: {', '.join(sorted(_REGISTRY))})"
        ) from None


def registered_inverters() -> list[str]:
    return sorted(_REGISTRY)


for _inv in (TrivialInverter(), FullInverter(), PartialInverter(), SemiInverter()):
    register_inverter(_inv.name, _inv)


# ---------- driver ----------


@dataclass(frozen=True)
class InversionTask:
    root: Demand
    inverter: str

    @classmethod
    def of(cls, system: System, fn: str, inputs: Iterable[int], outputs: Iterable[int],
           inverter: str) -> "InversionTask":
        sym = system.signature.get(fn)
        if sym is None or not sym.is_defined:
            raise InversionError(f"{fn} is not a defined symbol of the system")
        demand = Demand.of(sym, inputs, outputs)
        demand.ioset.check_against(sym)
        if not get_inverter(inverter).admits(demand):
            raise InversionError(
                f"{inverter} inverter does not admit io-set {render_ioset(demand.ioset)}")
        return cls(demand, inverter)


@dataclass
class InversionReport:
    produced: System
    demands_resolved: list[Demand]
    warnings: list[str]


def invert_rule(rule: Rule, demand: Demand, inverter: str | RuleInverter) -> InvertedRule:
    """Invert one rule for a demand, checking the inverter's contract."""
    inv = get_inverter(inverter) if isinstance(inverter, str) else inverter
    if rule.fn != demand.symbol.name:
        raise InversionError(f"rule defines {rule.fn}, demand is for {demand.symbol.name}")
    if not inv.admits(demand):
        raise InversionError(
            f"{inv.name} inverter does not admit io-set {render_ioset(demand.ioset)}")
    out = inv.invert_rule(rule, demand)
    _check_contract(rule, demand, out, inv)
    return out


def _multiset(terms: Iterable[Term]) -> dict[Term, int]:
    counts: dict[Term, int] = {}
    for t in terms:
        counts[t] = counts.get(t, 0) + 1
    return counts


def _check_contract(src: Rule, demand: Demand, out: InvertedRule, inv: RuleInverter) -> None:
    rule = out.rule
    want = inverse_name(demand)
    if rule.fn != want:
        raise ContractViolation(
            f"inverter {inv.name!r} produced head {rule.fn}, expected {want}")
    if len(rule.params) != demand.arity_in() or len(rule.results) != demand.arity_out():
        raise ContractViolation(
            f"inverter {inv.name!r} produced wrong arities for {want}")
    if _multiset(rule.params + rule.results) != _multiset(src.params + src.results):
        raise ContractViolation(
            f"inverter {inv.name!r} changed the head terms of a {src.fn} rule")
    if len(rule.conditions) != len(src.conditions):
        raise ContractViolation(
            f"inverter {inv.name!r} changed the number of conditions of a {src.fn} rule")
    unmatched = list(src.conditions)
    for c in rule.conditions:
        terms = _multiset(c.args + c.results)
        for k, s in enumerate(unmatched):
            if _multiset(s.args + s.results) == terms:
                del unmatched[k]
                break
        else:
            raise ContractViolation(
                f"inverter {inv.name!r} changed the condition terms of a {src.fn} rule")


def _class_inverter(demand: Demand) -> RuleInverter:
    """Inverter used for propagated demands, by direction class."""
    if demand.is_trivial:
        return get_inverter("trivial")
    if demand.keeps_all_outputs:
        return get_inverter("partial")
    return get_inverter("semi")


def invert_system(system: System, task: InversionTask) -> InversionReport:
    """Propagate the root demand to a fixpoint and invert every demanded rule.

    The root demand is handled by the task's inverter; propagated demands
    are handled by the inverter of their direction class.  The produced
    system lists, per resolved demand in discovery order, the inverted
    rules in source order; trivially demanded symbols keep their rules
    verbatim.
    """
    root = task.root
    root_inv = get_inverter(task.inverter)
    if not root_inv.admits(root):
        raise InversionError(
            f"{root_inv.name} inverter does not admit io-set {render_ioset(root.ioset)}")
    root.ioset.check_against(root.symbol)

    queue: list[Demand] = [root]
    parents: dict[Demand, Optional[Demand]] = {root: None}
    resolved: list[Demand] = []
    seen: set[Demand] = {root}
    groups: list[tuple[Demand, list[Rule]]] = []
    warnings: list[str] = []

    while queue:
        demand = queue.pop(0)
        resolved.append(demand)
        inverter = root_inv if demand == root else _class_inverter(demand)
        out_rules: list[Rule] = []
        for rule in system.rules_of(demand.symbol.name):
            try:
                inverted = invert_rule(rule, demand, inverter)
            except InversionError as e:
                raise InversionError(str(e), chain=_chain(parents, demand)) from e
            out_rules.append(inverted.rule)
            warnings.extend(inverted.warnings)
            for sub in inverted.demands:
                if sub not in seen:
                    seen.add(sub)
                    parents[sub] = demand
                    queue.append(sub)
        groups.append((demand, out_rules))

    # group order: where the source symbol is first defined, then demand
    # discovery order (stable sort) -- so a trivial task reproduces the
    # input rule order exactly
    first_at = {}
    for i, r in enumerate(system.rules):
        first_at.setdefault(r.fn, i)
    groups.sort(key=lambda g: first_at.get(g[0].symbol.name, len(system.rules)))

    signature: dict[str, Symbol] = {}
    for demand, _rules in groups:
        sym = inverse_symbol(demand)
        signature[sym.name] = sym
    for sym in system.constructor_symbols():
        signature[sym.name] = sym
    rules = tuple(r for _, rs in groups for r in rs)
    return InversionReport(System(signature, rules), resolved, warnings)


def _chain(parents: dict[Demand, Optional[Demand]], demand: Demand) -> list[Demand]:
    chain = [demand]
    cur: Optional[Demand] = demand
    while cur is not None and parents.get(cur) is not None:
        cur = parents[cur]
        chain.append(cur)
    chain.reverse()
    return chain


def full_inverse(system: System) -> System:
    """Rule-level full inversion of every rule of the system.

    The full inverter only ever demands full directions, so mapping it
    over all rules equals demand propagation rooted at every symbol.
    """
    rules = []
    symbols: dict[str, Symbol] = {}
    for rule in system.rules:
        sym = system.signature[rule.fn]
        demand = Demand.of(sym, (), range(1, sym.arity_out + 1))
        inverted = invert_rule(rule, demand, "full")
        rules.append(inverted.rule)
        isym = inverse_symbol(demand)
        symbols[isym.name] = isym
    for sym in system.constructor_symbols():
        symbols[sym.name] = sym
    return System(symbols, tuple(rules))
