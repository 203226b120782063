"""Terms, rules, and systems for conditional constructor rewriting.

Everything in this module is immutable and freely shareable; no function
mutates its arguments.  Variables are whatever the surrounding system
declared as variables -- there is no casing convention, so ``Var`` vs.
``App`` is decided at parse time and carried structurally from then on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

CONSTRUCTOR = "constructor"
DEFINED = "defined"


class ArityError(ValueError):
    """Lengths of a tuple operation disagree -- a caller bug, not a match failure."""


@dataclass(frozen=True, slots=True)
class Symbol:
    """A signature entry: either a constructor or a defined function symbol."""

    name: str
    kind: str
    arity_in: int = 0
    arity_out: int = 0

    @classmethod
    def constructor(cls, name: str, arity: int = 0) -> "Symbol":
        return cls(name, CONSTRUCTOR, arity, 0)

    @classmethod
    def defined(cls, name: str, arity_in: int, arity_out: int) -> "Symbol":
        return cls(name, DEFINED, arity_in, arity_out)

    @property
    def is_defined(self) -> bool:
        return self.kind == DEFINED

    @property
    def arity(self) -> int:
        """Constructor arity (same slot as arity_in)."""
        return self.arity_in


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class App:
    ctor: str
    args: tuple["Term", ...] = ()


Term = Union[Var, App]

#: Substitutions are plain dicts from variable name to term.
Subst = dict


@dataclass(frozen=True, slots=True)
class Condition:
    """An oriented condition ``fn(args) -> <results>``."""

    fn: str
    args: tuple[Term, ...]
    results: tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class Rule:
    """``fn(params) -> <results> <= conditions``."""

    fn: str
    params: tuple[Term, ...]
    results: tuple[Term, ...]
    conditions: tuple[Condition, ...] = ()


@dataclass(frozen=True)
class System:
    """A signature plus an ordered list of rules."""

    signature: Mapping[str, Symbol]
    rules: tuple[Rule, ...]

    def symbol(self, name: str) -> Symbol:
        return self.signature[name]

    def has_symbol(self, name: str) -> bool:
        return name in self.signature

    def defined_symbols(self) -> list[Symbol]:
        return [s for s in self.signature.values() if s.is_defined]

    def constructor_symbols(self) -> list[Symbol]:
        return [s for s in self.signature.values() if not s.is_defined]

    def rules_of(self, fn: str) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.fn == fn)


# ---------- variables and substitution ----------


def vars_of(term: Term) -> set[str]:
    out: set[str] = set()
    _collect_vars(term, out)
    return out


def vars_of_all(terms: Iterable[Term]) -> set[str]:
    out: set[str] = set()
    for t in terms:
        _collect_vars(t, out)
    return out


def _collect_vars(term: Term, out: set[str]) -> None:
    if isinstance(term, Var):
        out.add(term.name)
    else:
        for a in term.args:
            _collect_vars(a, out)


def iter_vars_in_order(terms: Iterable[Term]) -> Iterator[str]:
    """Variable names in first-occurrence order, with repeats."""
    for t in terms:
        if isinstance(t, Var):
            yield t.name
        else:
            yield from iter_vars_in_order(t.args)


def rule_terms(rule: Rule) -> Iterator[Term]:
    """All terms of a rule in textual order: params, results, conditions."""
    yield from rule.params
    yield from rule.results
    for c in rule.conditions:
        yield from c.args
        yield from c.results


def rule_vars(rule: Rule) -> list[str]:
    """Distinct variable names of a rule in first-occurrence (textual) order."""
    seen: list[str] = []
    have: set[str] = set()
    for name in iter_vars_in_order(rule_terms(rule)):
        if name not in have:
            have.add(name)
            seen.append(name)
    return seen


def is_ground(term: Term) -> bool:
    if isinstance(term, Var):
        return False
    return all(is_ground(a) for a in term.args)


def substitute(subst: Subst, term: Term) -> Term:
    if isinstance(term, Var):
        return subst.get(term.name, term)
    if not term.args:
        return term
    return App(term.ctor, tuple(substitute(subst, a) for a in term.args))


def substitute_all(subst: Subst, terms: Iterable[Term]) -> tuple[Term, ...]:
    return tuple(substitute(subst, t) for t in terms)


def substitute_rule(subst: Subst, rule: Rule) -> Rule:
    return Rule(
        rule.fn,
        substitute_all(subst, rule.params),
        substitute_all(subst, rule.results),
        tuple(
            Condition(c.fn, substitute_all(subst, c.args), substitute_all(subst, c.results))
            for c in rule.conditions
        ),
    )


def compose(first: Subst, second: Subst) -> Subst:
    """Substitution applying ``first`` then ``second`` in one step."""
    out = {name: substitute(second, t) for name, t in first.items()}
    for name, t in second.items():
        if name not in out:
            out[name] = t
    return out


# ---------- matching ----------


def match(pattern: Term, subject: Term, subst: Optional[Subst] = None) -> Optional[Subst]:
    """Match ``pattern`` against a ground ``subject``.

    Returns the (extended) substitution on success, ``None`` on mismatch.
    An inconsistent repeat of a variable is a mismatch, not an error.
    """
    if not is_ground(subject):
        raise ValueError("match subject must be ground")
    out = dict(subst) if subst else {}
    if _match_into(pattern, subject, out):
        return out
    return None


def match_tuple(
    patterns: Iterable[Term],
    subjects: Iterable[Term],
    subst: Optional[Subst] = None,
) -> Optional[Subst]:
    """Simultaneously match a tuple of patterns under one substitution."""
    patterns = tuple(patterns)
    subjects = tuple(subjects)
    if len(patterns) != len(subjects):
        raise ArityError(
            f"match_tuple: {len(patterns)} patterns vs {len(subjects)} subjects"
        )
    for s in subjects:
        if not is_ground(s):
            raise ValueError("match subjects must be ground")
    out = dict(subst) if subst else {}
    for p, s in zip(patterns, subjects):
        if not _match_into(p, s, out):
            return None
    return out


def _match_into(pattern: Term, subject: Term, subst: Subst) -> bool:
    if isinstance(pattern, Var):
        bound = subst.get(pattern.name)
        if bound is None:
            subst[pattern.name] = subject
            return True
        return bound == subject
    if isinstance(subject, Var):
        return False
    if pattern.ctor != subject.ctor or len(pattern.args) != len(subject.args):
        return False
    return all(_match_into(p, s, subst) for p, s in zip(pattern.args, subject.args))


# ---------- unification ----------


def unify(t1: Term, t2: Term) -> Optional[Subst]:
    """Most general unifier of two terms, with occurs check. ``None`` if none exists."""
    return unify_tuples((t1,), (t2,))


def unify_tuples(ts1: Iterable[Term], ts2: Iterable[Term]) -> Optional[Subst]:
    ts1 = tuple(ts1)
    ts2 = tuple(ts2)
    if len(ts1) != len(ts2):
        raise ArityError(f"unify_tuples: {len(ts1)} vs {len(ts2)} terms")
    binding: Subst = {}
    work = list(zip(ts1, ts2))
    while work:
        a, b = work.pop()
        a = _walk(a, binding)
        b = _walk(b, binding)
        if isinstance(a, Var) and isinstance(b, Var) and a.name == b.name:
            continue
        if isinstance(a, Var):
            if _occurs(a.name, b, binding):
                return None
            binding[a.name] = b
        elif isinstance(b, Var):
            if _occurs(b.name, a, binding):
                return None
            binding[b.name] = a
        else:
            if a.ctor != b.ctor or len(a.args) != len(b.args):
                return None
            work.extend(zip(a.args, b.args))
    return _resolve(binding)


def _walk(term: Term, binding: Subst) -> Term:
    while isinstance(term, Var) and term.name in binding:
        term = binding[term.name]
    return term


def _occurs(name: str, term: Term, binding: Subst) -> bool:
    term = _walk(term, binding)
    if isinstance(term, Var):
        return term.name == name
    return any(_occurs(name, a, binding) for a in term.args)


def _resolve(binding: Subst) -> Subst:
    """Back-substitute a triangular binding into an idempotent substitution."""

    def deep(term: Term) -> Term:
        term = _walk(term, binding)
        if isinstance(term, Var):
            return term
        if not term.args:
            return term
        return App(term.ctor, tuple(deep(a) for a in term.args))

    return {name: deep(Var(name)) for name in binding}


# ---------- renaming and alpha equivalence ----------


def rename_apart(rule: Rule, avoid: Iterable[str]) -> Rule:
    """Rename the rule's variables away from ``avoid``.

    Deterministic: a colliding name gets the smallest positive integer
    suffix that is free w.r.t. ``avoid``, the rule's own variables, and
    names already assigned.
    """
    avoid = set(avoid)
    own = rule_vars(rule)
    taken = avoid | set(own)
    mapping: Subst = {}
    for name in own:
        if name in avoid:
            k = 1
            while f"{name}{k}" in taken:
                k += 1
            fresh = f"{name}{k}"
            taken.add(fresh)
            mapping[name] = Var(fresh)
    if not mapping:
        return rule
    return substitute_rule(mapping, rule)


def alpha_equal(a: Union[Rule, System], b: Union[Rule, System]) -> bool:
    """Structural equality up to a consistent bijective variable renaming.

    Rule order, condition order, and symbol names are significant.  For
    systems, the rule lists are compared pairwise; each rule carries its
    own variable scope.
    """
    if isinstance(a, System) and isinstance(b, System):
        if len(a.rules) != len(b.rules):
            return False
        return all(alpha_equal(ra, rb) for ra, rb in zip(a.rules, b.rules))
    if isinstance(a, Rule) and isinstance(b, Rule):
        if a.fn != b.fn or len(a.conditions) != len(b.conditions):
            return False
        fwd: dict[str, str] = {}
        bwd: dict[str, str] = {}
        pairs = [(a.params, b.params), (a.results, b.results)]
        for ca, cb in zip(a.conditions, b.conditions):
            if ca.fn != cb.fn:
                return False
            pairs.append((ca.args, cb.args))
            pairs.append((ca.results, cb.results))
        return all(
            len(ta) == len(tb)
            and all(_alpha_terms(x, y, fwd, bwd) for x, y in zip(ta, tb))
            for ta, tb in pairs
        )
    raise TypeError(f"alpha_equal: cannot compare {type(a).__name__} with {type(b).__name__}")


def _alpha_terms(a: Term, b: Term, fwd: dict[str, str], bwd: dict[str, str]) -> bool:
    if isinstance(a, Var) and isinstance(b, Var):
        if a.name in fwd:
            return fwd[a.name] == b.name and bwd.get(b.name) == a.name
        if b.name in bwd:
            return False
        fwd[a.name] = b.name
        bwd[b.name] = a.name
        return True
    if isinstance(a, Var) or isinstance(b, Var):
        return False
    if a.ctor != b.ctor or len(a.args) != len(b.args):
        return False
    return all(_alpha_terms(x, y, fwd, bwd) for x, y in zip(a.args, b.args))


# ---------- validation ----------


def validate_system(system: System) -> list[str]:
    """Well-formedness problems of a system, empty when none.

    Checks that every used symbol is in the signature with consistent kind
    and arity, and that rule bodies are constructor terms (defined symbols
    only at rule and condition roots).
    """
    problems: list[str] = []
    sig = system.signature
    for sym in sig.values():
        if sym.kind not in (CONSTRUCTOR, DEFINED):
            problems.append(f"symbol {sym.name}: unknown kind {sym.kind!r}")

    def check_term(t: Term, where: str) -> None:
        if isinstance(t, Var):
            return
        sym = sig.get(t.ctor)
        if sym is None:
            problems.append(f"{where}: symbol {t.ctor} not in signature")
        elif sym.is_defined:
            problems.append(f"{where}: defined symbol {t.ctor} used inside a term")
        elif sym.arity != len(t.args):
            problems.append(
                f"{where}: {t.ctor} used with {len(t.args)} args, arity is {sym.arity}"
            )
        for a in t.args:
            check_term(a, where)

    def check_call(fn: str, args: tuple, results: tuple, where: str) -> None:
        sym = sig.get(fn)
        if sym is None or not sym.is_defined:
            problems.append(f"{where}: head {fn} is not a defined symbol")
            return
        if sym.arity_in != len(args):
            problems.append(f"{where}: {fn} takes {sym.arity_in} inputs, got {len(args)}")
        if sym.arity_out != len(results):
            problems.append(f"{where}: {fn} returns {sym.arity_out} outputs, got {len(results)}")

    for i, rule in enumerate(system.rules, start=1):
        where = f"rule {i}"
        check_call(rule.fn, rule.params, rule.results, where)
        for t in rule.params + rule.results:
            check_term(t, where)
        for j, c in enumerate(rule.conditions, start=1):
            cwhere = f"rule {i} condition {j}"
            check_call(c.fn, c.args, c.results, cwhere)
            for t in c.args + c.results:
                check_term(t, cwhere)
    return problems
