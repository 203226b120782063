"""Textual format for conditional constructor systems.

The container follows the confluence-competition style::

    (VAR x y z)
    (CONSTRUCTORS nil a b)      % optional
    (RULES
    add(0,y) -> <y>
    add(s(x),y) -> <s(z)> <= add(x,y) -> <z>
    )

``%`` starts a line comment.  Output tuples are written ``<t,...>``.
Defined identifiers may carry an index-set suffix of the shape
``{i,...}{j,...}`` (e.g. ``rem{}{1,2}``), which is part of the symbol name
and is validated against arities.  Variables are exactly the names listed
in the VAR block; everything else is classified by position: rule and
condition heads are defined symbols, all other identifiers are
constructors with arity inferred from first use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .terms import (
    App,
    Condition,
    Rule,
    Symbol,
    System,
    Term,
    Var,
    vars_of_all,
)

IDENT_RE = re.compile(r"[A-Za-z0-9_'!:]+")


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" | "warning"
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        first = diagnostics[0] if diagnostics else None
        super().__init__(str(first) if first else "parse error")


# ---------- lexer ----------

LPAREN, RPAREN, LANGLE, RANGLE, LBRACE, RBRACE = "( ) < > { }".split()
COMMA, ARROW, COND, IDENT, EOF = ", -> <= ident eof".split()


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in "()<>{},":
            if ch == "<" and i + 1 < n and text[i + 1] == "=":
                toks.append(_Tok(COND, "<=", line, col))
                i += 2
                col += 2
                continue
            kind = {"(": LPAREN, ")": RPAREN, "<": LANGLE, ">": RANGLE,
                    "{": LBRACE, "}": RBRACE, ",": COMMA}[ch]
            toks.append(_Tok(kind, ch, line, col))
            i += 1
            col += 1
            continue
        if ch == "-":
            if i + 1 < n and text[i + 1] == ">":
                toks.append(_Tok(ARROW, "->", line, col))
                i += 2
                col += 2
                continue
            raise ParseError([ParseDiagnostic("error", line, col, "expected '->'")])
        m = IDENT_RE.match(text, i)
        if m:
            toks.append(_Tok(IDENT, m.group(), line, col))
            col += m.end() - i
            i = m.end()
            continue
        raise ParseError([ParseDiagnostic("error", line, col, f"unexpected character {ch!r}")])
    toks.append(_Tok(EOF, "", line, col))
    return toks


# ---------- raw parse trees ----------


@dataclass
class _RTerm:
    name: str
    args: Optional[list["_RTerm"]]  # None: written without parentheses
    line: int
    col: int


@dataclass
class _RCall:
    name: str  # full name including any io-set suffix
    base: str
    groups: list[list[int]]
    args: list[_RTerm]
    line: int
    col: int


@dataclass
class _RRule:
    head: _RCall
    outs: list[_RTerm]
    conds: list[tuple[_RCall, list[_RTerm]]]


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok: _Tok, msg: str) -> "ParseError":
        return ParseError([ParseDiagnostic("error", tok.line, tok.col, msg)])

    def expect(self, kind: str, what: str) -> _Tok:
        t = self.next()
        if t.kind != kind:
            raise self.fail(t, f"expected {what}, found {t.text!r}" if t.text else f"expected {what}")
        return t

    def block_header(self) -> str:
        self.expect(LPAREN, "'('")
        t = self.expect(IDENT, "block name")
        return t.text

    def parse_file(self) -> tuple[list[_Tok], list[_Tok], list[_RRule]]:
        tok = self.peek()
        name = self.block_header()
        if name != "VAR":
            raise self.fail(tok, f"expected a VAR block first, found {name!r}")
        var_toks = self.idents_until_rparen()
        ctor_toks: list[_Tok] = []
        tok = self.peek()
        name = self.block_header()
        if name == "CONSTRUCTORS":
            ctor_toks = self.idents_until_rparen()
            tok = self.peek()
            name = self.block_header()
        if name != "RULES":
            raise self.fail(tok, f"expected a RULES block, found {name!r}")
        rules: list[_RRule] = []
        while self.peek().kind != RPAREN:
            rules.append(self.parse_rule())
        self.next()  # RPAREN
        t = self.peek()
        if t.kind != EOF:
            raise self.fail(t, "unexpected content after the RULES block")
        return var_toks, ctor_toks, rules

    def idents_until_rparen(self) -> list[_Tok]:
        out = []
        while True:
            t = self.next()
            if t.kind == RPAREN:
                return out
            if t.kind != IDENT:
                raise self.fail(t, f"expected an identifier or ')', found {t.text!r}")
            out.append(t)

    def parse_rule(self) -> _RRule:
        head = self.parse_call()
        self.expect(ARROW, "'->'")
        outs = self.parse_tuple()
        conds: list[tuple[_RCall, list[_RTerm]]] = []
        if self.peek().kind == COND:
            self.next()
            while True:
                call = self.parse_call()
                self.expect(ARROW, "'->'")
                couts = self.parse_tuple()
                conds.append((call, couts))
                if self.peek().kind == COMMA:
                    self.next()
                    continue
                break
        return _RRule(head, outs, conds)

    def parse_call(self) -> _RCall:
        t = self.expect(IDENT, "a function symbol")
        groups: list[list[int]] = []
        name = t.text
        while self.peek().kind == LBRACE:
            groups.append(self.parse_ioset())
        if groups:
            name += "".join("{" + ",".join(map(str, g)) + "}" for g in groups)
        if len(groups) % 2 != 0:
            raise self.fail(t, f"{name!r}: io-set suffix needs an input and an output index set")
        args: list[_RTerm] = []
        if self.peek().kind == LPAREN:
            self.next()
            args.append(self.parse_term())
            while self.peek().kind == COMMA:
                self.next()
                args.append(self.parse_term())
            self.expect(RPAREN, "')'")
        return _RCall(name, t.text, groups, args, t.line, t.col)

    def parse_ioset(self) -> list[int]:
        self.next()  # LBRACE
        out: list[int] = []
        if self.peek().kind == RBRACE:
            self.next()
            return out
        while True:
            t = self.expect(IDENT, "an index")
            if not t.text.isdigit():
                raise self.fail(t, f"io-set index must be a number, found {t.text!r}")
            idx = int(t.text)
            if idx < 1:
                raise self.fail(t, "io-set indices are 1-based")
            if out and idx <= out[-1]:
                raise self.fail(t, "io-set indices must be strictly ascending")
            out.append(idx)
            t = self.next()
            if t.kind == RBRACE:
                return out
            if t.kind != COMMA:
                raise self.fail(t, f"expected ',' or '}}', found {t.text!r}")

    def parse_tuple(self) -> list[_RTerm]:
        self.expect(LANGLE, "'<'")
        out: list[_RTerm] = []
        if self.peek().kind == RANGLE:
            self.next()
            return out
        out.append(self.parse_term())
        while self.peek().kind == COMMA:
            self.next()
            out.append(self.parse_term())
        self.expect(RANGLE, "'>'")
        return out

    def parse_term(self) -> _RTerm:
        t = self.expect(IDENT, "a term")
        if self.peek().kind == LBRACE:
            raise self.fail(self.peek(), "io-set suffixes are only allowed on rule and condition heads")
        if self.peek().kind != LPAREN:
            return _RTerm(t.text, None, t.line, t.col)
        self.next()
        args = [self.parse_term()]
        while self.peek().kind == COMMA:
            self.next()
            args.append(self.parse_term())
        self.expect(RPAREN, "')'")
        return _RTerm(t.text, args, t.line, t.col)


# ---------- resolution ----------


class _Resolver:
    def __init__(self, var_toks: list[_Tok], ctor_toks: list[_Tok], rules: list[_RRule]):
        self.var_names = {t.text for t in var_toks}
        self.declared_ctors = {t.text: t for t in ctor_toks}
        self.raw_rules = rules
        self.errors: list[ParseDiagnostic] = []
        self.ctor_arity: dict[str, tuple[int, _Tok]] = {}
        # defined name -> (arity_in, arity_out, first occurrence)
        self.defined: dict[str, tuple[int, int, _RCall]] = {}

    def error(self, line: int, col: int, msg: str) -> None:
        self.errors.append(ParseDiagnostic("error", line, col, msg))

    def resolve(self) -> System:
        for t in self.declared_ctors.values():
            if t.text in self.var_names:
                self.error(t.line, t.col, f"{t.text} is declared both as a variable and a constructor")

        heads = [(r.head, r.outs, True) for r in self.raw_rules]
        for r in self.raw_rules:
            heads.extend((call, outs, False) for call, outs in r.conds)
        for call, outs, is_rule_head in heads:
            where = "rule head" if is_rule_head else "condition head"
            if call.name in self.var_names:
                self.error(call.line, call.col, f"variable {call.name} used as a {where}")
                continue
            if call.name in self.declared_ctors:
                self.error(call.line, call.col, f"{where} {call.name} is a declared constructor")
                continue
            known = self.defined.get(call.name)
            if known is None:
                self.defined[call.name] = (len(call.args), len(outs), call)
            else:
                n_in, n_out, _ = known
                if n_in != len(call.args):
                    self.error(call.line, call.col,
                               f"{call.name} used with {len(call.args)} arguments, previously {n_in}")
                if n_out != len(outs):
                    self.error(call.line, call.col,
                               f"{call.name}: output tuple width {len(outs)}, previously {n_out}")

        rules = tuple(self.build_rule(r) for r in self.raw_rules)
        self.check_iosets()
        if self.errors:
            raise ParseError(self.errors)

        signature: dict[str, Symbol] = {}
        for name, (n_in, n_out, _) in self.defined.items():
            signature[name] = Symbol.defined(name, n_in, n_out)
        for name, (arity, _) in self.ctor_arity.items():
            signature[name] = Symbol.constructor(name, arity)
        for name in self.declared_ctors:
            if name not in signature:
                signature[name] = Symbol.constructor(name, 0)
        return System(signature, rules)

    def build_rule(self, raw: _RRule) -> Rule:
        params = tuple(self.build_term(t) for t in raw.head.args)
        results = tuple(self.build_term(t) for t in raw.outs)
        conds = tuple(
            Condition(call.name,
                      tuple(self.build_term(t) for t in call.args),
                      tuple(self.build_term(t) for t in outs))
            for call, outs in raw.conds
        )
        return Rule(raw.head.name, params, results, conds)

    def build_term(self, raw: _RTerm) -> Term:
        nargs = 0 if raw.args is None else len(raw.args)
        if raw.name in self.var_names:
            if nargs:
                self.error(raw.line, raw.col, f"variable {raw.name} used with arguments")
            return Var(raw.name)
        if raw.name in self.defined:
            self.error(raw.line, raw.col, f"defined symbol {raw.name} used inside a term")
        known = self.ctor_arity.get(raw.name)
        if known is None:
            self.ctor_arity[raw.name] = (nargs, _Tok(IDENT, raw.name, raw.line, raw.col))
        elif known[0] != nargs:
            self.error(raw.line, raw.col,
                       f"constructor {raw.name} used with {nargs} arguments, previously {known[0]}")
        args = () if raw.args is None else tuple(self.build_term(a) for a in raw.args)
        return App(raw.name, args)

    def check_iosets(self) -> None:
        for name, (n_in, n_out, call) in self.defined.items():
            if not call.groups:
                continue
            ins, outs = call.groups[-2], call.groups[-1]
            base = call.name[: len(call.name) - len(
                "{" + ",".join(map(str, ins)) + "}{" + ",".join(map(str, outs)) + "}")]
            if len(ins) + len(outs) != n_in:
                self.error(call.line, call.col,
                           f"{name}: io-set selects {len(ins) + len(outs)} positions "
                           f"but the symbol takes {n_in} inputs")
                continue
            known = self.defined.get(base)
            if known is not None:
                b_in, b_out, _ = known
                bad_i = [i for i in ins if i > b_in]
                bad_o = [j for j in outs if j > b_out]
                if bad_i or bad_o:
                    self.error(call.line, call.col,
                               f"{name}: io-set index out of range for {base} "
                               f"({b_in} inputs, {b_out} outputs)")
            else:
                top = (max(ins) if ins else 0) + (max(outs) if outs else 0)
                if top > n_in + n_out:
                    self.error(call.line, call.col,
                               f"{name}: io-set index out of range for the symbol's arities")


def parse(text: str) -> System:
    """Parse a source text into a well-formed system; raises ParseError."""
    toks = _lex(text)
    var_toks, ctor_toks, raw_rules = _Parser(toks).parse_file()
    return _Resolver(var_toks, ctor_toks, raw_rules).resolve()


def try_parse(text: str) -> tuple[Optional[System], list[ParseDiagnostic]]:
    try:
        return parse(text), []
    except ParseError as e:
        return None, e.diagnostics


# ---------- queries ----------


def parse_query(text: str, system: System) -> tuple[str, tuple[Term, ...]]:
    """Parse ``f(t,...)`` as a ground call against a system's signature."""
    toks = _lex(text)
    p = _Parser(toks)
    call = p.parse_call()
    t = p.peek()
    if t.kind != EOF:
        raise p.fail(t, "unexpected content after the query")
    sym = system.signature.get(call.name)
    if sym is None or not sym.is_defined:
        raise ParseError([ParseDiagnostic("error", call.line, call.col,
                                          f"unknown function symbol {call.name}")])
    if len(call.args) != sym.arity_in:
        raise ParseError([ParseDiagnostic("error", call.line, call.col,
                                          f"{call.name} takes {sym.arity_in} arguments, got {len(call.args)}")])
    errors: list[ParseDiagnostic] = []

    def ground(raw: _RTerm) -> Term:
        nargs = 0 if raw.args is None else len(raw.args)
        sym = system.signature.get(raw.name)
        if sym is None:
            errors.append(ParseDiagnostic("error", raw.line, raw.col, f"unknown symbol {raw.name}"))
        elif sym.is_defined:
            errors.append(ParseDiagnostic("error", raw.line, raw.col,
                                          f"defined symbol {raw.name} inside a query argument"))
        elif sym.arity != nargs:
            errors.append(ParseDiagnostic("error", raw.line, raw.col,
                                          f"{raw.name} takes {sym.arity} arguments, got {nargs}"))
        return App(raw.name, () if raw.args is None else tuple(ground(a) for a in raw.args))

    args = tuple(ground(a) for a in call.args)
    if errors:
        raise ParseError(errors)
    return call.name, args


# ---------- printing ----------


def format_term(term: Term) -> str:
    # iterative: evaluation results (e.g. unary numerals) can be very deep
    parts: list[str] = []
    stack: list = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, str):
            parts.append(t)
        elif isinstance(t, Var):
            parts.append(t.name)
        elif not t.args:
            parts.append(t.ctor)
        else:
            parts.append(t.ctor + "(")
            stack.append(")")
            for k in range(len(t.args) - 1, -1, -1):
                stack.append(t.args[k])
                if k:
                    stack.append(",")
    return "".join(parts)


def format_tuple(terms: tuple[Term, ...]) -> str:
    return f"<{','.join(format_term(t) for t in terms)}>"


def format_call(fn: str, args: tuple[Term, ...]) -> str:
    if not args:
        return fn
    return f"{fn}({','.join(format_term(a) for a in args)})"


def format_rule(rule: Rule) -> str:
    line = f"{format_call(rule.fn, rule.params)} -> {format_tuple(rule.results)}"
    if rule.conditions:
        conds = ", ".join(
            f"{format_call(c.fn, c.args)} -> {format_tuple(c.results)}" for c in rule.conditions
        )
        line += f" <= {conds}"
    return line


def format_system(system: System) -> str:
    """Canonical text: sorted VAR block, rules in order, fixed spacing."""
    used_vars = sorted(vars_of_all(t for r in system.rules for t in _rule_terms(r)))
    used_ctors = _used_constructors(system)
    extra = sorted(
        s.name for s in system.constructor_symbols() if s.name not in used_ctors
    )
    lines = ["(VAR " + " ".join(used_vars) + ")" if used_vars else "(VAR)"]
    if extra:
        lines.append("(CONSTRUCTORS " + " ".join(extra) + ")")
    lines.append("(RULES")
    lines.extend(format_rule(r) for r in system.rules)
    lines.append(")")
    return "\n".join(lines)


def _rule_terms(rule: Rule):
    yield from rule.params
    yield from rule.results
    for c in rule.conditions:
        yield from c.args
        yield from c.results


def _used_constructors(system: System) -> set[str]:
    used: set[str] = set()

    def walk(t: Term) -> None:
        if isinstance(t, App):
            used.add(t.ctor)
            for a in t.args:
                walk(a)

    for r in system.rules:
        for t in _rule_terms(r):
            walk(t)
    return used


# ---------- LaTeX ----------

_SUFFIX_RE = re.compile(r"\{[0-9,]*\}")


def _latex_name(name: str) -> str:
    groups = _SUFFIX_RE.findall(name)
    base = name
    pairs: list[tuple[str, str]] = []
    if groups and len(groups) % 2 == 0 and name.endswith("".join(groups)):
        base = name[: len(name) - len("".join(groups))]
        pairs = [(groups[i][1:-1], groups[i + 1][1:-1]) for i in range(0, len(groups), 2)]
    out = base.replace("_", r"\_")
    for k, (ins, outs) in enumerate(pairs):
        if k > 0:
            out = "{" + out + "}"
        out += r"_{\{" + ins + r"\}}^{\{" + outs + r"\}}"
    return out


def _latex_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name.replace("_", r"\_")
    head = term.ctor.replace("_", r"\_")
    if not term.args:
        return head
    return f"{head}({','.join(_latex_term(a) for a in term.args)})"


def _latex_tuple(terms: tuple[Term, ...]) -> str:
    if not terms:
        return r"\langle \rangle"
    return r"\langle " + ",".join(_latex_term(t) for t in terms) + r" \rangle"


def _latex_call(fn: str, args: tuple[Term, ...]) -> str:
    head = _latex_name(fn)
    if not args:
        return head
    return f"{head}({','.join(_latex_term(a) for a in args)})"


def to_latex(system: System) -> str:
    """Render the rules as an align*-style environment, one rule per line."""
    lines = []
    for rule in system.rules:
        line = f"{_latex_call(rule.fn, rule.params)} \\to {_latex_tuple(rule.results)}"
        if rule.conditions:
            conds = ", ".join(
                f"{_latex_call(c.fn, c.args)} \\to {_latex_tuple(c.results)}"
                for c in rule.conditions
            )
            line += f" \\Leftarrow {conds}"
        lines.append("&" + line)
    body = " \\\\\n".join(lines)
    return "\\begin{align*}\n" + body + "\n\\end{align*}"
