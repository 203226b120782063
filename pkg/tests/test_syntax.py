"""Tests for parsing, printing, and LaTeX output."""

import pytest

from gensys import corpus_of

from ccsinv import corpus
from ccsinv.syntax import (
    ParseError,
    format_system,
    parse,
    parse_query,
    to_latex,
    try_parse,
)
from ccsinv.terms import alpha_equal, validate_system

ADD = "(VAR x y z) (RULES add(0,y) -> <y> add(s(x),y) -> <s(z)> <= add(x,y) -> <z>)"


class TestParse:
    def test_add_signature(self):
        system = parse(ADD)
        add = system.signature["add"]
        assert add.is_defined and (add.arity_in, add.arity_out) == (2, 1)
        assert system.signature["0"].arity == 0
        assert system.signature["s"].arity == 1
        assert len(system.rules) == 2
        assert not validate_system(system)

    def test_nullary_everything(self):
        system = parse("(VAR) (RULES f -> <>)")
        sym = system.signature["f"]
        assert (sym.arity_in, sym.arity_out) == (0, 0)
        assert system.rules[0].params == () and system.rules[0].results == ()

    def test_defined_symbol_inside_term(self):
        text = "(VAR x) (RULES f(x) -> <g(x)> g(x) -> <x>)"
        with pytest.raises(ParseError, match="defined symbol g used inside a term"):
            parse(text)

    def test_variable_with_arguments(self):
        with pytest.raises(ParseError, match="variable x used with arguments"):
            parse("(VAR x) (RULES f(x(x)) -> <x>)")

    def test_tuple_width_mismatch(self):
        with pytest.raises(ParseError, match="output tuple width"):
            parse("(VAR x) (RULES f(x) -> <x> f(x) -> <x,x>)")

    def test_arity_conflict(self):
        with pytest.raises(ParseError, match="constructor c used with"):
            parse("(VAR x) (RULES f(c) -> <c(x)>)")

    def test_condition_head_is_declared_constructor(self):
        with pytest.raises(ParseError, match="condition head c is a declared constructor"):
            parse("(VAR x) (CONSTRUCTORS c) (RULES f(x) -> <x> <= c(x) -> <x>)")

    def test_variable_at_rule_head(self):
        with pytest.raises(ParseError, match="variable x used as a rule head"):
            parse("(VAR x) (RULES x(x) -> <x>)")

    def test_ioset_out_of_range_with_base(self):
        text = ("(VAR x y z) (RULES add(0,y) -> <y> "
                "add{3}{1}(x,y) -> <z> <= add{3}{1}(x,y) -> <z>)")
        with pytest.raises(ParseError, match="out of range for add"):
            parse(text)

    def test_ioset_width_must_match_arity(self):
        with pytest.raises(ParseError, match="io-set selects 2 positions"):
            parse("(VAR x) (RULES f{1}{1}(x) -> <x>)")

    def test_ioset_without_base_weak_check(self):
        with pytest.raises(ParseError, match="out of range for the symbol's arities"):
            parse("(VAR x y) (RULES f{9}{}(x) -> <y> <= f{9}{}(x) -> <y>)")

    def test_ioset_ok_without_base(self):
        system = parse("(VAR x y) (RULES f{2}{1}(x,y) -> <x>)")
        assert "f{2}{1}" in system.signature

    def test_comments_and_whitespace(self):
        system = parse("% header\n(VAR x % inline\n) (RULES\nf(x)->\n<x>\n)")
        assert len(system.rules) == 1

    def test_missing_var_block(self):
        with pytest.raises(ParseError, match="expected a VAR block"):
            parse("(RULES f -> <>)")

    def test_error_positions_inside_text(self):
        text = "(VAR x)\n(RULES f(x) -> <y>\n  g(!) -> <x> <= f(#) -> <x>)"
        system, diags = try_parse(text)
        assert system is None and diags
        lines = text.split("\n")
        for d in diags:
            assert 1 <= d.line <= len(lines)
            assert 1 <= d.column <= len(lines[d.line - 1]) + 1

    def test_io_suffix_forbidden_inside_terms(self):
        with pytest.raises(ParseError, match="only allowed on rule and condition heads"):
            parse("(VAR x) (RULES f(c{1}{1}) -> <x>)")


class TestPrint:
    def test_canonical_empty(self):
        assert format_system(parse("(VAR) (RULES )")) == "(VAR)\n(RULES\n)"

    def test_print_is_fixpoint(self):
        once = format_system(parse(ADD))
        assert format_system(parse(once)) == once

    def test_add_layout(self):
        text = format_system(parse(ADD))
        assert "add(s(x),y) -> <s(z)> <= add(x,y) -> <z>" in text
        assert text.startswith("(VAR x y z)\n(RULES\n")

    def test_declared_constructors_survive(self):
        text = format_system(corpus.load("rem"))
        assert "(CONSTRUCTORS a b nil)" in text
        reparsed = parse(text)
        assert {"a", "b", "nil"} <= set(reparsed.signature)

    def test_roundtrip_examples(self):
        for name in corpus.names():
            system = corpus.load(name)
            assert alpha_equal(parse(format_system(system)), system)

    def test_roundtrip_generated(self):
        for system in corpus_of(40):
            text = format_system(system)
            back = parse(text)
            assert alpha_equal(back, system), text
            assert format_system(back) == text


class TestQueries:
    def test_ground_query(self):
        system = parse(ADD)
        fn, args = parse_query("add(s(0),s(s(0)))", system)
        assert fn == "add" and len(args) == 2

    def test_unknown_symbol(self):
        system = parse(ADD)
        with pytest.raises(ParseError, match="unknown function symbol"):
            parse_query("sub(0,0)", system)

    def test_unknown_constructor_argument(self):
        system = parse(ADD)
        with pytest.raises(ParseError, match="unknown symbol q"):
            parse_query("add(q,0)", system)

    def test_arity_checked(self):
        system = parse(ADD)
        with pytest.raises(ParseError, match="takes 2 arguments"):
            parse_query("add(0)", system)

    def test_inverted_names_are_queryable(self, rem_system):
        from ccsinv.inversion import InversionTask, invert_system
        produced = invert_system(
            rem_system, InversionTask.of(rem_system, "rem", [], [1, 2], "full")).produced
        fn, args = parse_query("rem{}{1,2}(a,nil)", produced)
        assert fn == "rem{}{1,2}"


class TestLatex:
    def test_add_line(self):
        out = to_latex(parse(ADD))
        assert out.startswith("\\begin{align*}")
        assert "add(0,y) \\to \\langle y \\rangle" in out
        assert "\\Leftarrow add(x,y) \\to \\langle z \\rangle" in out

    def test_empty_tuple(self):
        out = to_latex(parse("(VAR) (RULES f -> <>)"))
        assert "f \\to \\langle \\rangle" in out

    def test_io_suffix_as_sub_and_superscript(self):
        system = parse("(VAR y) (RULES ack{1}{1}(0,s(y)) -> <y>)")
        out = to_latex(system)
        assert "ack_{\\{1\\}}^{\\{1\\}}(0,s(y)) \\to \\langle y \\rangle" in out

    def test_underscores_escaped(self):
        out = to_latex(parse("(VAR x) (RULES ack_2(x) -> <x>)"))
        assert "ack\\_2(x)" in out
