"""Tests for the paradigm property analysis."""

import random

from gensys import corpus_of

from ccsinv import corpus
from ccsinv.diagnostics import PROPERTIES, analyze, compare
from ccsinv.inversion import InversionTask, invert_system
from ccsinv.syntax import parse
from ccsinv.terms import Var, rename_apart, substitute_rule, System


def _inverted(system, fn, ins, outs, kind):
    return invert_system(system, InversionTask.of(system, fn, ins, outs, kind)).produced


class TestAnalyze:
    def test_add_functional_not_reversible(self, add_system):
        report = analyze(add_system)
        assert report["functional"]
        assert not report["reversible"]
        # its full inverse has unifiable heads, which the witness names
        details = " ".join(w.detail for w in report.witnesses["reversible"])
        assert "full inverse" in details and "unifiable" in details

    def test_subtraction_functional_not_reversible(self, add_system):
        sub = _inverted(add_system, "add", [1], [1], "partial")
        report = analyze(sub)
        assert report["functional"]
        assert not report["reversible"]

    def test_partial_ack_overlap_witness(self, ack_system):
        inv = _inverted(ack_system, "ack", [1], [1], "partial")
        report = analyze(inv)
        assert not report["non-overlapping"]
        pairs = [w.rules for w in report.witnesses["non-overlapping"]]
        assert pairs == [(2, 3)]
        assert "ack{1}{1}" in report.witnesses["non-overlapping"][0].detail

    def test_second_direction_not_left_linear(self, ack_system):
        inv = _inverted(ack_system, "ack", [2], [1], "partial")
        report = analyze(inv)
        assert not report["left-linear"]
        assert any("y" in w.detail for w in report.witnesses["left-linear"])

    def test_every_no_has_a_witness(self):
        for system in corpus_of(30, seed=99):
            report = analyze(system)
            for prop in PROPERTIES:
                if not report[prop]:
                    assert report.witnesses.get(prop), prop

    def test_erasing_rule_detected(self):
        report = analyze(parse("(VAR x y) (RULES f(x,y) -> <x>)"))
        assert not report["non-erasing"]

    def test_nondeterministic_conditions_detected(self):
        report = analyze(parse("(VAR x y z) (RULES f(x) -> <y> <= g(z) -> <y>  g(0) -> <0>)"))
        assert not report["deterministic-conditions"]
        assert not report["functional"]

    def test_ev_free_implies_deterministic(self):
        for system in corpus_of(60, seed=31337):
            report = analyze(system)
            if report["EV-free"]:
                assert report["deterministic-conditions"]

    def test_alpha_invariant(self):
        rng = random.Random(7)
        for system in corpus_of(20, seed=5150):
            renamed_rules = []
            for rule in system.rules:
                avoid = {f"r{rng.randint(0, 50)}"}
                renamed_rules.append(rename_apart(
                    substitute_rule({v: Var(v + "q") for v in _rule_var_names(rule)}, rule),
                    avoid))
            other = System(system.signature, tuple(renamed_rules))
            assert analyze(other).values == analyze(system).values


def _rule_var_names(rule):
    from ccsinv.terms import rule_vars
    return rule_vars(rule)


class TestCompare:
    def test_orig_vs_partial_columns(self, add_system):
        sub = _inverted(add_system, "add", [1], [1], "partial")
        table = compare([("ORIG", add_system), ("PART", sub)])
        assert table.rows == PROPERTIES
        assert [label for label, _ in table.columns] == ["ORIG", "PART"]
        assert all(rep["functional"] for _, rep in table.columns)

    def test_single_column(self, rem_system):
        table = compare([("ORIG", rem_system)])
        assert len(table.columns) == 1

    def test_overlap_row_differs(self, ack_system):
        inv = _inverted(ack_system, "ack", [1], [1], "partial")
        table = compare([("ORIG", ack_system), ("PART", inv)])
        values = {label: rep["non-overlapping"] for label, rep in table.columns}
        assert values == {"ORIG": True, "PART": False}

    def test_render_is_aligned(self, add_system):
        table = compare([("ORIG", add_system)])
        text = table.render()
        lines = text.splitlines()
        assert lines[0].split() == ["ORIG"]
        assert any(line.startswith("functional") and line.endswith("yes") for line in lines)

    def test_serialization_shape(self, add_system):
        table = compare([("ORIG", add_system)])
        blob = table.to_dict()
        assert set(blob["columns"]) == {"ORIG"}
        assert blob["columns"]["ORIG"]["functional"]["value"] == "yes"
        assert blob["columns"]["ORIG"]["reversible"]["value"] == "no"
