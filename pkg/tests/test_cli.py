"""Tests for the command-line interface and its exit codes."""

import json

import pytest

from ccsinv import corpus
from ccsinv.cli import main
from ccsinv.inversion import registered_inverters
from ccsinv.syntax import parse


@pytest.fixture
def add_file(tmp_path):
    p = tmp_path / "add.ctrs"
    p.write_text(corpus.source("add"), "utf-8")
    return str(p)


@pytest.fixture
def ack_file(tmp_path):
    p = tmp_path / "ack.ctrs"
    p.write_text(corpus.source("ack"), "utf-8")
    return str(p)


class TestInvert:
    def test_partial_add(self, add_file, capsys):
        assert main(["invert", add_file, "--fn", "add",
                     "--in", "1", "--out", "1", "--inverter", "partial"]) == 0
        out = capsys.readouterr().out
        assert "add{1}{1}(s(x),s(z)) -> <y> <= add{1}{1}(x,z) -> <y>" in out

    def test_with_diagnostics_on_stderr(self, add_file, capsys):
        assert main(["invert", add_file, "--fn", "add", "--in", "1", "--out", "1",
                     "--inverter", "partial", "--with-diagnostics"]) == 0
        captured = capsys.readouterr()
        assert "ORIG" in captured.err and "PART" in captured.err
        assert "ORIG" not in captured.out

    def test_output_reparses_for_every_admissible_task(self, tmp_path, capsys):
        # self round-trip: everything `invert` prints, `check` accepts
        for name in ("rem", "add", "ack"):
            src = tmp_path / f"{name}.ctrs"
            src.write_text(corpus.source(name), "utf-8")
            system = corpus.load(name)
            fn = name
            sym = system.signature[fn]
            n, m = sym.arity_in, sym.arity_out
            subsets_in = [[], *[[i] for i in range(1, n + 1)], list(range(1, n + 1))]
            for kind in registered_inverters():
                for ins in subsets_in:
                    tasks = {
                        "trivial": [(list(range(1, n + 1)), [])],
                        "full": [([], list(range(1, m + 1)))],
                        "partial": [(ins, list(range(1, m + 1)))],
                        "semi": [(ins, [1]), (ins, [])],
                    }[kind]
                    for task_in, task_out in tasks:
                        rc = main(["invert", str(src), "--fn", fn,
                                   "--in", ",".join(map(str, task_in)),
                                   "--out", ",".join(map(str, task_out)),
                                   "--inverter", kind])
                        out = capsys.readouterr().out
                        assert rc == 0, (name, kind, task_in, task_out)
                        parse(out)

    def test_unknown_function_is_input_error(self, add_file, capsys):
        assert main(["invert", add_file, "--fn", "nope", "--in", "1", "--out", "1"]) == 1

    def test_inadmissible_task_is_input_error(self, add_file, capsys):
        assert main(["invert", add_file, "--fn", "add",
                     "--in", "1", "--out", "1", "--inverter", "full"]) == 1

    def test_deadlock_is_transformation_failure(self, tmp_path, capsys):
        src = tmp_path / "stuck.ctrs"
        src.write_text("(VAR x y z w) (RULES f(x) -> <y> <= g(x) -> <w,y>"
                       " g(z) -> <z,z>)", "utf-8")
        assert main(["invert", str(src), "--fn", "f",
                     "--in", "1", "--out", "1", "--inverter", "partial"]) == 2


class TestEval:
    def test_query_with_stats(self, ack_file, capsys):
        assert main(["eval", ack_file, "--query", "ack(s(0),s(s(0)))", "--stats"]) == 0
        out = capsys.readouterr().out
        assert "<s(s(s(s(0))))>" in out
        assert "rewrite steps" in out and "function calls" in out

    def test_budget_exhaustion_exit_code(self, ack_file, capsys, tmp_path):
        inv = tmp_path / "inv.ctrs"
        main(["invert", ack_file, "--fn", "ack", "--out", "1", "--inverter", "full"])
        inv.write_text(capsys.readouterr().out, "utf-8")
        rc = main(["eval", str(inv), "--query", "ack{}{1}(s(s(s(s(s(0))))))",
                   "--budget", "20000", "--stats"])
        assert rc == 3
        assert "exhausted" in capsys.readouterr().out

    def test_first_mode(self, ack_file, capsys):
        assert main(["eval", ack_file, "--query", "ack(s(0),0)", "--mode", "first"]) == 0
        assert capsys.readouterr().out.strip() == "<s(s(0))>"

    def test_trace_file(self, ack_file, tmp_path, capsys):
        out_file = tmp_path / "trace.json"
        assert main(["eval", ack_file, "--query", "ack(0,0)",
                     "--trace", str(out_file)]) == 0
        blob = json.loads(out_file.read_text("utf-8"))
        assert blob["function_calls"] >= 1 and blob["tree"]["goal"] == "ack(0,0)"

    def test_bad_query_is_input_error(self, ack_file, capsys):
        assert main(["eval", ack_file, "--query", "nope(0)"]) == 1

    def test_narrowing_system_is_input_error(self, tmp_path, capsys):
        src = tmp_path / "narrow.ctrs"
        src.write_text("(VAR x y z) (RULES f(x) -> <x> <= g(y) -> <z> g(0) -> <0>)", "utf-8")
        assert main(["eval", str(src), "--query", "f(0)"]) == 1
        assert "unbound variable" in capsys.readouterr().err


class TestOtherCommands:
    def test_check_parse_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.ctrs"
        bad.write_text("(RULES f -> <>)", "utf-8")
        assert main(["check", str(bad)]) == 1
        assert "expected a VAR block" in capsys.readouterr().err

    def test_check_report(self, add_file, capsys):
        assert main(["check", add_file]) == 0
        out = capsys.readouterr().out
        assert "functional" in out and "witnesses" in out

    def test_latex(self, add_file, capsys):
        assert main(["latex", add_file]) == 0
        assert "\\begin{align*}" in capsys.readouterr().out

    def test_examples_list_and_show(self, capsys):
        assert main(["examples"]) == 0
        out = capsys.readouterr().out
        for name in ("rem", "add", "ack"):
            assert name in out
        assert main(["examples", "show", "rem"]) == 0
        assert "rem(:(x,xs),0) -> <x,xs>" in capsys.readouterr().out

    def test_examples_unknown(self, capsys):
        assert main(["examples", "show", "zzz"]) == 1

    def test_usage_error_exit_code(self, capsys):
        assert main(["invert"]) == 1

    def test_missing_file(self, capsys):
        assert main(["check", "/nonexistent/x.ctrs"]) == 1


class TestBenchCommand:
    def test_small_row_with_report(self, tmp_path, capsys):
        out_file = tmp_path / "bench.json"
        assert main(["bench-ack", "--rows", "1", "--out", str(out_file)]) == 0
        table = capsys.readouterr().out
        assert "(1, 8)" in table
        blob = json.loads(out_file.read_text("utf-8"))
        assert blob["baseline"] == "ack_2"
        row = blob["rows"][0]
        assert row["input"] == [1, 2]
        assert row["ack_2"] == {"rewrite_steps": 5, "function_calls": 9}
        assert row["ack{1}{1}"] == {"rewrite_steps": 4, "function_calls": 9}
        assert row["speedup_steps"] == 1.25

    def test_bad_rows(self, capsys):
        assert main(["bench-ack", "--rows", "9"]) == 1
