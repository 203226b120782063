"""Tests for the JSON HTTP facade."""

import pytest
from fastapi.testclient import TestClient

from ccsinv import corpus, service
from ccsinv.service import create_app

ADD = corpus.source("add")


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestInvertEndpoint:
    def test_partial_add(self, client):
        resp = client.post("/api/invert", json={
            "ccs_text": ADD, "function": "add", "I": [1], "O": [1],
            "inverter": "partial",
        })
        assert resp.status_code == 200
        body = resp.json()
        assert body["ok"] is True and body["error"] is None
        assert "add{1}{1}(s(x),s(z)) -> <y> <= add{1}{1}(x,z) -> <y>" \
            in body["inverted_ccs_text"]
        table = body["diagnostics_table"]
        assert set(table["columns"]) == {"ORIG", "PART"}
        assert table["columns"]["PART"]["functional"]["value"] == "yes"

    def test_parse_error_is_400_with_position(self, client):
        resp = client.post("/api/invert", json={
            "ccs_text": "(VAR x)\n(RULES f( -> <x>)", "function": "f",
            "I": [], "O": [], "inverter": "full",
        })
        assert resp.status_code == 400
        body = resp.json()
        assert body["ok"] is False and body["error"]
        assert body["line"] == 2 and body["column"] >= 1

    def test_inadmissible_task_is_400(self, client):
        resp = client.post("/api/invert", json={
            "ccs_text": ADD, "function": "add", "I": [1], "O": [1],
            "inverter": "full",
        })
        assert resp.status_code == 400
        assert "does not admit" in resp.json()["error"]

    def test_schema_violation_is_400(self, client):
        resp = client.post("/api/invert", json={"ccs_text": ADD})
        assert resp.status_code in (400, 422)


class TestDiagnoseEndpoint:
    def test_single_column(self, client):
        resp = client.post("/api/diagnose", json={"ccs_text": ADD})
        assert resp.status_code == 200
        table = resp.json()["diagnostics_table"]
        assert list(table["columns"]) == ["ORIG"]
        assert table["columns"]["ORIG"]["reversible"]["value"] == "no"

    def test_reports_defined_symbols(self, client):
        resp = client.post("/api/diagnose", json={"ccs_text": ADD})
        assert resp.json()["symbols"] == [
            {"name": "add", "arity_in": 2, "arity_out": 1}
        ]


class TestEvalEndpoint:
    def test_counters(self, client):
        resp = client.post("/api/eval", json={
            "ccs_text": corpus.source("ack_2"),
            "query_text": "ack_2(s(0),s(s(0)))",
        })
        body = resp.json()
        assert body["results"] == ["<0>"]
        assert body["rewrite_steps"] == 5 and body["function_calls"] == 9
        assert body["exhausted"] is False

    def test_unknown_symbol_is_400(self, client):
        resp = client.post("/api/eval", json={
            "ccs_text": "(VAR) (RULES )", "query_text": "f(0)",
        })
        assert resp.status_code == 400
        assert "unknown" in resp.json()["error"]

    def test_budget_capped_server_side(self, client, monkeypatch):
        monkeypatch.setattr(service, "EVAL_CALL_CAP", 5000)
        resp = client.post("/api/eval", json={
            "ccs_text": corpus.source("ack_0"),
            "query_text": "ack_0(s(s(s(0))))",
            "budget": 10**9,
        })
        body = resp.json()
        assert body["exhausted"] is True
        assert body["function_calls"] == 5000

    def test_mode_first(self, client):
        resp = client.post("/api/eval", json={
            "ccs_text": ADD, "query_text": "add(s(0),0)", "mode": "first",
        })
        assert resp.json()["results"] == ["<s(0)>"]

    def test_instantiation_fault_is_400(self, client):
        resp = client.post("/api/eval", json={
            "ccs_text": "(VAR x y z) (RULES f(x) -> <x> <= g(y) -> <z> g(0) -> <0>)",
            "query_text": "f(0)",
        })
        assert resp.status_code == 400
        assert "unbound variable" in resp.json()["error"]


class TestLatexEndpoint:
    def test_add(self, client):
        resp = client.post("/api/latex", json={"ccs_text": ADD})
        assert "add(0,y) \\to \\langle y \\rangle" in resp.json()["latex"]


class TestExamplesEndpoints:
    def test_list_includes_the_bundled_systems(self, client):
        resp = client.get("/api/examples")
        names = {e["name"] for e in resp.json()["examples"]}
        assert {"rem", "add", "ack"} <= names

    def test_fetch_text(self, client):
        resp = client.get("/api/examples/rem")
        assert resp.status_code == 200
        assert "rem(:(x,xs),0) -> <x,xs>" in resp.text

    def test_unknown_is_404(self, client):
        resp = client.get("/api/examples/zzz")
        assert resp.status_code == 404
        assert resp.json()["ok"] is False


class TestStatelessness:
    def test_identical_requests_identical_responses(self, client):
        payload = {"ccs_text": ADD, "function": "add", "I": [1], "O": [1],
                   "inverter": "partial"}
        a = client.post("/api/invert", json=payload)
        b = client.post("/api/invert", json=payload)
        assert a.json() == b.json()
