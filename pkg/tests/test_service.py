import pytest
from fastapi.testclient import TestClient

from main import app
from settings import search_budget, service_config
from utils.bigraph import serialize
from utils.realize import complete_bipartite


@pytest.fixture
def client():
    return TestClient(app)


def test_decide(client):
    response = client.post("/decide/", json={"a": 5, "b": 5, "c": 15})
    assert response.status_code == 200
    body = response.json()
    assert body["outcome"] == "not_realizable"
    assert body["certificate"]["kind"] == "theorem_refutation"


def test_decide_without_oracle(client):
    response = client.post("/decide/", json={"a": 11, "b": 11, "c": 44, "oracle": False})
    assert response.json()["reason"] == "oracle_disabled"


def test_decide_validates_input(client):
    assert client.post("/decide/", json={"a": 0, "b": 1, "c": 1}).status_code == 422


def test_witness(client):
    response = client.post("/witness/", json={"a": 3, "b": 3, "c": 6, "format": "dot"})
    assert response.status_code == 200
    assert response.text.startswith("graph G {")
    text = client.post("/witness/", json={"a": 7, "b": 7, "c": 28}).text
    assert text.startswith("bipartite 7 7\n")
    assert client.post("/witness/", json={"a": 5, "b": 5, "c": 15}).status_code == 422


def test_classify(client):
    response = client.get("/classify/", params={"a_max": 5, "b_max": 5})
    assert response.status_code == 200
    assert response.json()["counts"]["not_realizable"] == 1
    assert client.get("/classify/", params={"a_max": 100, "b_max": 2}).status_code == 400


def test_verify(client):
    verdict = client.post("/decide/", json={"a": 10, "b": 10, "c": 30}).json()
    assert client.post("/verify/", json=verdict).json() == {"valid": True, "detail": ""}
    verdict["certificate"]["construction"] = "s4_sylow_pair"
    assert client.post("/verify/", json=verdict).json()["valid"] is False


def test_graph_tools(client):
    k23 = serialize(complete_bipartite(2, 3))
    assert client.post("/graphs/aut", json={"graph": k23}).json() == {"aut_order": 12, "edge_orbits": 1}
    digest = client.post("/graphs/canon", json={"graph": k23}).json()["digest"]
    assert len(digest) == 64
    assert client.post("/graphs/complement", json={"graph": k23}).json() == {"graph": "bipartite 2 3\n"}
    assert client.post("/graphs/aut", json={"graph": "bipartite 2 2\ne 9 9\n"}).status_code == 400


def test_request_overrides_are_clipped():
    assert service_config(search_budget=10).search_budget == 10
    assert service_config(search_budget=search_budget * 2).search_budget == search_budget
    assert service_config(oracle_max_candidates=None) == service_config()
