"""HTTP API behavior via the in-process test client."""

import time

import pytest
from fastapi.testclient import TestClient

from feaslab import (
    AlgorithmConfig,
    AlgorithmKind,
    LOCAL_REGION,
    Point,
    lambda_sweep,
    progressive_cartographer,
    reference_constellation,
    run_orbit,
    ConstellationPreset,
)
from feaslab.service import create_app


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


def make_singletons(client, m=3):
    body = {"kind": "random", "seed": 1, "num_sets": m, "max_points_per_set": 1}
    r = client.post("/api/constellation", json=body)
    assert r.status_code == 200
    return r.json()


def wait_for_state(client, job_id, want=("done", "failed"), timeout=30.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        r = client.get(f"/api/map/{job_id}/page", params={"from": 0})
        assert r.status_code == 200
        if r.json()["state"] in want:
            return r.json()
        time.sleep(0.01)
    raise AssertionError(f"job {job_id} never reached {want}")


def test_post_constellation_preset(client):
    r = client.post("/api/constellation", json={"kind": "preset", "name": "few-few"})
    assert r.status_code == 200
    doc = r.json()
    assert doc["m"] == 3 and len(doc["sets"]) == 3
    assert doc["feasible_hint"] == [0.0, 0.0]
    ref = reference_constellation(ConstellationPreset.FEW_FEW)
    assert doc["id"] == ref.content_id()


def test_post_constellation_circles(client):
    body = {
        "kind": "circles",
        "rings": [[{"radius": 4, "count": 8}], [{"radius": 8, "count": 16}]],
    }
    r = client.post("/api/constellation", json=body)
    assert r.status_code == 200
    doc = r.json()
    assert [len(s) for s in doc["sets"]] == [8, 16]
    assert doc["feasible_hint"] is None


def test_post_constellation_points_and_errors(client):
    r = client.post("/api/constellation", json={"kind": "points", "sets": [[[0, 0], [1, 1]]]})
    assert r.status_code == 200
    assert r.json()["m"] == 1

    assert client.post("/api/constellation", json={"kind": "nope"}).status_code == 400
    assert client.post("/api/constellation", json={"kind": "preset"}).status_code == 400
    assert client.post("/api/constellation", json={"bad": 1}).status_code == 400
    r = client.post(
        "/api/constellation",
        json={"kind": "random", "seed": -2, "num_sets": 3, "max_points_per_set": 5},
    )
    assert r.status_code == 400


def test_orbit_matches_engine_bit_for_bit(client):
    doc = make_singletons(client)
    r = client.post(
        "/api/orbit",
        json={"constellation_id": doc["id"], "algorithm": "cycp",
              "lambda": 1.0, "start": [7.0, -3.0]},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["outcome"] == "solved" and body["solved_at"] == 0
    assert body["monitored"] == [[0.0, 0.0]]

    ref = reference_constellation(ConstellationPreset.FEW_FEW)
    r = client.post("/api/constellation", json={"kind": "preset", "name": "few-few"})
    cid = r.json()["id"]
    r = client.post(
        "/api/orbit",
        json={"constellation_id": cid, "algorithm": "cycdr",
              "lambda": 1.2, "start": [4.25, -8.5]},
    )
    body = r.json()
    trace = run_orbit(AlgorithmConfig(kind=AlgorithmKind.CYCDR, lam=1.2), ref, Point(4.25, -8.5))
    assert body["errors"] == list(trace.errors)
    assert body["monitored"] == [[p.x, p.y] for p in trace.monitored]
    assert (body["solved_at"] == trace.solved_at) and (body["iterations"] == trace.iterations)


def test_orbit_error_codes(client):
    doc = make_singletons(client)
    r = client.post(
        "/api/orbit",
        json={"constellation_id": doc["id"], "algorithm": "cycp",
              "lambda": 2.0, "start": [1.0, 1.0]},
    )
    assert r.status_code == 400
    r = client.post(
        "/api/orbit",
        json={"constellation_id": "feedfacecafe", "algorithm": "cycp",
              "lambda": 1.0, "start": [1.0, 1.0]},
    )
    assert r.status_code == 404
    r = client.post(
        "/api/orbit",
        json={"constellation_id": doc["id"], "algorithm": "what",
              "lambda": 1.0, "start": [1.0, 1.0]},
    )
    assert r.status_code == 400


def test_map_job_pages_reproduce_stream(client):
    r = client.post("/api/constellation", json={"kind": "preset", "name": "few-few"})
    cid = r.json()["id"]
    r = client.post(
        "/api/map/start",
        json={"constellation_id": cid, "algorithm": "cycp", "lambda": 1.0,
              "region": "local", "budget": 10, "chunk": 5},
    )
    assert r.status_code == 200
    job = r.json()
    assert job["pages_expected"] == 2
    final = wait_for_state(client, job["job_id"])
    assert final["state"] == "done" and final["progress"] == 1.0
    assert [len(p) for p in final["pages"]] == [5, 5]

    ref = reference_constellation(ConstellationPreset.FEW_FEW)
    cfg = AlgorithmConfig(kind=AlgorithmKind.CYCP, lam=1.0)
    expected = [
        [[p.x, p.y, c] for p, c in batch]
        for batch in progressive_cartographer(cfg, ref, LOCAL_REGION, 10, 5)
    ]
    assert final["pages"] == expected

    # idempotent refetch, windowed reads, and the 409 guard
    again = client.get(f"/api/map/{job['job_id']}/page", params={"from": 0}).json()
    assert again["pages"] == final["pages"]
    second = client.get(f"/api/map/{job['job_id']}/page", params={"from": 1}).json()
    assert second["pages"] == final["pages"][1:]
    r = client.get(f"/api/map/{job['job_id']}/page", params={"from": 3})
    assert r.status_code == 409


def test_map_job_cancel(client):
    r = client.post("/api/constellation", json={"kind": "preset", "name": "few-many"})
    cid = r.json()["id"]
    r = client.post(
        "/api/map/start",
        json={"constellation_id": cid, "algorithm": "dr", "lambda": 0.1,
              "region": "global", "budget": 200_000, "chunk": 100},
    )
    job_id = r.json()["job_id"]
    r = client.delete(f"/api/map/{job_id}")
    assert r.status_code == 200
    body = r.json()
    assert body["state"] == "failed" and body["message"] == "cancelled"
    after = client.get(f"/api/map/{job_id}/page", params={"from": 0}).json()
    assert after["state"] == "failed" and after["message"] == "cancelled"


def test_second_start_cancels_first(client):
    r = client.post("/api/constellation", json={"kind": "preset", "name": "few-many"})
    cid = r.json()["id"]
    first = client.post(
        "/api/map/start",
        json={"constellation_id": cid, "algorithm": "dr", "lambda": 0.1,
              "region": "global", "budget": 200_000, "chunk": 100},
    ).json()["job_id"]
    second = client.post(
        "/api/map/start",
        json={"constellation_id": cid, "algorithm": "cycp", "lambda": 1.0,
              "region": "local", "budget": 10, "chunk": 5},
    ).json()["job_id"]
    state = wait_for_state(client, first)
    assert state["state"] == "failed" and state["message"] == "cancelled"
    assert wait_for_state(client, second)["state"] == "done"


def test_map_errors(client):
    doc = make_singletons(client)
    r = client.post(
        "/api/map/start",
        json={"constellation_id": "feedfacecafe", "algorithm": "cycp",
              "lambda": 1.0, "budget": 10, "chunk": 5},
    )
    assert r.status_code == 404
    r = client.post(
        "/api/map/start",
        json={"constellation_id": doc["id"], "algorithm": "cycp",
              "lambda": 1.0, "budget": 2, "chunk": 5},
    )
    assert r.status_code == 400
    assert client.get("/api/map/nosuch/page", params={"from": 0}).status_code == 404
    assert client.delete("/api/map/nosuch").status_code == 404


def test_sweep_endpoint(client):
    doc = make_singletons(client)
    r = client.post(
        "/api/sweep",
        json={"constellation_id": doc["id"], "algorithm": "cycp",
              "n_lambda": 4, "n_starts": 25},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["lambdas"] == [0.25, 0.75, 1.25, 1.75]
    assert body["rates"] == [1.0, 1.0, 1.0, 1.0]
    assert body["best_lambda"] == 0.75

    r = client.post(
        "/api/sweep",
        json={"constellation_id": doc["id"], "algorithm": "bogus",
              "n_lambda": 4, "n_starts": 25},
    )
    assert r.status_code == 400


def test_sweep_matches_engine(client, few_few):
    r = client.post("/api/constellation", json={"kind": "preset", "name": "few-few"})
    cid = r.json()["id"]
    r = client.post(
        "/api/sweep",
        json={"constellation_id": cid, "algorithm": "exparp",
              "n_lambda": 5, "n_starts": 40},
    )
    body = r.json()
    sweep = lambda_sweep(AlgorithmKind.EXPARP, few_few, LOCAL_REGION, n_lambda=5, n_starts=40)
    assert body["lambdas"] == list(sweep.lambdas)
    assert body["rates"] == list(sweep.rates)
