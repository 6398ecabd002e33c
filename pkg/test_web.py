import pytest

import logger
from bench import BenchReport
from verify import SweepSpec, run_sweep
from web import app as web_app


@pytest.fixture
def client(db_path, monkeypatch):
    monkeypatch.setattr(web_app, "DB_PATH", db_path)
    web_app.app.config["TESTING"] = True
    return web_app.app.test_client()


def test_magic_runtime_constant(client):
    data = client.get("/api/magic/95").get_json()
    assert data["c"] == "194176253407468965"
    assert data["f_bits"] == 64 and data["valid"] is True


def test_magic_minimal(client):
    data = client.get("/api/magic/6?n_bits=6&mode=minimal").get_json()
    assert (data["f_bits"], data["c"], data["l_bits"]) == (8, "43", 2)


def test_magic_signed(client):
    data = client.get("/api/magic/-3?signed=true").get_json()
    assert data["c"] == "6148914691236517206" and data["d"] == -3 and data["signed"] is True


@pytest.mark.parametrize("url", ["/api/magic/0", "/api/magic/6?mode=fastest",
                                 "/api/magic/300?n_bits=8", "/api/magic/six"])
def test_magic_errors(client, url):
    resp = client.get(url)
    assert resp.status_code == 400
    assert "error" in resp.get_json()


@pytest.mark.parametrize("url, expected", [
    ("/api/divisible/42/6", True),
    ("/api/divisible/23/6?strategy=gm", False),
    ("/api/divisible/-42/6", True),
    ("/api/divisible/0x2a/6?strategy=hardware", True),
])
def test_divisible(client, url, expected):
    assert client.get(url).get_json()["divisible"] is expected


def test_divisible_errors(client):
    assert client.get("/api/divisible/5/0").status_code == 400
    assert client.get("/api/divisible/5/3?strategy=libdivide").status_code == 400


def test_empty_history(client):
    assert client.get("/api/bench").get_json() == []
    assert client.get("/api/verify").get_json() == []


def test_bench_history(client):
    logger.log_bench([BenchReport("lcg", "lkk", 95, 1000, 50_000, 3),
                      BenchReport("primes", "gm", None, 4, 400, 4, limit=10)])
    assert len(client.get("/api/bench").get_json()) == 2
    rows = client.get("/api/bench?benchmark=lcg").get_json()
    assert [r["strategy"] for r in rows] == ["lkk"]
    assert client.get("/api/bench?limit=x").status_code == 400


def test_verify_history(client):
    spec = SweepSpec(width=8, divisors=(3,), numerators="exhaustive", strategies=("lkk",))
    logger.log_sweep(run_sweep(spec))
    rows = client.get("/api/verify").get_json()
    assert len(rows) == 1 and rows[0]["spec"]["divisors"] == [3]
