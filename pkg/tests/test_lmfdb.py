import json
import os
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer
from urllib.parse import parse_qs, urlparse

import pytest

from modcurve.errors import NetworkError, SchemaError
from modcurve.lmfdb import fetch_remote
from modcurve.newforms import bundled_newforms, serialize


def _remote_rows(level_divides):
    """Bundled data re-encoded in the remote wire shape."""
    rows = []
    for f in bundled_newforms().forms_of_level_dividing(level_divides):
        rows.append(
            {
                "label": f.label,
                "level": f.level,
                "dim": f.hecke_degree,
                "analytic_rank": f.analytic_rank if f.analytic_rank is not None else 0,
                "atkin_lehner_eigenvals": [[p, s] for p, s in f.signs],
                "weight": 2,
                "char_order": 1,
            }
        )
    return rows


class _Handler(BaseHTTPRequestHandler):
    drift = False

    def do_GET(self):
        url = urlparse(self.path)
        if url.path != "/api/newforms":
            self.send_error(404)
            return
        params = parse_qs(url.query)
        level = int(params["level_divides"][0])
        rows = _remote_rows(level)
        if self.drift:
            for row in rows:
                row.pop("analytic_rank")
        body = json.dumps({"data": rows}).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def server():
    httpd = HTTPServer(("127.0.0.1", 0), _Handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    _Handler.drift = False
    yield f"http://127.0.0.1:{httpd.server_port}"
    httpd.shutdown()
    thread.join()


@pytest.fixture(autouse=True)
def _online(monkeypatch):
    monkeypatch.delenv("MODCURVE_OFFLINE", raising=False)


def test_fetch_matches_fixture_labels(server, tmp_path):
    ns = fetch_remote(105, base_url=server, cache_dir=tmp_path)
    bundled = bundled_newforms()
    assert [f.label for f in ns] == [
        f.label for f in bundled.forms_of_level_dividing(105)
    ]
    assert len(ns) == 6
    for f in ns:
        assert f == bundled.by_label(f.label)


def test_fetch_level_one_is_empty(server, tmp_path):
    ns = fetch_remote(1, base_url=server, cache_dir=tmp_path)
    assert len(ns) == 0


def test_cache_hit_needs_no_network(server, tmp_path):
    first = fetch_remote(105, base_url=server, cache_dir=tmp_path)
    cache_file = tmp_path / "newforms-w2-triv-div105.json"
    assert cache_file.exists()
    before = cache_file.read_bytes()
    assert before == serialize(first)

    # Second call resolves from disk even against a dead endpoint.
    second = fetch_remote(105, base_url="http://127.0.0.1:1", cache_dir=tmp_path)
    assert second.forms == first.forms
    assert cache_file.read_bytes() == before


def test_network_failure_raises(tmp_path):
    with pytest.raises(NetworkError):
        fetch_remote(105, base_url="http://127.0.0.1:1", cache_dir=tmp_path)


def test_missing_analytic_rank_is_schema_drift(server, tmp_path):
    _Handler.drift = True
    with pytest.raises(SchemaError, match="analytic rank"):
        fetch_remote(105, base_url=server, cache_dir=tmp_path)
    assert not (tmp_path / "newforms-w2-triv-div105.json").exists()


def test_offline_falls_back_to_bundled(monkeypatch, tmp_path):
    monkeypatch.setenv("MODCURVE_OFFLINE", "1")
    ns = fetch_remote(315, cache_dir=tmp_path)
    assert len(ns) == 15


def test_offline_prefers_cache(server, tmp_path, monkeypatch):
    fetch_remote(105, base_url=server, cache_dir=tmp_path)
    monkeypatch.setenv("MODCURVE_OFFLINE", "1")
    ns = fetch_remote(105, cache_dir=tmp_path)
    assert len(ns) == 6


def test_offline_without_cache_or_coverage(monkeypatch, tmp_path):
    monkeypatch.setenv("MODCURVE_OFFLINE", "1")
    with pytest.raises(NetworkError, match="offline"):
        fetch_remote(11, cache_dir=tmp_path)


def test_env_base_url(server, tmp_path, monkeypatch):
    monkeypatch.setenv("MODCURVE_LMFDB_URL", server)
    ns = fetch_remote(35, cache_dir=tmp_path)
    assert [f.label for f in ns] == ["35.2.a.a", "35.2.a.b"]


@pytest.mark.skipif(
    os.environ.get("MODCURVE_ONLINE_TESTS") != "1",
    reason="set MODCURVE_ONLINE_TESTS=1 to test against the live database",
)
@pytest.mark.parametrize("level,count", [(105, 6), (315, 15), (735, 35)])
def test_live_counts_match_fixture(level, count, tmp_path):
    ns = fetch_remote(level, cache_dir=tmp_path)
    assert len(ns) == count
