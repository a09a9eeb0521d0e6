"""Remote newform metadata client with an on-disk cache.

Queries a database exposing weight-2, trivial-character newform orbits
over HTTP:

    GET {base}/api/newforms?weight=2&char_order=1&level_divides=N&_format=json

The response is a JSON array (or an object with a ``data`` array) of rows

    {"label": ..., "level": ..., "dim": ..., "analytic_rank": ...,
     "atkin_lehner_eigenvals": [[p, sign], ...]}

which are normalized into the same ``NewformSet`` shape as the bundled
fixtures.  Every successful fetch is written to the cache directory in
canonical fixture form; later calls for the same level are served from
that file byte-for-byte with no network I/O.

Environment:
    MODCURVE_LMFDB_URL   base URL (default https://www.lmfdb.org)
    MODCURVE_CACHE_DIR   cache directory (default ~/.cache/modcurve)
    MODCURVE_OFFLINE=1   never touch the network; serve from cache, else
                         fall back to the bundled fixtures

A missing analytic rank in a remote row is remote schema drift and raises
``SchemaError``; it is never defaulted, because rank accounting downstream
depends on it.  Unreachable hosts raise ``NetworkError``; so does an
offline request with no cache and no bundled coverage -- with a message
saying which of the two it was.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

import requests

from .errors import NetworkError, SchemaError
from .newforms import (
    Newform,
    NewformSet,
    bundled_newforms,
    load_fixtures,
    serialize,
)

DEFAULT_BASE_URL = "https://www.lmfdb.org"
ENV_BASE_URL = "MODCURVE_LMFDB_URL"
ENV_CACHE_DIR = "MODCURVE_CACHE_DIR"
ENV_OFFLINE = "MODCURVE_OFFLINE"

_API_PATH = "/api/newforms"


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_CACHE_DIR, "~/.cache/modcurve")).expanduser()


def _cache_path(cache_dir: Path, level_divides: int) -> Path:
    return cache_dir / f"newforms-w2-triv-div{level_divides}.json"


def _offline() -> bool:
    return os.environ.get(ENV_OFFLINE, "") == "1"


def _normalize_row(row: dict, where: str) -> Newform:
    for key in ("label", "level", "dim"):
        if key not in row:
            raise SchemaError(f"remote schema drift: {where} lacks {key!r}")
    rank = row.get("analytic_rank")
    if rank is None:
        raise SchemaError(
            f"remote schema drift: no analytic rank for {row.get('label')}"
        )
    pairs = row.get("atkin_lehner_eigenvals") or []
    signs = {}
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SchemaError(
                f"remote schema drift: bad Atkin-Lehner pair {pair!r} in "
                f"{row.get('label')}"
            )
        signs[int(pair[0])] = int(pair[1])
    return Newform.of(row["label"], row["level"], row["dim"], rank, signs)


def fetch_remote(
    level_divides: int,
    *,
    base_url: Optional[str] = None,
    cache_dir: Optional[Path] = None,
    timeout: float = 30.0,
) -> NewformSet:
    """All newform orbits of level dividing ``level_divides``.

    Resolution order: cache file, then (unless offline) the remote API,
    then (offline only) the bundled fixtures when they cover the level.
    """
    if level_divides < 1:
        raise ValueError("level must be positive")
    cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
    cached = _cache_path(cache_dir, level_divides)
    if cached.exists():
        return load_fixtures(cached, complete_for={level_divides})

    if _offline():
        bundled = bundled_newforms()
        if bundled.is_complete_for(level_divides):
            return NewformSet(
                forms=tuple(bundled.forms_of_level_dividing(level_divides)),
                complete_for=frozenset({level_divides}),
            )
        raise NetworkError(
            f"offline mode with no cached data for level {level_divides} and "
            "no bundled coverage"
        )

    base = (base_url or os.environ.get(ENV_BASE_URL) or DEFAULT_BASE_URL).rstrip("/")
    params = {
        "weight": "2",
        "char_order": "1",
        "level_divides": str(level_divides),
        "_format": "json",
    }
    try:
        resp = requests.get(base + _API_PATH, params=params, timeout=timeout)
        resp.raise_for_status()
        doc = resp.json()
    except requests.RequestException as exc:
        raise NetworkError(f"remote fetch failed: {exc}") from exc
    except ValueError as exc:
        raise SchemaError(f"remote schema drift: response is not JSON ({exc})") from exc

    rows = doc.get("data") if isinstance(doc, dict) else doc
    if not isinstance(rows, list):
        raise SchemaError("remote schema drift: expected an array of newforms")
    forms = tuple(
        _normalize_row(row, where=f"row {i}") for i, row in enumerate(rows)
    )
    ns = NewformSet(forms=forms, complete_for=frozenset({level_divides}))

    cache_dir.mkdir(parents=True, exist_ok=True)
    tmp = cached.with_suffix(".tmp")
    tmp.write_bytes(serialize(ns))
    os.replace(tmp, cached)
    return ns
