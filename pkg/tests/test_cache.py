from __future__ import annotations

import json
import threading
import time

from tribound.cache import (
    _lock_file,
    cache_path,
    default_cache_dir,
    load_reach,
    store_reach,
)
from tribound.cochain import delta_reach


def test_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv("TRIBOUND_CACHE", str(tmp_path / "envcache"))
    assert default_cache_dir() == tmp_path / "envcache"


def test_store_load_round_trip(tmp_path, f3):
    reach = delta_reach(f3, 2)
    path = store_reach(reach, tmp_path)
    assert path == cache_path(f3, tmp_path)
    again = load_reach(f3, tmp_path)
    assert again is not None
    assert again.levels == reach.levels
    assert again.im_delta == reach.im_delta
    payload = json.loads(path.read_text())
    assert set(payload) == {"n", "f", "im_delta", "delta_levels"}


def test_store_never_shrinks(tmp_path, f3):
    store_reach(delta_reach(f3, 2), tmp_path)
    store_reach(delta_reach(f3, 1), tmp_path)
    cached = load_reach(f3, tmp_path)
    assert cached is not None and cached.max_level == 2


def test_load_rejects_stale_content(tmp_path, f3, f4):
    path = store_reach(delta_reach(f3, 1), tmp_path)
    assert load_reach(f4, tmp_path) is None  # different function
    path.write_text("{broken")
    assert load_reach(f3, tmp_path) is None


def test_lock_is_released(tmp_path):
    lock = tmp_path / "x.lock"
    with _lock_file(lock):
        assert lock.exists()
    assert not lock.exists()


def test_stale_lock_is_broken(tmp_path):
    lock = tmp_path / "x.lock"
    lock.touch()
    old = time.time() - 10_000
    import os

    os.utime(lock, (old, old))
    with _lock_file(lock):
        pass
    assert not lock.exists()


def test_concurrent_writers(tmp_path, f3):
    reach = delta_reach(f3, 2)
    errors: list[BaseException] = []

    def write():
        try:
            for _ in range(5):
                store_reach(reach, tmp_path)
        except BaseException as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=write) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    cached = load_reach(f3, tmp_path)
    assert cached is not None and cached.levels == reach.levels
