"""Append-only NDJSON cache of factorizations of p^m - 1.

Each line is one JSON object keyed by the exact decimal string of the
factored number ``n``.  Later lines override earlier ones, so refreshing an
entry is a plain append.
"""
from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from .zarith import DEFAULT_BUDGET, IntFactorization, factor_power_minus_one

DEFAULT_CACHE = Path(os.environ.get("RKPAIRS_CACHE", Path.home() / ".cache" / "rkpairs" / "factors.ndjson"))


def encode(f: IntFactorization) -> str:
    return json.dumps({
        "n": str(f.value),
        "factors": [[str(p), e] for p, e in f.factors],
        "cofactor": str(f.cofactor),
        "status": f.status,
        "cofactor_floor": str(f.cofactor_floor),
        "cofactor_min_primes": f.cofactor_min_primes,
    })


def decode(line: str) -> IntFactorization:
    d = json.loads(line)
    extra = {}
    if "cofactor_floor" in d:
        extra["cofactor_floor"] = int(d["cofactor_floor"])
    if "cofactor_min_primes" in d:
        extra["cofactor_min_primes"] = int(d["cofactor_min_primes"])
    f = IntFactorization(int(d["n"]), tuple((int(p), int(e)) for p, e in d["factors"]), int(d["cofactor"]), **extra)
    if d.get("status", f.status) != f.status:
        raise ValueError("status disagrees with cofactor")
    return f


class FactorCache:
    """In-memory view of the cache file with a single serialized writer."""

    def __init__(self, path: str | Path = DEFAULT_CACHE):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._data: dict[str, IntFactorization] = {}
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        f = decode(line)
                    except (ValueError, KeyError, TypeError):
                        continue  # a torn final line from an interrupted write
                    self._data[str(f.value)] = f

    def __len__(self) -> int:
        return len(self._data)

    def get(self, n: int | str) -> IntFactorization | None:
        return self._data.get(str(n))

    def put(self, f: IntFactorization) -> None:
        with self._lock:
            self._data[str(f.value)] = f
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(encode(f) + "\n")

    def provider(self, base: int, exp: int, budget: int = DEFAULT_BUDGET) -> IntFactorization:
        """Drop-in for ``factor_power_minus_one`` that reads through the cache.

        A cached partial result is recomputed (and re-appended) in case the
        current budget gets further.
        """
        hit = self.get(base**exp - 1)
        if hit is not None and hit.complete:
            return hit
        f = factor_power_minus_one(base, exp, budget)
        if hit is None or f.complete or len(f.factors) > len(hit.factors):
            self.put(f)
        return f
