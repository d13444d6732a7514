"""Disk cache for randomized oracle verdicts.

Oracle runs are deterministic given the two invariants, the prime, the trial
count and the seed, so the verify harness keys verdicts by a hash of exactly
that. Cache files live under kronecker/.cache/verdicts/ (gitignored).
"""
from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Optional

from kronecker.invariants import KroneckerInvariants

logger = logging.getLogger(__name__)


def content_hash(content: str) -> str:
    """Hash content for a cache key."""
    return hashlib.sha256(content.encode()).hexdigest()[:16]


def instance_key(
    N: KroneckerInvariants,
    M: KroneckerInvariants,
    prime: int,
    trials: int,
    seed: int,
) -> str:
    """Canonical text of one oracle run; normalized invariants print uniquely."""
    return f"{N} <= {M} | p={prime} trials={trials} seed={seed}"


def get_cached_verdict(cache_dir: Path, key: str) -> Optional[dict]:
    """Retrieve a cached oracle verdict. Returns None on cache miss."""
    cache_file = cache_dir / f"{content_hash(key)}.json"
    if cache_file.exists():
        logger.debug("Cache HIT (verdict): %s", key)
        return json.loads(cache_file.read_text(encoding="utf-8"))
    logger.debug("Cache MISS (verdict): %s", key)
    return None


def save_cached_verdict(cache_dir: Path, key: str, result: dict) -> Path:
    cache_dir.mkdir(parents=True, exist_ok=True)
    cache_file = cache_dir / f"{content_hash(key)}.json"
    cache_file.write_text(json.dumps({"key": key, **result}, indent=2), encoding="utf-8")
    logger.debug("Cached verdict: %s -> %s", key, cache_file.name)
    return cache_file


def clear_cache(cache_dir: Path) -> int:
    """Delete all cached files in a directory. Returns count of files deleted."""
    count = 0
    if cache_dir.exists():
        for f in cache_dir.glob("*"):
            if f.is_file():
                f.unlink()
                count += 1
    logger.info("Cleared %d cached files from %s", count, cache_dir)
    return count
