"""Shared fixtures for tests."""
from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from kronecker.linalg import PrimeField

PROJECT_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = PROJECT_ROOT / "data"
EXAMPLES_DIR = DATA_DIR / "examples"


@pytest.fixture
def examples_dir() -> Path:
    return EXAMPLES_DIR


@pytest.fixture
def invariant_paths() -> list[Path]:
    return sorted(p for p in EXAMPLES_DIR.glob("*.json") if not p.name.endswith(".pencil.json"))


@pytest.fixture
def pencil_paths() -> list[Path]:
    return sorted(EXAMPLES_DIR.glob("*.pencil.json"))


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so sampled tests are reproducible."""
    return random.Random(12345)


@pytest.fixture
def small_field() -> PrimeField:
    return PrimeField(7)


def write_json(path: Path, data: object) -> Path:
    path.write_text(json.dumps(data), encoding="utf-8")
    return path
