"""All constants and toggles for the Kronecker subrepresentation toolkit."""
from __future__ import annotations

from pathlib import Path

# === Versioning ===
TOOLKIT_VERSION = "1.0.0"

# === Paths ===
PROJECT_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = PROJECT_ROOT / "data"
EXAMPLES_DIR = DATA_DIR / "examples"
CACHE_DIR = Path(__file__).resolve().parent / ".cache"
VERDICT_CACHE_DIR = CACHE_DIR / "verdicts"

# === Randomized Oracle ===
DEFAULT_PRIME = 2**61 - 1  # Mersenne prime
MIN_SAMPLING_PRIME = 2**30
DEFAULT_TRIALS = 3
DEFAULT_SEED = 0

# === Verification Universes ===
# --max-dim overrides "bound".
VERIFY_SUITES: dict[str, dict] = {
    "pp": {
        "bound": 8,
        "description": "Preprojective pairs, sums <= bound: sub-criterion and rank formulas vs oracle",
    },
    "ii": {
        "bound": 8,
        "description": "Preinjective pairs, sums <= bound: sub-criterion and rank formulas vs oracle",
    },
    "rr": {
        "bound": 5,
        "description": "Regular pairs over {0, 1, inf}, per-point sums <= bound",
    },
    "pre-pri": {
        "bound": 8,
        "description": "Preprojective into preinjective, sums <= bound",
    },
    "blocktri": {
        "bound": 3,
        "description": "Block upper triangular profiles, q <= 4, block sizes <= bound",
    },
    "extract": {
        "bound": 12,
        "description": "extract(canonical(inv)) round trip and conjugation invariance, total dim <= bound",
    },
    "order": {
        "bound": 6,
        "description": "Reflexivity, transitivity and dimension necessity, sums <= bound",
    },
}

BLOCKTRI_MAX_BLOCKS = 4
RATIONAL_POINT_POOL = ("0", "1", "-1", "1/2", "inf")
REGULAR_SUITE_POINTS = ("0", "1", "inf")
REGULAR_MULTIPOINT_BOUND = 3
EXTRACT_SAMPLES = 200
EXTRACT_CONJUGATES = 20
TRANSITIVITY_TRIPLES = 1000
MAX_REPORTED_FAILURES = 20

# Entries of random unit-triangular factors used for conjugation
CONJUGATION_ENTRY_RANGE = (-2, 2)

# === Subfactor Search ===
SUBFACTOR_DEFAULT_MAX_DIM = 6

# === Logging ===
LOG_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"
