"""CLI entrypoint for the Kronecker subrepresentation toolkit.

Usage:
    python -m kronecker.main <command> [OPTIONS]

Commands: canonical, invariants, embeds, factor, homdim, rank, verify,
subfactor. See --help on each for options. Results are JSON on stdout;
logs go to stderr.

Exit codes: 0 yes / success, 1 no / suite failure, 2 no criterion available,
3 input error, 4 criterion and oracle disagree.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import tempfile
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

from pydantic import BaseModel, ValidationError

from kronecker.config import (
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    LOG_FORMAT,
    SUBFACTOR_DEFAULT_MAX_DIM,
    VERIFY_SUITES,
)
from kronecker.criteria import decide, search_subfactor
from kronecker.errors import (
    CriterionDisagreement,
    CriterionUnavailable,
    KroneckerError,
    NonSplitSpectrum,
)
from kronecker.extract import extract_invariants
from kronecker.hom import hom_dimension, param_count, structured_generic_hom
from kronecker.invariants import KroneckerInvariants, from_document as invariants_from_document
from kronecker.invariants import normalize, to_document as invariants_to_document
from kronecker.models import (
    BlockTriangularArgs,
    DecisionMode,
    HomDimensionReport,
    InvariantsDocument,
    PencilDocument,
    PreinjectiveRankArgs,
    PreprojectiveRankArgs,
    RankFormulaResult,
    RegularRankArgs,
    Relation,
)
from kronecker.pencil import Pencil, canonical_pencil
from kronecker.pencil import from_document as pencil_from_document
from kronecker.pencil import to_document as pencil_to_document
from kronecker.rank import rank_block_triangular, rank_ii, rank_pp, rank_rr
from kronecker.verify import run_suite

logger = logging.getLogger(__name__)

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNAVAILABLE = 2
EXIT_INPUT_ERROR = 3
EXIT_DISAGREEMENT = 4

Representation = Union[Pencil, KroneckerInvariants]


# === Input / output ===

def _read_json(path: Path) -> object:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def load_invariants(path: Path) -> KroneckerInvariants:
    return invariants_from_document(InvariantsDocument.model_validate(_read_json(path)))


def load_pencil(path: Path) -> Pencil:
    return pencil_from_document(PencilDocument.model_validate(_read_json(path)))


def load_representation(path: Path) -> Representation:
    """A file holds either a pencil (has "E" and "H") or invariants."""
    data = _read_json(path)
    if isinstance(data, dict) and ("E" in data or "H" in data):
        return pencil_from_document(PencilDocument.model_validate(data))
    return invariants_from_document(InvariantsDocument.model_validate(data))


def _as_invariants(rep: Representation) -> KroneckerInvariants:
    return rep if isinstance(rep, KroneckerInvariants) else extract_invariants(rep)


def _as_pencil(rep: Representation) -> Pencil:
    return rep if isinstance(rep, Pencil) else canonical_pencil(rep)


def emit(model: BaseModel, output: Optional[Path] = None) -> None:
    """Print a model as JSON, or write it atomically to ``output``."""
    text = model.model_dump_json(indent=2)
    if output is None:
        print(text)
        return
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        mode="w", dir=output.parent, suffix=".tmp", delete=False, encoding="utf-8",
    ) as f:
        f.write(text + "\n")
        tmp_path = Path(f.name)
    tmp_path.replace(output)
    logger.info("Wrote %s", output)


# === Commands ===

def cmd_canonical(args: argparse.Namespace) -> int:
    emit(pencil_to_document(canonical_pencil(load_invariants(args.invariants))), args.output)
    return EXIT_YES


def cmd_invariants(args: argparse.Namespace) -> int:
    emit(invariants_to_document(extract_invariants(load_pencil(args.pencil))), args.output)
    return EXIT_YES


def _decide_and_emit(args: argparse.Namespace, N_path: Path, M_path: Path, relation: Relation) -> int:
    verdict = decide(
        load_representation(N_path),
        load_representation(M_path),
        mode=DecisionMode(args.mode),
        trials=args.trials,
        prime=args.prime,
        seed=args.seed,
        relation=relation,
    )
    emit(verdict)
    return EXIT_YES if verdict.embeds else EXIT_NO


def cmd_embeds(args: argparse.Namespace) -> int:
    return _decide_and_emit(args, args.sub, args.into, Relation.SUB)


def cmd_factor(args: argparse.Namespace) -> int:
    return _decide_and_emit(args, args.quotient, args.of, Relation.FACTOR)


def cmd_homdim(args: argparse.Namespace) -> int:
    N, M = load_representation(args.source), load_representation(args.target)
    structured: Optional[int] = None
    try:
        grid = structured_generic_hom(_as_invariants(N), _as_invariants(M))
        if not grid.unstructured_cells():
            structured = param_count(grid)
    except NonSplitSpectrum as e:
        logger.warning("No structured count: %s", e)
    emit(HomDimensionReport(
        hom_dimension=hom_dimension(_as_pencil(N), _as_pencil(M)),
        structured_param_count=structured,
    ))
    return EXIT_YES


def _rank_value(kind: str, raw: object) -> int:
    if kind in ("pp", "pp1"):
        pp = PreprojectiveRankArgs.model_validate(raw)
        return rank_pp(pp.a, pp.d, 2 if kind == "pp" else 1)
    if kind in ("ii", "ii2"):
        ii = PreinjectiveRankArgs.model_validate(raw)
        return rank_ii(ii.c, ii.f, 1 if kind == "ii" else 2)
    if kind == "rr":
        rr = RegularRankArgs.model_validate(raw)
        M = normalize(regular=[(e.point, e.sizes) for e in rr.M])
        N = normalize(regular=[(e.point, e.sizes) for e in rr.N])
        return rank_rr(M.regular, N.regular)
    bt = BlockTriangularArgs.model_validate(raw)
    return rank_block_triangular(bt.rows, bt.cols)


def cmd_rank(args: argparse.Namespace) -> int:
    emit(RankFormulaResult(kind=args.kind, rank=_rank_value(args.kind, json.loads(args.args))))
    return EXIT_YES


def cmd_verify(args: argparse.Namespace) -> int:
    summary = run_suite(
        args.suite,
        bound=args.max_dim,
        seed=args.seed,
        prime=args.prime,
        trials=args.trials,
        use_cache=not args.no_cache,
        reset_cache=args.clear_cache,
    )
    emit(summary)
    return EXIT_YES if summary.passed else EXIT_NO


def cmd_subfactor(args: argparse.Namespace) -> int:
    result = search_subfactor(
        _as_invariants(load_representation(args.sub)),
        _as_invariants(load_representation(args.of)),
        max_dim=args.max_dim,
        trials=args.trials,
        prime=args.prime,
        seed=args.seed,
    )
    emit(result)
    return EXIT_YES if result.found else EXIT_NO


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "canonical": cmd_canonical,
    "invariants": cmd_invariants,
    "embeds": cmd_embeds,
    "factor": cmd_factor,
    "homdim": cmd_homdim,
    "rank": cmd_rank,
    "verify": cmd_verify,
    "subfactor": cmd_subfactor,
}


# === Argument parsing ===

def _add_oracle_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                        help=f"Random trials per oracle call (default {DEFAULT_TRIALS}).")
    parser.add_argument("--prime", type=int, default=DEFAULT_PRIME,
                        help="Sampling prime, at least 2^30 (default 2^61 - 1).")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"Seed for the oracle's random coefficients (default {DEFAULT_SEED}).")


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Kronecker quiver representations: invariants, pencils and embedding decisions",
    )
    parser.add_argument("--verbose", action="store_true", help="Enable DEBUG-level logging.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canonical", help="Invariants JSON -> canonical pencil JSON.")
    p.add_argument("--invariants", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, help="Write here instead of stdout.")

    p = sub.add_parser("invariants", help="Pencil JSON -> Kronecker invariants JSON.")
    p.add_argument("--pencil", type=Path, required=True)
    p.add_argument("-o", "--output", type=Path, help="Write here instead of stdout.")

    for name, first, second, text in (
        ("embeds", "--sub", "--into", "Is the first representation a subrepresentation of the second?"),
        ("factor", "--quotient", "--of", "Is the first representation a factor of the second?"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument(first, type=Path, required=True, help="Invariants or pencil JSON.")
        p.add_argument(second, type=Path, required=True, help="Invariants or pencil JSON.")
        p.add_argument("--mode", choices=[m.value for m in DecisionMode], default=DecisionMode.BOTH.value)
        _add_oracle_options(p)

    p = sub.add_parser("homdim", help="Dimension of the hom space between two representations.")
    p.add_argument("--from", dest="source", type=Path, required=True)
    p.add_argument("--to", dest="target", type=Path, required=True)

    p = sub.add_parser("rank", help="Evaluate a closed-form generic rank.")
    p.add_argument("--kind", choices=["pp", "pp1", "ii", "ii2", "rr", "blocktri"], required=True)
    p.add_argument("--args", required=True,
                   help='JSON, e.g. {"a":[3],"d":[2]} or {"rows":[1,2],"cols":[2,1]}.')

    p = sub.add_parser("verify", help="Run a closed-form vs oracle verification suite.")
    p.add_argument("--suite", choices=list(VERIFY_SUITES), required=True)
    p.add_argument("--max-dim", type=int, default=None, help="Override the suite's default bound.")
    p.add_argument("--no-cache", action="store_true", help="Do not read or write cached verdicts.")
    p.add_argument("--clear-cache", action="store_true", help="Delete cached verdicts before running.")
    _add_oracle_options(p)

    p = sub.add_parser("subfactor", help="Heuristic search for an intermediate L with N factor of L sub of M.")
    p.add_argument("--sub", type=Path, required=True)
    p.add_argument("--of", type=Path, required=True)
    p.add_argument("--max-dim", type=int, default=SUBFACTOR_DEFAULT_MAX_DIM)
    _add_oracle_options(p)

    return parser.parse_args(argv)


def _describe_validation_error(e: ValidationError) -> str:
    parts = []
    for err in e.errors():
        field = ".".join(str(x) for x in err["loc"]) or "<root>"
        parts.append(f"field '{field}': {err['msg']}")
    return "; ".join(parts)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except ValidationError as e:
        print(f"Error: invalid input: {_describe_validation_error(e)}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CriterionUnavailable as e:
        print(f"Undecided: {e}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except CriterionDisagreement as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    except NonSplitSpectrum as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (KroneckerError, json.JSONDecodeError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
