"""Deciding whether N is a subrepresentation (or a factor) of M.

Closed-form criteria cover pairs where both sides belong to one family, and
preprojective into preinjective. Everything else goes to the randomized
oracle: N embeds iff a generic homomorphism N -> M is injective at both
vertices, which is tested by specializing a hom basis over a large prime
field. A single full-rank trial proves embedding; "no" answers carry an
error bound.
"""
from __future__ import annotations

import logging
import random
from typing import Optional, Sequence, Tuple, Union

from kronecker.config import (
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MIN_SAMPLING_PRIME,
    SUBFACTOR_DEFAULT_MAX_DIM,
)
from kronecker.errors import CriterionDisagreement, CriterionUnavailable
from kronecker.extract import extract_invariants
from kronecker.hom import HomBasis, canonical_hom_basis, hom_basis
from kronecker.invariants import (
    DimensionVector,
    KroneckerInvariants,
    RegularPart,
    RepresentationType,
    dimension_vector,
    dualize,
    iter_invariants,
    require_descending,
    to_document,
)
from kronecker.linalg import rank, sampling_field
from kronecker.models import (
    DecisionMode,
    EmbedReport,
    Provenance,
    Relation,
    SubfactorResult,
    Verdict,
)
from kronecker.pencil import Pencil, canonical_pencil, transpose_dual
from kronecker.rank import (
    closed_form_ranks,
    dual_step_profile,
    random_specializations,
    rank_report,
    step_profile,
)

logger = logging.getLogger(__name__)

Representation = Union[Pencil, KroneckerInvariants]


# === Closed-form criteria ===

def embeds_preprojective(d: Sequence[int], a: Sequence[int]) -> bool:
    """Whether Q-sizes ``d`` embed in Q-sizes ``a``."""
    require_descending(d, "d")
    require_descending(a, "a")
    if not d:
        return True
    profile = step_profile(a, d)
    if profile.r[0] != 0:
        return False
    for i in range(1, profile.t):
        s_i, r_next = profile.s[i - 1], profile.r[i]
        if sum(a[:s_i]) < sum(d[:r_next]):
            return False
        if sum(x - 1 for x in a[:s_i]) < sum(x - 1 for x in d[:r_next]):
            return False
    return True


def embeds_preinjective(f: Sequence[int], c: Sequence[int]) -> bool:
    """Whether J-sizes ``f`` embed in J-sizes ``c``.

    Uses the profile (u, v, w) of f into c: every row of the source has to be
    reached (v_(w-1) = len(f), with v_0 = 0) and each tail of f has to fit
    under the matching tail of c, counted both with and without the shift.
    """
    require_descending(f, "f")
    require_descending(c, "c")
    if not f:
        return True
    profile = dual_step_profile(c, f)
    u, w = profile.r, profile.t
    v = (0,) + profile.s
    if v[w - 1] != len(f):
        return False
    for i in range(w - 1):
        if sum(f[v[i]:]) > sum(c[u[i]:]):
            return False
        if sum(x - 1 for x in f[v[i]:]) > sum(x - 1 for x in c[u[i]:]):
            return False
    return True


def embeds_regular(N_regular: RegularPart, M_regular: RegularPart) -> bool:
    """Pointwise domination: at each point M has at least as many blocks, each at least as large."""
    target = dict(M_regular)
    for point, sizes in N_regular:
        other = target.get(point, ())
        if len(other) < len(sizes):
            return False
        if any(b < e for b, e in zip(other, sizes)):
            return False
    return True


def embeds_pre_into_pri(d: Sequence[int], c: Sequence[int]) -> bool:
    return sum(x - 1 for x in c) >= sum(d)


def hom_vanishes_on_a_summand(N: KroneckerInvariants, M: KroneckerInvariants) -> bool:
    """True when some nonzero summand of N has no nonzero map into M.

    Such an N cannot embed. This is a structural prefilter for the oracle,
    not a closed-form criterion.
    """
    if N.preinjective and not M.preinjective:
        return True
    # Regular blocks only reach regular blocks at the same point, or preinjectives.
    if not M.preinjective and any(not M.sizes_at(point) for point in N.points):
        return True
    return not N.is_zero() and M.is_zero()


def theorem_verdict(
    N: KroneckerInvariants,
    M: KroneckerInvariants,
) -> Optional[Tuple[bool, Provenance]]:
    """Closed-form answer with its provenance, or None when no criterion applies."""
    if N.is_zero():
        return True, Provenance.TRIVIAL
    kinds = (N.kind, M.kind)
    T = RepresentationType
    if kinds == (T.PREPROJECTIVE, T.PREPROJECTIVE):
        return embeds_preprojective(N.preprojective, M.preprojective), Provenance.PREPROJECTIVE
    if kinds == (T.PREINJECTIVE, T.PREINJECTIVE):
        return embeds_preinjective(N.preinjective, M.preinjective), Provenance.PREINJECTIVE
    if kinds == (T.REGULAR, T.REGULAR):
        return embeds_regular(N.regular, M.regular), Provenance.REGULAR
    if kinds == (T.PREPROJECTIVE, T.PREINJECTIVE):
        return embeds_pre_into_pri(N.preprojective, M.preinjective), Provenance.PRE_INTO_PRI
    return None


# === Randomized oracle ===

def embeds_generic(
    N: Pencil,
    M: Pencil,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    seed: int = DEFAULT_SEED,
    basis: Optional[HomBasis] = None,
    formula_ranks: Optional[Tuple[int, int]] = None,
) -> Tuple[bool, EmbedReport]:
    """Randomized mono test: does some trial give full column rank at both vertices?

    ``basis`` may be supplied when Hom(N, M) is already known (canonical
    pencils); otherwise it is solved exactly. ``formula_ranks`` are echoed in
    the per-component reports for comparison.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    field = sampling_field(prime, MIN_SAMPLING_PRIME)
    basis = basis if basis is not None else hom_basis(N, M)
    rng = random.Random(seed)
    n1, n2 = N.cols, N.rows

    best = [0, 0]
    successful: Optional[int] = None
    for trial, (phi1, phi2) in enumerate(random_specializations(basis, trials, field, rng), start=1):
        r1, r2 = rank(phi1), rank(phi2)
        best = [max(best[0], r1), max(best[1], r2)]
        logger.debug("trial %d: ranks (%d, %d) of (%d, %d) columns", trial, r1, r2, n1, n2)
        if r1 == n1 and r2 == n2:
            successful = trial
            break

    formulas = formula_ranks or (None, None)
    report = EmbedReport(
        trials=trials,
        prime=prime,
        seed=seed,
        hom_dimension=basis.dimension,
        successful_trial=successful,
        component1=rank_report(1, basis.shape(1), best[0], trials, prime, formulas[0]),
        component2=rank_report(2, basis.shape(2), best[1], trials, prime, formulas[1]),
    )
    return successful is not None, report


def _as_invariants(x: Representation) -> KroneckerInvariants:
    return x if isinstance(x, KroneckerInvariants) else extract_invariants(x)


def oracle_verdict(
    N: Representation,
    M: Representation,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    seed: int = DEFAULT_SEED,
) -> Tuple[bool, EmbedReport]:
    """Oracle on invariants (via canonical pencils) or on arbitrary pencils."""
    if isinstance(N, KroneckerInvariants) and isinstance(M, KroneckerInvariants):
        return embeds_generic(
            canonical_pencil(N),
            canonical_pencil(M),
            trials=trials,
            prime=prime,
            seed=seed,
            basis=canonical_hom_basis(N, M),
            formula_ranks=closed_form_ranks(N, M),
        )
    N_p = N if isinstance(N, Pencil) else canonical_pencil(N)
    M_p = M if isinstance(M, Pencil) else canonical_pencil(M)
    return embeds_generic(N_p, M_p, trials=trials, prime=prime, seed=seed)


# === Dispatch ===

def _dual(x: Representation) -> Representation:
    return dualize(x) if isinstance(x, KroneckerInvariants) else transpose_dual(x)


def decide(
    N: Representation,
    M: Representation,
    mode: DecisionMode = DecisionMode.BOTH,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    seed: int = DEFAULT_SEED,
    relation: Relation = Relation.SUB,
) -> Verdict:
    """Decide N <= M as a subrepresentation, or as a factor when ``relation`` is FACTOR.

    Factor questions are answered as sub questions on the duals. Theorem mode
    raises CriterionUnavailable for type mixes no criterion covers. Generic and
    both mode first answer "no" without sampling when the hom space vanishes
    on a summand of N; both mode falls back to the oracle alone on uncovered
    mixes and raises CriterionDisagreement if criterion and oracle differ.
    """
    if relation is Relation.FACTOR:
        N, M = _dual(N), _dual(M)

    theorem = None
    if mode in (DecisionMode.THEOREM, DecisionMode.BOTH):
        N_inv, M_inv = _as_invariants(N), _as_invariants(M)
        theorem = theorem_verdict(N_inv, M_inv)
        if theorem is None and mode is DecisionMode.THEOREM:
            raise CriterionUnavailable(
                f"no closed-form criterion for {N_inv.kind.value} into {M_inv.kind.value}"
            )
        if mode is DecisionMode.THEOREM:
            embeds, provenance = theorem
            return Verdict(embeds=embeds, relation=relation, mode=mode, provenance=provenance)
        # Reuse the extracted invariants so the oracle takes the canonical fast path.
        N, M = N_inv, M_inv

    if (
        theorem is None
        and isinstance(N, KroneckerInvariants)
        and isinstance(M, KroneckerInvariants)
        and hom_vanishes_on_a_summand(N, M)
    ):
        logger.debug("hom vanishes on a summand of %s into %s", N, M)
        return Verdict(embeds=False, relation=relation, mode=mode, provenance=Provenance.HOM_VANISHING)

    embeds, report = oracle_verdict(N, M, trials=trials, prime=prime, seed=seed)
    if mode is DecisionMode.GENERIC:
        return Verdict(embeds=embeds, relation=relation, mode=mode, provenance=Provenance.ORACLE, report=report)

    if theorem is None:
        return Verdict(
            embeds=embeds, relation=relation, mode=mode,
            provenance=Provenance.GENERIC_ONLY, report=report,
        )
    expected, provenance = theorem
    if expected != embeds:
        logger.warning("criterion %s says %s but oracle says %s for %s into %s",
                       provenance.value, expected, embeds, N, M)
        raise CriterionDisagreement(
            f"{provenance.value} criterion says {expected}, oracle says {embeds} "
            f"(prime {prime}, trials {trials}, seed {seed})"
        )
    return Verdict(embeds=embeds, relation=relation, mode=mode, provenance=provenance, report=report)


def is_factor(
    N: Representation,
    M: Representation,
    mode: DecisionMode = DecisionMode.GENERIC,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    seed: int = DEFAULT_SEED,
) -> bool:
    """Whether N is a factor representation of M (a sub of M on the dual side)."""
    return decide(N, M, mode=mode, trials=trials, prime=prime, seed=seed, relation=Relation.FACTOR).embeds


# === Subfactor search ===

def search_subfactor(
    N: KroneckerInvariants,
    M: KroneckerInvariants,
    max_dim: int = SUBFACTOR_DEFAULT_MAX_DIM,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    seed: int = DEFAULT_SEED,
) -> SubfactorResult:
    """Look for L with N a factor of L and L a sub of M.

    Only L with dimension vector between those of N and M, both coordinates at
    most ``max_dim``, and regular blocks at points already used by N or M are
    tried. A negative answer is therefore not a proof.
    """
    M_dims, N_dims = dimension_vector(M), dimension_vector(N)
    bound = DimensionVector(min(M_dims.dim1, max_dim), min(M_dims.dim2, max_dim))
    points = sorted(set(N.points) | set(M.points), key=lambda p: p.sort_key())
    checked = 0
    for L in iter_invariants(bound, points):
        if not N_dims.dominated_by(dimension_vector(L)):
            continue
        checked += 1
        if not oracle_verdict(L, M, trials=trials, prime=prime, seed=seed)[0]:
            continue
        if decide(N, L, mode=DecisionMode.GENERIC, trials=trials, prime=prime, seed=seed,
                  relation=Relation.FACTOR).embeds:
            logger.info("subfactor witness after %d candidates: %s", checked, L)
            return SubfactorResult(found=True, max_dim=max_dim, candidates_checked=checked,
                                   witness=to_document(L))
    logger.info("no subfactor witness among %d candidates (max_dim %d)", checked, max_dim)
    return SubfactorResult(found=False, max_dim=max_dim, candidates_checked=checked)
