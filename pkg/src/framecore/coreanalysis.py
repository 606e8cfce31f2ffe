"""Per-vector isolability classification and core extraction.

A vector x of a system with coherence alpha is *isolated* when it meets
every other vector strictly below alpha, *isolable* when arbitrarily small
unit perturbations can make it isolated, and *deficient* when its
level-alpha neighbors fail to span R^n (deficient implies isolable).  The
decision procedure used here works in the tangent space at x: with
u_y = Proj_{x-perp}(sign(<x,y>) y) for each neighbor y, x is isolable
exactly when some nonzero w orthogonal to x has <w, u_y> <= 0 for all y.
Such a w is found either as the negated minimum-norm point of conv{u_y}
(strict separation) or as an infeasibility certificate of the positive-
spanning test (boundary case); if the u_y positively span the tangent
space, no such w exists and x is not isolable.  Every isolable verdict is
validated constructively by actually building the perturbed vector and
checking that the coherence level strictly drops.

Iterating "remove all isolable vectors" until nothing changes yields the
core: a subsystem with no isolable vectors that, for inputs that truly
minimize coherence, has at least n + 1 vectors each meeting a spanning
family at the packing angle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    IterationLimit,
    SearchFailed,
    ShapeError,
    ValidationError,
    VerificationError,
)
from .frames import (
    GramMatrix,
    NeighborSet,
    UnitVectorSystem,
    frame_operator,
    gram,
    neighbors,
    tightness,
)
from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    min_norm_point,
    nnls_cone_feasible,
    orthonormal_complement,
    rank_of,
    sym_eig,
)

ISOLATED = "isolated"
DEFICIENT_ISOLABLE = "deficient_isolable"
ISOLABLE = "isolable"
NOT_ISOLABLE = "not_isolable"
INDETERMINATE = "indeterminate"

ISOLABLE_STATUSES = (ISOLATED, DEFICIENT_ISOLABLE, ISOLABLE)


@dataclass(frozen=True)
class VectorVerdict:
    """Classification of one vector with its witness or certificate.

    ``witness`` (isolable statuses) is a unit direction orthogonal to the
    vector along which perturbation strictly lowers all its inner products
    below the coherence.  ``certificate`` (not-isolable) stacks the
    nonnegative weights expressing +/- each tangent basis vector in the
    cone of the projected signed neighbors, i.e. a positive-spanning
    certificate.
    """

    index: int
    status: str
    witness: np.ndarray | None = None
    certificate: np.ndarray | None = None
    neighbor_count: int = 0
    neighbor_rank: int = 0
    warnings: tuple[str, ...] = ()

    @property
    def isolable(self) -> bool:
        return self.status in ISOLABLE_STATUSES


def _orthonormal_rows(rows: np.ndarray, rank: int) -> np.ndarray:
    """Deterministic orthonormal basis of the row space (pivoted, two-pass)."""
    residual = np.asarray(rows, dtype=float).copy()
    basis: list[np.ndarray] = []
    for _ in range(rank):
        norms = np.linalg.norm(residual, axis=1)
        pick = int(np.argmax(norms))
        v = residual[pick] / norms[pick]
        if basis:
            B = np.array(basis)
            v = v - (v @ B.T) @ B
            v = v / np.linalg.norm(v)
        basis.append(v)
        residual = residual - np.outer(residual @ v, v)
    return np.array(basis) if basis else np.zeros((0, rows.shape[1]))


def _near_tie_warnings(row: np.ndarray, i: int, alpha: float, tol: Tolerances) -> list[str]:
    """Flag off-diagonal magnitudes hovering just outside the neighbor band."""
    out = []
    for j in range(row.size):
        if j == i:
            continue
        gap = abs(abs(row[j]) - alpha)
        if tol.neighbor_abs < gap <= 2.0 * tol.neighbor_abs:
            out.append(
                f"|G[{i},{j}]| is within 2x neighbor_abs of the coherence; "
                "classification is tolerance-sensitive here"
            )
    return out


def _perturb_search(
    others: np.ndarray,
    x: np.ndarray,
    witness: np.ndarray,
    alpha: float,
    tol: Tolerances,
    eps_cap: float | None = None,
    margin: float | None = None,
) -> tuple[np.ndarray, float]:
    """Halving search for eps with |<x', y>| < alpha - margin for all y.

    x' = (x + eps w)/||x + eps w||.  Starts at eps0 = min(1/2,
    (alpha - delta)/2) with delta the largest inner product outside the
    neighbor band, optionally capped (used by sequential replacement), and
    halves at most 60 times.
    """
    if margin is None:
        margin = max(1e-12, 1e-6 * alpha)
    prods = np.abs(others @ x) if others.size else np.zeros(0)
    below_band = prods[prods <= alpha - tol.neighbor_abs]
    delta = float(below_band.max()) if below_band.size else 0.0
    eps = min(0.5, (alpha - delta) / 2.0)
    if eps_cap is not None:
        eps = min(eps, eps_cap)
    if eps <= 0.0:
        eps = min(0.5, alpha / 2.0)
    for _ in range(60):
        cand = x + eps * witness
        cand = cand / np.linalg.norm(cand)
        worst = float(np.max(np.abs(others @ cand))) if others.size else -np.inf
        if worst < alpha - margin:
            return cand, eps
        eps *= 0.5
    raise SearchFailed(
        f"no eps in 60 halvings gave all inner products below {alpha} - {margin}"
    )


def _tangent_neighbors(
    system: UnitVectorSystem, i: int, nb: NeighborSet, G: np.ndarray
) -> list[np.ndarray]:
    """Projected signed neighbors u_y = Proj_{x-perp}(s_y y)."""
    x = system.vectors[i]
    out = []
    for j, s in zip(nb.indices, nb.signs):
        y = system.vectors[j]
        out.append(s * y - (s * G[i, j]) * x)
    return out


def _deficiency_witness(
    system: UnitVectorSystem, i: int, nb: NeighborSet, tol: Tolerances
) -> np.ndarray:
    """Isolating direction for a deficient vector, projected to x-perp.

    Picks z orthogonal to the neighbor span with <x, z> >= 0 (the component
    of x outside the span when present, otherwise the first completion
    direction) and returns the normalized tangent part of z.  The tangent
    part satisfies <w, u_y> = -alpha <x, z> <= 0 for every neighbor, so it
    is a valid isolating direction.
    """
    x = system.vectors[i]
    n = system.dim
    nb_rows = system.vectors[list(nb.indices)]
    r = rank_of(nb_rows, tol)
    span_basis = _orthonormal_rows(nb_rows, r)
    complement = orthonormal_complement(span_basis, tol)
    coeffs = complement @ x
    outside = complement.T @ coeffs
    if float(np.linalg.norm(outside)) > 1e-9:
        z = outside / np.linalg.norm(outside)
    else:
        z = complement[0]
    if float(z @ x) < 0.0:
        z = -z
    w = z - (z @ x) * x
    norm = float(np.linalg.norm(w))
    if norm <= 1e-12:
        # x parallel to z would put x orthogonal to its own neighbors,
        # impossible at a positive coherence level; fall back defensively.
        for row in complement:
            w = row - (row @ x) * x
            norm = float(np.linalg.norm(w))
            if norm > 1e-12:
                break
        else:
            raise VerificationError("no tangent deficiency direction found")
    return w / norm


def classify_vector(
    system: UnitVectorSystem,
    i: int,
    tol: Tolerances = DEFAULT_TOL,
    gram_matrix: GramMatrix | None = None,
    validate: bool = True,
) -> VectorVerdict:
    """Classify vector i as isolated / deficient / isolable / not isolable.

    At coherence <= neighbor_abs nothing is isolable (orthonormal systems
    and singletons stay put).  Otherwise: an empty neighbor set means
    isolated; neighbors that fail to span R^n mean deficient (witnessed by
    a direction orthogonal to them); else the tangent-cone analysis decides, with the
    minimum-norm point as a first-stage screen and the positive-spanning
    test as the second stage.  Isolable verdicts are validated by actually
    constructing the perturbed vector; a failed construction or an
    iteration cap yields ``indeterminate`` rather than a guess.
    """
    if not 0 <= i < system.size:
        raise ShapeError(f"index {i} out of range")
    gm = gram_matrix or gram(system)
    alpha = gm.coherence
    warnings = tuple(_near_tie_warnings(gm.entries[i], i, alpha, tol))

    if alpha <= tol.neighbor_abs:
        # Coherence-zero convention: replacement cannot strictly beat an
        # already orthogonal system.
        return VectorVerdict(
            i,
            NOT_ISOLABLE,
            neighbor_count=system.size - 1 if system.size > 1 else 0,
            neighbor_rank=min(system.size - 1, system.dim),
            warnings=warnings + ("coherence is zero within tolerance; nothing is isolable",),
        )

    nb = neighbors(system, i, alpha, tol, gram_matrix=gm)
    n = system.dim
    count = len(nb.indices)

    if count == 0:
        return VectorVerdict(i, ISOLATED, neighbor_count=0, neighbor_rank=0, warnings=warnings)

    nb_rank = rank_of(system.vectors[list(nb.indices)], tol)
    status = None
    witness = None
    certificate = None

    if nb_rank < n:
        status = DEFICIENT_ISOLABLE
        witness = _deficiency_witness(system, i, nb, tol)
    else:
        x = system.vectors[i]
        tangent = _tangent_neighbors(system, i, nb, gm.entries)
        try:
            point, _ = min_norm_point(tangent, tol)
            if float(np.linalg.norm(point)) > tol.hull_abs:
                status = ISOLABLE
                witness = -point / np.linalg.norm(point)
            else:
                basis = orthonormal_complement(x.reshape(1, -1), tol)
                weight_rows = []
                for b in basis:
                    for sign in (1.0, -1.0):
                        result = nnls_cone_feasible(tangent, sign * b, tol)
                        if not result.feasible:
                            status = ISOLABLE
                            witness = result.certificate / np.linalg.norm(
                                result.certificate
                            )
                            break
                        weight_rows.append(result.weights)
                    if status is not None:
                        break
                if status is None:
                    status = NOT_ISOLABLE
                    certificate = (
                        np.array(weight_rows) if weight_rows else np.zeros((0, count))
                    )
        except IterationLimit as exc:
            return VectorVerdict(
                i,
                INDETERMINATE,
                neighbor_count=count,
                neighbor_rank=nb_rank,
                warnings=warnings + (f"iteration limit during cone analysis: {exc}",),
            )

    if validate and status in (ISOLABLE, DEFICIENT_ISOLABLE):
        others = np.delete(system.vectors, i, axis=0)
        try:
            _perturb_search(others, system.vectors[i], witness, alpha, tol)
        except SearchFailed as exc:
            return VectorVerdict(
                i,
                INDETERMINATE,
                neighbor_count=count,
                neighbor_rank=nb_rank,
                warnings=warnings + (f"constructive validation failed: {exc}",),
            )

    return VectorVerdict(
        i,
        status,
        witness=witness,
        certificate=certificate,
        neighbor_count=count,
        neighbor_rank=nb_rank,
        warnings=warnings,
    )


def perturb_replace(
    system: UnitVectorSystem, i: int, witness, tol: Tolerances = DEFAULT_TOL
) -> np.ndarray:
    """Unit vector x' = (x_i + eps w)/||x_i + eps w|| strictly under coherence.

    eps is found by halving so that |<x', y>| < coh(X) - margin for every
    other y, margin = max(1e-12, 1e-6 coh(X)).  The witness must be a unit
    vector orthogonal to x_i (within 1e-8); raises SearchFailed when 60
    halvings give no strict improvement.
    """
    if not 0 <= i < system.size:
        raise ShapeError(f"index {i} out of range")
    w = np.asarray(witness, dtype=float).ravel()
    if w.size != system.dim:
        raise ShapeError(f"witness has dimension {w.size}, expected {system.dim}")
    norm = float(np.linalg.norm(w))
    if norm <= 1e-12:
        raise ValidationError("witness must be a nonzero direction")
    w = w / norm
    x = system.vectors[i]
    if abs(float(w @ x)) > 1e-8:
        raise ValidationError("witness is not orthogonal to the replaced vector")
    alpha = gram(system).coherence
    others = np.delete(system.vectors, i, axis=0)
    cand, _ = _perturb_search(others, x, w, alpha, tol)
    return cand


@dataclass(frozen=True)
class IsolableSet:
    """I(X) with the per-vector verdicts backing it."""

    indices: tuple[int, ...]
    indeterminate: tuple[int, ...]
    verdicts: tuple[VectorVerdict, ...]
    warnings: tuple[str, ...]


def isolable_set(system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL) -> IsolableSet:
    """Indices of all isolated, deficient, and otherwise isolable vectors.

    Indeterminate vectors are listed separately and excluded; removing a
    vector on uncertain evidence could empty a genuine core.
    """
    gm = gram(system)
    verdicts = tuple(
        classify_vector(system, i, tol, gram_matrix=gm) for i in range(system.size)
    )
    indices = tuple(v.index for v in verdicts if v.isolable)
    indeterminate = tuple(v.index for v in verdicts if v.status == INDETERMINATE)
    warnings = []
    if indeterminate:
        warnings.append(
            f"vectors {list(indeterminate)} are indeterminate and were kept (not removed)"
        )
    return IsolableSet(indices, indeterminate, verdicts, tuple(warnings))


@dataclass(frozen=True)
class ReplacementResult:
    system: UnitVectorSystem
    replaced: tuple[int, ...]
    diagnostics: tuple[tuple[str, str, str], ...]
    warnings: tuple[str, ...]


def replace_all_isolable(
    system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL
) -> ReplacementResult:
    """Sequentially replace every isolable vector below the coherence level.

    Vectors are processed in ascending index order; each replacement must
    stay strictly below the original coherence against the current working
    set, with eps additionally capped at half the remaining gap to already
    replaced vectors so earlier replacements are never spoiled.  Isolated
    vectors are kept verbatim (the identity replacement already works).

    The equalities coh(X') = coh(X minus I(X)) = coh(X) hold for inputs
    that genuinely minimize coherence; they are reported as diagnostics,
    not enforced.
    """
    info = isolable_set(system, tol)
    alpha = gram(system).coherence
    work = system.vectors.copy()
    replaced: list[int] = []
    warnings = list(info.warnings)

    for verdict in info.verdicts:
        if not verdict.isolable:
            continue
        i = verdict.index
        if verdict.status == ISOLATED:
            replaced.append(i)
            continue
        x = system.vectors[i]
        prior = [j for j in replaced if not np.array_equal(work[j], system.vectors[j])]
        if prior:
            gaps = alpha - np.abs(work[prior] @ x)
            eps_cap = float(gaps.min()) / 2.0
        else:
            eps_cap = None
        others = np.delete(work, i, axis=0)
        cand = None
        for margin in (None, 1e-10, 1e-14):
            try:
                cand, _ = _perturb_search(
                    others, x, verdict.witness, alpha, tol, eps_cap=eps_cap, margin=margin
                )
                break
            except SearchFailed:
                continue
        if cand is None:
            raise SearchFailed(f"replacement search failed for vector {i}")
        work[i] = cand
        replaced.append(i)

    out = UnitVectorSystem.from_vectors(work, labels=system.labels)
    diagnostics = []
    for i in replaced:
        others = np.delete(work, i, axis=0)
        worst = float(np.max(np.abs(others @ work[i]))) if others.size else -np.inf
        if worst >= alpha:
            raise VerificationError(
                f"replaced vector {i} still meets level {alpha} (worst {worst})"
            )
    diagnostics.append(
        (
            "replaced_strictly_below_level",
            "PASS",
            f"all {len(replaced)} replaced vectors sit strictly below {alpha}",
        )
    )
    survivors = [i for i in range(system.size) if i not in set(replaced)]
    new_coh = gram(out).coherence
    if len(survivors) >= 2:
        rest_coh = gram(system.restrict(survivors)).coherence
        ok = abs(new_coh - rest_coh) <= 1e-9
        diagnostics.append(
            (
                "coherence_preserved",
                "PASS" if ok else "FAIL",
                f"coh(X') = {new_coh!r} vs coh(X \\ I(X)) = {rest_coh!r}"
                + ("" if ok else "; evidence input is not Grassmannian"),
            )
        )
    else:
        diagnostics.append(
            (
                "coherence_preserved",
                "SKIP",
                "fewer than two surviving vectors; no reference coherence",
            )
        )
    return ReplacementResult(out, tuple(replaced), tuple(diagnostics), tuple(warnings))


@dataclass(frozen=True)
class CoreLevel:
    """One step of the peeling iteration (indices refer to the input system)."""

    members: tuple[int, ...]
    removed: tuple[int, ...]
    coherence: float


@dataclass(frozen=True)
class CoreTrace:
    levels: tuple[CoreLevel, ...]
    core: tuple[int, ...]
    warnings: tuple[str, ...]


def core(system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL) -> CoreTrace:
    """Iteratively strip isolable vectors until a fixed point remains.

    Each level records the current member set, the isolable vectors removed
    from it, and its own coherence (recomputed per level; a change from the
    original coherence is flagged, since for coherence-minimizing input the
    level coherences all agree).  An emptied chain returns an empty core
    with a warning: genuine minimizers always stop at >= n + 1 vectors.
    """
    alpha0 = gram(system).coherence
    current = tuple(range(system.size))
    levels: list[CoreLevel] = []
    warnings: list[str] = []
    while True:
        if not current:
            warnings.append(
                "core iteration emptied the set; evidence input is not Grassmannian"
            )
            break
        sub = system.restrict(current)
        coh = gram(sub).coherence
        if abs(coh - alpha0) > tol.neighbor_abs and len(levels) > 0:
            warnings.append(
                f"coherence changed from {alpha0!r} to {coh!r} at level {len(levels)}"
            )
        info = isolable_set(sub, tol)
        warnings.extend(info.warnings)
        removed = tuple(current[j] for j in info.indices)
        levels.append(CoreLevel(current, removed, coh))
        if not removed:
            break
        removed_set = set(removed)
        current = tuple(i for i in current if i not in removed_set)
    return CoreTrace(tuple(levels), current, tuple(warnings))


@dataclass(frozen=True)
class CoreValidation:
    checks: tuple[tuple[str, str, str], ...]

    @property
    def passed(self) -> bool:
        return all(status != "FAIL" for _, status, _ in self.checks)


def validate_core(
    system: UnitVectorSystem, trace: CoreTrace, tol: Tolerances = DEFAULT_TOL
) -> CoreValidation:
    """Check the structural guarantees of the core of a genuine minimizer.

    For coherence zero the core must be the whole system and the spanning
    check is skipped.  Otherwise the core must have at least n + 1 members
    and each member's neighbors *within the core* must span R^n.  Failures
    are labeled as evidence that the input is not a coherence minimizer;
    they never raise.
    """
    n = system.dim
    checks: list[tuple[str, str, str]] = []
    alpha0 = gram(system).coherence
    if alpha0 <= tol.neighbor_abs:
        full = trace.core == tuple(range(system.size))
        checks.append(
            (
                "orthogonal_case_full_core",
                "PASS" if full else "FAIL",
                "coherence is zero, so the core must be the whole system"
                + ("" if full else "; evidence input is not Grassmannian"),
            )
        )
        checks.append(("core_neighbors_span", "SKIP", "spanning check skipped at coherence zero"))
        return CoreValidation(tuple(checks))

    size_ok = len(trace.core) >= n + 1
    checks.append(
        (
            "core_size_at_least_n_plus_1",
            "PASS" if size_ok else "FAIL",
            f"|core| = {len(trace.core)}, n + 1 = {n + 1}"
            + ("" if size_ok else "; evidence input is not Grassmannian"),
        )
    )
    if not trace.core:
        checks.append(("core_neighbors_span", "FAIL", "core is empty"))
        return CoreValidation(tuple(checks))

    sub = system.restrict(trace.core)
    gm = gram(sub)
    failures = []
    for local in range(sub.size):
        nb = neighbors(sub, local, gm.coherence, tol, gram_matrix=gm)
        if not nb.indices or rank_of(sub.vectors[list(nb.indices)], tol) < n:
            failures.append(trace.core[local])
    span_ok = not failures
    checks.append(
        (
            "core_neighbors_span",
            "PASS" if span_ok else "FAIL",
            "every core vector meets a spanning family at the packing angle"
            if span_ok
            else f"core vectors {failures} lack spanning neighbor sets; "
            "evidence input is not Grassmannian",
        )
    )
    return CoreValidation(tuple(checks))


FULL_CORE = "full_core"
EQUIANGULAR_SUBSET = "equiangular_subset"
INAPPLICABLE = "inapplicable"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DichotomyVerdict:
    """Outcome of the n+2 dichotomy: full core or an equiangular n+1 subset."""

    kind: str
    indices: tuple[int, ...] | None
    warnings: tuple[str, ...]


def classify_n_plus_2(
    system: UnitVectorSystem,
    tol: Tolerances = DEFAULT_TOL,
    trace: CoreTrace | None = None,
) -> DichotomyVerdict:
    """For m = n + 2: either the core is everything or an equiangular n+1 set.

    Inapplicable unless m = n + 2.  Any other outcome (including an n+1
    core that fails the pairwise-angle check) is reported as inconclusive
    with a not-a-minimizer warning.  A precomputed ``trace`` is reused when
    given.
    """
    m, n = system.size, system.dim
    if m != n + 2:
        return DichotomyVerdict(INAPPLICABLE, None, (f"m = {m} is not n + 2 = {n + 2}",))
    if trace is None:
        trace = core(system, tol)
    if trace.core == tuple(range(m)):
        return DichotomyVerdict(FULL_CORE, trace.core, trace.warnings)
    if len(trace.core) == n + 1:
        alpha = gram(system).coherence
        sub = system.restrict(trace.core)
        G = gram(sub).entries
        mask = ~np.eye(sub.size, dtype=bool)
        if float(np.max(np.abs(np.abs(G[mask]) - alpha))) <= tol.neighbor_abs:
            return DichotomyVerdict(EQUIANGULAR_SUBSET, trace.core, trace.warnings)
        return DichotomyVerdict(
            INCONCLUSIVE,
            trace.core,
            trace.warnings
            + (
                "core has n + 1 vectors but is not equiangular at the coherence; "
                "evidence input is not Grassmannian",
            ),
        )
    return DichotomyVerdict(
        INCONCLUSIVE,
        trace.core,
        trace.warnings
        + (
            f"core size {len(trace.core)} matches neither branch; "
            "evidence input is not Grassmannian",
        ),
    )


@dataclass(frozen=True)
class DiagnosticResult:
    name: str
    status: str
    detail: str


def tight_grassmannian_diagnostic(
    system: UnitVectorSystem,
    tol: Tolerances = DEFAULT_TOL,
    presumed_grassmannian: bool = False,
) -> DiagnosticResult:
    """No tight coherence minimizer of n + 2 vectors exists for n > 2.

    Fails only when the caller presumes the input is such a minimizer and
    it turns out tight with m = n + 2, n > 2; everything else passes or is
    skipped.
    """
    name = "tight_n_plus_2_forbidden"
    m, n = system.size, system.dim
    if m != n + 2:
        return DiagnosticResult(name, "SKIP", f"m = {m} is not n + 2")
    if n <= 2:
        return DiagnosticResult(name, "SKIP", "only applies for n > 2")
    if not tightness(system, tol).tight:
        return DiagnosticResult(name, "SKIP", "system is not tight")
    if presumed_grassmannian:
        return DiagnosticResult(
            name,
            "FAIL",
            "a tight system of n + 2 vectors in R^n (n > 2) cannot minimize "
            "coherence: the input is not Grassmannian or the tolerances are wrong",
        )
    return DiagnosticResult(
        name,
        "PASS",
        "tight with m = n + 2 and n > 2, hence certainly not a coherence minimizer",
    )


@dataclass(frozen=True)
class EigenSpanReport:
    """Distances from top frame-operator eigenvectors to span({x} u neighbors)."""

    status: str
    multiplicity: int
    distances: tuple[tuple[float, ...], ...]
    detail: str


def eigen_span_diagnostic(
    system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL
) -> EigenSpanReport:
    """Check that the top eigenvector lies in span({x} union neighbors of x).

    Holds for coherence minimizers whose top eigenvalue is extremal; with a
    degenerate top eigenvalue the statement picks one particular
    eigenvector, so the check reports distances for each candidate and is
    labeled AMBIGUOUS instead of pass/fail.
    """
    m, n = system.size, system.dim
    if m <= n:
        return EigenSpanReport("SKIP", 0, (), "needs m > n")
    spec = sym_eig(frame_operator(system), tol)
    k = spec.top_multiplicity(tol.eq_abs)
    gm = gram(system)
    per_vector: list[tuple[float, ...]] = []
    for i in range(m):
        nb = neighbors(system, i, gm.coherence, tol, gram_matrix=gm)
        rows = system.vectors[[i] + list(nb.indices)]
        basis = _orthonormal_rows(rows, rank_of(rows, tol))
        dists = []
        for j in range(k):
            e = spec.eigenvectors[:, j]
            resid = e - basis.T @ (basis @ e)
            dists.append(float(np.linalg.norm(resid)))
        per_vector.append(tuple(dists))
    if k > 1:
        return EigenSpanReport(
            "AMBIGUOUS",
            k,
            tuple(per_vector),
            "top eigenvalue is degenerate; the property is stated for one specific eigenvector",
        )
    worst = max(d[0] for d in per_vector)
    ok = worst <= 1e-7
    return EigenSpanReport(
        "PASS" if ok else "FAIL",
        k,
        tuple(per_vector),
        f"max distance {worst:.3e}"
        + ("" if ok else "; evidence input is not Grassmannian"),
    )
