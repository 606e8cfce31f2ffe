"""Unit-norm vector systems and their packing structure.

The central object is :class:`UnitVectorSystem`: m unit vectors in R^n,
stored one per row.  On top of it live the Gram matrix and coherence, the
level-alpha neighbor sets, the frame operator with its spectrum, tightness
and equiangularity predicates, the Welch/orthoplex/Gerzon bound card, and
frame reconstruction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InconsistentVerdict,
    NonFinite,
    NormError,
    NotAFrame,
    ShapeError,
)
from .numerics import DEFAULT_TOL, SpectralData, Tolerances, rank_of, sym_eig

# Rows farther than this from unit norm are rejected; closer ones are
# renormalized with a warning (file round-tripping loses digits).
RENORM_LIMIT = 1e-6


@dataclass(frozen=True)
class UnitVectorSystem:
    """An ordered system of m unit vectors in R^n (rows of ``vectors``)."""

    vectors: np.ndarray
    labels: tuple[str, ...] | None = None
    warnings: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def from_vectors(cls, rows, labels=None) -> "UnitVectorSystem":
        """Validate and build a system, renormalizing rows within 1e-6 of unit."""
        arr = np.asarray(rows, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ShapeError(f"need an m x n array with m, n >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NonFinite("vector entries contain NaN or Inf")
        norms = np.linalg.norm(arr, axis=1)
        off = np.abs(norms - 1.0)
        bad = np.flatnonzero(off > RENORM_LIMIT)
        if bad.size:
            i = int(bad[0])
            raise NormError(f"row {i} has norm {norms[i]:.9g}, more than {RENORM_LIMIT} from 1")
        warnings = []
        to_fix = np.flatnonzero(off > 10 * np.finfo(float).eps)
        if to_fix.size:
            arr = arr / norms[:, None]
            warnings.append(
                f"renormalized {to_fix.size} row(s) within {RENORM_LIMIT} of unit norm"
            )
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != arr.shape[0]:
                raise ShapeError(f"{len(labels)} labels for {arr.shape[0]} vectors")
        arr = arr.copy()
        arr.flags.writeable = False
        return cls(arr, labels, tuple(warnings))

    def restrict(self, indices) -> "UnitVectorSystem":
        """Subsystem on the given row indices, preserving order and labels."""
        idx = [int(i) for i in indices]
        if not idx:
            raise ShapeError("cannot restrict to an empty index set")
        if any(i < 0 or i >= self.size for i in idx):
            raise ShapeError(f"index out of range for a system of {self.size} vectors")
        sub = self.vectors[idx].copy()
        sub.flags.writeable = False
        labels = tuple(self.labels[i] for i in idx) if self.labels else None
        return UnitVectorSystem(sub, labels, ())


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise inner products with the coherence max_{i!=j} |G_ij|."""

    entries: np.ndarray
    coherence: float


@dataclass(frozen=True)
class NeighborSet:
    """Indices meeting vector ``owner`` at |inner product| = level, with signs."""

    owner: int
    level: float
    indices: tuple[int, ...]
    signs: tuple[float, ...]


@dataclass(frozen=True)
class TightnessVerdict:
    """Whether the frame operator is (m/n) I within eq_abs."""

    tight: bool
    parseval: bool
    bound: float | None
    deviation: float

    @property
    def kind(self) -> str:
        if self.parseval:
            return "parseval"
        return "tight" if self.tight else "not_tight"


@dataclass(frozen=True)
class BoundsCard:
    """Welch, orthoplex, and Gerzon reference values next to the coherence."""

    m: int
    n: int
    coherence: float
    welch: float | None
    orthoplex: float
    gerzon_max_m: int
    meets_welch: bool | None
    exceeds_gerzon: bool


def welch_bound(m: int, n: int) -> float:
    """sqrt((m - n) / (n (m - 1))); requires m > n."""
    if m <= n:
        raise ValueError(f"Welch bound needs m > n, got m={m}, n={n}")
    return math.sqrt((m - n) / (n * (m - 1.0)))


def gram(system: UnitVectorSystem) -> GramMatrix:
    """Gram matrix and coherence of the system."""
    V = system.vectors
    G = V @ V.T
    G = 0.5 * (G + G.T)
    m = G.shape[0]
    if m == 1:
        coherence = 0.0
    else:
        off = np.abs(G - np.diag(np.diag(G)))
        coherence = float(off.max())
    G.flags.writeable = False
    return GramMatrix(G, coherence)


def neighbors(
    system: UnitVectorSystem,
    i: int,
    level: float,
    tol: Tolerances = DEFAULT_TOL,
    gram_matrix: GramMatrix | None = None,
) -> NeighborSet:
    """Indices j != i with | |G_ij| - level | <= neighbor_abs, with signs."""
    if not 0 <= i < system.size:
        raise ShapeError(f"index {i} out of range")
    if not 0.0 <= level <= 1.0:
        raise ValueError(f"level must lie in [0, 1], got {level}")
    G = (gram_matrix or gram(system)).entries
    row = G[i]
    hits = []
    signs = []
    for j in range(system.size):
        if j == i:
            continue
        if abs(abs(row[j]) - level) <= tol.neighbor_abs:
            hits.append(j)
            signs.append(1.0 if row[j] >= 0.0 else -1.0)
    return NeighborSet(i, level, tuple(hits), tuple(signs))


def frame_operator(system: UnitVectorSystem) -> np.ndarray:
    """S = sum_i x_i x_i^T, an n x n positive semidefinite matrix."""
    V = system.vectors
    S = V.T @ V
    S = 0.5 * (S + S.T)
    S.flags.writeable = False
    return S


def spectral_data(system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL) -> SpectralData:
    """Spectrum of the frame operator (descending, orthonormal columns)."""
    return sym_eig(frame_operator(system), tol)


def spans(system: UnitVectorSystem, omit=None, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff the vectors outside ``omit`` span R^n."""
    if omit:
        omitted = {int(i) for i in omit}
        keep = [i for i in range(system.size) if i not in omitted]
        if not keep:
            raise ShapeError("omission leaves no vectors")
        M = system.vectors[keep]
    else:
        M = system.vectors
    return rank_of(M, tol) == system.dim


def tightness(system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL) -> TightnessVerdict:
    """Tight iff S = (m/n) I within eq_abs entrywise; Parseval iff m/n = 1 too."""
    S = frame_operator(system)
    bound = system.size / system.dim
    deviation = float(np.max(np.abs(S - bound * np.eye(system.dim))))
    tight = deviation <= tol.eq_abs
    parseval = tight and abs(bound - 1.0) <= tol.eq_abs
    return TightnessVerdict(tight, parseval, bound if tight else None, deviation)


def is_equiangular(
    system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL
) -> tuple[bool, float | None]:
    """Whether all off-diagonal |G_ij| agree within neighbor_abs.

    Returns (flag, angle); the angle reported is the coherence.
    """
    if system.size < 2:
        raise ShapeError("equiangularity needs at least two vectors")
    gm = gram(system)
    m = system.size
    mask = ~np.eye(m, dtype=bool)
    off = np.abs(gm.entries[mask])
    spread = float(off.max() - off.min())
    if spread <= tol.neighbor_abs:
        return True, gm.coherence
    return False, None


def is_etf(system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Tight and equiangular; cross-checked against Welch equality when m > n.

    An orthonormal basis (m = n, coherence 0) counts as a degenerate ETF.
    Raises InconsistentVerdict if the structural route and the Welch-equality
    route disagree, which signals numerical trouble.
    """
    m, n = system.size, system.dim
    if m < 2:
        raise ShapeError("ETF test needs at least two vectors")
    equi, _ = is_equiangular(system, tol)
    structural = tightness(system, tol).tight and equi
    if m > n:
        gm = gram(system)
        welch_route = abs(gm.coherence - welch_bound(m, n)) <= 1e-7
        if welch_route != structural:
            raise InconsistentVerdict(
                "tight+equiangular and Welch-equality routes disagree "
                f"(coherence={gm.coherence!r}, welch={welch_bound(m, n)!r})"
            )
    return structural


def bounds_card(system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL) -> BoundsCard:
    """Welch / orthoplex / Gerzon values next to the measured coherence.

    The Welch field is None (inapplicable) when m <= n rather than a
    misleading zero.
    """
    m, n = system.size, system.dim
    alpha = gram(system).coherence
    if m > n:
        w = welch_bound(m, n)
        meets = abs(alpha - w) <= 1e-7
    else:
        w = None
        meets = None
    gerzon = n * (n + 1) // 2
    return BoundsCard(
        m=m,
        n=n,
        coherence=alpha,
        welch=w,
        orthoplex=1.0 / math.sqrt(n),
        gerzon_max_m=gerzon,
        meets_welch=meets,
        exceeds_gerzon=m > gerzon,
    )


def reconstruct(
    system: UnitVectorSystem, target, tol: Tolerances = DEFAULT_TOL
) -> np.ndarray:
    """Reconstruct target from its frame coefficients.

    Uses sum_i <target, x_i> S^{-1} x_i in general; for a tight frame the
    inverse collapses to division by the frame bound and that route is used.
    Raises NotAFrame if the system does not span.
    """
    t = np.asarray(target, dtype=float).ravel()
    if t.size != system.dim:
        raise ShapeError(f"target has dimension {t.size}, expected {system.dim}")
    if not np.all(np.isfinite(t)):
        raise NonFinite("target contains NaN or Inf")
    if not spans(system, tol=tol):
        raise NotAFrame("system does not span R^n; frame operator is singular")
    V = system.vectors
    coeffs = V @ t
    synthesized = coeffs @ V  # = S t
    verdict = tightness(system, tol)
    if verdict.tight:
        return synthesized / verdict.bound
    spec = sym_eig(frame_operator(system), tol)
    comps = spec.eigenvectors.T @ synthesized
    return spec.eigenvectors @ (comps / spec.eigenvalues)


@dataclass(frozen=True)
class NeighborCountReport:
    """Per-vector packing-neighbor counts with tight-frame parity diagnostics."""

    level: float
    counts: tuple[int, ...]
    checks: tuple[tuple[str, str, str], ...] = field(default_factory=tuple)


def neighbor_count_report(
    system: UnitVectorSystem, tol: Tolerances = DEFAULT_TOL
) -> NeighborCountReport:
    """Counts |x_X^alpha| at alpha = coherence, plus parity diagnostics.

    For a tight non-ETF system every count must be <= m - 2, and for odd m
    some count must be <= m - 3; those facts hold for any tight unit-norm
    frame, so a FAIL means the input or the tolerances are inconsistent.
    """
    gm = gram(system)
    alpha = gm.coherence
    m = system.size
    counts = tuple(
        len(neighbors(system, i, alpha, tol, gram_matrix=gm).indices) for i in range(m)
    )
    checks = []
    if m >= 2 and tightness(system, tol).tight and not is_etf(system, tol):
        if max(counts) <= m - 2:
            checks.append(("max_count_le_m_minus_2", "PASS", f"max count {max(counts)} <= {m - 2}"))
        else:
            checks.append(
                (
                    "max_count_le_m_minus_2",
                    "FAIL",
                    f"max count {max(counts)} > {m - 2}: tight non-equiangular systems cannot "
                    "have a full neighbor set; input or tolerances are inconsistent",
                )
            )
        if m % 2 == 1:
            if min(counts) <= m - 3:
                checks.append(("odd_m_some_count_le_m_minus_3", "PASS", f"min count {min(counts)} <= {m - 3}"))
            else:
                checks.append(
                    (
                        "odd_m_some_count_le_m_minus_3",
                        "FAIL",
                        f"all counts exceed {m - 3} with odd m; Gram parity is violated",
                    )
                )
    else:
        checks.append(("tight_nonequiangular_counts", "SKIP", "applies to tight non-ETF systems only"))
    return NeighborCountReport(alpha, counts, tuple(checks))
