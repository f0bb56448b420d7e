"""Recovery of the ramification points and the base curve from period data.

Given only the subspace W of C^(h x N) spanned by unknown rank-1 tensors
x_k (x) y_k (with no two x's proportional and the y's a basis), the rank-1
elements of W are exactly the generators, and they are found constructively
by simultaneous diagonalization: contracting the basis stack along the
h-dimensional factor with two random covectors gives a pencil P1 = Y D1 C,
P2 = Y D2 C whose quotient P1 P2^{-1} = Y D1 D2^{-1} Y^{-1} is diagonalized
by the hidden frame Y; back-substitution against the dual frame isolates
each x_k as the dominant singular direction of a rank-1 slice.  Eigenvalue
collisions and ill-conditioned contractions are retried with fresh
randomness.

The recovered x's are points of P^(h-1) lying on the degree h-1 canonical
curve; the curve itself is recovered as the intersection of the quadrics
through them, computed as the nullspace of the degree-2 Veronese evaluation
matrix.  A brute-force oracle (multi-start alternating projection onto the
rank-1 variety) cross-checks the extraction on tiny instances.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import linalg
from .errors import TorelliLabError, UsageError
from .ivhs import IVHSPresentation, canonical_point, normalize_phase, synthesize
from .linalg import EigenConvergenceError
from .ramification import ramification_divisor
from .surfaces import WeierstrassSurface, invariants


class DegeneratePresentationError(TorelliLabError):
    """No rank-1 frame was extracted within the retry budget."""


class InterpolationDimensionError(TorelliLabError):
    """The space of quadrics through the recovered points has the wrong
    dimension, signalling a failed recovery or a non-generic input."""


class StageError(TorelliLabError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage: str, message: str):
        super().__init__(message)
        self.stage = stage


@dataclass(frozen=True)
class RecoveryConfig:
    """Tolerances of the pipeline (defaults validated for h <= 6, N <= 68)."""

    confidence_min: float = 0.999
    nullspace_rel_tol: float = 1e-8
    match_tol: float = 1e-6
    eig_gap_min: float = 1e-6
    contraction_cond_max: float = 1e8
    retries: int = 10
    oracle_sigma_ratio: float = 1e-8
    oracle_starts_per_dim: int = 120


DEFAULT_CONFIG = RecoveryConfig()


@dataclass(frozen=True)
class RankOneFactor:
    """A recovered tensor direction: x in P^(h-1), y in P^(N-1), and the
    rank-1 confidence 1 - sigma_2/sigma_1 of its extracted slice."""

    x: np.ndarray
    y: np.ndarray
    confidence: float

    def __post_init__(self):
        if not (0.0 <= self.confidence <= 1.0):
            raise ValueError("confidence must lie in [0, 1]")


def chordal_distance(x: np.ndarray, y: np.ndarray) -> float:
    """Sine of the principal angle between two complex lines."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    return float(np.sqrt(max(0.0, 1.0 - abs(np.vdot(x, y)) ** 2)))


def _factor_sort_key(f: RankOneFactor):
    return tuple(np.round(
        np.concatenate([f.x.real, f.x.imag]), 9))


def extract_rank_ones(presentation: IVHSPresentation, seed: int,
                      config: RecoveryConfig = DEFAULT_CONFIG):
    """All N rank-1 factors of the presentation, each with confidence above
    the acceptance threshold, or ``DegeneratePresentationError``."""
    basis = presentation.basis
    n, h = presentation.N, presentation.h
    if n < 2:
        raise UsageError("extraction needs N >= 2")
    rng = np.random.default_rng(seed)
    reasons = []
    for _ in range(config.retries):
        u1 = rng.standard_normal(h) + 1j * rng.standard_normal(h)
        u2 = rng.standard_normal(h) + 1j * rng.standard_normal(h)
        p1 = np.einsum("d,jda->aj", u1, basis)
        p2 = np.einsum("d,jda->aj", u2, basis)
        sv = np.linalg.svd(p2, compute_uv=False)
        if sv[-1] == 0.0 or sv[0] / sv[-1] > config.contraction_cond_max:
            reasons.append("ill-conditioned contraction")
            continue
        pencil = np.linalg.solve(p2.T, p1.T).T
        try:
            eig = linalg.eig_general(pencil)
        except EigenConvergenceError:
            reasons.append("eigeniteration failed")
            continue
        if eig.defective:
            reasons.append("defective eigenframe")
            continue
        scale = max(1.0, float(np.max(np.abs(eig.values))))
        gaps = np.abs(eig.values[:, None] - eig.values[None, :])
        np.fill_diagonal(gaps, np.inf)
        if float(np.min(gaps)) < config.eig_gap_min * scale:
            reasons.append("eigenvalue collision")
            continue
        y_frame = eig.vectors
        try:
            dual = np.linalg.solve(y_frame.T, np.eye(n, dtype=complex))
        except np.linalg.LinAlgError:
            reasons.append("singular eigenframe")
            continue
        slices = np.einsum("jda,ak->kdj", basis, dual)
        factors = []
        for k in range(n):
            u, s, _ = np.linalg.svd(slices[k])
            confidence = float(1.0 - s[1] / s[0]) if s[0] > 0 else 0.0
            if confidence <= config.confidence_min:
                break
            factors.append(RankOneFactor(
                x=normalize_phase(u[:, 0]),
                y=normalize_phase(y_frame[:, k]),
                confidence=confidence,
            ))
        if len(factors) == n:
            return sorted(factors, key=_factor_sort_key)
        reasons.append("slice not rank 1")
    raise DegeneratePresentationError(
        "degenerate presentation: no rank-1 frame found in "
        f"{config.retries} attempts ({'; '.join(sorted(set(reasons)))})")


def rank_one_oracle_bruteforce(presentation: IVHSPresentation, seed: int = 0,
                               n_starts=None,
                               config: RecoveryConfig = DEFAULT_CONFIG):
    """Independent search for every rank-1 element of the subspace.

    Multi-start alternating projection between the subspace and the rank-1
    variety, accepting local minimizers of sigma_2/sigma_1 below 1e-8 and
    deduplicating projectively.  Cost-gated to N <= 6, h <= 3.
    """
    n, h = presentation.N, presentation.h
    if n > 6 or h > 3:
        raise UsageError("brute-force oracle is gated to N <= 6 and h <= 3")
    if n_starts is None:
        n_starts = config.oracle_starts_per_dim * n
    flat = presentation.flattened()
    _, _, vh = np.linalg.svd(flat, full_matrices=False)
    ortho = vh[:n]                      # orthonormal rows spanning the subspace
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(n_starts):
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        c /= np.linalg.norm(c)
        prev = None
        for _ in range(500):
            m = (c @ ortho).reshape(h, n)
            u, s, vvh = np.linalg.svd(m, full_matrices=False)
            rank1 = s[0] * np.outer(u[:, 0], vvh[0])
            c = np.conj(ortho) @ rank1.reshape(-1)
            norm = np.linalg.norm(c)
            if norm < 1e-13:
                break
            c /= norm
            if prev is not None and abs(1.0 - abs(np.vdot(c, prev))) < 1e-28:
                break
            prev = c
        m = (c @ ortho).reshape(h, n)
        u, s, vvh = np.linalg.svd(m, full_matrices=False)
        if s[0] <= 1e-13 or s[1] / s[0] >= config.oracle_sigma_ratio:
            continue
        x = normalize_phase(u[:, 0])
        y = normalize_phase(vvh[0].conj())
        if any(chordal_distance(x, f.x) < 1e-6 and
               chordal_distance(y, f.y) < 1e-6 for f in found):
            continue
        found.append(RankOneFactor(x=x, y=y,
                                   confidence=float(1.0 - s[1] / s[0])))
    return sorted(found, key=_factor_sort_key)


@dataclass(frozen=True)
class MatchReport:
    permutation: tuple
    max_chordal: float
    mean_chordal: float


@dataclass(frozen=True)
class RecoveredGeometry:
    z_points: np.ndarray            # N x h unit rows
    quadric_basis: tuple            # symmetric h x h matrices, Frobenius-unit
    quadric_dim: int
    point_residual_max: float
    match: MatchReport = None


def _veronese2(x: np.ndarray) -> np.ndarray:
    """Degree-2 monomials x_i x_j, i <= j, in lexicographic order."""
    h = len(x)
    return np.array([x[i] * x[j] for i in range(h) for j in range(i, h)],
                    dtype=complex)


def expected_quadric_dimension(h: int) -> int:
    """Dimension of the quadrics through a rational normal curve of degree
    h-1 in P^(h-1)."""
    return (h - 1) * (h - 2) // 2


def recover_geometry(factors, h: int,
                     config: RecoveryConfig = DEFAULT_CONFIG) -> RecoveredGeometry:
    """Quadric interpolation through the recovered points of P^(h-1)."""
    n = len(factors)
    expected_n = 10 * h + 8
    if n != expected_n:
        raise UsageError(
            f"expected N = 10h+8 = {expected_n} factors for h = {h}, got {n}")
    z = np.vstack([f.x for f in factors])
    rows = np.vstack([_veronese2(z[i]) for i in range(n)])
    null = linalg.nullspace(rows, config.nullspace_rel_tol)
    dim = null.shape[1]
    if dim != expected_quadric_dimension(h):
        raise InterpolationDimensionError(
            f"interpolation dimension mismatch: got {dim} quadrics, expected "
            f"{expected_quadric_dimension(h)} for h = {h}")
    quadrics = []
    for j in range(dim):
        q = np.zeros((h, h), dtype=complex)
        idx = 0
        for i in range(h):
            for k in range(i, h):
                c = null[idx, j]
                if i == k:
                    q[i, i] = c
                else:
                    q[i, k] = c / 2
                    q[k, i] = c / 2
                idx += 1
        quadrics.append(q / np.linalg.norm(q))
    residual = 0.0
    for i in range(n):
        for q in quadrics:
            residual = max(residual, abs(z[i] @ q @ z[i]))
    return RecoveredGeometry(
        z_points=z,
        quadric_basis=tuple(quadrics),
        quadric_dim=dim,
        point_residual_max=float(residual),
    )


@dataclass(frozen=True)
class RoundTripReport:
    h: int
    N: int
    seed: int
    status: str
    max_chordal: float = None
    mean_chordal: float = None
    quadric_dim: int = None
    residual_max: float = None
    point_residual_max: float = None
    recovered_dL: int = None
    dL_matches: bool = None
    min_confidence: float = None
    stage_timings_ms: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "h": self.h,
            "N": self.N,
            "seed": self.seed,
            "max_chordal": self.max_chordal,
            "mean_chordal": self.mean_chordal,
            "quadric_dim": self.quadric_dim,
            "residual_max": self.residual_max,
            "point_residual_max": self.point_residual_max,
            "recovered_dL": self.recovered_dL,
            "dL_matches": self.dL_matches,
            "min_confidence": self.min_confidence,
            "stage_timings_ms": dict(self.stage_timings_ms),
            "status": self.status,
        }


def match_points(recovered: np.ndarray, truth: np.ndarray) -> MatchReport:
    """Optimal bipartite matching of projective point sets in chordal
    distance (greedy warm starts are subsumed by the exact assignment)."""
    n = recovered.shape[0]
    rec = recovered / np.linalg.norm(recovered, axis=1, keepdims=True)
    tru = truth / np.linalg.norm(truth, axis=1, keepdims=True)
    overlap = np.abs(rec.conj() @ tru.T)
    dist = np.sqrt(np.clip(1.0 - overlap ** 2, 0.0, None))
    rows, cols = linear_sum_assignment(dist)
    order = np.empty(n, dtype=int)
    order[rows] = cols
    matched = dist[rows, cols]
    return MatchReport(
        permutation=tuple(int(c) for c in order),
        max_chordal=float(matched.max()),
        mean_chordal=float(matched.mean()),
    )


def _curve_samples(h: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Fresh unit Veronese samples of the degree h-1 rational normal curve."""
    from .binforms import ProjectivePointP1

    samples = []
    for _ in range(count):
        z = rng.standard_normal() + 1j * rng.standard_normal()
        samples.append(canonical_point(ProjectivePointP1.from_affine(z), h).x)
    return np.vstack(samples)


def roundtrip(s: WeierstrassSurface, seed: int,
              config: RecoveryConfig = DEFAULT_CONFIG,
              frame_seed=None, corrupt_span: bool = False,
              curve_sample_count: int = 100) -> RoundTripReport:
    """Forward synthesis, extraction, interpolation, and ground-truth match.

    Any stage failure is re-raised as :class:`StageError` tagged with the
    stage name.  ``corrupt_span`` perturbs the synthesized basis by a random
    non-rank-1 matrix, a negative control that must make extraction fail.
    """
    inv = invariants(s)
    timings = {}

    def run(stage, fn):
        t0 = time.perf_counter()
        try:
            out = fn()
        except TorelliLabError as exc:
            raise StageError(stage, f"{stage}: {exc}") from exc
        timings[stage] = (time.perf_counter() - t0) * 1000.0
        return out

    presentation, truth = run(
        "synthesize", lambda: synthesize(s, seed, frame_seed=frame_seed))
    if corrupt_span:
        rng = np.random.default_rng(seed + 10**6)
        noise = rng.standard_normal((inv.h, inv.N)) \
            + 1j * rng.standard_normal((inv.h, inv.N))
        basis = presentation.basis.copy()
        basis[-1] = basis[-1] + noise * np.linalg.norm(basis[-1]) / np.linalg.norm(noise)
        presentation = IVHSPresentation(
            h=inv.h, N=inv.N, basis=basis, gram=presentation.gram)
    factors = run("extract", lambda: extract_rank_ones(
        presentation, seed, config))
    geometry = run("recover", lambda: recover_geometry(
        factors, inv.h, config))
    truth_x = np.vstack([ep.x for ep in truth.points])
    match = run("match", lambda: match_points(geometry.z_points, truth_x))
    if match.max_chordal > config.match_tol:
        raise StageError(
            "match", f"match: recovered points miss the ground truth "
            f"(max chordal {match.max_chordal:.3e} > {config.match_tol})")

    rng = np.random.default_rng(seed + 2 * 10**6)
    samples = _curve_samples(inv.h, curve_sample_count, rng)
    residual = 0.0
    for v in samples:
        for q in geometry.quadric_basis:
            residual = max(residual, abs(v @ q @ v))

    recovered_dl = (inv.h - 1) - (2 * s.q - 2)
    return RoundTripReport(
        h=inv.h,
        N=inv.N,
        seed=seed,
        status="ok",
        max_chordal=match.max_chordal,
        mean_chordal=match.mean_chordal,
        quadric_dim=geometry.quadric_dim,
        residual_max=float(residual),
        point_residual_max=geometry.point_residual_max,
        recovered_dL=recovered_dl,
        dL_matches=recovered_dl == s.dL,
        min_confidence=float(min(f.confidence for f in factors)),
        stage_timings_ms=timings,
    )


def true_canonical_points(s: WeierstrassSurface) -> np.ndarray:
    """Exact-path canonical images of the true ramification points."""
    inv = invariants(s)
    ram = ramification_divisor(s)
    return np.vstack([canonical_point(p, inv.h).x for p, _ in ram.divisor])
