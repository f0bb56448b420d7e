"""Synthetic infinitesimal period data for a general surface.

The derivative of the period map at a general surface is spanned by one
rank-1 tensor per ramification point a: the evaluation covector of the
canonical embedding at a, times a class attached to the fibre over a.  The
canonical embedding of the genus-0 base is the degree h-1 Veronese, so the
evaluation covectors are explicit monomial vectors.  The attached classes
are transcendental; they form an orthogonal frame that the recovery argument
only uses through its linear independence, so this module models them by a
unitary frame drawn once per surface (from a digest of the exact surface
data, overridable), while the per-synthesis seed draws the unknown scalar
weights and a well-conditioned change of basis that hides the rank-1
structure.  The spanned subspace of C^(h x N) is then an invariant of the
surface, not of the synthesis seed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .binforms import ProjectivePointP1
from .errors import TorelliLabError, UsageError
from .ramification import is_general, ramification_divisor
from .surfaces import WeierstrassSurface, invariants, surface_to_json_dict

LAMBDA_MIN = 0.1
LAMBDA_MAX = 10.0
MIXER_COND_MAX = 100.0
BASIS_INDEPENDENCE_TOL = 1e-10


class NonGenericSurfaceError(TorelliLabError):
    """The forward model needs a general surface with reduced ramification."""


class InvalidPresentationError(TorelliLabError):
    """Basis matrices fail the linear-independence contract."""


def normalize_phase(x: np.ndarray) -> np.ndarray:
    """Unit norm with the first non-negligible entry rotated real-positive."""
    x = np.asarray(x, dtype=complex)
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    x = x / norm
    idx = int(np.argmax(np.abs(x) > 1e-12))
    pivot = x[idx]
    return x * (abs(pivot) / pivot)


@dataclass(frozen=True)
class EmbeddedPoint:
    """A base point with its canonical-embedding image in P^(h-1)."""

    base_point: ProjectivePointP1
    x: np.ndarray


def canonical_point(a: ProjectivePointP1, h: int) -> EmbeddedPoint:
    """Degree h-1 Veronese image of a point of P^1, normalized.

    On the affine chart this is the direction (1, a, a^2, ..., a^(h-1));
    the homogeneous monomials extend it through a = infinity.
    """
    if h < 3:
        raise UsageError("the canonical embedding needs h >= 3")
    z0, z1 = a.z0, a.z1
    vec = np.array([z0 ** (h - 1 - k) * z1 ** k for k in range(h)],
                   dtype=complex)
    return EmbeddedPoint(base_point=a, x=normalize_phase(vec))


class IVHSPresentation:
    """An N-dimensional subspace of C^(h x N) given by a basis of matrices."""

    __slots__ = ("h", "N", "basis", "gram")

    def __init__(self, h: int, N: int, basis, gram=None):
        basis = np.asarray(basis, dtype=complex)
        if basis.shape != (N, h, N):
            raise InvalidPresentationError(
                f"expected basis of shape {(N, h, N)}, got {basis.shape}")
        if not np.all(np.isfinite(basis)):
            raise InvalidPresentationError("basis contains NaN or Inf")
        flat = basis.reshape(N, h * N)
        sv = np.linalg.svd(flat, compute_uv=False)
        if sv[0] == 0.0 or sv[-1] <= BASIS_INDEPENDENCE_TOL * sv[0]:
            raise InvalidPresentationError(
                "basis matrices are not numerically independent "
                f"(sigma_min/sigma_max = {sv[-1] / max(sv[0], 1e-300):.2e})")
        object.__setattr__(self, "h", int(h))
        object.__setattr__(self, "N", int(N))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gram", None if gram is None
                           else np.asarray(gram, dtype=complex))

    def __setattr__(self, name, value):
        raise AttributeError("IVHSPresentation is immutable")

    def flattened(self) -> np.ndarray:
        return self.basis.reshape(self.N, self.h * self.N)


@dataclass(frozen=True)
class GroundTruth:
    points: tuple          # EmbeddedPoint per ramification point
    lambdas: np.ndarray
    y_frame: np.ndarray    # unitary; column k models the class at point k
    mixer: np.ndarray


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _surface_frame_seed(s: WeierstrassSurface) -> int:
    digest = hashlib.sha256(
        json.dumps(surface_to_json_dict(s), sort_keys=True).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def synthesize(s: WeierstrassSurface, seed: int, frame_seed=None,
               lambda_window=(LAMBDA_MIN, LAMBDA_MAX),
               mixer_cond_max: float = MIXER_COND_MAX):
    """Forward model: (presentation, ground truth) for a general surface.

    The unitary frame is drawn from ``frame_seed`` when given, otherwise
    from a digest of the exact surface data, so that by default the spanned
    subspace depends only on the surface.  The scalar weights (magnitudes in
    ``lambda_window``, random phases) and the hiding basis change (condition
    number <= ``mixer_cond_max``) are drawn from ``seed``.
    """
    report = is_general(s)
    if not report:
        raise NonGenericSurfaceError(
            "surface is not general: failing clauses "
            f"{list(report.failed_clauses)}")
    ram = ramification_divisor(s)
    if not ram.divisor.is_reduced():
        raise NonGenericSurfaceError("ramification divisor is not reduced")
    inv = invariants(s)
    h, N = inv.h, inv.N
    base_points = [p for p, _ in ram.divisor]
    if len(base_points) != N:
        raise NonGenericSurfaceError(
            f"expected {N} distinct ramification points, found "
            f"{len(base_points)}")

    points = tuple(canonical_point(p, h) for p in base_points)
    X = np.column_stack([ep.x for ep in points])

    fs = _surface_frame_seed(s) if frame_seed is None else int(frame_seed)
    y_frame = haar_unitary(np.random.default_rng(fs), N)

    rng = np.random.default_rng(seed)
    lo, hi = lambda_window
    if not (0.0 < lo <= hi):
        raise UsageError("lambda window must satisfy 0 < lo <= hi")
    mags = np.exp(rng.uniform(np.log(lo), np.log(hi), size=N))
    lambdas = mags * np.exp(2j * np.pi * rng.uniform(size=N))
    if mixer_cond_max < 1.0:
        raise UsageError("mixer condition bound must be >= 1")
    cond = np.exp(rng.uniform(0.0, np.log(mixer_cond_max)))
    svals = np.exp(np.linspace(0.0, -np.log(cond), N))
    mixer = (haar_unitary(rng, N) * svals) @ haar_unitary(rng, N).conj().T

    basis = np.einsum("jk,k,ik,ak->jia", mixer, lambdas, X, y_frame)
    gram = np.diag(np.full(N, -2.0 + 0.0j))
    presentation = IVHSPresentation(h=h, N=N, basis=basis, gram=gram)
    truth = GroundTruth(points=points, lambdas=lambdas,
                        y_frame=y_frame, mixer=mixer)
    return presentation, truth


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _cplx(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _matrix_json(m: np.ndarray) -> list:
    return [[_cplx(z) for z in row] for row in np.asarray(m)]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(z[0], z[1]) for z in row] for row in rows],
                    dtype=complex)


def presentation_to_json_dict(p: IVHSPresentation) -> dict:
    return {
        "h": p.h,
        "N": p.N,
        "basis": [_matrix_json(p.basis[j]) for j in range(p.N)],
    }


def presentation_from_json_dict(data: dict) -> IVHSPresentation:
    try:
        h = int(data["h"])
        n = int(data["N"])
        basis = np.stack([_matrix_from_json(m) for m in data["basis"]])
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed presentation data: {exc}") from exc
    return IVHSPresentation(h=h, N=n, basis=basis)


def truth_to_json_dict(t: GroundTruth) -> dict:
    pts = []
    for ep in t.points:
        base = "inf" if ep.base_point.is_infinity else _cplx(ep.base_point.affine())
        pts.append({"base": base, "x": [_cplx(z) for z in ep.x]})
    return {
        "points": pts,
        "lambdas": [_cplx(z) for z in t.lambdas],
        "y_frame": _matrix_json(t.y_frame),
        "mixer": _matrix_json(t.mixer),
    }


def save_presentation(p: IVHSPresentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(presentation_to_json_dict(p), fh, indent=2)
        fh.write("\n")


def load_presentation(path) -> IVHSPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return presentation_from_json_dict(json.load(fh))
