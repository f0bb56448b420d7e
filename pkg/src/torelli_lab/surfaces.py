"""Weierstrass models of Jacobian elliptic surfaces over P^1.

A surface is a pair of exact binary forms (g4, g6) of degrees 4*dL and 6*dL,
the coefficients of the fibration y^2 = 4x^3 - g4 x - g6.  The module derives
the numerical invariants from (h, q), classifies singular fibres through the
discriminant g4^3 - 27 g6^2, and provides two constructors: rejection-sampled
general surfaces (all fibres nodal), and surfaces with up to four prescribed
I2 fibres obtained by forcing the local jet equations

    a0^3 - 27 b0^2 = 0   and   2 a0 b1 - 3 a1 b0 = 0

at each prescribed point via a0 = 3 s^2, b0 = s^3, b1 = a1 s / 2.

Genericity predicates are decided in rational arithmetic; floats appear only
in reported fibre coordinates.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from . import binforms
from .binforms import (
    BinaryForm,
    ProjectivePointP1,
    forms_coprime,
    gcd_is_constant,
    poly_degree,
    poly_eval,
    poly_mul,
    poly_strip,
    squarefree_decomposition,
    transvectant_first,
)
from .errors import TorelliLabError, UsageError

COEFF_BOUND = 20
REJECTION_BUDGET = 1000


class UnsupportedGenusError(UsageError):
    """Positive-genus bases are carried in formulas but not constructed."""


class SurfaceGateError(UsageError):
    """The inequality gate h >= q+3, 8h > 10(q-1) fails."""


class DegenerateSurfaceError(TorelliLabError):
    """The discriminant vanishes identically."""


class RejectionBudgetError(TorelliLabError):
    """The randomized constructor exhausted its redraw budget."""


def degree_gate_ok(h: int, q: int) -> bool:
    return h >= q + 3 and 8 * h > 10 * (q - 1)


@dataclass(frozen=True)
class Invariants:
    """Numerical invariants derived from the geometric genus h and the
    irregularity q; q is carried symbolically even though construction
    fixes q = 0."""

    h: int
    q: int
    chi: int
    N: int
    c2: int
    deg_phi: int
    deg_canonical_curve: int

    @classmethod
    def from_genus_irregularity(cls, h: int, q: int) -> "Invariants":
        chi = h + 1 - q
        return cls(
            h=h,
            q=q,
            chi=chi,
            N=10 * h + 8 * (1 - q),
            c2=12 * chi,
            deg_phi=24 * chi,
            deg_canonical_curve=h + q - 1,
        )

    @property
    def h11(self) -> int:
        """Full (1,1)-space dimension: primitive part N plus the section
        and fibre classes."""
        return self.N + 2

    @property
    def moduli_dimension(self) -> int:
        return self.N + self.h

    def to_json_dict(self) -> dict:
        return {
            "h": self.h,
            "q": self.q,
            "chi": self.chi,
            "N": self.N,
            "c2": self.c2,
            "deg_phi": self.deg_phi,
            "deg_canonical_curve": self.deg_canonical_curve,
            "h11": self.h11,
        }


class WeierstrassSurface:
    """Exact Weierstrass data (g4, g6) over a genus-q base (q = 0 in v1)."""

    __slots__ = ("q", "dL", "g4", "g6")

    def __init__(self, dL: int, g4: BinaryForm, g6: BinaryForm, q: int = 0):
        if q != 0:
            raise UnsupportedGenusError(
                "bases of genus >= 1 are unimplemented; formulas carry q "
                "symbolically but construction requires q = 0")
        if dL < 1:
            raise UsageError("dL must be a positive integer")
        if not (g4.exact and g6.exact):
            raise UsageError("Weierstrass data must be exact rational forms")
        if g4.degree != 4 * dL or g6.degree != 6 * dL:
            raise UsageError(
                f"expected degrees ({4 * dL}, {6 * dL}), "
                f"got ({g4.degree}, {g6.degree})")
        h = dL - 1 + q
        if not degree_gate_ok(h, q):
            raise SurfaceGateError(
                f"gate h >= q+3 fails: h = {h}, q = {q}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "dL", dL)
        object.__setattr__(self, "g4", g4)
        object.__setattr__(self, "g6", g6)

    def __setattr__(self, name, value):
        raise AttributeError("WeierstrassSurface is immutable")

    @property
    def h(self) -> int:
        return self.dL - 1 + self.q

    def __eq__(self, other):
        if not isinstance(other, WeierstrassSurface):
            return NotImplemented
        return (self.q, self.dL, self.g4, self.g6) == \
            (other.q, other.dL, other.g4, other.g6)

    def __repr__(self):
        return f"WeierstrassSurface(dL={self.dL}, h={self.h}, q={self.q})"


@dataclass(frozen=True)
class FiberRecord:
    point: ProjectivePointP1
    delta_val: int
    g4_vanishes: bool
    kodaira: str


@dataclass(frozen=True)
class FiberReport:
    fibers: tuple
    all_I1: bool
    I2_count: int

    def to_json_dict(self) -> dict:
        return {
            "fibers": [
                {
                    "z": _point_json(rec.point),
                    "delta_val": rec.delta_val,
                    "g4_vanishes": rec.g4_vanishes,
                    "kodaira": rec.kodaira,
                }
                for rec in self.fibers
            ],
            "all_I1": self.all_I1,
            "I2_count": self.I2_count,
        }


def invariants(s: WeierstrassSurface) -> Invariants:
    return Invariants.from_genus_irregularity(s.h, s.q)


def discriminant(s: WeierstrassSurface) -> BinaryForm:
    """Delta = g4^3 - 27 g6^2, a form of degree 12*dL."""
    delta = s.g4 ** 3 - 27 * s.g6 ** 2
    if delta.is_zero:
        raise DegenerateSurfaceError(
            "discriminant vanishes identically (isotrivial data): not an "
            "elliptic fibration with varying fibres in the required sense")
    return delta


def classify_fibers(s: WeierstrassSurface) -> FiberReport:
    """Singular fibres from the valuation of the discriminant.

    At a root of Delta of multiplicity n the fibre is I_n when g4 does not
    vanish there, and an unclassified additive type otherwise.  All
    multiplicity and vanishing decisions are exact; floats only locate the
    reported points.
    """
    delta = discriminant(s)
    records = []
    exact_total = 0
    aff = poly_strip(delta.coeffs)
    g4_aff = poly_strip(s.g4.coeffs)
    if len(aff) > 1:
        for factor, mult in squarefree_decomposition(aff):
            exact_total += mult * poly_degree(factor)
            shared = binforms.poly_gcd(factor, g4_aff)
            if poly_degree(shared) > 0:
                additive_part = [Fraction(c) for c in shared]
                inert_part = binforms.poly_divexact(factor, additive_part)
            else:
                additive_part = []
                inert_part = factor
            for piece, vanishes in ((inert_part, False), (additive_part, True)):
                if poly_degree(piece) < 1:
                    continue
                for root in binforms._roots_dense([complex(c) for c in piece]):
                    records.append(FiberRecord(
                        point=ProjectivePointP1.from_affine(root),
                        delta_val=mult,
                        g4_vanishes=vanishes,
                        kodaira="additive_other" if vanishes else f"I{mult}",
                    ))
    v_inf = delta.degree - (len(aff) - 1)
    if v_inf > 0:
        exact_total += v_inf
        g4_inf_zero = not s.g4.coeffs[-1]
        records.append(FiberRecord(
            point=ProjectivePointP1.infinity(),
            delta_val=v_inf,
            g4_vanishes=g4_inf_zero,
            kodaira="additive_other" if g4_inf_zero else f"I{v_inf}",
        ))
    assert exact_total == delta.degree, "fibre valuations must sum to deg Delta"
    records.sort(key=lambda rec: rec.point._sort_key())
    all_i1 = all(rec.kodaira == "I1" for rec in records)
    i2 = sum(1 for rec in records if rec.kodaira == "I2")
    return FiberReport(fibers=tuple(records), all_I1=all_i1, I2_count=i2)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _draw_form(rng: random.Random, degree: int, bound: int = COEFF_BOUND) -> BinaryForm:
    """Integer coefficients in [-bound, bound], nonzero at the top degree."""
    coeffs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
    while coeffs[-1] == 0:
        coeffs[-1] = rng.randint(-bound, bound)
    return BinaryForm(degree, coeffs)


def _is_general_exact(s: WeierstrassSurface) -> bool:
    """The three genericity clauses, cheapest first, all exact."""
    try:
        delta = discriminant(s)
    except DegenerateSurfaceError:
        return False
    if not binforms.form_is_squarefree(delta):
        return False
    if not forms_coprime(delta, s.g4):
        return False
    ram = transvectant_first(s.g4, s.g6)
    if ram.is_zero:
        return False
    if not binforms.form_is_squarefree(ram):
        return False
    if not forms_coprime(ram, delta):
        return False
    return True


def make_random_general(h: int, seed: int, budget: int = REJECTION_BUDGET,
                        coeff_bound: int = COEFF_BOUND) -> WeierstrassSurface:
    """Random surface with all fibres of type I1 and a reduced ramification
    divisor disjoint from the discriminant locus; deterministic in ``seed``."""
    q = 0
    if not degree_gate_ok(h, q):
        raise SurfaceGateError(f"gate h >= q+3 fails: h = {h}, q = {q}")
    dL = h + 1 - q
    rng = random.Random(seed)
    for _ in range(budget):
        g4 = _draw_form(rng, 4 * dL, coeff_bound)
        g6 = _draw_form(rng, 6 * dL, coeff_bound)
        s = WeierstrassSurface(dL, g4, g6, q)
        if _is_general_exact(s):
            return s
    raise RejectionBudgetError(
        f"no general surface with h = {h} found in {budget} draws")


def _solve_exact(rows, rhs):
    """Gaussian elimination over the rationals; rows must be independent."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(v)]
         for row, v in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ArithmeticError("singular interpolation system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _hermite_interpolant(points, values, derivs):
    """Polynomial of degree < 2r matching a value and a derivative at each
    of the r points; exact."""
    r = len(points)
    n = 2 * r
    rows, rhs = [], []
    for p, v, d in zip(points, values, derivs):
        powers = [Fraction(p) ** j for j in range(n)]
        rows.append(powers)
        rhs.append(v)
        rows.append([j * powers[j - 1] if j else Fraction(0) for j in range(n)])
        rhs.append(d)
    return poly_strip(_solve_exact(rows, rhs))


def make_with_I2(h: int, points, seed: int,
                 budget: int = REJECTION_BUDGET) -> WeierstrassSurface:
    """Surface with prescribed I2 fibres at up to four affine points.

    At each point the two-jet of (g4, g6) is forced to (3s^2 + a1 z,
    s^3 + (a1 s / 2) z) in the local coordinate, which satisfies both local
    equations identically; the remaining coefficients are fixed by Hermite
    interpolation plus random fill.  Validated exactly: v(Delta) = 2 at each
    prescribed point and each point is a root of the ramification form.
    """
    q = 0
    if not degree_gate_ok(h, q):
        raise SurfaceGateError(f"gate h >= q+3 fails: h = {h}, q = {q}")
    pts = [Fraction(p) for p in points]
    r = len(pts)
    if not (1 <= r <= 4):
        raise UsageError("between 1 and 4 prescribed points are supported")
    if len(set(pts)) != r:
        raise UsageError("prescribed points must be distinct")
    dL = h + 1 - q
    if 4 * dL - 2 * r < 1:
        raise AssertionError("interpolation degrees of freedom exhausted")

    rng = random.Random(seed)
    # (z - p)^2 factors collected into the double-root modulus
    modulus = [Fraction(1)]
    for p in pts:
        modulus = poly_mul(modulus, [p * p, -2 * p, Fraction(1)])

    for _ in range(budget):
        svals = []
        for _ in range(r):
            num = 0
            while num == 0:
                num = rng.randint(-9, 9)
            svals.append(Fraction(num, rng.randint(1, 3)))
        a1s = [Fraction(rng.randint(-9, 9)) for _ in range(r)]
        b1s = [a1 * s / 2 for a1, s in zip(a1s, svals)]
        t4 = _hermite_interpolant(pts, [3 * s * s for s in svals], a1s)
        t6 = _hermite_interpolant(pts, [s ** 3 for s in svals], b1s)
        u4 = [Fraction(rng.randint(-COEFF_BOUND, COEFF_BOUND))
              for _ in range(4 * dL - 2 * r + 1)]
        u6 = [Fraction(rng.randint(-COEFF_BOUND, COEFF_BOUND))
              for _ in range(6 * dL - 2 * r + 1)]
        for u in (u4, u6):
            while not u[-1]:
                u[-1] = Fraction(rng.randint(-COEFF_BOUND, COEFF_BOUND))
        g4_aff = binforms.poly_add(t4, poly_mul(modulus, u4))
        g6_aff = binforms.poly_add(t6, poly_mul(modulus, u6))
        g4 = BinaryForm.from_affine(g4_aff, 4 * dL)
        g6 = BinaryForm.from_affine(g6_aff, 6 * dL)
        s = WeierstrassSurface(dL, g4, g6, q)

        delta = s.g4 ** 3 - 27 * s.g6 ** 2
        if delta.is_zero:
            continue
        delta_aff = poly_strip(delta.coeffs)
        d1 = binforms.poly_derivative(delta_aff)
        d2 = binforms.poly_derivative(d1)
        ram = transvectant_first(g4, g6)
        ok = True
        for p in pts:
            assert poly_eval(delta_aff, p) == 0
            assert poly_eval(d1, p) == 0
            assert ram.eval_pair(Fraction(1), p) == 0
            if poly_eval(d2, p) == 0:
                ok = False
                break
        if not ok:
            continue
        if not gcd_is_constant(g4_aff, g6_aff):
            continue
        return s
    raise RejectionBudgetError(
        f"no surface with {r} prescribed I2 fibres found in {budget} draws")


# ---------------------------------------------------------------------------
# JSON surface files
# ---------------------------------------------------------------------------

def _point_json(p: ProjectivePointP1):
    if p.is_infinity:
        return "inf"
    a = p.affine()
    return [a.real, a.imag]


def surface_to_json_dict(s: WeierstrassSurface) -> dict:
    return {
        "q": s.q,
        "dL": s.dL,
        "g4": [str(c) for c in s.g4.coeffs],
        "g6": [str(c) for c in s.g6.coeffs],
    }


def surface_from_json_dict(data: dict) -> WeierstrassSurface:
    try:
        q = int(data["q"])
        dL = int(data["dL"])
        g4 = BinaryForm(4 * dL, [Fraction(c) for c in data["g4"]])
        g6 = BinaryForm(6 * dL, [Fraction(c) for c in data["g6"]])
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed surface data: {exc}") from exc
    return WeierstrassSurface(dL, g4, g6, q)


def save_surface(s: WeierstrassSurface, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(surface_to_json_dict(s), fh, indent=2)
        fh.write("\n")


def load_surface(path) -> WeierstrassSurface:
    with open(path, "r", encoding="utf-8") as fh:
        return surface_from_json_dict(json.load(fh))
