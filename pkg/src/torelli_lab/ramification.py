"""The ramification divisor of the classifying morphism.

For Weierstrass data (g4, g6) the classifying morphism of the fibration
ramifies exactly where the first transvectant of the pair vanishes: on the
affine chart the derivative of j1 = g4^3/g6^2 vanishes where
2 g4 g6' - 3 g6 g4' does, and the homogeneous Jacobian determinant extends
that locus through infinity with the correct total degree
10*dL - 2 = 10h + 8(1-q).

The degree law and the genericity predicates here are exact; only the
divisor's point coordinates are floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import binforms
from .binforms import BinaryForm, DivisorP1, ProjectivePointP1
from .errors import TorelliLabError
from .surfaces import WeierstrassSurface, classify_fibers, discriminant, invariants


class IsotrivialError(TorelliLabError):
    """The transvectant vanishes identically (g4^3/g6^2 constant)."""


@dataclass(frozen=True)
class RamificationDivisor:
    form: BinaryForm
    divisor: DivisorP1
    total_degree: int


@dataclass(frozen=True)
class GeneralityReport:
    """Outcome of the three genericity clauses.

    (a) all singular fibres are nodal, (b) the ramification form is
    squarefree, (c) the ramification divisor avoids the discriminant locus.
    """

    all_fibers_i1: bool
    ram_reduced: bool
    ram_avoids_discriminant: bool
    failed_clauses: tuple
    warnings: tuple = ()

    @property
    def is_general(self) -> bool:
        return not self.failed_clauses

    def __bool__(self) -> bool:
        return self.is_general

    def to_json_dict(self) -> dict:
        return {
            "is_general": self.is_general,
            "all_fibers_i1": self.all_fibers_i1,
            "ram_reduced": self.ram_reduced,
            "ram_avoids_discriminant": self.ram_avoids_discriminant,
            "failed_clauses": list(self.failed_clauses),
            "warnings": list(self.warnings),
        }


def ramification_form(s: WeierstrassSurface) -> BinaryForm:
    """The transvectant W of (g4, g6); raises when identically zero."""
    w = binforms.transvectant_first(s.g4, s.g6)
    if w.is_zero:
        raise IsotrivialError(
            "isotrivial or degenerate family: the transvectant of (g4, g6) "
            "vanishes identically")
    return w


def ramification_divisor(s: WeierstrassSurface) -> RamificationDivisor:
    """Zero divisor of the transvectant, with the exact degree law checked."""
    w = ramification_form(s)
    expected = invariants(s).N
    if w.degree != expected:
        raise TorelliLabError(
            f"degree bookkeeping violated: deg W = {w.degree}, "
            f"expected {expected}")
    divisor = binforms.roots_projective(w)
    assert divisor.degree == w.degree
    return RamificationDivisor(form=w, divisor=divisor, total_degree=w.degree)


def is_general(s: WeierstrassSurface) -> GeneralityReport:
    """Exact genericity test; the report carries every failing clause."""
    failed = []
    warnings = []
    report = classify_fibers(s)
    all_i1 = report.all_I1
    if not all_i1:
        failed.append("a")
    try:
        w = ramification_form(s)
    except IsotrivialError:
        return GeneralityReport(
            all_fibers_i1=all_i1,
            ram_reduced=False,
            ram_avoids_discriminant=False,
            failed_clauses=tuple(failed + ["b", "c"]),
            warnings=("ramification form vanishes identically",),
        )
    reduced = binforms.form_is_squarefree(w)
    if not reduced:
        failed.append("b")
    disjoint = binforms.forms_coprime(w, discriminant(s))
    if not disjoint:
        failed.append("c")
        warnings.append(
            "ramification meets the discriminant locus: multiplicities of "
            "div(W) are only contractual on the general locus")
    return GeneralityReport(
        all_fibers_i1=all_i1,
        ram_reduced=reduced,
        ram_avoids_discriminant=disjoint,
        failed_clauses=tuple(failed),
        warnings=tuple(warnings),
    )


def schottky_degree_check(s: WeierstrassSurface) -> bool:
    """Integer bookkeeping: the divisor-class degree 10*deg(H) - 9*deg(K),
    the bundle degree deg(10L + K), and the transvectant degree must agree."""
    h, q = s.h, s.q
    deg_h = h + q - 1
    deg_k = 2 * q - 2
    class_degree = 10 * deg_h - 9 * deg_k
    bundle_degree = 10 * s.dL + deg_k
    w_degree = ramification_form(s).degree
    return class_degree == bundle_degree == w_degree == invariants(s).N


# ---------------------------------------------------------------------------
# divisor JSON
# ---------------------------------------------------------------------------

def divisor_to_json_dict(d: DivisorP1) -> dict:
    points = []
    for p, mult in d:
        if p.is_infinity:
            z = "inf"
        else:
            a = p.affine()
            z = [a.real, a.imag]
        points.append({"z": z, "mult": mult})
    return {"points": points, "degree": d.degree}


def divisor_from_json_dict(data: dict) -> DivisorP1:
    entries = []
    for item in data["points"]:
        z = item["z"]
        if z == "inf":
            p = ProjectivePointP1.infinity()
        else:
            p = ProjectivePointP1.from_affine(complex(z[0], z[1]))
        entries.append((p, int(item["mult"])))
    divisor = DivisorP1(tuple(entries))
    if divisor.degree != int(data["degree"]):
        raise ValueError("divisor degree field disagrees with the points")
    return divisor


def save_divisor(d: DivisorP1, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(divisor_to_json_dict(d), fh, indent=2)
        fh.write("\n")
