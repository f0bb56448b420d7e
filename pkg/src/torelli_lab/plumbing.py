"""Exact verification of the plumbing residue calculus.

A one-parameter smoothing of a surface glued along a fibre is described
locally by coordinates (q, v) with t = q^2 - v^2, and a holomorphic 3-form
with jet coefficients b[m, n] produces, after taking the residue against
t = q^2 - v^2 and restricting to the branch v = q (1 - t q^{-2})^{1/2}, a
family of 2-forms

    -1/2 (q + v) * sum_{m,n} b[m,n] q^m v^{n-1}   (mod t^2),

whose t^0 part omega and t^1 part eta admit closed forms

    omega = - sum b[m,n] q^{m+n},
    eta   =   sum ((2n - 1)/4) b[m,n] q^{m+n-2}.

This module recomputes the substitution chain independently in exact
arithmetic and compares it, coefficient for coefficient, against the closed
forms, the q^{-2} leading law (eta's leading coefficient is -b[0,0]/4), the
q^{-1} residue law ((b[0,1] - b[1,0])/4), and the proportionality of the
eta series across proportional jet data.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .jets import DEFAULT_HIGH_CUT, DEFAULT_LOW_CUT, JetSeries, WindowError

MAX_ORDER_DEFAULT = 6


class JetOrderError(UsageError):
    """Jet coefficients outside the supported total order."""


class JetCoefficients:
    """Finitely supported exact coefficients b[m, n], m, n >= 0,
    m + n <= max_order."""

    __slots__ = ("b", "max_order")

    def __init__(self, b, max_order: int = MAX_ORDER_DEFAULT):
        clean = {}
        for (m, n), value in dict(b).items():
            m, n = int(m), int(n)
            if m < 0 or n < 0:
                raise JetOrderError("jet indices must be non-negative")
            if m + n > max_order:
                raise JetOrderError(
                    f"jet index ({m}, {n}) exceeds max_order {max_order}")
            if isinstance(value, float):
                raise TypeError("jet coefficients are exact rationals")
            value = Fraction(value)
            if value:
                clean[(m, n)] = value
        object.__setattr__(self, "b", clean)
        object.__setattr__(self, "max_order", int(max_order))

    def __setattr__(self, name, value):
        raise AttributeError("JetCoefficients is immutable")

    def __getitem__(self, key) -> Fraction:
        return self.b.get(key, Fraction(0))

    def items(self):
        return sorted(self.b.items())

    def scale(self, factor) -> "JetCoefficients":
        factor = Fraction(factor)
        return JetCoefficients({k: factor * v for k, v in self.b.items()},
                               self.max_order)

    def __add__(self, other: "JetCoefficients") -> "JetCoefficients":
        out = dict(self.b)
        for k, v in other.b.items():
            out[k] = out.get(k, Fraction(0)) + v
        return JetCoefficients(out, max(self.max_order, other.max_order))

    def __eq__(self, other):
        if not isinstance(other, JetCoefficients):
            return NotImplemented
        return self.b == other.b


def _window_for(max_order: int):
    high = max(DEFAULT_HIGH_CUT, max_order + 6)
    return DEFAULT_LOW_CUT, high


def residue_pair(b: JetCoefficients, low_cut=None, high_cut=None):
    """(omega, eta): the t^0 and t^1 parts of the residue chain.

    The chain is computed structurally: the branch substitution
    v = q*(1 - t q^{-2})^{1/2} with v^{n-1} by repeated exact multiplication
    (and the unit inverse at n = 0), then the prefactor -1/2 (q + v).  No
    use is made of the closed forms, so comparing against them is a
    two-sided check.
    """
    low0, high0 = _window_for(b.max_order)
    low = low0 if low_cut is None else int(low_cut)
    high = high0 if high_cut is None else int(high_cut)
    # intermediates reach exponents -3 and max_order; demand slack beyond that
    if low > -4 or high < b.max_order + 2:
        raise WindowError(
            f"window [{low}, {high}] cannot hold the residue chain for jets "
            f"of order {b.max_order}")

    q = JetSeries.monomial(1, c0=1, low_cut=low, high_cut=high)
    u = JetSeries.monomial(-2, c1=1, low_cut=low, high_cut=high)
    v = q.mul(u.sqrt_one_minus())
    prefactor = (q + v).scale(Fraction(-1, 2))

    # v^(n-1) for every n appearing in the support
    max_n = max((n for (_, n) in b.b), default=0)
    v_pows = {0: v.invert_unit(), 1: JetSeries.one(low, high)}
    for k in range(2, max_n + 1):
        v_pows[k] = v_pows[k - 1].mul(v)

    total = JetSeries.zero(low, high)
    for (m, n), coeff in b.items():
        term = v_pows[n].shift(m).scale(coeff)
        total = total + term
    result = prefactor.mul(total)
    return result.t_component(0), result.t_component(1)


def closed_form_pair(b: JetCoefficients, low_cut=None, high_cut=None):
    """The closed forms for omega and eta, built directly."""
    low0, high0 = _window_for(b.max_order)
    low = low0 if low_cut is None else int(low_cut)
    high = high0 if high_cut is None else int(high_cut)
    omega = {}
    eta = {}
    for (m, n), coeff in b.items():
        e = m + n
        omega[e] = omega.get(e, Fraction(0)) - coeff
        eta[e - 2] = eta.get(e - 2, Fraction(0)) + Fraction(2 * n - 1, 4) * coeff
    return (JetSeries(omega, low, high), JetSeries(eta, low, high))


@dataclass(frozen=True)
class ClosedFormCheck:
    ok: bool
    first_mismatch: tuple = None    # (series, exponent, chain, closed)

    def __bool__(self):
        return self.ok


def check_closed_forms(b: JetCoefficients) -> ClosedFormCheck:
    """Exact coefficientwise equality of the chain and the closed forms."""
    omega, eta = residue_pair(b)
    omega_cf, eta_cf = closed_form_pair(b)
    for name, lhs, rhs in (("omega", omega, omega_cf), ("eta", eta, eta_cf)):
        exps = sorted({e for e, _, _ in lhs.terms()} |
                      {e for e, _, _ in rhs.terms()})
        for e in exps:
            a = lhs.coefficient(e, 0)
            c = rhs.coefficient(e, 0)
            if a != c:
                return ClosedFormCheck(ok=False, first_mismatch=(name, e, a, c))
    return ClosedFormCheck(ok=True)


def leading_coefficient(b: JetCoefficients) -> Fraction:
    """Coefficient of q^{-2} in eta; the leading law says it equals
    -b[0,0]/4, i.e. one quarter of the 2-form's value at the point."""
    _, eta = residue_pair(b)
    return eta.coefficient(-2, 0)


def residue_coefficient(b: JetCoefficients) -> Fraction:
    """Coefficient of q^{-1} in eta: (b[0,1] - b[1,0]) / 4.  Its vanishing
    is the local criterion for eta to define a cohomology class."""
    _, eta = residue_pair(b)
    return eta.coefficient(-1, 0)


@dataclass(frozen=True)
class ProportionalityCheck:
    ok: bool
    ratios: tuple = ()              # -b[0,0] per member, the predicted ratios
    first_mismatch: tuple = None    # (index_i, index_j, exponent)

    def __bool__(self):
        return self.ok


def check_eta_proportionality(b_list) -> ProportionalityCheck:
    """For jет data that are scalar multiples of a common set, the eta
    series must satisfy the cross-proportionality

        omega_i(a) * eta_j == omega_j(a) * eta_i   (exactly),

    with omega_j(a) = -b_j[0,0]; this is the rank-1 shape of the derivative
    restated at series level.  Cross-multiplied form avoids division and
    handles zero members.
    """
    etas = [residue_pair(b)[1] for b in b_list]
    ratios = tuple(-b[(0, 0)] for b in b_list)
    for i in range(len(b_list)):
        for j in range(i + 1, len(b_list)):
            lhs = etas[j].scale(ratios[i])
            rhs = etas[i].scale(ratios[j])
            if lhs != rhs:
                exps = sorted({e for e, _, _ in lhs.terms()} |
                              {e for e, _, _ in rhs.terms()})
                bad = next(e for e in exps
                           if lhs.coefficient(e, 0) != rhs.coefficient(e, 0))
                return ProportionalityCheck(ok=False, ratios=ratios,
                                            first_mismatch=(i, j, bad))
    return ProportionalityCheck(ok=True, ratios=ratios)


# ---------------------------------------------------------------------------
# randomized verification report
# ---------------------------------------------------------------------------

def random_jet_coefficients(rng: random.Random, max_order: int = MAX_ORDER_DEFAULT,
                            bound: int = 9) -> JetCoefficients:
    """Dense random jets with integer entries in [-bound, bound]."""
    b = {}
    for m in range(max_order + 1):
        for n in range(max_order + 1 - m):
            b[(m, n)] = rng.randint(-bound, bound)
    return JetCoefficients(b, max_order)


def verification_report(trials: int = 200, max_order: int = MAX_ORDER_DEFAULT,
                        seed: int = 0) -> dict:
    """Run every identity on random jet data; everything asserted exactly."""
    rng = random.Random(seed)
    identities = {
        "closed_forms": {"trials": 0, "failures": 0, "first_failure": None},
        "leading_term": {"trials": 0, "failures": 0, "first_failure": None},
        "residue_term": {"trials": 0, "failures": 0, "first_failure": None},
        "linearity": {"trials": 0, "failures": 0, "first_failure": None},
        "proportionality": {"trials": 0, "failures": 0, "first_failure": None},
    }
    audit = []

    def record(name, ok, detail):
        identities[name]["trials"] += 1
        if not ok:
            identities[name]["failures"] += 1
            if identities[name]["first_failure"] is None:
                identities[name]["first_failure"] = detail

    for k in range(trials):
        b = random_jet_coefficients(rng, max_order)
        chk = check_closed_forms(b)
        record("closed_forms", chk.ok,
               None if chk.ok else [str(x) for x in chk.first_mismatch])
        lead = leading_coefficient(b)
        record("leading_term", lead == Fraction(-1, 4) * b[(0, 0)],
               f"got {lead}")
        res = residue_coefficient(b)
        expected = (b[(0, 1)] - b[(1, 0)]) / 4
        record("residue_term", res == expected, f"got {res}")
        if k < 10:
            audit.append({
                "b00": str(b[(0, 0)]),
                "residue_coefficient": str(res),
                "residue_vanishes": res == 0,
            })

        b2 = random_jet_coefficients(rng, max_order)
        alpha = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        beta = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        combo = b.scale(alpha) + b2.scale(beta)
        om_c, eta_c = residue_pair(combo)
        om_a, eta_a = residue_pair(b)
        om_b, eta_b = residue_pair(b2)
        lin_ok = (om_c == om_a.scale(alpha) + om_b.scale(beta)
                  and eta_c == eta_a.scale(alpha) + eta_b.scale(beta))
        record("linearity", lin_ok, f"scalars ({alpha}, {beta})")

        scalars = [Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                   for _ in range(5)]
        family = [b.scale(c) for c in scalars]
        prop = check_eta_proportionality(family)
        record("proportionality", prop.ok,
               None if prop.ok else list(prop.first_mismatch))

    all_pass = all(v["failures"] == 0 for v in identities.values())
    return {
        "trials": trials,
        "max_order": max_order,
        "seed": seed,
        "identities": identities,
        "residue_audit": audit,
        "status": "ok" if all_pass else "failed",
    }


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def jets_to_json_dict(b: JetCoefficients) -> dict:
    return {"b": [[m, n, str(v)] for (m, n), v in b.items()],
            "max_order": b.max_order}


def jets_from_json_dict(data: dict) -> JetCoefficients:
    try:
        entries = {(int(m), int(n)): Fraction(v) for m, n, v in data["b"]}
        max_order = int(data.get("max_order", MAX_ORDER_DEFAULT))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed jet data: {exc}") from exc
    return JetCoefficients(entries, max_order)


def save_jets(b: JetCoefficients, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(jets_to_json_dict(b), fh, indent=2)
        fh.write("\n")
