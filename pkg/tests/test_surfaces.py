"""Weierstrass surfaces: invariants, fibre classification, constructors."""

from fractions import Fraction

import pytest

from torelli_lab.binforms import (
    BinaryForm,
    ProjectivePointP1,
    poly_derivative,
    poly_eval,
    poly_strip,
    transvectant_first,
)
from torelli_lab.errors import UsageError
from torelli_lab.surfaces import (
    DegenerateSurfaceError,
    Invariants,
    SurfaceGateError,
    UnsupportedGenusError,
    WeierstrassSurface,
    classify_fibers,
    discriminant,
    invariants,
    load_surface,
    make_random_general,
    make_with_I2,
    save_surface,
    surface_from_json_dict,
    surface_to_json_dict,
)


def surface_from_affine(dL, g4_affine, g6_affine):
    return WeierstrassSurface(
        dL,
        BinaryForm.from_affine(g4_affine, 4 * dL),
        BinaryForm.from_affine(g6_affine, 6 * dL),
    )


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def test_invariants_dl4():
    inv = Invariants.from_genus_irregularity(3, 0)
    assert (inv.h, inv.N, inv.chi, inv.c2, inv.deg_phi,
            inv.deg_canonical_curve) == (3, 38, 4, 48, 96, 2)
    assert inv.h11 == inv.N + 2


def test_invariants_dl5():
    inv = Invariants.from_genus_irregularity(4, 0)
    assert (inv.h, inv.N, inv.deg_canonical_curve) == (4, 48, 3)


def test_invariants_carry_q_symbolically():
    inv = Invariants.from_genus_irregularity(7, 2)
    assert inv.chi == 6
    assert inv.N == 10 * 7 + 8 * (1 - 2)
    assert inv.deg_canonical_curve == 8


def test_gate():
    with pytest.raises(SurfaceGateError):
        make_random_general(2, seed=0)
    # 8h > 10(q-1) holds trivially at q=0: 24 > -10
    assert 8 * 3 > 10 * (0 - 1)


def test_positive_genus_unimplemented():
    g4 = BinaryForm.zero(16)
    g6 = BinaryForm.from_affine([1], 24)
    with pytest.raises(UnsupportedGenusError):
        WeierstrassSurface(4, g4, g6, q=1)


# ---------------------------------------------------------------------------
# discriminant and fibres
# ---------------------------------------------------------------------------

def test_discriminant_constant():
    s = surface_from_affine(4, [0], [1])
    delta = discriminant(s)
    assert poly_strip(delta.coeffs) == [Fraction(-27)]


def test_discriminant_two_simple_roots():
    # g4 = 3, g6 = z: 27 - 27 z^2
    s = surface_from_affine(4, [3], [0, 1])
    delta = discriminant(s)
    assert poly_strip(delta.coeffs) == [Fraction(27), Fraction(0), Fraction(-27)]
    report = classify_fibers(s)
    finite = [r for r in report.fibers if not r.point.is_infinity]
    assert {r.kodaira for r in finite} == {"I1"}


def test_discriminant_double_root():
    # g4 = 3, g6 = 1 - z^2: 27 z^2 (2 - z^2), double root at 0
    s = surface_from_affine(4, [3], [1, 0, -1])
    delta = discriminant(s)
    assert poly_strip(delta.coeffs) == [0, 0, Fraction(54), 0, Fraction(-27)]
    report = classify_fibers(s)
    origin = ProjectivePointP1.from_affine(0)
    rec = next(r for r in report.fibers if r.point.chordal(origin) < 1e-9)
    assert rec.kodaira == "I2" and rec.delta_val == 2
    assert report.I2_count == 1 and not report.all_I1


def test_additive_fiber_when_g4_vanishes():
    # g4 = z and g6 = z: delta = z^3 - 27 z^2 vanishes at 0 where g4 does too
    s = surface_from_affine(4, [0, 1], [0, 1])
    report = classify_fibers(s)
    origin = ProjectivePointP1.from_affine(0)
    rec = next(r for r in report.fibers if r.point.chordal(origin) < 1e-9)
    assert rec.kodaira == "additive_other" and rec.g4_vanishes


def test_isotrivial_discriminant_rejected():
    # g4 = 3 u^2, g6 = u^3 makes g4^3 - 27 g6^2 vanish identically
    u = [Fraction(1), Fraction(2)] + [Fraction(0)] * 7  # degree-8 affine poly 1 + 2z
    from torelli_lab.binforms import poly_mul
    u = poly_strip(u)
    u2 = poly_mul(u, u)
    u3 = poly_mul(u2, u)
    s = surface_from_affine(4, [3 * c for c in u2], u3)
    with pytest.raises(DegenerateSurfaceError):
        discriminant(s)


def test_fiber_valuations_sum_to_12dL():
    for seed in range(5):
        s = make_random_general(3, seed=seed)
        report = classify_fibers(s)
        assert sum(r.delta_val for r in report.fibers) == 12 * s.dL


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def test_make_random_general_postconditions():
    s = make_random_general(3, seed=1)
    assert s.dL == 4 and s.h == 3
    report = classify_fibers(s)
    assert report.all_I1
    s4 = make_random_general(4, seed=7)
    assert invariants(s4).N == 48
    assert classify_fibers(s4).all_I1


def test_make_random_general_deterministic():
    assert make_random_general(3, seed=42) == make_random_general(3, seed=42)


def test_make_random_general_exact_genericity():
    from torelli_lab.binforms import squarefree_and_coprime

    s = make_random_general(3, seed=13)
    delta = discriminant(s)
    delta_squarefree, delta_avoids_g4 = squarefree_and_coprime(delta, s.g4)
    assert delta_squarefree and delta_avoids_g4


def test_make_with_i2_local_equations_hold_exactly():
    points = [Fraction(0), Fraction(1), Fraction(-1), Fraction(2)]
    s = make_with_I2(3, points, seed=9)
    g4a = poly_strip(s.g4.coeffs)
    g6a = poly_strip(s.g6.coeffs)
    g4p = poly_derivative(g4a)
    g6p = poly_derivative(g6a)
    for p in points:
        a0, a1 = poly_eval(g4a, p), poly_eval(g4p, p)
        b0, b1 = poly_eval(g6a, p), poly_eval(g6p, p)
        assert a0 ** 3 - 27 * b0 ** 2 == 0
        assert 2 * a0 * b1 - 3 * a1 * b0 == 0


def test_make_with_i2_has_exact_valuation_two():
    s = make_with_I2(3, [Fraction(0)], seed=5)
    delta = discriminant(s)
    aff = poly_strip(delta.coeffs)
    d1 = poly_derivative(aff)
    d2 = poly_derivative(d1)
    assert poly_eval(aff, Fraction(0)) == 0
    assert poly_eval(d1, Fraction(0)) == 0
    assert poly_eval(d2, Fraction(0)) != 0
    w = transvectant_first(s.g4, s.g6)
    assert w.eval_pair(Fraction(1), Fraction(0)) == 0
    assert classify_fibers(s).I2_count >= 1


def test_make_with_i2_rejects_bad_points():
    with pytest.raises(UsageError):
        make_with_I2(3, [Fraction(0), Fraction(0)], seed=1)
    with pytest.raises(UsageError):
        make_with_I2(3, [], seed=1)
    with pytest.raises(UsageError):
        make_with_I2(3, [0, 1, 2, 3, 4], seed=1)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def test_surface_json_roundtrip_bit_exact(tmp_path):
    s = make_random_general(3, seed=11)
    path = tmp_path / "surface.json"
    save_surface(s, path)
    assert load_surface(path) == s
    data = surface_to_json_dict(s)
    assert surface_from_json_dict(data) == s
    assert all(isinstance(c, str) for c in data["g4"])


def test_surface_json_rationals_roundtrip(tmp_path):
    g4 = BinaryForm.from_affine([Fraction(1, 3), Fraction(-7, 2)], 16)
    g6 = BinaryForm.from_affine([Fraction(5)], 24)
    s = WeierstrassSurface(4, g4, g6)
    path = tmp_path / "surface.json"
    save_surface(s, path)
    assert load_surface(path) == s
