"""Binary forms on P^1 and the polynomial machinery under them.

A binary form of degree d is stored by its d+1 coefficients, index k holding
the coefficient of Z0^(d-k) Z1^k, so the list read in ascending index order
is also the affine polynomial in z = Z1/Z0.  Forms come in two parallel
representations: exact (``fractions.Fraction`` entries) and complex floats,
with explicit conversion from exact to complex.

Exact decisions (gcd, squarefreeness, multiplicity structure) are made in
rational arithmetic via a primitive pseudo-remainder sequence, with a
one-sided modular fast path: if the gcd of the reductions mod a large prime
(not dividing the leading coefficients) is constant, the rational gcd is
certainly constant.  Numerical root finding uses simultaneous Aberth-Ehrlich
iteration with a companion-matrix fallback guarded by a backward-error check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import TorelliLabError

CLUSTER_TOL = 1e-7
ABERTH_MAX_ITER = 200
ABERTH_STEP_TOL = 1e-13
BACKWARD_ERROR_TOL = 1e-9

# Large primes for the one-sided "gcd is constant" test.
_GCD_PRIMES = (2**61 - 1, 2**31 - 1, 1000000007, 998244353)


class ZeroFormError(TorelliLabError):
    """An operation that needs a nonzero form received the zero form."""


class DivisorError(TorelliLabError):
    """Points of a divisor are not separated at the clustering scale."""


# ---------------------------------------------------------------------------
# exact polynomial layer (ascending coefficient lists of Fraction)
# ---------------------------------------------------------------------------

def poly_strip(coeffs):
    """Drop trailing zeros; the zero polynomial becomes []."""
    i = len(coeffs) - 1
    while i >= 0 and not coeffs[i]:
        i -= 1
    return list(coeffs[: i + 1])


def poly_degree(coeffs) -> int:
    """Degree, with the zero polynomial at -1."""
    return len(poly_strip(coeffs)) - 1


def poly_mul(a, b):
    a, b = poly_strip(a), poly_strip(b)
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_strip([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
        for i in range(n)
    ])


def poly_scale(a, c):
    c = Fraction(c)
    return [c * x for x in a] if c else []


def poly_derivative(a):
    return poly_strip([i * c for i, c in enumerate(a)][1:])


def poly_eval(a, z):
    """Horner evaluation; exact when both the poly and z are rational."""
    acc = 0
    for c in reversed(a):
        acc = acc * z + c
    return acc


def poly_divmod(a, b):
    """Exact quotient and remainder over the rationals."""
    a, b = poly_strip(a), poly_strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while a and len(a) >= len(b):
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for j in range(len(b)):
            a[k + j] -= c * b[j]
        a = poly_strip(a)
    return poly_strip(q), a


def poly_divexact(a, b):
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("division was expected to be exact")
    return q


def _to_int_primitive(coeffs):
    """Clear denominators and content; sign fixed so the leading entry > 0."""
    a = poly_strip(coeffs)
    if not a:
        return []
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _poly_mod_p(ints, p):
    return [c % p for c in ints]


def _gf_gcd_degree(a, b, p):
    """Degree of gcd over GF(p); inputs are int lists mod p."""
    a = poly_strip(a)
    b = poly_strip(b)
    while b:
        if len(b) == 1:
            return 0
        inv = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b):
            c = r[-1] * inv % p
            k = len(r) - len(b)
            for j in range(len(b)):
                r[k + j] = (r[k + j] - c * b[j]) % p
            r = poly_strip(r)
            if not r:
                break
        a, b = b, r
    return len(a) - 1


def _gcd_constant_fast(a_int, b_int):
    """True if the rational gcd is certainly constant, None if undecided.

    Valid one-sided test: for p not dividing either leading coefficient,
    deg gcd mod p >= deg gcd over Q.
    """
    if not a_int or not b_int:
        return None
    for p in _GCD_PRIMES:
        if a_int[-1] % p and b_int[-1] % p:
            if _gf_gcd_degree(_poly_mod_p(a_int, p), _poly_mod_p(b_int, p), p) == 0:
                return True
            return None
    return None


def _pseudo_rem(a, b):
    """Pseudo-remainder of integer polynomials (stays over Z)."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da - db, -1, -1):
        c = r[db + k]
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[k + j] -= c * b[j]
        r[db + k] = 0
    i = len(r) - 1
    while i >= 0 and r[i] == 0:
        i -= 1
    return r[: i + 1]


def _int_primitive(ints):
    i = len(ints) - 1
    while i >= 0 and ints[i] == 0:
        i -= 1
    ints = ints[: i + 1]
    if not ints:
        return []
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def poly_gcd(a, b):
    """Exact gcd over Q, returned as a primitive integer-coefficient list."""
    ai, bi = _to_int_primitive(a), _to_int_primitive(b)
    if not ai:
        return [Fraction(c) for c in bi] if bi else []
    if not bi:
        return [Fraction(c) for c in ai]
    if len(ai) < len(bi):
        ai, bi = bi, ai
    while bi and len(bi) > 1:
        r = _pseudo_rem(ai, bi)
        ai, bi = bi, _int_primitive(r)
    if bi:
        return [Fraction(1)]
    return [Fraction(c) for c in ai]


def gcd_is_constant(a, b) -> bool:
    """Exact decision with the modular fast path."""
    a, b = poly_strip(a), poly_strip(b)
    if not a or not b:
        return False
    if len(a) == 1 or len(b) == 1:
        return True
    fast = _gcd_constant_fast(_to_int_primitive(a), _to_int_primitive(b))
    if fast:
        return True
    return poly_degree(poly_gcd(a, b)) == 0


def poly_is_squarefree(a) -> bool:
    a = poly_strip(a)
    if not a:
        return False
    if len(a) <= 2:
        return True
    return gcd_is_constant(a, poly_derivative(a))


def squarefree_decomposition(a):
    """Yun decomposition: list of (primitive factor, multiplicity).

    The factors are squarefree, pairwise coprime, and their m-th powers
    multiply to the input up to a rational constant.
    """
    a = poly_strip(a)
    if not a:
        raise ZeroFormError("squarefree decomposition of the zero polynomial")
    if len(a) == 1:
        return []
    da = poly_derivative(a)
    g = poly_gcd(a, da)
    if poly_degree(g) == 0:
        return [([Fraction(c) for c in _to_int_primitive(a)], 1)]
    w = poly_divexact(a, g)
    y = poly_divexact(da, g)
    out = []
    k = 1
    while True:
        z = poly_add(y, poly_scale(poly_derivative(w), -1))
        if not z:
            if poly_degree(w) > 0:
                out.append(([Fraction(c) for c in _to_int_primitive(w)], k))
            break
        p = poly_gcd(w, z)
        if poly_degree(p) > 0:
            out.append(([Fraction(c) for c in p], k))
            w = poly_divexact(w, p)
            y = poly_divexact(z, p)
        else:
            y = z
        k += 1
    return out


# ---------------------------------------------------------------------------
# numerical root finding
# ---------------------------------------------------------------------------

def _polyval_vec(coeffs, z):
    acc = np.zeros_like(z)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _aberth(coeffs):
    """Aberth-Ehrlich simultaneous iteration on a dense complex polynomial.

    ``coeffs`` is ascending with a nonzero leading entry.  Initial guesses
    sit on a perturbed circle at the Fujiwara root bound; iteration stops
    when every correction is below 1e-13 relative to the root magnitude.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n <= 0:
        return np.empty(0, dtype=complex)
    c = c / c[-1]
    if n == 1:
        return np.array([-c[0]])
    k = np.arange(1, n + 1)
    mags = np.abs(c[n - k])
    nz = mags > 0
    radius = 2.0 * np.max(mags[nz] ** (1.0 / k[nz])) if np.any(nz) else 1.0
    radius = max(radius, 1e-3)
    idx = np.arange(n)
    theta = 2.0 * np.pi * (idx + 0.35) / n + 0.45
    z = radius * (0.7 + 0.3 * idx / max(1, n - 1)) * np.exp(1j * theta)
    dc = np.array([i * c[i] for i in range(1, n + 1)], dtype=complex)
    for _ in range(ABERTH_MAX_ITER):
        p = _polyval_vec(c, z)
        dp = _polyval_vec(dc, z)
        with np.errstate(all="ignore"):
            newton = np.where(dp != 0, p / np.where(dp != 0, dp, 1), 0.0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            denom = 1.0 - newton * s
            w = np.where(denom != 0, newton / np.where(denom != 0, denom, 1), newton)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        if not np.all(np.isfinite(z)):
            return None
        if np.all(np.abs(w) <= ABERTH_STEP_TOL * np.maximum(1.0, np.abs(z))):
            break
    return z


def _roots_dense(coeffs):
    """All affine roots with a backward-error guarantee.

    Aberth first; any root failing the normalized residual bound triggers
    a companion-matrix (numpy.roots) fallback.  The contract is the
    backward-error bound, not the method.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = len(c) - 1
    if n <= 0:
        return np.empty(0, dtype=complex)
    scale = np.max(np.abs(c))
    c = c / scale

    def backward_ok(roots):
        if roots is None or len(roots) != n or not np.all(np.isfinite(roots)):
            return False
        vals = np.abs(_polyval_vec(c, roots))
        bound = BACKWARD_ERROR_TOL * np.maximum(1.0, np.abs(roots)) ** n
        return bool(np.all(vals <= bound))

    roots = _aberth(c)
    if backward_ok(roots):
        return roots
    fallback = np.roots(c[::-1])
    if len(fallback) == n and np.all(np.isfinite(fallback)):
        return np.asarray(fallback, dtype=complex)
    if roots is not None and len(roots) == n and np.all(np.isfinite(roots)):
        return roots
    raise TorelliLabError("polynomial root finding failed to converge")


# ---------------------------------------------------------------------------
# projective points and divisors
# ---------------------------------------------------------------------------

class ProjectivePointP1:
    """A point of P^1 stored as a unit vector (z0, z1) in C^2.

    Normalization: unit Euclidean norm and the first nonzero coordinate
    rotated to be real and positive, which makes point comparison and
    divisor ordering deterministic.
    """

    __slots__ = ("z0", "z1")

    def __init__(self, z0, z1):
        z0 = complex(z0)
        z1 = complex(z1)
        norm = math.hypot(abs(z0), abs(z1))
        if norm == 0.0:
            raise ValueError("(0, 0) is not a point of P^1")
        z0 /= norm
        z1 /= norm
        pivot = z0 if abs(z0) > 1e-12 else z1
        phase = pivot / abs(pivot)
        z0 /= phase
        z1 /= phase
        if abs(z0) <= 1e-12:
            z0 = 0.0 + 0.0j
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "z1", z1)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePointP1 is immutable")

    @classmethod
    def from_affine(cls, z) -> "ProjectivePointP1":
        return cls(1.0, complex(z))

    @classmethod
    def infinity(cls) -> "ProjectivePointP1":
        return cls(0.0, 1.0)

    @property
    def is_infinity(self) -> bool:
        return self.z0 == 0.0

    def affine(self):
        """The affine coordinate z1/z0, or None at infinity."""
        if self.is_infinity:
            return None
        return self.z1 / self.z0

    def chordal(self, other: "ProjectivePointP1") -> float:
        """|z0 w1 - z1 w0| for unit representatives: the sine of the angle."""
        return abs(self.z0 * other.z1 - self.z1 * other.z0)

    def _sort_key(self):
        if self.is_infinity:
            return (1, 0.0, 0.0)
        a = self.affine()
        return (0, a.real, a.imag)

    def __repr__(self):
        if self.is_infinity:
            return "P1(inf)"
        a = self.affine()
        return f"P1({a.real:.6g}{a.imag:+.6g}j)"


@dataclass(frozen=True)
class DivisorP1:
    """A multiset of points of P^1 with positive multiplicities."""

    points: tuple
    min_separation: float = CLUSTER_TOL
    degree: int = field(init=False)

    def __post_init__(self):
        pts = tuple((p, int(m)) for p, m in self.points)
        for _, m in pts:
            if m <= 0:
                raise DivisorError("multiplicities must be positive")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i][0].chordal(pts[j][0]) <= self.min_separation:
                    raise DivisorError(
                        "divisor points are not separated at the clustering "
                        f"scale {self.min_separation}")
        pts = tuple(sorted(pts, key=lambda pm: pm[0]._sort_key()))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "degree", sum(m for _, m in pts))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.points)

    def multiplicity_at(self, point: ProjectivePointP1, tol: float = CLUSTER_TOL) -> int:
        for p, m in self.points:
            if p.chordal(point) <= tol:
                return m
        return 0


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

class BinaryForm:
    """Homogeneous form of fixed degree in (Z0, Z1)."""

    __slots__ = ("degree", "coeffs", "exact")

    def __init__(self, degree: int, coeffs):
        degree = int(degree)
        coeffs = list(coeffs)
        if degree < 0:
            raise ValueError("degree must be non-negative")
        if len(coeffs) != degree + 1:
            raise ValueError(
                f"degree {degree} needs {degree + 1} coefficients, "
                f"got {len(coeffs)}")
        exact = all(isinstance(c, (int, Fraction)) for c in coeffs)
        if exact:
            coeffs = tuple(Fraction(c) for c in coeffs)
        else:
            coeffs = tuple(complex(c) for c in coeffs)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    # ---- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, [Fraction(0)] * (degree + 1))

    @classmethod
    def constant(cls, value, degree: int) -> "BinaryForm":
        """The affine constant ``value`` as the form value*Z0^degree."""
        coeffs = [value] + [0] * degree
        return cls(degree, coeffs)

    @classmethod
    def from_affine(cls, affine_coeffs, degree: int) -> "BinaryForm":
        """Homogenize an affine polynomial (ascending in z = Z1/Z0)."""
        affine_coeffs = list(affine_coeffs)
        if len(affine_coeffs) > degree + 1:
            raise ValueError("affine degree exceeds the form degree")
        coeffs = affine_coeffs + [0] * (degree + 1 - len(affine_coeffs))
        return cls(degree, coeffs)

    # ---- basic structure --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def affine(self):
        """Coefficients as the affine polynomial on the chart Z0 = 1."""
        return list(self.coeffs)

    def affine_degree(self) -> int:
        """Largest index with a (numerically) nonzero coefficient."""
        if self.exact:
            return poly_degree(self.coeffs)
        mags = [abs(c) for c in self.coeffs]
        scale = max(mags) if mags else 0.0
        if scale == 0.0:
            return -1
        d = len(mags) - 1
        while d >= 0 and mags[d] <= 1e-13 * scale:
            d -= 1
        return d

    def mult_at_infinity(self) -> int:
        if self.is_zero:
            raise ZeroFormError("the zero form has no root divisor")
        return self.degree - self.affine_degree()

    def to_complex(self) -> "BinaryForm":
        return BinaryForm(self.degree, [complex(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return (self.degree == other.degree and self.exact == other.exact
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        kind = "exact" if self.exact else "complex"
        return f"BinaryForm(deg={self.degree}, {kind})"

    # ---- arithmetic -------------------------------------------------------

    def _coerce_pair(self, other):
        if self.exact and not other.exact:
            return self.to_complex(), other
        if other.exact and not self.exact:
            return self, other.to_complex()
        return self, other

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.degree != other.degree:
            raise ValueError("can only add forms of equal degree")
        a, b = self._coerce_pair(other)
        return BinaryForm(a.degree, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-1) * other

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction, float, complex)):
            return BinaryForm(self.degree, [scalar * c for c in self.coeffs])
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            a, b = self._coerce_pair(other)
            out = [0] * (a.degree + b.degree + 1)
            for i, x in enumerate(a.coeffs):
                if x:
                    for j, y in enumerate(b.coeffs):
                        out[i + j] += x * y
            return BinaryForm(a.degree + b.degree, out)
        return self.__rmul__(other)

    def __pow__(self, n: int) -> "BinaryForm":
        if n < 0:
            raise ValueError("negative powers are not forms")
        out = BinaryForm.constant(1, 0)
        for _ in range(n):
            out = out * self
        return out

    def derivative_z0(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            raise ValueError("cannot lower the degree of a constant form")
        return BinaryForm(d - 1, [(d - k) * self.coeffs[k] for k in range(d)])

    def derivative_z1(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            raise ValueError("cannot lower the degree of a constant form")
        return BinaryForm(d - 1, [k * self.coeffs[k] for k in range(1, d + 1)])

    # ---- evaluation ---------------------------------------------------------

    def eval_pair(self, z0, z1):
        """Value at representative coordinates; exact for rational input."""
        d = self.degree
        if self.exact and isinstance(z0, (int, Fraction)) and isinstance(z1, (int, Fraction)):
            z0, z1 = Fraction(z0), Fraction(z1)
            one = Fraction(1)
        else:
            z0, z1 = complex(z0), complex(z1)
            one = 1.0 + 0.0j
        pow0 = [one]
        pow1 = [one]
        for _ in range(d):
            pow0.append(pow0[-1] * z0)
            pow1.append(pow1[-1] * z1)
        acc = one * 0
        for k in range(d + 1):
            c = self.coeffs[k]
            if c:
                acc += c * pow0[d - k] * pow1[k]
        return acc

    def eval_point(self, p: ProjectivePointP1) -> complex:
        return complex(self.eval_pair(p.z0, p.z1))

    def eval_affine(self, z):
        return self.eval_pair(1, z)


# ---------------------------------------------------------------------------
# the module operations
# ---------------------------------------------------------------------------

def transvectant_first(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Jacobian-determinant covariant f_Z0 g_Z1 - f_Z1 g_Z0.

    For forms of degrees m, n >= 1 the result has exact degree m + n - 2
    (possibly the zero form when f and g are algebraically dependent).  On
    the affine chart it equals hcf(m, n) * (m' f g' - n' g f') with
    m' = m/hcf, n' = n/hcf.
    """
    if f.degree < 1 or g.degree < 1:
        raise ValueError("transvectant needs forms of degree at least 1")
    return f.derivative_z0() * g.derivative_z1() - f.derivative_z1() * g.derivative_z0()


def affine_transvectant(f: BinaryForm, g: BinaryForm):
    """The classical weighted combination m' f g' - n' g f' on the chart Z0=1.

    Returned as an affine coefficient list; used to cross-check the
    homogeneous Jacobian determinant.
    """
    if f.degree < 1 or g.degree < 1:
        raise ValueError("transvectant needs forms of degree at least 1")
    h = math.gcd(f.degree, g.degree)
    mp, np_ = f.degree // h, g.degree // h
    fa, ga = list(f.coeffs), list(g.coeffs)
    term1 = poly_scale(poly_mul(fa, poly_derivative(ga)), mp)
    term2 = poly_scale(poly_mul(ga, poly_derivative(fa)), np_)
    return poly_add(term1, poly_scale(term2, -1))


def _cluster_roots(roots, cluster_tol):
    """Group numerically coincident roots; multiplicity = cluster size."""
    pts = [ProjectivePointP1.from_affine(r) for r in roots]
    n = len(pts)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if pts[i].chordal(pts[j]) <= cluster_tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in groups.values():
        zs = [roots[i] for i in members]
        rep = sum(zs) / len(zs)
        out.append((ProjectivePointP1.from_affine(rep), len(members)))
    return out


def roots_projective(f: BinaryForm, cluster_tol: float = CLUSTER_TOL) -> DivisorP1:
    """All deg(f) projective roots with multiplicities summing to deg(f).

    Exact forms get their multiplicity structure from the squarefree
    decomposition over Q; complex forms get it from clustering at
    ``cluster_tol``.  The root at (0, 1) carries multiplicity
    deg(f) - deg(affine part).
    """
    if f.is_zero:
        raise ZeroFormError("the zero form has no root divisor")
    entries = []
    if f.exact:
        aff = poly_strip(f.coeffs)
        inf_mult = f.degree - (len(aff) - 1)
        if len(aff) > 1:
            for factor, mult in squarefree_decomposition(aff):
                for r in _roots_dense([complex(c) for c in factor]):
                    entries.append((ProjectivePointP1.from_affine(r), mult))
    else:
        d_aff = f.affine_degree()
        inf_mult = f.degree - d_aff
        if d_aff > 0:
            roots = _roots_dense(list(f.coeffs[: d_aff + 1]))
            entries.extend(_cluster_roots(list(roots), cluster_tol))
    if inf_mult > 0:
        entries.append((ProjectivePointP1.infinity(), inf_mult))
    return DivisorP1(tuple(entries), min_separation=cluster_tol)


def form_is_squarefree(f: BinaryForm) -> bool:
    """Exact projective squarefreeness (affine part and infinity together)."""
    if not f.exact:
        raise ValueError("squarefreeness is decided in exact arithmetic only")
    if f.is_zero:
        raise ZeroFormError("squarefreeness of the zero form is undefined")
    if f.mult_at_infinity() > 1:
        return False
    aff = poly_strip(f.coeffs)
    return poly_is_squarefree(aff)


def forms_coprime(f: BinaryForm, g: BinaryForm) -> bool:
    """Exact test that f and g share no projective root."""
    if not (f.exact and g.exact):
        raise ValueError("coprimality is decided in exact arithmetic only")
    if f.is_zero or g.is_zero:
        raise ZeroFormError("coprimality with the zero form is undefined")
    if f.mult_at_infinity() > 0 and g.mult_at_infinity() > 0:
        return False
    return gcd_is_constant(poly_strip(f.coeffs), poly_strip(g.coeffs))


def squarefree_and_coprime(f: BinaryForm, g: BinaryForm):
    """(gcd(f, f') constant, gcd(f, g) constant), decided exactly."""
    return form_is_squarefree(f), forms_coprime(f, g)
