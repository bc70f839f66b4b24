"""Arithmetic invariants of the hyperbolic bundles.

The trace field comes with a cyclotomic-scan certificate.  The twisted
Alexander polynomial is cross-checked against a Fox-calculus determinant.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath

from .errors import CertificateFailed, NonHyperbolicN, ParabolicYTwo, SingularIMinusB
from .fibonacci import TraceAngle, fib, fib_eval, root_set
from .poly import ONE, U, IntPoly, cyclotomic, gcd, roots_complex
from .relation import LONGITUDE, OMEGA, longitude_trace, m_inv, m_mul, recover_abs
from .variety import (
    DISCRETE_FAITHFUL,
    FILLING,
    MEMBERSHIP_TOL,
    VarietyPoint,
    genus,
    phi_max,
    quadric,
)

C2_PLUS_1 = IntPoly((1, 0, 1))


def _require_hyperbolic(n: int):
    if abs(n) <= 2:
        raise NonHyperbolicN(f"n={n} is not hyperbolic (|n| <= 2)")


# --- trace field -------------------------------------------------------------


def p_poly(n: int) -> IntPoly:
    """p_n(y) = f_{n+1}(y) - f_{n-1}(y) - y^2 + 6."""
    return fib(n + 1) - fib(n - 1) - U * U + 6


def phat(n: int) -> IntPoly:
    p = p_poly(n)
    return p.divrem_exact(U + 2) if n % 2 else p


def b_quadrinomial(N: int) -> IntPoly:
    """b^{2N} - b^{N+2} + 4b^N - b^{N-2} + 1 for N = |n| > 2."""
    c = [0] * (2 * N + 1)
    c[0] += 1
    c[N - 2] -= 1
    c[N] += 4
    c[N + 2] -= 1
    c[2 * N] += 1
    return IntPoly(c)


def laurent_clear(p: IntPoly, N: int) -> IntPoly:
    """b^N p(b + 1/b) as a polynomial in b (needs deg p <= N)."""
    out = IntPoly()
    b2p1 = IntPoly((1, 0, 1))
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + (b2p1 ** i).shift(N - i).scale(c)
    return out


def q_factor(m: int) -> IntPoly:
    """q_m(b) = b^{2m} - b^{m+1} + b^{m-1} + 1."""
    c = [0] * (2 * m + 1)
    c[0] += 1
    c[m - 1] += 1
    c[m + 1] -= 1
    c[2 * m] += 1
    return IntPoly(c)


def q_mirror(m: int) -> IntPoly:
    c = [0] * (2 * m + 1)
    c[0] += 1
    c[m - 1] -= 1
    c[m + 1] += 1
    c[2 * m] += 1
    return IntPoly(c)


def r_factor(N: int) -> IntPoly:
    """r_N(c) = c^{2N} - c^{N+2} + c^{N-2} + 1."""
    c = [0] * (2 * N + 1)
    c[0] += 1
    c[N - 2] += 1
    c[N + 2] -= 1
    c[2 * N] += 1
    return IntPoly(c)


def cyclotomic_hits(p: IntPoly, d_max: int) -> list[tuple[int, IntPoly]]:
    hits = []
    for d in range(1, d_max + 1):
        g = gcd(p, cyclotomic(d))
        if not g.is_constant():
            hits.append((d, g))
    return hits


@dataclass(frozen=True)
class TraceFieldCert:
    n: int
    phat: IntPoly
    degree: int
    b_poly: IntPoly
    parity_factor: IntPoly
    cyclotomic_hits: list
    certified: bool
    r_hits: list = field(default_factory=list)
    i_multiplicity_one: Optional[bool] = None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "phat": self.phat.to_json(),
            "degree": self.degree,
            "b_poly": self.b_poly.to_json(),
            "parity_factor": self.parity_factor.to_json(),
            "cyclotomic_hits": [[d, g.to_json()] for d, g in self.cyclotomic_hits],
            "r_hits": [[d, g.to_json()] for d, g in self.r_hits],
            "i_multiplicity_one": self.i_multiplicity_one,
            "certified": self.certified,
        }


def trace_field(n: int) -> TraceFieldCert:
    """Minimal polynomial p_hat_n and the no-cyclotomic-factor certificate.

    The quadrinomial and its factorization are checked as exact polynomial
    identities; irreducibility then rests on the absence of cyclotomic
    factors in the parity factor, which is what the scan establishes.
    """
    _require_hyperbolic(n)
    N = abs(n)
    ph = phat(n)
    bq = b_quadrinomial(N)
    if p_poly(n) != p_poly(N) or laurent_clear(p_poly(N), N) != bq:
        raise ArithmeticError(f"quadrinomial identity fails at n={n}")
    if N % 2 == 0:
        m = N // 2
        factor = q_factor(m)
        if factor * q_mirror(m) != bq:
            raise ArithmeticError(f"q_m factorization fails at n={n}")
        hits = cyclotomic_hits(factor, 2 * factor.degree)
        if hits:
            raise CertificateFailed(f"cyclotomic factor of q_{m} at n={n}")
        return TraceFieldCert(n, ph, ph.degree, bq, factor, hits, True)
    r = r_factor(N)
    if r * r.reflect(-1) != bq.compose(IntPoly((0, 0, 1))):
        raise ArithmeticError(f"r_n factorization fails at n={n}")
    factor = r.divrem_exact(C2_PLUS_1)
    mult_one = not C2_PLUS_1.divides(factor)
    r_hits = cyclotomic_hits(r, 2 * r.degree)
    hits = cyclotomic_hits(factor, 2 * factor.degree)
    ok = not hits and mult_one and r_hits == [(4, C2_PLUS_1)]
    if not ok:
        raise CertificateFailed(f"cyclotomic scan of r_{N} failed at n={n}")
    return TraceFieldCert(n, ph, ph.degree, bq, factor, hits, ok, r_hits, mult_one)


def expected_trace_degree(n: int) -> int:
    return abs(n) - (1 if n % 2 else 0)


# --- discrete faithful candidates ---------------------------------------------


@dataclass(frozen=True)
class DiscreteFaithfulPoint:
    y: complex
    eps: int
    branch: int
    point: VarietyPoint
    chi_lambda: complex
    constraint: complex
    phi_residual: float
    shadow_distance: float

    def passes(self, tol: float = MEMBERSHIP_TOL) -> bool:
        return (
            abs(self.chi_lambda + 2) <= tol
            and abs(self.constraint) <= tol
            and self.phi_residual <= tol
        )

    def to_json(self) -> dict:
        return {
            "y": [self.y.real, self.y.imag],
            "eps": self.eps,
            "branch": self.branch,
            "point": self.point.to_json(),
            "chi_lambda_plus_2": abs(self.chi_lambda + 2),
            "constraint": abs(self.constraint),
            "phi_residual": self.phi_residual,
            "shadow_distance": self.shadow_distance,
        }


def _polish(p: IntPoly, r: complex, steps: int = 6, dps: int = 50) -> complex:
    """Newton steps at high precision.

    Double-precision Horner on p_hat loses digits near y = +-2 where the
    coefficients are large binomials, so refinement runs in mpmath.
    """
    coeffs = list(reversed(p.coeffs))
    dcoeffs = list(reversed(p.derivative().coeffs))
    with mpmath.workdps(dps):
        z = mpmath.mpc(r)
        for _ in range(steps):
            d = mpmath.polyval(dcoeffs, z)
            if d == 0:
                break
            z = z - mpmath.polyval(coeffs, z) / d
        return complex(z)


def trace_shadow_distance(v: complex, kmax: int) -> float:
    """Distance from v to the nearest 2cos(2 pi j/k), k <= kmax."""
    best = math.inf
    for k in range(1, kmax + 1):
        for j in range(k // 2 + 1):
            best = min(best, abs(v - 2 * math.cos(2 * math.pi * j / k)))
    return best


def discrete_faithful_all(n: int) -> list[DiscreteFaithfulPoint]:
    """Every (root, eps, branch) candidate, passing or not."""
    _require_hyperbolic(n)
    ph = phat(n)
    chi = longitude_trace()
    out = []
    for y0 in roots_complex(ph):
        y0 = _polish(ph, y0)
        shadow = trace_shadow_distance(y0, 4 * abs(n))
        rad = cmath.sqrt(y0 * y0 - 8)
        for eps in (1, -1):
            for branch in (1, -1):
                xv = eps * (y0 - branch * rad) / 2
                zv = complex(2 * eps)
                pt = VarietyPoint(xv, y0, zv, DISCRETE_FAITHFUL, eps)
                out.append(
                    DiscreteFaithfulPoint(
                        y0, eps, branch, pt, chi(xv, y0, zv), 2 + xv * xv - eps * xv * y0,
                        phi_max(n, xv, y0, zv), shadow,
                    )
                )
    return out


def discrete_faithful(n: int, tol: float = MEMBERSHIP_TOL) -> list[DiscreteFaithfulPoint]:
    """Candidates satisfying every constraint and away from trace shadows."""
    return [c for c in discrete_faithful_all(n) if c.passes(tol) and c.shadow_distance > 1e-6]


# --- twisted Alexander polynomial ------------------------------------------


@dataclass(frozen=True)
class TwistedAlexander:
    Z: complex
    coeffs: tuple  # coefficients of T^-1, T^0, T^1

    def __call__(self, T: complex) -> complex:
        return self.coeffs[0] / T + self.coeffs[1] + self.coeffs[2] * T


def twisted_alexander(point: VarietyPoint, tol: float = MEMBERSHIP_TOL) -> TwistedAlexander:
    xv, yv, zv = point.coords()
    if abs(yv - 2) <= tol:
        raise ParabolicYTwo("Z is undefined at y = 2")
    Z = 2 * (zv - xv) / (yv - 2)
    return TwistedAlexander(Z, (1, Z, 1))


def _scaled(M, c):
    return tuple(tuple(v * c for v in row) for row in M)


def _det(M) -> complex:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def fox_derivative_beta(word: str, images: dict) -> tuple:
    """Image of the Fox derivative d(word)/d(beta) under a matrix representation.

    d(uv) = du + u dv, d(beta) = 1, d(beta^-1) = -beta^-1, d(alpha^+-1) = 0.
    """
    prefix = ((1 + 0j, 0j), (0j, 1 + 0j))
    acc = [[0j, 0j], [0j, 0j]]
    for ch in word:
        if ch == "b":
            term = prefix
        elif ch == "B":
            term = _scaled(m_mul(prefix, images["B"]), -1)
        else:
            term = None
        if term is not None:
            for i in range(2):
                for j in range(2):
                    acc[i][j] += term[i][j]
        prefix = m_mul(prefix, images[ch])
    return tuple(tuple(r) for r in acc)


def relator(n: int) -> str:
    """omega beta^n, trivial in the group (beta^-n = omega)."""
    return OMEGA + ("b" * n if n >= 0 else "B" * (-n))


def fox_calculus_oracle(point: VarietyPoint, n: int, T: complex, tol: float = MEMBERSHIP_TOL) -> complex:
    """Wada's ratio det(d r/d beta) / det(alpha - 1), times T^-1.

    Uses the representation recovered from (x, y, z), alpha -> A T^-1 and
    beta -> B; the factor T^-1 is the unit that makes the result symmetric.
    """
    T = complex(T)
    if T == 0:
        raise ValueError("T must be nonzero")
    if abs(point.coords()[1] - 2) <= tol:
        raise SingularIMinusB("y = 2 forces b = 1, so I - B is singular")
    av, bv, sv = recover_abs(*point.coords())
    A_ = ((av, 0j), (sv, 1 / av))
    B_ = ((bv, sv), (0j, 1 / bv))
    images = {
        "a": _scaled(A_, 1 / T),
        "A": _scaled(m_inv(A_), T),
        "b": B_,
        "B": m_inv(B_),
    }
    num = _det(fox_derivative_beta(relator(n), images))
    Ai = images["a"]
    den = _det(((Ai[0][0] - 1, Ai[0][1]), (Ai[1][0], Ai[1][1] - 1)))
    return num / den / T


# --- dilatation -------------------------------------------------------------


def dilatation(n: int) -> float:
    _require_hyperbolic(n)
    return (abs(n) + math.sqrt(n * n - 4)) / 2


def _sgn(n: int) -> int:
    return 1 if n > 0 else -1


def alpha_term(n: int) -> int:
    if n % 4 == 2:
        return 4 + _sgn(n)
    if n % 4 == 0:
        return 2 + _sgn(n)
    return 1 + _sgn(n)


@dataclass(frozen=True)
class GenusRelation:
    n: int
    dilatation: float
    d: int
    g: int
    alpha: int

    @property
    def holds(self) -> bool:
        return self.d == 2 * self.g + self.alpha

    def to_json(self) -> dict:
        return {"n": self.n, "dilatation": self.dilatation, "d": self.d, "g": self.g, "alpha": self.alpha, "holds": self.holds}


def genus_relation(n: int) -> GenusRelation:
    """d = floor(dilatation), computed exactly with an integer square root."""
    _require_hyperbolic(n)
    d = (abs(n) + math.isqrt(n * n - 4)) // 2
    return GenusRelation(n, dilatation(n), d, genus(n), alpha_term(n))


# --- symmetries -------------------------------------------------------------


def spin_action(point: VarietyPoint, n: int) -> VarietyPoint:
    xv, yv, zv = point.coords()
    new_x = -zv * fib_eval(n, yv) + xv * fib_eval(n + 1, yv)
    return VarietyPoint(new_x, yv, zv, point.tag, point.eps, point.tol)


def flip_action(point: VarietyPoint) -> VarietyPoint:
    return point


# --- lens-space fillings ----------------------------------------------------


@dataclass(frozen=True)
class FillingFamily:
    """Characters of one cyclic quotient of the group by a peripheral element."""

    n: int
    quotient: str
    order: Optional[int]
    points: tuple
    k: Optional[int] = None
    parametric: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "quotient": self.quotient,
            "order": self.order,
            "k": self.k,
            "parametric": self.parametric,
            "points": [p.to_json() for p in self.points],
        }


def _abelian_points(N: int, ey: int, ez: int) -> tuple:
    """Diagonal characters x = 2Re(zeta), y = 2Re(zeta^ey), z = 2Re(zeta^ez), zeta^N = 1."""
    M = abs(N)
    seen = {}
    for j in range(M):
        key = (TraceAngle(j, M), TraceAngle(j * ey, M), TraceAngle(j * ez, M))
        if key not in seen:
            seen[key] = VarietyPoint(*(complex(a.value) for a in key), tag=FILLING)
    return tuple(seen[k] for k in sorted(seen))


def _diag_points(angles, ysign: int, zfn) -> tuple:
    return tuple(
        VarietyPoint(complex(a.value), complex(ysign(a)), complex(zfn(a)), FILLING) for a in sorted(angles)
    )


DEFAULT_K_RANGE = range(-3, 4)


def filling_characters(n: int, k_range=DEFAULT_K_RANGE) -> list[FillingFamily]:
    """The meridian quotient for every n, plus the special families."""
    out = []
    if n == -2:
        out.append(FillingFamily(n, "mu", None, (), parametric="(y,y,2), y free"))
    else:
        pts = tuple(VarietyPoint(complex(a.value), complex(a.value), 2 + 0j, FILLING) for a in sorted(root_set("R", n + 2)))
        out.append(FillingFamily(n, "mu", abs(n + 2), pts))
    if n == -1:
        for k in k_range:
            N = 18 * k - 3
            pts = tuple(VarietyPoint(complex(a.value), 2 + 0j, complex(a.value), FILLING) for a in sorted(root_set("R", N)))
            out.append(FillingFamily(n, f"lambda^{k} mu^{6 * k - 1}", abs(6 * k - 1), pts, k))
    elif n == 0:
        for k in k_range:
            small = root_set("R", 4 * k - 1).elements
            big = root_set("R", 8 * k - 2).elements - small
            pts = tuple(VarietyPoint(complex(a.value), 2 + 0j, complex(a.value), FILLING) for a in sorted(small))
            # beta = -I on the second set, so z = tr(-A) = -x
            pts += tuple(VarietyPoint(complex(a.value), -2 + 0j, complex(-a.value), FILLING) for a in sorted(big))
            out.append(FillingFamily(n, f"lambda^{k} mu^{4 * k - 1}", abs(8 * k - 2), pts, k))
    elif n == 1:
        for k in k_range:
            N = 9 * k - 3
            out.append(FillingFamily(n, f"lambda^{k} mu^{3 * k - 1}", abs(N), _abelian_points(N, 3 * k - 1, 3 * k), k))
    elif n == 2:
        out.append(FillingFamily(n, "lambda mu^3", 12, _abelian_points(12, 3, 4)))
    elif n == 3:
        r5 = root_set("R", 5).elements
        first = tuple(VarietyPoint(complex(a.value), complex(a.value), 2 + 0j, FILLING) for a in sorted(r5))
        second = tuple(
            VarietyPoint(complex(a.value), complex(-a.value), -2 + 0j, FILLING)
            for a in sorted(root_set("R", 10).elements - r5)
        )
        out.append(FillingFamily(n, "lambda mu", 5, first))
        out.append(FillingFamily(n, "lambda mu^2", 10, first + second))
    elif n == 5:
        pts = tuple(VarietyPoint(complex(a.value), complex(a.value), 2 + 0j, FILLING) for a in sorted(root_set("R", 7)))
        out.append(FillingFamily(n, "lambda mu", 7, pts))
    return out


def filling_reducible_residual(fam: FillingFamily) -> float:
    return max((abs(quadric(*p.coords())) for p in fam.points), default=0.0)


@dataclass(frozen=True)
class LensFilling:
    slope: str
    lens: str


def filling_table(p: int) -> list[LensFilling]:
    """Lens-space fillings of W(p, .), the bundle with p = -(n + 2)."""
    table = {
        -1: [LensFilling("-6+1/k", "L(6k-1, 2k-1)")],
        -2: [LensFilling("-4+1/k", "L(8k-2, 2k-1)")],
        -3: [LensFilling("-3+1/k", "L(9k-3, 3k-2)")],
        -4: [LensFilling("inf", "L(4, -1)"), LensFilling("-3", "L(12, 5)")],
        -5: [LensFilling("inf", "L(5, -1)"), LensFilling("-1", "L(5, 1)"), LensFilling("-2", "L(10, 3)")],
        -7: [LensFilling("inf", "L(7, -1)"), LensFilling("-1", "L(7, 3)")],
    }
    return table.get(p, [LensFilling("inf", f"L({p}, 1)")])


def z_values(n: int) -> list[dict]:
    """Z at every discrete-faithful candidate, with Im(Z) recorded."""
    out = []
    for c in discrete_faithful(n):
        Z = twisted_alexander(c.point).Z
        out.append({"y": [c.y.real, c.y.imag], "eps": c.eps, "branch": c.branch, "Z": [Z.real, Z.imag], "abs_im": abs(Z.imag)})
    return out
