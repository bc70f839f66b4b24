"""The relation matrix F = B^-n - W and the trace-coordinate generators.

The group is <alpha, beta : beta^-n = omega> with
omega = alpha^-1 beta alpha^2 beta alpha^-1.  In the upper/lower triangular
normal form alpha -> A(a, t), beta -> B(b, s), the relation holds iff
F(a, b, s, t) = B^-n - W vanishes, W = A^-1 B A^2 B A^-1.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

from .errors import DerivationMismatch, NonGeneric, RecoveryFailed
from .fibonacci import family, fib
from .laurent import (
    LaurentPoly,
    SymMatrix2,
    a,
    a_inv,
    b,
    b_inv,
    back_substitute,
    eval_word,
    gen_A,
    gen_B,
    s,
    t,
    t_A,
    t_AB,
    t_B,
    trace_rewrite,
    x,
    xyz_poly,
    y,
    z,
)

L = LaurentPoly

OMEGA = "AbaabA"
LONGITUDE = "abAbaBAB"
MERIDIAN = "ba"


def _gens():
    return {"a": gen_A(), "b": gen_B()}


@lru_cache(maxsize=None)
def W_matrix() -> SymMatrix2:
    return eval_word(OMEGA, _gens())


def B_power_closed(n: int) -> SymMatrix2:
    """B^-n via Cayley-Hamilton: [[b^-n, -s f_n(t_B)], [0, b^n]]."""
    return SymMatrix2(L.var("b", -n), -s * L.from_intpoly(fib(n), t_B), L(), L.var("b", n))


@lru_cache(maxsize=None)
def build_F(n: int) -> SymMatrix2:
    return B_power_closed(n) - W_matrix()


def closed_form_F(n: int) -> SymMatrix2:
    """The four entries of F written out in a, b, s, t and the trace symbols."""
    st = s * t
    fn = L.from_intpoly(fib(n), t_B)
    F11 = L.var("b", -n) - (
        b * b - st * a_inv**3 * b_inv - st * st * (1 + a_inv * a_inv) + st * (-a + a_inv + a_inv**3) * b
    )
    F12 = -s * fn - s * (t_AB * t_A - t_B)
    F21 = -t * (
        t_A * t_AB * t_AB - t_A * t_A * t_B * t_AB + t_A**3 + t_A * t_B * t_B - t_B * t_AB - 2 * t_A
    )
    F22 = L.var("b", n) - (
        b_inv * b_inv - st * b * a**3 - st * st * (1 + a * a) - st * (-a + a_inv - a**3) * b_inv
    )
    return SymMatrix2(F11, F12, F21, F22)


# --- generators in trace coordinates ---------------------------------------


def F12_prime_formula(n: int) -> LaurentPoly:
    return xyz_poly(fib(n)) + z * x - y


def F21_prime_formula() -> LaurentPoly:
    return x * z * z - x * x * y * z + x**3 + x * y * y - y * z - 2 * x


def D_prime_formula(n: int) -> LaurentPoly:
    return (
        xyz_poly(fib(n + 1) - fib(n - 1))
        + x * x * z * z - x**3 * y * z + x**4 + x * x * y * y - 4 * x * x - y * y + 2
    )


@dataclass(frozen=True)
class Generators:
    """D', F12', F21' obtained from the matrix F by trace rewriting.

    F12 = -s F12' and F21 = -s F21' once t = s.
    """

    n: int
    D: LaurentPoly
    F12: LaurentPoly
    F21: LaurentPoly


@lru_cache(maxsize=None)
def matrix_generators(n: int) -> Generators:
    F = build_F(n)
    D = trace_rewrite(F.trace())
    F12 = trace_rewrite(F.e12.divide_monomial(-1, s=1))
    F21 = trace_rewrite(F.e21.divide_monomial(-1, t=1))
    return Generators(n, D, F12, F21)


@dataclass(frozen=True)
class PhiGenerators:
    n: int
    phi1: LaurentPoly
    phi2: LaurentPoly
    phi3: LaurentPoly
    phi3p: LaurentPoly

    def residuals(self, xv, yv, zv) -> tuple[complex, complex, complex]:
        b = {"x": xv, "y": yv, "z": zv}
        return tuple(p.substitute(b) for p in (self.phi1, self.phi2, self.phi3))

    def max_residual(self, xv, yv, zv) -> float:
        return max(abs(r) for r in self.residuals(xv, yv, zv))


def phi_direct(n: int) -> PhiGenerators:
    f = fib
    fam = family(n)
    phi1 = x * x - 1 + xyz_poly(f(n - 1))
    phi2 = z * x - y + xyz_poly(f(n))
    phi3 = x * xyz_poly(f(n + 1) - 1) - z * xyz_poly(f(n))
    phi3p = x * xyz_poly(fam.k) - z * xyz_poly(fam.l)
    return PhiGenerators(n, phi1, phi2, phi3, phi3p)


def phi_from_relation(n: int) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """phi1, phi2, phi3 as combinations of D', F12', F21'."""
    g = matrix_generators(n)
    half = 2 * y * g.F12 - (g.D + y * g.F12 - x * g.F21)
    phi1 = half.exact_div_int(2)
    phi2 = g.F12
    phi3 = g.F21 - (z - x * y) * g.F12 - x * phi1
    return phi1, phi2, phi3


@lru_cache(maxsize=None)
def phi_generators(n: int) -> PhiGenerators:
    """The phi system, built two ways and cross-checked exactly."""
    direct = phi_direct(n)
    derived = phi_from_relation(n)
    for name, p, q in zip(("phi1", "phi2", "phi3"), (direct.phi1, direct.phi2, direct.phi3), derived):
        if p != q:
            raise DerivationMismatch(f"{name} differs between constructions at n={n}")
    j = xyz_poly(family(n).j)
    if direct.phi3 != j * direct.phi3p:
        raise DerivationMismatch(f"phi3 != j_n phi3' at n={n}")
    return direct


def generator_identities(n: int) -> dict[str, bool]:
    """The matrix-side generators against their displayed forms, and S."""
    g = matrix_generators(n)
    F = build_F(n)
    S_ = (F.e11 - F.e22).set_t_equal_s()
    rhs = -(b - b_inv) * back_substitute(g.F12) - (a - a_inv) * back_substitute(g.F21)
    return {
        "F12'": g.F12 == F12_prime_formula(n),
        "F21'": g.F21 == F21_prime_formula(),
        "D'": g.D == D_prime_formula(n),
        "S": S_ == rhs,
    }


# --- longitude and meridian -------------------------------------------------


def longitude_formula() -> LaurentPoly:
    return (
        z**4 - 2 * x * y * z**3 + (x * x * y * y + y * y + 2 * x * x - 4) * z * z
        + (-2 * x**3 * y - y**3 * x + 4 * x * y) * z
        + x**4 + x * x * y * y - 4 * x * x + 2
    )


@dataclass(frozen=True)
class LongitudeTrace:
    poly: LaurentPoly

    def __call__(self, xv, yv, zv) -> complex:
        return self.poly.substitute({"x": xv, "y": yv, "z": zv})


@lru_cache(maxsize=None)
def longitude_trace() -> LongitudeTrace:
    """chi(lambda) by symbolic word evaluation, checked against the quartic."""
    M = eval_word(LONGITUDE, _gens())
    p = trace_rewrite(M.trace())
    if p != longitude_formula():
        raise DerivationMismatch("longitude trace differs from the quartic")
    return LongitudeTrace(p)


def meridian_trace() -> LaurentPoly:
    M = eval_word(MERIDIAN, _gens())
    return trace_rewrite(M.trace())


def spin_x(n: int) -> LaurentPoly:
    return -z * xyz_poly(fib(n)) + x * xyz_poly(fib(n + 1))


def spin_fixed_identity(n: int) -> bool:
    """x - spin(x) = -phi3, exactly."""
    return x - spin_x(n) == -phi_direct(n).phi3


# --- numeric recovery -------------------------------------------------------


def _half_root(v: complex) -> complex:
    """(v + sqrt(v^2 - 4)) / 2 with the principal root."""
    return (v + cmath.sqrt(v * v - 4)) / 2


def recover_abs(xv: complex, yv: complex, zv: complex, tol: float = 1e-9) -> tuple[complex, complex, complex]:
    """A triple (a, b, s) with traces (x, y, z) and t = s."""
    xv, yv, zv = complex(xv), complex(yv), complex(zv)
    if abs(xv * xv - 4) <= tol or abs(yv * yv - 4) <= tol:
        raise NonGeneric("x = +-2 or y = +-2: generator is parabolic or central")
    av, bv = _half_root(xv), _half_root(yv)
    s2 = zv - av * bv - 1 / (av * bv)
    if abs(s2) <= tol:
        raise NonGeneric("s = 0: the representation is reducible")
    sv = cmath.sqrt(s2)
    if abs(av + 1 / av - xv) > 1e-8 * (1 + abs(xv)) or abs(bv + 1 / bv - yv) > 1e-8 * (1 + abs(yv)):
        raise RecoveryFailed("eigenvalue recovery lost accuracy")
    return av, bv, sv


def numeric_matrices(av: complex, bv: complex, sv: complex):
    A_ = ((av, 0j), (sv, 1 / av))
    B_ = ((bv, sv), (0j, 1 / bv))
    return A_, B_


def m_mul(P, Q):
    return (
        (P[0][0] * Q[0][0] + P[0][1] * Q[1][0], P[0][0] * Q[0][1] + P[0][1] * Q[1][1]),
        (P[1][0] * Q[0][0] + P[1][1] * Q[1][0], P[1][0] * Q[0][1] + P[1][1] * Q[1][1]),
    )


def m_inv(P):
    return ((P[1][1], -P[0][1]), (-P[1][0], P[0][0]))


def m_pow(P, k: int):
    if k < 0:
        P, k = m_inv(P), -k
    out = ((1 + 0j, 0j), (0j, 1 + 0j))
    while k:
        if k & 1:
            out = m_mul(out, P)
        P = m_mul(P, P)
        k >>= 1
    return out


def relation_residual(n: int, xv, yv, zv) -> float:
    """max |F entry| at a recovered representation, by symbolic substitution."""
    av, bv, sv = recover_abs(xv, yv, zv)
    F = build_F(n)
    vals = F.substitute({"a": av, "b": bv, "s": sv, "t": sv})
    return max(abs(v) for v in vals)
