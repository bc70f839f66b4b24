from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bundlechar.errors import BothZero, NonzeroRemainder
from bundlechar.fibonacci import family, fib
from bundlechar.poly import ONE, U, ZERO, IntPoly, cyclotomic, distinct_root_count, gcd, poly, roots_complex

big = st.integers(min_value=-(2**256), max_value=2**256)
small = st.integers(min_value=-20, max_value=20)


def polys(coeff=big, max_size=8):
    return st.lists(coeff, max_size=max_size).map(IntPoly)


def nonzero_polys(coeff=big, max_size=8):
    return polys(coeff, max_size).filter(lambda p: not p.is_zero)


# --- construction -----------------------------------------------------------


def test_trimmed_and_zero():
    assert IntPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert IntPoly((0, 0)).is_zero
    assert ZERO.coeffs == ()
    assert ZERO.degree == -1


def test_leading_coefficient_is_nonzero():
    p = poly(3, 0, -2)
    assert p.lc == -2 and p.degree == 2


# --- add / mul examples -------------------------------------------------------


def test_additive_inverse():
    assert U + (-U) == ZERO


def test_recursion_at_two():
    assert fib(1) + fib(3) == U * fib(2) == U * U


def test_add_h7_l7():
    h7 = poly(-1, 1, 1)
    l7 = poly(1, -2, -1, 1)
    assert h7 + l7 == poly(0, -1, 0, 1)


def test_mul_identity():
    p = poly(4, -1, 7)
    assert p * ONE == p


def test_j7_l7_is_f7():
    j7, l7 = poly(-1, -2, 1, 1), poly(1, -2, -1, 1)
    assert j7 * l7 == poly(-1, 0, 6, 0, -5, 0, 1) == fib(7)


def test_h7_l7_is_f6_minus_one():
    h7, l7 = poly(-1, 1, 1), poly(1, -2, -1, 1)
    assert h7 * l7 == poly(-1, 3, 0, -4, 0, 1) == fib(6) - 1


# --- division ------------------------------------------------------------------


def test_divrem_p_minus_three():
    assert poly(6, -3, -1, 1).divrem_exact(U + 2) == poly(3, -3, 1)


def test_divrem_l6():
    assert family(6).l.divrem_exact(U) == poly(-3, 0, 1)


def test_divrem_nonzero_remainder():
    with pytest.raises(NonzeroRemainder):
        (U * U).divrem_exact(U**3)


def test_floordiv_operator():
    assert (U * U - 1) // (U - 1) == U + 1


# --- gcd -----------------------------------------------------------------


def test_gcd_examples():
    f6, f4 = family(6), family(4)
    assert gcd(f6.h, f6.l) == U
    assert gcd(f4.j, f4.k) == U
    assert gcd(family(2).h, family(2).k) == U * U - 2


def test_gcd_both_zero():
    with pytest.raises(BothZero):
        gcd(ZERO, ZERO)


def test_gcd_is_primitive_with_positive_lc():
    g = gcd(poly(-2, 2) * poly(1, 1), poly(-4, 4) * poly(3, 1))
    assert g == poly(-1, 1)


# --- squarefree / derivative ---------------------------------------------


def test_squarefree_examples():
    assert fib(7).is_squarefree()
    assert not (U * U).is_squarefree()
    # the quoted sextic u^6+u^5-5u^4-4u^3+6u^2+3u-1 is f_7 + f_6
    assert fib(7) + fib(6) == poly(-1, 3, 6, -4, -5, 1, 1)
    assert (fib(7) + fib(6)).is_squarefree()
    assert (fib(7) - fib(6)).is_squarefree()


def test_derivative():
    assert poly(1, 2, 3).derivative() == poly(2, 6)


# --- evaluation ----------------------------------------------------------


def test_special_values():
    assert fib(5)(2) == 5
    assert fib(4)(0) == 0
    assert fib(3)(-2) == 3


def test_exact_evaluation_with_fractions():
    assert poly(0, 0, 1)(Fraction(1, 3)) == Fraction(1, 9)


# --- roots ---------------------------------------------------------------------


def test_roots_quadratics():
    r = roots_complex(U * U - 2)
    assert [round(v.real, 10) for v in r] == [-1.4142135624, 1.4142135624]
    assert sorted(round(v.real, 10) for v in roots_complex(fib(3))) == [-1.0, 1.0]
    r = roots_complex(poly(3, -3, 1))
    assert all(abs(v.real - 1.5) < 1e-12 and abs(abs(v.imag) - 0.8660254037844386) < 1e-12 for v in r)


def test_roots_deterministic():
    p = fib(15) - fib(14)
    assert roots_complex(p) == roots_complex(p)


@pytest.mark.parametrize("n", [k for k in range(-30, 31) if abs(k) > 1])
def test_root_residuals_on_family(n):
    fam = family(n)
    for p in (fib(n), fam.h, fam.j, fam.k, fam.l):
        if p.degree < 1:
            continue
        scale = 1 + max(abs(c) for c in p.coeffs)
        assert max(abs(p.eval_complex(r)) for r in roots_complex(p)) <= 1e-8 * scale


# --- cyclotomic ------------------------------------------------------------


def test_cyclotomic_examples():
    assert cyclotomic(1) == poly(-1, 1)
    assert cyclotomic(4) == poly(1, 0, 1)
    assert cyclotomic(12) == poly(1, 0, -1, 0, 1)


@pytest.mark.parametrize("N", [6, 12, 15, 30])
def test_cyclotomic_product(N):
    prod = ONE
    for d in range(1, N + 1):
        if N % d == 0:
            prod = prod * cyclotomic(d)
    assert prod == IntPoly.monomial(N) - 1


# --- serialization -------------------------------------------------------


@given(polys())
def test_json_round_trip(p):
    assert IntPoly.from_json(p.to_json()) == p


# --- properties ----------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p


@given(nonzero_polys(), polys())
def test_divrem_recovers_factor(p, q):
    assert (p * q).divrem_exact(p) == q


@given(st.lists(small, min_size=2, max_size=13).map(IntPoly).filter(lambda p: p.degree >= 1))
def test_squarefree_matches_root_clusters(p):
    roots = roots_complex(p, 1e-9)
    clustered = distinct_root_count(roots, radius=1e-6)
    if p.is_squarefree():
        assert clustered == p.degree
    else:
        assert clustered < p.degree
