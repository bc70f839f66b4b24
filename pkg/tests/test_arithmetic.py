import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bundlechar.arithmetic import (
    C2_PLUS_1,
    b_quadrinomial,
    dilatation,
    discrete_faithful,
    expected_trace_degree,
    filling_characters,
    filling_reducible_residual,
    filling_table,
    flip_action,
    fox_calculus_oracle,
    genus_relation,
    laurent_clear,
    p_poly,
    phat,
    q_factor,
    q_mirror,
    r_factor,
    spin_action,
    trace_field,
    twisted_alexander,
    z_values,
)
from bundlechar.errors import NonHyperbolicN, ParabolicYTwo, SingularIMinusB
from bundlechar.fibonacci import TraceAngle, fib_eval, root_set
from bundlechar.poly import IntPoly, poly, roots_complex
from bundlechar.relation import longitude_trace
from bundlechar.variety import (
    VarietyPoint,
    canonical_descriptor,
    canonical_param,
    extra_line_meets_canonical,
    phi_max,
    quadric,
    sample_parameters,
)

HYP30 = [n for n in range(-30, 31) if abs(n) > 2]
HYP20 = [n for n in range(-20, 21) if abs(n) > 2]


# --- trace field -------------------------------------------------------------


def test_trace_field_examples():
    assert p_poly(-3) == poly(6, -3, -1, 1)
    assert phat(-3) == poly(3, -3, 1)
    c = trace_field(-3)
    assert c.phat == poly(3, -3, 1) and c.degree == 2
    assert trace_field(7).degree == 6
    c6 = trace_field(6)
    assert c6.degree == 6
    assert c6.parity_factor == poly(1, 0, 1, 0, -1, 0, 1)


def test_trace_field_rejects_small_n():
    with pytest.raises(NonHyperbolicN):
        trace_field(2)


@pytest.mark.parametrize("n", HYP30)
def test_trace_field_certificate(n):
    c = trace_field(n)
    assert c.certified
    assert c.degree == c.phat.degree == expected_trace_degree(n)
    assert c.cyclotomic_hits == []
    if n % 2:
        assert c.r_hits == [(4, C2_PLUS_1)]
        assert c.i_multiplicity_one


@pytest.mark.parametrize("N", range(3, 31))
def test_quadrinomial_identities(N):
    assert p_poly(N) == p_poly(-N)
    assert laurent_clear(p_poly(N), N) == b_quadrinomial(N)
    if N % 2 == 0:
        m = N // 2
        assert q_factor(m) * q_mirror(m) == b_quadrinomial(N)
    else:
        r = r_factor(N)
        assert r * r.reflect(-1) == b_quadrinomial(N).compose(IntPoly((0, 0, 1)))


@pytest.mark.parametrize("n", HYP20)
def test_phat_roots_depend_on_abs_n(n):
    a, b = roots_complex(phat(n)), roots_complex(phat(-n))
    assert all(abs(p - q) <= 1e-9 for p, q in zip(a, b))


# --- discrete faithful --------------------------------------------------------


def test_df_minus_three():
    cands = discrete_faithful(-3)
    ys = sorted({(round(c.y.real, 9), round(abs(c.y.imag), 9)) for c in cands})
    assert ys == [(1.5, 0.866025404)]
    chi = longitude_trace()
    for c in cands:
        assert abs(chi(*c.point.coords()) + 2) <= 1e-9


def test_df_three_same_y_as_minus_three():
    a = sorted({(round(c.y.real, 9), round(c.y.imag, 9)) for c in discrete_faithful(3)})
    b = sorted({(round(c.y.real, 9), round(c.y.imag, 9)) for c in discrete_faithful(-3)})
    assert a == b


@pytest.mark.parametrize("n", HYP20)
def test_df_candidates(n):
    cands = discrete_faithful(n)
    assert cands
    for c in cands:
        xv, yv, zv = c.point.coords()
        assert abs(xv * xv - (1 - fib_eval(n - 1, yv))) <= 1e-9
        assert abs(2 * c.eps * xv - (yv - fib_eval(n, yv))) <= 1e-9
        assert zv == 2 * c.eps
        assert c.shadow_distance > 1e-6


# --- twisted Alexander --------------------------------------------------------


def test_golden_Z_values():
    zm3 = sorted(round(twisted_alexander(c.point).Z.real, 8) for c in discrete_faithful(-3))
    assert set(zm3) == {-4.0, 4.0}
    for c in discrete_faithful(-3):
        assert abs(abs(twisted_alexander(c.point).Z) - 4) <= 1e-8
    for c in discrete_faithful(3):
        Z = twisted_alexander(c.point).Z
        assert abs(Z.real) <= 1e-8 and abs(abs(Z.imag) - 2 * math.sqrt(3)) <= 1e-8


@pytest.mark.parametrize("n", [6, 10, 14])
def test_extra_line_Z_is_minus_z(n):
    for p in extra_line_meets_canonical(n):
        assert abs(twisted_alexander(p).Z + p.z) <= 1e-12
    p = VarietyPoint(0j, 0j, 0.7 + 0.2j, "extra-line")
    assert abs(twisted_alexander(p).Z + p.z) <= 1e-12


def test_parabolic_y():
    with pytest.raises(ParabolicYTwo):
        twisted_alexander(VarietyPoint(1, 2, 1, "x"))


def test_fox_examples():
    p = canonical_descriptor(7).sample(3)[1]
    ta = twisted_alexander(p)
    assert abs(fox_calculus_oracle(p, 7, 2) - ta(2)) <= 1e-8
    assert abs(fox_calculus_oracle(p, 7, 1) - (2 + ta.Z)) <= 1e-8
    assert abs(fox_calculus_oracle(p, 7, -1) - (ta.Z - 2)) <= 1e-8


def test_fox_singular_b():
    with pytest.raises(SingularIMinusB):
        fox_calculus_oracle(VarietyPoint(0.3, 2.0, 1.0, "x"), 5, 2)


TS = (2.0, -1.3, 0.5 + 1j, 1.0, -1.0)


@pytest.mark.parametrize("n", [n for n in range(-7, 8) if abs(n) > 2])
def test_fox_grid(n):
    worst = 0.0
    for p in canonical_descriptor(n).sample(20):
        ta = twisted_alexander(p)
        for T in TS:
            worst = max(worst, abs(fox_calculus_oracle(p, n, T) - ta(T)))
    assert worst <= 1e-8


@pytest.mark.parametrize("n", [-11, -3, 4, 9])
def test_z_trend_records(n):
    rows = z_values(n)
    assert rows and all("abs_im" in r for r in rows)


# --- dilatation --------------------------------------------------------------


def test_dilatation_examples():
    assert abs(dilatation(3) - (3 + math.sqrt(5)) / 2) < 1e-12
    assert abs(dilatation(3) - 2.6180340) < 1e-7
    g = genus_relation(3)
    assert g.d == 2
    g7 = genus_relation(7)
    assert (g7.d, g7.g, g7.alpha, g7.holds) == (6, 2, 2, True)
    g6 = genus_relation(-6)
    assert (g6.d, g6.g, g6.alpha, g6.holds) == (5, 1, 3, True)


@pytest.mark.parametrize("n", [n for n in range(-50, 51) if abs(n) > 2])
def test_genus_relation(n):
    g = genus_relation(n)
    assert g.d == abs(n) - 1 == math.floor(dilatation(n))
    assert g.holds


# --- symmetries ----------------------------------------------------------


def test_spin_fixes_variety_n5():
    for yv in sample_parameters(10):
        p = canonical_param(5, yv, 1)
        q = spin_action(p, 5)
        assert abs(q.x - p.x) <= 1e-9 and q.y == p.y and q.z == p.z


def test_spin_off_variety_probe():
    q = spin_action(VarietyPoint(1, 1, 0, "probe"), 4)
    assert q.x == -1


@given(st.complex_numbers(max_magnitude=5), st.complex_numbers(max_magnitude=5), st.complex_numbers(max_magnitude=5))
def test_flip_is_identity(xv, yv, zv):
    p = VarietyPoint(xv, yv, zv, "probe")
    assert flip_action(p) == p


@given(st.sampled_from(HYP20), st.complex_numbers(max_magnitude=1.7), st.sampled_from([1, -1]))
def test_spin_fixes_random_points(n, yv, eps):
    try:
        p = canonical_param(n, yv, eps)
    except Exception:
        return
    scale = 1 + abs(p.z * fib_eval(n, yv)) + abs(p.x * fib_eval(n + 1, yv))
    assert abs(spin_action(p, n).x - p.x) <= 1e-9 * scale


# --- fillings --------------------------------------------------------------


def test_generic_filling_n7():
    (mu,) = filling_characters(7)
    assert mu.order == 9
    assert len(mu.points) == len(root_set("R", 9))
    for p in mu.points:
        assert p.y == p.x and p.z == 2
    assert filling_reducible_residual(mu) <= 1e-12


def test_n3_lambda_mu_same_as_mu():
    fams = {f.quotient: f for f in filling_characters(3)}
    assert [p.coords() for p in fams["lambda mu"].points] == [p.coords() for p in fams["mu"].points]


def test_n0_k1():
    fam = [f for f in filling_characters(0, [1]) if f.k == 1][0]
    got = sorted((round(p.x.real, 9), round(p.y.real, 9), round(p.z.real, 9)) for p in fam.points)
    # R_3 = {2, -1}; R_6 - R_3 = {-2, 1}; beta = -I makes z = -x on the second set
    assert got == [(-2.0, -2.0, 2.0), (-1.0, 2.0, -1.0), (1.0, -2.0, -1.0), (2.0, 2.0, 2.0)]


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2, 3, 5, 7])
def test_fillings_are_reducible(n):
    for fam in filling_characters(n):
        assert filling_reducible_residual(fam) <= 1e-9


def test_filling_table():
    assert [f.lens for f in filling_table(-4)] == ["L(4, -1)", "L(12, 5)"]
    assert len(filling_table(-5)) == 3
    assert filling_table(9)[0].lens == "L(9, 1)"
