"""Geometry of the character variety in the coordinates (x, y, z).

Points here are numeric shadows; every component descriptor keeps the exact
data (TraceAngle, IntPoly) it came from, and samplers rebuild points on
demand so reports are reproducible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    MinusTwoUnsupported,
    NoExtraLine,
    NonHyperbolicN,
    OnExcludedFiber,
    OutOfRange,
)
from .fibonacci import (
    MINUS_TWO,
    PLUS_TWO,
    TraceAngle,
    family,
    family_eval,
    fib,
    fib_eval,
    half_turn_set,
    hats,
    root_set,
)
from .poly import U, IntPoly, roots_complex
from .relation import phi_direct

MEMBERSHIP_TOL = 1e-9
SMALL_X = 1e-4
X2_ROUNDING = 64 * 2.0**-52

# provenance tags
CANONICAL = "canonical"
REDUCIBLE = "reducible"
EXTRA_LINE = "extra-line"
MULTIPLICITY = "multiplicity"
INTERSECTION = "intersection"
NONHYP = "nonhyp"
PSL_NONLIFTING = "psl-nonlifting"
FILLING = "filling"
DISCRETE_FAITHFUL = "discrete-faithful"


@dataclass(frozen=True)
class VarietyPoint:
    x: complex
    y: complex
    z: complex
    tag: str
    eps: Optional[int] = None
    tol: float = MEMBERSHIP_TOL

    def coords(self) -> tuple[complex, complex, complex]:
        return (complex(self.x), complex(self.y), complex(self.z))

    def to_json(self) -> dict:
        def c(v):
            v = complex(v)
            return [v.real, v.imag]

        return {"tag": self.tag, "eps": self.eps, "x": c(self.x), "y": c(self.y), "z": c(self.z), "tol": self.tol}

    def csv_row(self) -> list:
        return [self.tag] + [f(complex(v)) for v in self.coords() for f in (lambda w: w.real, lambda w: w.imag)]


def quadric(xv, yv, zv) -> complex:
    return xv * xv + yv * yv + zv * zv - xv * yv * zv - 4


def reducible_residual(p: VarietyPoint) -> float:
    return abs(quadric(*p.coords()))


def phi_residual(n: int, p: VarietyPoint) -> float:
    return phi_direct(n).max_residual(*p.coords())


def phi_values(n: int, xv, yv, zv) -> tuple[complex, complex, complex]:
    """phi1, phi2, phi3 by direct univariate evaluation (fast path)."""
    f = lambda k: fib_eval(k, yv)
    return (
        xv * xv - 1 + f(n - 1),
        zv * xv - yv + f(n),
        xv * (f(n + 1) - 1) - zv * f(n),
    )


def phi_max(n: int, xv, yv, zv) -> float:
    return max(abs(v) for v in phi_values(n, xv, yv, zv))


@dataclass(frozen=True)
class ComponentDescriptor:
    """One component with its exact defining data and a numeric sampler.

    ``locus`` is "irreducible" (checked against the phi system) or
    "reducible" (checked against x^2 + y^2 + z^2 - xyz = 4).
    """

    kind: str
    n: int
    label: str
    locus: str
    y: Optional[TraceAngle] = None
    model: Optional[IntPoly] = None
    dimension: int = 1
    sampler: Optional[Callable[[complex], tuple]] = field(default=None, compare=False, repr=False)

    def sample(self, count: int = 20) -> list[VarietyPoint]:
        if self.kind == "nonhyp-component":
            tag = NONHYP
        elif self.locus == "reducible":
            tag = REDUCIBLE
        else:
            tag = EXTRA_LINE if self.kind == "extra-line" else CANONICAL
        return [VarietyPoint(*self.sampler(p), tag=tag) for p in sample_parameters(count)]

    def residual(self, p: VarietyPoint) -> float:
        if self.locus == "reducible":
            return reducible_residual(p)
        return phi_max(self.n, *p.coords())

    def verify(self, count: int = 20, tol: float = MEMBERSHIP_TOL) -> float:
        """Max residual over ``count`` deterministic samples."""
        worst = max(self.residual(p) for p in self.sample(count))
        return worst

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "locus": self.locus,
            "dimension": self.dimension,
            "y": None if self.y is None else self.y.to_json(),
            "model": None if self.model is None else self.model.to_json(),
        }


def line_parameters(count: int) -> list[complex]:
    """Deterministic parameters hugging the segment [-1.9, 1.9]."""
    return [complex(-1.9 + 3.8 * k / max(count - 1, 1), 0.05 * math.sin(2.1 * k + 0.5)) for k in range(count)]


def sample_parameters(count: int) -> list[complex]:
    """Deterministic complex parameters of modest size for sampling."""
    return [complex(-1.7 + 3.4 * k / max(count - 1, 1), 0.35 * math.sin(1.3 * k + 0.2)) for k in range(count)]


def _conic_z(xv: complex, yv: complex) -> complex:
    # z^2 - xy z + (x^2 + y^2 - 4) = 0
    return (xv * yv + cmath.sqrt((xv * yv) ** 2 - 4 * (xv * xv + yv * yv - 4))) / 2


def reducible_components(n: int) -> list[ComponentDescriptor]:
    if n == -2:
        return [
            ComponentDescriptor(
                "reducible-surface", n, "x^2+y^2+z^2-xyz=4", "reducible", dimension=2,
                sampler=lambda p: (p, 0.5 + 0.3j * p, _conic_z(p, 0.5 + 0.3j * p)),
            )
        ]
    out = []
    for ang in sorted(root_set("R", n + 2)):
        yv = ang.value
        if ang == PLUS_TWO:
            out.append(ComponentDescriptor("reducible-line", n, "(x,2,x)", "reducible", y=ang, sampler=lambda p: (p, 2.0, p)))
        elif ang == MINUS_TWO:
            out.append(ComponentDescriptor("reducible-line", n, "(x,-2,-x)", "reducible", y=ang, sampler=lambda p: (p, -2.0, -p)))
        else:
            out.append(
                ComponentDescriptor(
                    "reducible-conic", n, f"x^2+z^2-{ang}xz=4-y^2", "reducible", y=ang,
                    sampler=lambda p, yv=yv: (p, yv, _conic_z(p, yv)),
                )
            )
    return out


def _z_candidates(n: int, yv: complex, eps: int) -> tuple[complex, Optional[complex], complex]:
    """(x, z from phi2 or None when x = 0, z from the radical expression)."""
    hh = hats(n)
    k = family_eval(n, yv)[2]
    # -h/l equals -h_hat/l_hat away from y = 0; use the hatted form there
    if abs(yv) > 1e-3 or n % 4 != 2:
        xv = eps * cmath.sqrt(1 - fib_eval(n - 1, yv))
        h, _, _, l = family_eval(n, yv)
        ratio = -h / l
    else:
        hv, lv = hh.h_hat.eval_complex(yv), hh.l_hat.eval_complex(yv)
        # 1 - f_{n-1} = -y^2 h_hat l_hat cancels badly near 0; keep the principal branch
        w = yv * cmath.sqrt(-hv * lv)
        xv = eps * (w if abs(w - cmath.sqrt(w * w)) <= abs(w + cmath.sqrt(w * w)) else -w)
        ratio = -hv / lv
    z_rad = -eps * k * cmath.sqrt(ratio)
    z_lin = (yv - fib_eval(n, yv)) / xv if xv != 0 else None
    return xv, z_lin, z_rad


def canonical_param(n: int, y: complex, eps: int, tol: float = MEMBERSHIP_TOL) -> VarietyPoint:
    """The point of the canonical component over y with x-branch eps.

    z is solved from phi2 (linear in z) whenever x != 0, so no square-root
    branch has to be guessed; the radical form is used only at x = 0.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    yv = complex(y)
    if abs(hats(n).l_hat.eval_complex(yv)) <= tol:
        raise OnExcludedFiber(f"l_hat_{n}(y) = 0")
    xv, z_lin, z_rad = _z_candidates(n, yv, eps)
    # x^2 = -h l; when h_hat(y) is at rounding level the fibre is h = 0 and
    # x, z are pure rounding noise of size sqrt(eps): snap to the exact point
    hh = hats(n).h_hat
    if hh.degree >= 1 and abs(hh.eval_complex(yv)) <= X2_ROUNDING * (1 + hh.abs_scale(yv)):
        z = 0j if abs(z_rad) <= SMALL_X else z_rad
        return VarietyPoint(0j, yv, z, CANONICAL, eps)
    if abs(xv) <= tol:
        return VarietyPoint(0j, yv, z_rad, CANONICAL, eps)
    if abs(xv) <= SMALL_X:
        # dividing by a tiny x loses digits; take the radical branch that fits phi2
        fn = fib_eval(n, yv)
        z = min((z_rad, -z_rad), key=lambda w: abs(w * xv - yv + fn))
        return VarietyPoint(xv, yv, z, CANONICAL, eps)
    return VarietyPoint(xv, yv, z_lin, CANONICAL, eps)


def z_branch_gap(n: int, y: complex, eps: int) -> float:
    """Distance between the phi2 z-value and the nearer radical branch."""
    xv, z_lin, z_rad = _z_candidates(n, complex(y), eps)
    if z_lin is None:
        return 0.0
    return min(abs(z_lin - z_rad), abs(z_lin + z_rad))


def _require_hyperbolic(n: int):
    if abs(n) <= 2:
        raise NonHyperbolicN(f"n={n} is not hyperbolic (|n| <= 2)")


def hyperelliptic_model(n: int) -> IntPoly:
    """Right side -h_hat l_hat of w^2 = -h_hat(y) l_hat(y), identity-checked."""
    _require_hyperbolic(n)
    hh = hats(n)
    model = -(hh.h_hat * hh.l_hat)
    target = 1 - fib(n - 1)
    lhs = model * U * U if n % 4 == 2 else model
    if lhs != target:
        raise ArithmeticError(f"model identity fails at n={n}")
    return model


def genus(n: int) -> int:
    _require_hyperbolic(n)
    shift = 4 if n % 4 == 2 else 2
    return (abs(n - 1) - shift) // 2


def genus_from_degree(n: int) -> int:
    return (hyperelliptic_model(n).degree - 1) // 2


def canonical_descriptor(n: int) -> ComponentDescriptor:
    model = hyperelliptic_model(n) if abs(n) > 2 else None
    return ComponentDescriptor(
        "canonical", n, "w^2=-h_hat(y)l_hat(y)", "irreducible", model=model,
        sampler=lambda p: canonical_param(n, p, 1).coords(),
    )


def extra_line(n: int) -> ComponentDescriptor:
    if n % 4 != 2:
        raise NoExtraLine(f"no extra line for n={n}")
    return ComponentDescriptor("extra-line", n, "(0,0,z)", "irreducible", sampler=lambda p: (0j, 0j, p))


def extra_line_z0(n: int) -> float:
    if n % 4 != 2:
        raise NoExtraLine(f"no extra line for n={n}")
    return 2 * math.sqrt(0.5 - 1.0 / n)


def extra_line_meets_canonical(n: int) -> tuple[VarietyPoint, VarietyPoint]:
    """(0, 0, +-z0), with z0 checked against the canonical parametrization at y = 0."""
    z0 = extra_line_z0(n)
    via_param = canonical_param(n, 0, 1)
    if abs(via_param.x) > MEMBERSHIP_TOL or abs(via_param.z ** 2 - z0 * z0) > MEMBERSHIP_TOL:
        raise ArithmeticError(f"extra-line intersection mismatch at n={n}")
    return VarietyPoint(0j, 0j, complex(z0), EXTRA_LINE, 1), VarietyPoint(0j, 0j, complex(-z0), EXTRA_LINE, -1)


def j_zero_angles(n: int) -> list[TraceAngle]:
    """Zeros of j_n: the b + 1/b with b^n = 1, excluding +-2."""
    if n == 0:
        return []
    return sorted(root_set("Rfib", n))


def multiplicity_points(n: int) -> list[VarietyPoint]:
    if abs(n) <= 2:
        return []
    out = []
    r2 = math.sqrt(2)
    for ang in j_zero_angles(n):
        y0 = ang.value
        if abs(family_eval(n, y0)[1]) > MEMBERSHIP_TOL:
            raise ArithmeticError(f"{ang} is not a zero of j_{n}")
        for eps in (1, -1):
            out.append(VarietyPoint(complex(eps * r2), complex(y0), complex(eps * y0 / r2), MULTIPLICITY, eps))
    return out


def intersection_lattice(n: int) -> list[VarietyPoint]:
    if n == -2:
        raise MinusTwoUnsupported("the reducible locus is a surface at n=-2")
    out = []
    # b^{n+2} = 1 is forced: f_{n+1}(y) = -1 on the intersection
    for ang in sorted(root_set("Rfib", n + 2)):
        yv = ang.value
        tag = EXTRA_LINE if (n % 4 == 2 and ang == TraceAngle(1, 4)) else INTERSECTION
        if tag == EXTRA_LINE:
            yv = 0.0
        for eps in (1, -1):
            out.append(VarietyPoint(complex(eps * yv), complex(yv), complex(2 * eps), tag, eps))
    r = cmath.sqrt(2 - n)
    for eps in (1, -1):
        out.append(VarietyPoint(eps * r, 2 + 0j, eps * r, INTERSECTION, eps))
    if n % 2 == 0:
        for eps in (1, -1):
            out.append(VarietyPoint(eps * r, -2 + 0j, -eps * r, INTERSECTION, eps))
    return out


# --- the non-hyperbolic table ------------------------------------------------


def _red(n, label, sampler):
    return ComponentDescriptor("nonhyp-component", n, label, "reducible", sampler=sampler)


def _irr(n, label, sampler, dimension=1):
    return ComponentDescriptor("nonhyp-component", n, label, "irreducible", dimension=dimension, sampler=sampler)


def nonhyperbolic_table(n: int) -> list[ComponentDescriptor]:
    """Components of the variety for |n| <= 2, reducible ones first."""
    r2 = math.sqrt(2)
    if n == 2:
        return [
            _red(n, "(x,2,x)", lambda p: (p, 2.0, p)),
            _red(n, "(x,-2,-x)", lambda p: (p, -2.0, -p)),
            _red(n, "(x,0,z): x^2+z^2=4", lambda p: (p, 0.0, cmath.sqrt(4 - p * p))),
            _irr(n, "(0,y,0)", lambda p: (0j, p, 0j)),
            _irr(n, "(0,0,z)", lambda p: (0j, 0j, p)),
        ]
    if n == 1:
        return [
            _red(n, "(x,2,x)", lambda p: (p, 2.0, p)),
            _red(n, "(x,-1,z): x^2+z^2+xz=3", lambda p: (p, -1.0, (-p + cmath.sqrt(12 - 3 * p * p)) / 2)),
            _irr(n, "(1,y,y-1)", lambda p: (1.0, p, p - 1)),
            _irr(n, "(-1,y,-y+1)", lambda p: (-1.0, p, 1 - p)),
        ]
    if n == 0:
        return [
            _red(n, "(x,2,x)", lambda p: (p, 2.0, p)),
            _red(n, "(x,-2,-x)", lambda p: (p, -2.0, -p)),
            _irr(n, "(sqrt2,sqrt2 z,z)", lambda p: (r2, r2 * p, p)),
            _irr(n, "(-sqrt2,-sqrt2 z,z)", lambda p: (-r2, -r2 * p, p)),
        ]
    if n == -1:
        return [
            _red(n, "(x,2,x)", lambda p: (p, 2.0, p)),
            _irr(n, "(x,x^2-1,x)", lambda p: (p, p * p - 1, p)),
        ]
    if n == -2:
        return [
            reducible_components(-2)[0],
            _irr(n, "(0,0,z)", lambda p: (0j, 0j, p)),
            _irr(n, "(2,2,2)", lambda p: (2.0, 2.0, 2.0), dimension=0),
            _irr(n, "(-2,2,-2)", lambda p: (-2.0, 2.0, -2.0), dimension=0),
        ]
    raise OutOfRange(f"the non-hyperbolic table covers |n| <= 2, not n={n}")


# --- PSL quotients ---------------------------------------------------------


def psl_system(n: int, xv, yv, zv) -> tuple[complex, complex, complex]:
    """The eps = -1 system whose solutions do not lift to SL2 on X."""
    f = lambda k: fib_eval(k, yv)
    return (
        f(n - 1) - (xv * xv - 1),
        f(n) - (xv * zv - yv),
        xv * (f(n + 1) + 1) - zv * f(n),
    )


def psl_max(n: int, xv, yv, zv) -> float:
    return max(abs(v) for v in psl_system(n, xv, yv, zv))


def in_square(p: IntPoly) -> IntPoly:
    """For an even polynomial p(u), the polynomial q with q(u^2) = p(u)."""
    if not p.is_even_function():
        raise ValueError(f"{p} is not an even function")
    return IntPoly(p.coeffs[0::2])


@dataclass(frozen=True)
class PSLLine:
    """The parametric non-lifting family y_bar -> (q1, y_bar, q2/q3)."""

    n: int
    q1: IntPoly
    q2: IntPoly
    q3: IntPoly
    excluded: IntPoly  # f_{n+1}(u) + 1 written in u^2

    def lift(self, u: complex) -> tuple[complex, complex, complex]:
        """SL2 coordinates over u with x^2 = q1(u^2), z = (f_n(u) + u)/x."""
        u = complex(u)
        if abs(self.excluded.eval_complex(u * u)) <= MEMBERSHIP_TOL:
            raise OnExcludedFiber("u^2 is a root of f_{n+1}(u) + 1")
        # x^2 = q1(u^2) = f_{n-1}(u) + 1, evaluated by the stable recursion
        xv = cmath.sqrt(fib_eval(self.n - 1, u) + 1)
        return xv, u, (fib_eval(self.n, u) + u) / xv

    def excluded_roots(self) -> list[complex]:
        return roots_complex(self.excluded) if self.excluded.degree >= 1 else []


@dataclass(frozen=True)
class PSLQuotient:
    n: int
    parity: str
    description: str
    model: IntPoly
    point_angles: tuple = ()        # y with b^n = -1; points (sqrt2, y, y/sqrt2)
    zero_point_angles: tuple = ()   # y with b^(n-2) = -1; points (0, y, 0)
    stated_zero_point_angles: tuple = ()
    line: Optional[PSLLine] = None
    has_z_line: bool = False

    def lifted_points(self) -> list[VarietyPoint]:
        r2 = math.sqrt(2)
        pts = [VarietyPoint(complex(r2), complex(a.value), complex(a.value / r2), PSL_NONLIFTING) for a in self.point_angles]
        pts += [VarietyPoint(0j, complex(a.value), 0j, PSL_NONLIFTING) for a in self.zero_point_angles]
        return pts

    def ybar_values(self) -> dict[str, list[str]]:
        """The y_bar = y^2 sets, as doubled angles (y_bar = 2 + value)."""
        return {
            "points_2": sorted({str(a.doubled()) for a in self.point_angles}),
            "points_0": sorted({str(a.doubled()) for a in self.zero_point_angles}),
        }


def psl_quotient(n: int) -> PSLQuotient:
    _require_hyperbolic(n)
    model = hyperelliptic_model(n)
    if n % 2:
        return PSLQuotient(n, "odd", "Y = Y0, the quotient of w^2 = -h_hat l_hat by (y, w) -> (y, -w)", model)
    f = fib
    q1 = in_square(f(n - 1) + 1)
    q2 = in_square((f(n) + U) * (f(n) + U))
    q3 = in_square(f(n - 1) + 1)
    excl = in_square(f(n + 1) + 1)
    pts = tuple(sorted(half_turn_set(n)))
    zero_pts = tuple(sorted(half_turn_set(n - 2)))
    m = (n - 2) // 2
    stated = tuple(sorted(half_turn_set(m))) if m else ()
    return PSLQuotient(
        n, "even", "Y0 = X0/mu2, the quotient of w^2 = -h_hat l_hat by (y, w) -> (y, -w) and (y, w) -> (-y, w)", model,
        point_angles=pts, zero_point_angles=zero_pts, stated_zero_point_angles=stated,
        line=PSLLine(n, q1, q2, q3, excl), has_z_line=(n % 4 == 0),
    )
