"""Exact univariate integer polynomials and a numeric root finder.

Polynomials are stored densely as a tuple of Python integers in ascending
degree, so ``IntPoly((6, -3, -1, 1))`` is ``u^3 - u^2 - 3u + 6``.  The zero
polynomial is the empty tuple and has degree ``-1`` by convention here
(``degree`` is documented as undefined for zero; callers test ``is_zero``).
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from .errors import BothZero, NonConvergence, NonzeroRemainder, ZeroPolynomial

DEFAULT_TOL = 1e-10
RESIDUAL_TOL = 1e-8


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial in one variable (printed as ``u``)."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _trim(int(v) for v in self.coeffs)
        object.__setattr__(self, "coeffs", c)

    # construction
    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> "IntPoly":
        return cls((0,) * deg + (c,))

    @classmethod
    def u(cls) -> "IntPoly":
        return cls((0, 1))

    # basic queries
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly(tuple(a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = IntPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: int) -> "IntPoly":
        return IntPoly(tuple(c * v for v in self.coeffs))

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``u^k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def compose(self, q: "IntPoly") -> "IntPoly":
        out = IntPoly()
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def reflect(self, s: int = -1) -> "IntPoly":
        """Return p(s*u) for s = +-1."""
        return IntPoly(tuple(c * (s ** i) for i, c in enumerate(self.coeffs)))

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def divrem_exact(self, d: "IntPoly") -> "IntPoly":
        """Exact quotient ``self / d``.

        Raises NonzeroRemainder when the division leaves a remainder or
        the quotient would need non-integer coefficients.
        """
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = divmod_rational(self, d)
        if any(v for v in r):
            raise NonzeroRemainder(f"{d} does not divide {self}")
        if any(v.denominator != 1 for v in q):
            raise NonzeroRemainder(f"quotient of {self} by {d} is not integral")
        return IntPoly(tuple(int(v) for v in q))

    def __floordiv__(self, d):
        return self.divrem_exact(_coerce(d))

    def divides(self, p: "IntPoly") -> bool:
        try:
            p.divrem_exact(self)
        except NonzeroRemainder:
            return False
        return True

    def is_even_function(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def is_odd_function(self) -> bool:
        return all(c == 0 for c in self.coeffs[0::2])

    def is_squarefree(self) -> bool:
        if self.is_zero:
            raise ZeroPolynomial("is_squarefree of the zero polynomial")
        if self.degree < 1:
            return True
        return gcd(self, self.derivative()).is_constant()

    # evaluation
    def __call__(self, v):
        if isinstance(v, (int, Fraction)):
            out = 0
            for c in reversed(self.coeffs):
                out = out * v + c
            return out
        return self.eval_complex(v)

    def eval_complex(self, v) -> complex:
        v = complex(v)
        out = 0j
        for c in reversed(self.coeffs):
            out = out * v + c
        return out

    def abs_scale(self, v) -> float:
        """sum |c_i| |v|^i, the natural magnitude scale for residuals."""
        r = abs(v)
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * r + abs(c)
        return out

    def roots(self, tol: float = 1e-12, max_iter: int = 1000) -> list[complex]:
        return roots_complex(self, tol=tol, max_iter=max_iter)

    # serialization
    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "IntPoly":
        return cls(tuple(int(c) for c in data))

    def __str__(self) -> str:
        return self.format("u")

    def format(self, var: str = "u") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"IntPoly({self.format()})"


def _coerce(v):
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly((v,))
    return NotImplemented


U = IntPoly.u()
ONE = IntPoly.const(1)
ZERO = IntPoly()


def poly(*coeffs: int) -> IntPoly:
    """Shorthand: ``poly(6, -3, -1, 1)`` is u^3 - u^2 - 3u + 6."""
    return IntPoly(coeffs)


def divmod_rational(p: IntPoly, d: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Long division over Q; returns (quotient, remainder) coefficient lists."""
    r = [Fraction(c) for c in p.coeffs]
    dc = d.coeffs
    dl = dc[-1]
    if len(r) < len(dc):
        return [], r
    q = [Fraction(0)] * (len(r) - len(dc) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(dc) - 1] / dl
        q[k] = c
        if c:
            for i, di in enumerate(dc):
                r[k + i] -= c * di
    return q, r[: len(dc) - 1]


def pseudo_remainder(a: IntPoly, b: IntPoly) -> IntPoly:
    """prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a by b."""
    r = list(a.coeffs)
    db = b.degree
    lb = b.lc
    bc = b.coeffs
    e = a.degree - db + 1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1]
        r = [lb * v for v in r]
        for i, bi in enumerate(bc):
            r[k + i] -= c * bi
        r = list(_trim(r))
        e -= 1
    return IntPoly(tuple(v * lb ** max(e, 0) for v in r))


def gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd over Q with positive leading coefficient.

    Uses the subresultant pseudo-remainder sequence on primitive parts, so
    every intermediate coefficient stays an exact integer without blowup.
    """
    if p.is_zero and q.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.primitive()
    if q.is_zero:
        return p.primitive()
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    if b.degree == 0:
        return ONE
    g = h = 1
    while True:
        delta = a.degree - b.degree
        r = pseudo_remainder(a, b)
        if r.is_zero:
            return b.primitive()
        if r.degree == 0:
            return ONE
        a, b = b, IntPoly(tuple(c // (g * h ** delta) for c in r.coeffs))
        g = a.lc
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial, by exact division of u^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPoly.monomial(d) - 1
    for e in range(1, d):
        if d % e == 0:
            p = p.divrem_exact(cyclotomic(e))
    return p


POLISH_DPS = 40


def _polish(c: Sequence[int], z: list[complex], steps: int = 4) -> list[complex]:
    """Newton refinement with exact integer coefficients at POLISH_DPS digits.

    Double-precision Horner cannot resolve the clustered roots near +-2 of
    the Fibonacci family past |n| ~ 25; the integer coefficients can.
    """
    coeffs = list(reversed(c))
    dcoeffs = [i * v for i, v in enumerate(c)][1:][::-1]
    out = []
    with mpmath.workdps(POLISH_DPS):
        for r in z:
            w = mpmath.mpc(r)
            for _ in range(steps):
                d = mpmath.polyval(dcoeffs, w)
                if d == 0:
                    break
                w = w - mpmath.polyval(coeffs, w) / d
            w = complex(w)
            # keep the Aberth value if Newton wandered to another root
            out.append(w if abs(w - r) <= 1e-4 * (1 + abs(r)) else r)
    return out


def roots_complex(p: IntPoly, tol: float = 1e-12, max_iter: int = 1000) -> list[complex]:
    """All complex roots of p (with multiplicity), Aberth–Ehrlich iteration.

    Seeds are placed deterministically on a circle around the root centroid,
    so the same input always yields the same output.  Roots are returned
    sorted by (real, imag).  ``tol`` is the relative step size at which a
    root is frozen; after convergence every root satisfies
    |p(r)| <= RESIDUAL_TOL * (1 + scale(r)) with scale(r) = sum |c_i||r|^i.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("roots_complex needs degree >= 1")
    # strip roots at zero exactly
    k = 0
    while p.coeffs[k] == 0:
        k += 1
    zeros = [0j] * k
    c = p.coeffs[k:]
    n = len(c) - 1
    if n == 0:
        return zeros
    lead = c[-1]
    mon = [complex(v) / lead for v in c]
    dp = [i * mon[i] for i in range(1, n + 1)]
    amon = [abs(v) for v in mon]
    noise = 8 * sys.float_info.epsilon
    center = -mon[n - 1] / n
    radius = max(abs(mon[i]) ** (1.0 / (n - i)) for i in range(n)) * 2.0
    radius = max(radius, 1e-3)
    z = [center + radius * cmath.exp(1j * (2 * math.pi * j / n + 0.4)) for j in range(n)]
    done = [False] * n

    def ev(coeffs, x):
        out = 0j
        for v in reversed(coeffs):
            out = out * x + v
        return out

    for _ in range(max_iter):
        if all(done):
            break
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            pv = ev(mon, zi)
            # frozen once |p| is at its own rounding-noise floor
            if abs(pv) <= noise * ev(amon, abs(zi)).real:
                done[i] = True
                continue
            dv = ev(dp, zi)
            s = sum(1.0 / (zi - z[j]) for j in range(n) if j != i and z[j] != zi)
            ratio = pv / dv if dv != 0 else pv
            denom = 1 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            z[i] = zi - step
            if abs(step) <= tol * (1 + abs(z[i])):
                done[i] = True
    else:
        if not all(done):
            raise NonConvergence(f"Aberth iteration did not converge for {p}")
    z = _polish(c, z)
    out = zeros + z
    scale_p = IntPoly(c)
    for r in z:
        if abs(scale_p.eval_complex(r)) > RESIDUAL_TOL * (1 + scale_p.abs_scale(r)):
            raise NonConvergence(f"root residual too large for {p} at {r}")
    out.sort(key=lambda v: (round(v.real, 12), round(v.imag, 12)))
    return out


def distinct_root_count(roots: Sequence[complex], radius: float = 1e-6) -> int:
    """Number of clusters after greedy grouping of roots within ``radius``."""
    reps: list[complex] = []
    for r in roots:
        if not any(abs(r - q) <= radius for q in reps):
            reps.append(r)
    return len(reps)


def close(a: complex, b: complex, tol: float = DEFAULT_TOL) -> bool:
    return abs(complex(a) - complex(b)) <= tol
