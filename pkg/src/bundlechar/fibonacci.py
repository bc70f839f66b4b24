"""Fibonacci polynomials with their parity-split factors h, j, k, l.

The recursion is f_0 = 0, f_1 = 1, f_{n-1} + f_{n+1} = u f_n, extended to
negative n by f_{-n} = -f_n.  With u = b + 1/b one has
f_n(u) = (b^n - b^-n) / (b - 1/b), which is how every root-set statement
below is derived.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotDivisibleByU, UndefinedForN
from .poly import ONE, U, IntPoly, gcd

_fib_lock = threading.Lock()
_fib_memo: dict[int, IntPoly] = {0: IntPoly(), 1: ONE}


def fib(n: int) -> IntPoly:
    """The n-th Fibonacci polynomial f_n(u)."""
    global _fib_memo
    if n < 0:
        return -fib(-n)
    memo = _fib_memo
    if n in memo:
        return memo[n]
    with _fib_lock:
        # copy-on-insert: readers always see a complete dict
        merged = dict(_fib_memo)
        top = max(merged)
        prev, cur = merged[top - 1], merged[top]
        for k in range(top + 1, n + 1):
            prev, cur = cur, U * cur - prev
            merged[k] = cur
        _fib_memo = merged
        return merged[n]


def fib_eval(n: int, y) -> complex:
    """f_n(y) numerically by the three-term recursion.

    Stable for y near [-2, 2], where Horner on the expanded coefficients
    loses digits to cancellation once |n| is in the tens.
    """
    if n < 0:
        return -fib_eval(-n, y)
    y = complex(y)
    prev, cur = 0j, 1 + 0j
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, y * cur - prev
    return cur


def family_eval(n: int, y) -> tuple[complex, complex, complex, complex]:
    """(h_n, j_n, k_n, l_n) at y via fib_eval."""
    m = n // 2
    f = lambda k: fib_eval(k, y)
    if n % 2 == 0:
        return f(m - 1), f(m), f(m + 2) - f(m), f(m + 1) - f(m - 1)
    return f(m) + f(m - 1), f(m + 1) + f(m), f(m + 2) - f(m + 1), f(m + 1) - f(m)


@dataclass(frozen=True)
class Family:
    n: int
    h: IntPoly
    j: IntPoly
    k: IntPoly
    l: IntPoly


@dataclass(frozen=True)
class Hats:
    n: int
    h_hat: IntPoly
    l_hat: IntPoly


def family(n: int) -> Family:
    """Parity-split factors with n = 2m or n = 2m + 1 (floor division)."""
    m = n // 2
    f = fib
    if n % 2 == 0:
        h, j = f(m - 1), f(m)
        k, l = f(m + 2) - f(m), f(m + 1) - f(m - 1)
    else:
        h, j = f(m) + f(m - 1), f(m + 1) + f(m)
        k, l = f(m + 2) - f(m + 1), f(m + 1) - f(m)
    return Family(n, h, j, k, l)


def hats(n: int) -> Hats:
    fam = family(n)
    if n % 4 != 2:
        return Hats(n, fam.h, fam.l)
    try:
        return Hats(n, fam.h.divrem_exact(U), fam.l.divrem_exact(U))
    except ArithmeticError as exc:
        raise NotDivisibleByU(f"u does not divide h_{n} or l_{n}") from exc


def psl_identity_sides(n: int) -> tuple[IntPoly, IntPoly]:
    """(f_{n-1}+1)(f_{n+1}+1) and f_n (u + f_n)."""
    f = fib
    return (f(n - 1) + 1) * (f(n + 1) + 1), f(n) * (U + f(n))


@dataclass(frozen=True)
class IdentityReport:
    n: int
    results: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]


def identity_suite(n: int) -> IdentityReport:
    """Exact checks of the factor identities and the PSL identity at n."""
    f = fib
    fam = family(n)
    h, j, k, l = fam.h, fam.j, fam.k, fam.l
    lhs, rhs = psl_identity_sides(n)
    res = {
        "f_n = j l": f(n) == j * l,
        "f_{n+1} - 1 = j k": f(n + 1) - 1 == j * k,
        "f_{n-1} - 1 = h l": f(n - 1) - 1 == h * l,
        "f_n - u = h k": f(n) - U == h * k,
        "(f_{n+1}-1)(f_{n-1}-1) = f_n(f_n-u)": (f(n + 1) - 1) * (f(n - 1) - 1) == f(n) * (f(n) - U),
        "psl": lhs == rhs,
    }
    return IdentityReport(n, res)


UNIT = "unit"
U_FACTOR = "(u)"
U2_MINUS_2 = "(u^2-2)"
_CLASS_POLY = {UNIT: ONE, U_FACTOR: U, U2_MINUS_2: U * U - 2}


def expected_gcd_class(n: int, as_stated: bool = False) -> dict[str, str]:
    """Predicted gcd class for the five factor pairs.

    With ``as_stated`` the (h, k) exception is n = 2 only.  The common root
    b = exp(i pi/4) of h_n (b^{n-2} = 1) and k_n (b^{n+2} = -1) exists for
    every n = 2 mod 8, which is the default rule here.
    """
    hk_special = n == 2 if as_stated else n % 8 == 2
    return {
        "h,j": UNIT,
        "k,l": UNIT,
        "h,k": U2_MINUS_2 if hk_special else UNIT,
        "j,k": U_FACTOR if n % 4 == 0 else UNIT,
        "h,l": U_FACTOR if n % 4 == 2 else UNIT,
    }


@dataclass(frozen=True)
class GcdClassification:
    n: int
    gcds: dict
    expected: dict
    stated: dict

    @property
    def mismatches(self) -> list[str]:
        return [k for k, cls in self.expected.items() if self.gcds[k] != _CLASS_POLY[cls]]

    @property
    def stated_mismatches(self) -> list[str]:
        return [k for k, cls in self.stated.items() if self.gcds[k] != _CLASS_POLY[cls]]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def gcd_classification(n: int) -> GcdClassification:
    fam = family(n)
    pairs = {
        "h,j": (fam.h, fam.j),
        "k,l": (fam.k, fam.l),
        "h,k": (fam.h, fam.k),
        "j,k": (fam.j, fam.k),
        "h,l": (fam.h, fam.l),
    }
    gcds = {k: gcd(*v) for k, v in pairs.items()}
    return GcdClassification(n, gcds, expected_gcd_class(n), expected_gcd_class(n, as_stated=True))


# --- root sets -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class TraceAngle:
    """The value 2cos(2*pi*num/den), folded so that num/den lies in [0, 1/2].

    Folding k and den - k together makes equality exact fraction equality.
    """

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("TraceAngle denominator must be positive")
        fr = Fraction(self.num, self.den) % 1
        if fr > Fraction(1, 2):
            fr = 1 - fr
        object.__setattr__(self, "num", fr.numerator)
        object.__setattr__(self, "den", fr.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def value(self) -> float:
        return 2.0 * math.cos(2.0 * math.pi * self.num / self.den)

    def doubled(self) -> "TraceAngle":
        """Angle doubling: (2cos t)^2 = 2 + 2cos 2t."""
        return TraceAngle(2 * self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def from_json(cls, s: str) -> "TraceAngle":
        a, b = s.split("/")
        return cls(int(a), int(b))


PLUS_TWO = TraceAngle(0, 1)
MINUS_TWO = TraceAngle(1, 2)
ZERO_ANGLE = TraceAngle(1, 4)


@dataclass(frozen=True)
class RootSet:
    label: str
    N: int
    elements: frozenset

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self.elements

    def __sub__(self, other: "RootSet") -> frozenset:
        return self.elements - other.elements

    def values(self) -> list[float]:
        return [a.value for a in sorted(self.elements)]


def root_set(label: str, N: int) -> RootSet:
    """R_N = {2cos(2 pi k/|N|)} and R_N^fib = R_N - {+-2}."""
    if N == 0:
        raise UndefinedForN("root sets need N != 0")
    if label not in ("R", "Rfib"):
        raise ValueError(f"unknown root-set label {label!r}")
    M = abs(N)
    el = {TraceAngle(k, M) for k in range(M)}
    if label == "Rfib":
        el -= {PLUS_TWO, MINUS_TWO}
    return RootSet(label, N, frozenset(el))


def half_turn_set(N: int) -> frozenset:
    """Values b + 1/b with b^N = -1, excluding +-2: R_2N^fib - R_N^fib."""
    return root_set("Rfib", 2 * N) - root_set("Rfib", N)


def zero_set(which: str, n: int, hatted: bool = False) -> frozenset:
    """Exact zero set of f_n, h_n, l_n or k_n as TraceAngles.

    All four are read off f_n = (b^n - b^-n)/(b - 1/b): the k_n zeros are
    the b + 1/b with b^{n+2} = -1, the l_n zeros those with b^n = -1.
    """
    if which == "f":
        if n == 0:
            raise UndefinedForN("f_0 is identically zero")
        return root_set("Rfib", 2 * n).elements
    if which == "h":
        if n == 2:
            raise UndefinedForN("h_2 is identically zero")
        out = root_set("Rfib", n - 2).elements
    elif which == "l":
        if n == 0:
            raise UndefinedForN("l_0 = 2 has no zeros; root sets need n != 0")
        out = half_turn_set(n)
    elif which == "k":
        if n == -2:
            raise UndefinedForN("k_{-2} = 2 has no zeros; root sets need n != -2")
        out = half_turn_set(n + 2)
    else:
        raise ValueError(f"unknown family {which!r}")
    if hatted and n % 4 == 2 and which in ("h", "l"):
        out = out - {ZERO_ANGLE}
    return out
