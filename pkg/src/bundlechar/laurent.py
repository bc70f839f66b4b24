"""Integer Laurent polynomials in the fixed variables a, b, s, t, x, y, z.

Only a and b are units.  Exponent tuples have one slot per variable in the
order of ``VARS``; a polynomial is a dict from exponent tuple to a nonzero
integer coefficient.  ``SymMatrix2`` carries 2x2 matrices of these and is
enough to evaluate any word in the images of the two generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .errors import (
    NonUnitDeterminant,
    NotTraceExpressible,
    UnboundVariable,
    ZeroUnitValue,
)
from .poly import IntPoly

VARS = ("a", "b", "s", "t", "x", "y", "z")
IDX = {v: i for i, v in enumerate(VARS)}
A, B, S, T, X, Y, Z = range(7)
UNITS = (A, B)
NV = len(VARS)
_ZERO_EXP = (0,) * NV


def _exp(**powers: int) -> tuple[int, ...]:
    e = [0] * NV
    for k, v in powers.items():
        e[IDX[k]] = v
    return tuple(e)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the integers."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    for i, v in enumerate(e):
                        if v < 0 and i not in UNITS:
                            raise ValueError(f"negative exponent on {VARS[i]}")
                    clean[tuple(e)] = int(c)
        self.terms = clean
        self._hash = None

    # construction
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({_ZERO_EXP: c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls({_exp(**{name: power}): 1})

    @classmethod
    def monomial(cls, c: int = 1, **powers: int) -> "LaurentPoly":
        return cls({_exp(**powers): c})

    @classmethod
    def from_intpoly(cls, p: IntPoly, var: "LaurentPoly | str") -> "LaurentPoly":
        """p(var) for an IntPoly p, Horner style."""
        if isinstance(var, str):
            var = cls.var(var)
        out = cls()
        for c in reversed(p.coeffs):
            out = out * var + c
        return out

    # queries
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def variables(self) -> set[str]:
        out = set()
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    out.add(VARS[i])
        return out

    def degree_in(self, name: str) -> int:
        i = IDX[name]
        return max((e[i] for e in self.terms), default=0)

    # arithmetic
    def __add__(self, other):
        other = _lcoerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _lcoerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lcoerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(p + q for p, q in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only for monomials")
            (e, c), = self.terms.items()
            if c not in (1, -1) or any(e[i] for i in range(NV) if i not in UNITS):
                raise ValueError("negative powers only for unit monomials in a, b")
            return LaurentPoly({tuple(k * v for v in e): c ** (-k)})
        out, base = LaurentPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divide_monomial(self, c: int = 1, **powers: int) -> "LaurentPoly":
        """Exact division by c * monomial; raises ArithmeticError if inexact."""
        d = _exp(**powers)
        out = {}
        for e, v in self.terms.items():
            if v % c:
                raise ArithmeticError(f"coefficient {v} not divisible by {c}")
            ne = tuple(p - q for p, q in zip(e, d))
            if any(ne[i] < 0 for i in range(NV) if i not in UNITS):
                raise ArithmeticError("monomial does not divide")
            out[ne] = v // c
        return LaurentPoly(out)

    def exact_div_int(self, c: int) -> "LaurentPoly":
        return self.divide_monomial(c)

    def set_t_equal_s(self) -> "LaurentPoly":
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[S] += ne[T]
            ne[T] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return LaurentPoly(out)

    def swap_inverse_ab(self) -> "LaurentPoly":
        """Apply (a, b) -> (1/a, 1/b)."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[A], ne[B] = -ne[A], -ne[B]
            out[tuple(ne)] = c
        return LaurentPoly(out)

    # substitution
    def substitute(self, bindings: Mapping[str, complex]) -> complex:
        """Numeric value with every occurring variable bound."""
        used = self.variables()
        missing = used - set(bindings)
        if missing:
            raise UnboundVariable(f"unbound variables: {sorted(missing)}")
        vals = [complex(bindings.get(v, 1)) for v in VARS]
        for i in UNITS:
            if VARS[i] in used and vals[i] == 0:
                raise ZeroUnitValue(f"{VARS[i]} bound to zero")
        cache: dict = {}
        total = 0j
        for e, c in self.terms.items():
            term = complex(c)
            for i, p in enumerate(e):
                if p:
                    key = (i, p)
                    if key not in cache:
                        cache[key] = vals[i] ** p
                    term *= cache[key]
            total += term
        return total

    def compose(self, mapping: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Replace variables by Laurent polynomials (units only at negative powers)."""
        pow_cache: dict = {}

        def power(i, p):
            key = (i, p)
            if key not in pow_cache:
                name = VARS[i]
                base = mapping.get(name, LaurentPoly.var(name))
                pow_cache[key] = base ** p
            return pow_cache[key]

        out = LaurentPoly()
        for e, c in self.terms.items():
            term = LaurentPoly.const(c)
            for i, p in enumerate(e):
                if p:
                    term = term * power(i, p)
            out = out + term
        return out

    # text form
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-v for v in t[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(f"{VARS[i]}^{p}" for i, p in enumerate(e) if p)
            parts.append(f"{c} * {mono}" if mono else f"{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


def _lcoerce(v):
    if isinstance(v, LaurentPoly):
        return v
    if isinstance(v, int):
        return LaurentPoly.const(v) if v else LaurentPoly()
    return NotImplemented


L = LaurentPoly
a, b, s, t = L.var("a"), L.var("b"), L.var("s"), L.var("t")
x, y, z = L.var("x"), L.var("y"), L.var("z")
a_inv, b_inv = L.var("a", -1), L.var("b", -1)
t_A = a + a_inv
t_B = b + b_inv
t_AB = a * b + a_inv * b_inv + s * t


@dataclass(frozen=True)
class SymMatrix2:
    e11: LaurentPoly
    e12: LaurentPoly
    e21: LaurentPoly
    e22: LaurentPoly

    @classmethod
    def identity(cls) -> "SymMatrix2":
        return cls(L.const(1), L(), L(), L.const(1))

    def __matmul__(self, o: "SymMatrix2") -> "SymMatrix2":
        return mat_mul(self, o)

    def __sub__(self, o: "SymMatrix2") -> "SymMatrix2":
        return SymMatrix2(self.e11 - o.e11, self.e12 - o.e12, self.e21 - o.e21, self.e22 - o.e22)

    def __add__(self, o: "SymMatrix2") -> "SymMatrix2":
        return SymMatrix2(self.e11 + o.e11, self.e12 + o.e12, self.e21 + o.e21, self.e22 + o.e22)

    def det(self) -> LaurentPoly:
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self) -> LaurentPoly:
        return self.e11 + self.e22

    def entries(self):
        return (self.e11, self.e12, self.e21, self.e22)

    def map(self, fn) -> "SymMatrix2":
        return SymMatrix2(*(fn(e) for e in self.entries()))

    def substitute(self, bindings) -> tuple[complex, complex, complex, complex]:
        return tuple(e.substitute(bindings) for e in self.entries())


def mat_mul(M: SymMatrix2, N: SymMatrix2) -> SymMatrix2:
    return SymMatrix2(
        M.e11 * N.e11 + M.e12 * N.e21,
        M.e11 * N.e12 + M.e12 * N.e22,
        M.e21 * N.e11 + M.e22 * N.e21,
        M.e21 * N.e12 + M.e22 * N.e22,
    )


def mat_inv_sl2(M: SymMatrix2) -> SymMatrix2:
    if M.det() != L.const(1):
        raise NonUnitDeterminant("mat_inv_sl2 needs det = 1 exactly")
    return SymMatrix2(M.e22, -M.e12, -M.e21, M.e11)


def mat_pow(M: SymMatrix2, k: int) -> SymMatrix2:
    if k < 0:
        return mat_pow(mat_inv_sl2(M), -k)
    out, base = SymMatrix2.identity(), M
    while k:
        if k & 1:
            out = out @ base
        base = base @ base
        k >>= 1
    return out


def gen_A() -> SymMatrix2:
    """A(a, t) = [[a, 0], [t, 1/a]]."""
    return SymMatrix2(a, L(), t, a_inv)


def gen_B() -> SymMatrix2:
    """B(b, s) = [[b, s], [0, 1/b]]."""
    return SymMatrix2(b, s, L(), b_inv)


def eval_word(word: str, mats: Mapping[str, SymMatrix2]) -> SymMatrix2:
    """Product of generator images; a capital letter means the inverse."""
    out = SymMatrix2.identity()
    inv_cache: dict = {}
    for ch in word:
        if ch.islower():
            m = mats[ch]
        else:
            if ch not in inv_cache:
                inv_cache[ch] = mat_inv_sl2(mats[ch.lower()])
            m = inv_cache[ch]
        out = out @ m
    return out


# --- trace rewriting -----------------------------------------------------


def _binomial_expansion(k: int, i_unit: int) -> dict[tuple[int, ...], int]:
    """(u + 1/u)^k for the unit in slot i_unit, as an exponent dict."""
    out = {}
    for r in range(k + 1):
        e = [0] * NV
        e[i_unit] = k - 2 * r
        out[tuple(e)] = comb(k, r)
    return out


def _reduce_ab(d: dict[tuple[int, ...], int]) -> dict[tuple[int, int], int]:
    """Write a Laurent polynomial in a, b as a polynomial in x, y.

    Leading-term elimination in lex order on (deg_a, deg_b): the leading term
    c a^i b^j is cancelled by c x^i y^j.  A negative leading exponent means
    the input is not invariant under a -> 1/a, b -> 1/b separately.
    """
    d = dict(d)
    out: dict[tuple[int, int], int] = {}
    xa: dict[int, dict] = {}
    yb: dict[int, dict] = {}
    while d:
        (i, j) = max((e[A], e[B]) for e in d)
        lead = next(e for e in d if e[A] == i and e[B] == j)
        c = d[lead]
        if i < 0 or j < 0:
            raise NotTraceExpressible(f"leading term a^{i} b^{j} is not symmetric")
        out[(i, j)] = out.get((i, j), 0) + c
        if i not in xa:
            xa[i] = _binomial_expansion(i, A)
        if j not in yb:
            yb[j] = _binomial_expansion(j, B)
        for ea, ca in xa[i].items():
            for eb, cb in yb[j].items():
                e = list(lead)
                e[A], e[B] = ea[A], eb[B]
                e = tuple(e)
                v = d.get(e, 0) - c * ca * cb
                if v:
                    d[e] = v
                else:
                    d.pop(e, None)
    return out


def trace_rewrite(p: LaurentPoly) -> LaurentPoly:
    """Express p(a, b, s, t=s) as a polynomial in x, y, z.

    s^2 is eliminated first via s^2 = z - (ab + 1/(ab)); each z-coefficient
    is then a Laurent polynomial in a, b that must reduce to x, y alone.
    Raises NotTraceExpressible when no such polynomial exists.
    """
    q = p.set_t_equal_s()
    for e in q.terms:
        if e[X] or e[Y] or e[Z]:
            raise NotTraceExpressible("input already contains x, y or z")
        if e[S] % 2:
            raise NotTraceExpressible("odd power of s")
    w = a * b + a_inv * b_inv
    by_s: dict[int, dict] = {}
    for e, c in q.terms.items():
        m = e[S] // 2
        ne = list(e)
        ne[S] = 0
        by_s.setdefault(m, {})[tuple(ne)] = c
    # coefficient of z^r, as an exponent dict in a, b
    zcoef: dict[int, dict] = {}
    wpow = [LaurentPoly.const(1)]
    for m in sorted(by_s):
        while len(wpow) <= m:
            wpow.append(wpow[-1] * w)
        cm = LaurentPoly(by_s[m])
        for r in range(m + 1):
            # (z - w)^m = sum C(m, r) z^r (-w)^(m-r)
            factor = comb(m, r) * (-1) ** (m - r)
            piece = cm * wpow[m - r] * factor
            acc = zcoef.setdefault(r, {})
            for e, c in piece.terms.items():
                v = acc.get(e, 0) + c
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
    out = {}
    for r, d in zcoef.items():
        for (i, j), c in _reduce_ab(d).items():
            if c:
                out[_exp(x=i, y=j, z=r)] = c
    return LaurentPoly(out)


def back_substitute(p: LaurentPoly) -> LaurentPoly:
    """Inverse of trace_rewrite: x, y, z -> traces in a, b and s (t = s)."""
    return p.compose({"x": t_A, "y": t_B, "z": a * b + a_inv * b_inv + s * s})


def xyz_poly(p: IntPoly, var: str = "y") -> LaurentPoly:
    """Embed a univariate IntPoly as a LaurentPoly in one of x, y, z."""
    return LaurentPoly.from_intpoly(p, var)


def eval_xyz(p: LaurentPoly, xv: complex, yv: complex, zv: complex) -> complex:
    return p.substitute({"x": xv, "y": yv, "z": zv})
