"""Exact arithmetic in the coefficient field Q(L, p1, ..., pk).

Values are fractions of multivariate polynomials with arbitrary-precision
rational coefficients.  The deformation parameter is always the variable at
index 0 and is rendered as ``L``; every other symbol must be declared up
front in a :class:`Context`, which fixes the arity of the exponent vectors.

Normalization is deliberately light: fractions cancel common monomial and
integer content only, and equality is decided by cross-multiplication.  No
multivariate GCD is attempted.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]

LAMBDA = "L"


class DivisionByZero(ZeroDivisionError):
    """Raised on inversion of the zero element."""


class PoleAtZero(ValueError):
    """Raised when a classical limit L=0 is requested for a value with a pole there."""


class Context:
    """Declares the symbol set of the coefficient field.

    Index 0 is the deformation parameter ``L``; the remaining indices are the
    declared parameters, in declaration order.  All Poly/Frac values carry a
    reference to their context and refuse to mix with another one.
    """

    def __init__(self, params: Iterable[str] = ()):
        params = tuple(params)
        if LAMBDA in params:
            raise ValueError("the deformation parameter L is implicit, do not declare it")
        if len(set(params)) != len(params):
            raise ValueError("duplicate parameter names")
        self.names: tuple[str, ...] = (LAMBDA,) + params
        self.index: dict[str, int] = {n: i for i, n in enumerate(self.names)}
        self._int_cache: dict[int, "Frac"] = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"Context({self.names[1:]!r})"

    # -- constructors ------------------------------------------------------

    def poly_zero(self) -> Poly:
        return Poly(self, {})

    def poly_const(self, value) -> Poly:
        value = Fraction(value)
        if value == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: value})

    def poly_var(self, name: str) -> Poly:
        if name not in self.index:
            raise KeyError(f"undeclared symbol {name!r}")
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return Poly(self, {tuple(exp): Fraction(1)})

    def zero(self) -> Frac:
        return Frac(self.poly_zero(), self.poly_const(1))

    def one(self) -> Frac:
        return self.frac(1)

    def frac(self, value) -> Frac:
        if isinstance(value, Frac):
            if value.ctx is not self:
                raise ValueError("context mismatch")
            return value
        if isinstance(value, int):
            hit = self._int_cache.get(value)
            if hit is None:
                hit = Frac(self.poly_const(value), self.poly_const(1))
                self._int_cache[value] = hit
            return hit
        return Frac(self.poly_const(value), self.poly_const(1))

    def sym(self, name: str) -> Frac:
        return Frac(self.poly_var(name), self.poly_const(1))

    @property
    def L(self) -> Frac:
        return self.sym(LAMBDA)

    def convert(self, value: Frac, other: Context) -> Frac:
        """Re-express ``value`` in ``other``, matching symbols by name."""
        return Frac(_poly_convert(value.num, other), _poly_convert(value.den, other))


def _poly_convert(p: Poly, other: Context) -> Poly:
    terms: dict[Exponent, Fraction] = {}
    for exp, c in p.terms.items():
        new = [0] * other.nvars
        for i, e in enumerate(exp):
            if e == 0:
                continue
            name = p.ctx.names[i]
            if name not in other.index:
                raise KeyError(f"symbol {name!r} not declared in target context")
            new[other.index[name]] = e
        terms[tuple(new)] = c
    return Poly(other, terms)


class Poly:
    """Multivariate polynomial: map from exponent vector to nonzero Fraction."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Mapping[Exponent, Fraction]):
        self.ctx = ctx
        self.terms: dict[Exponent, Fraction] = {e: c for e, c in terms.items() if c != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        return c == 1 and not any(e)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"Poly({dict(sorted(self.terms.items()))})"

    def _check(self, other: Poly) -> None:
        if self.ctx is not other.ctx:
            raise ValueError("context mismatch")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Poly(self.ctx, terms)

    def __neg__(self) -> Poly:
        return Poly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        if self.is_one():
            return other
        if other.is_one():
            return self
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return Poly(self.ctx, terms)

    def scale(self, k: Fraction) -> Poly:
        if k == 0:
            return self.ctx.poly_zero()
        return Poly(self.ctx, {e: c * k for e, c in self.terms.items()})

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power on Poly")
        out = self.ctx.poly_const(1)
        for _ in range(n):
            out = out * self
        return out

    def min_lambda_degree(self):
        if not self.terms:
            return math.inf
        return min(e[0] for e in self.terms)

    def shift_lambda(self, k: int) -> Poly:
        """Multiply by L**k (k may be negative if every term allows it)."""
        if k == 0:
            return self
        terms = {}
        for e, c in self.terms.items():
            if e[0] + k < 0:
                raise ValueError("negative exponent after lambda shift")
            terms[(e[0] + k,) + e[1:]] = c
        return Poly(self.ctx, terms)

    def at_lambda_zero(self) -> Poly:
        return Poly(self.ctx, {e: c for e, c in self.terms.items() if e[0] == 0})

    def content(self) -> tuple[Fraction, Exponent]:
        """Common rational content and common monomial factor of all terms."""
        if not self.terms:
            return Fraction(1), (0,) * self.ctx.nvars
        nums = [abs(c.numerator) for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = 0
        for n in nums:
            g = math.gcd(g, n)
        l = 1
        for d in dens:
            l = l * d // math.gcd(l, d)
        mono = tuple(min(e[i] for e in self.terms) for i in range(self.ctx.nvars))
        return Fraction(g, l), mono

    def divide_content(self, k: Fraction, mono: Exponent) -> Poly:
        terms = {}
        for e, c in self.terms.items():
            terms[tuple(a - b for a, b in zip(e, mono))] = c / k
        return Poly(self.ctx, terms)

    def subs(self, values: Mapping[str, "Frac"]) -> "Frac":
        """Substitute Frac values for a subset of the declared parameters."""
        ctx = self.ctx
        out = ctx.zero()
        idx = {ctx.index[name]: ctx.frac(v) for name, v in values.items()}
        for e, c in self.terms.items():
            keep = [0] * ctx.nvars
            factor = ctx.frac(c)
            for i, p in enumerate(e):
                if p == 0:
                    continue
                if i in idx:
                    factor = factor * idx[i] ** p
                else:
                    keep[i] = p
            out = out + factor * Frac(Poly(ctx, {tuple(keep): Fraction(1)}), ctx.poly_const(1))
        return out

    def sort_key(self):
        return sorted(self.terms.items())


class Frac:
    """Quotient of two Poly values over the same context.

    Construction normalizes by cancelling common integer and monomial
    content and fixing the sign of the denominator's leading term; full
    cancellation is not attempted, so identical values can have distinct
    representations.  Equality is therefore decided by cross-multiplication.
    """

    __slots__ = ("ctx", "num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.ctx is not den.ctx:
            raise ValueError("context mismatch")
        self.ctx = num.ctx
        if num.is_zero():
            self.num = num
            self.den = num.ctx.poly_const(1)
            return
        if den.is_one():
            # fast path: already a polynomial, skip content normalization
            self.num = num
            self.den = den
            return
        kn, mn = num.content()
        kd, md = den.content()
        mono = tuple(min(a, b) for a, b in zip(mn, md))
        num = num.divide_content(kn, mono)
        den = den.divide_content(kd, mono)
        k = kn / kd  # positive by construction
        num = num.scale(Fraction(k.numerator))
        den = den.scale(Fraction(k.denominator))
        # sign convention: leading (sorted-first) denominator coefficient positive
        if den.terms[min(den.terms)] < 0:
            num, den = -num, -den
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ctx.frac(other)
        if not isinstance(other, Frac):
            return NotImplemented
        if self.ctx is not other.ctx:
            return False
        if self.den.terms == other.den.terms:
            return self.num.terms == other.num.terms or (self.num - other.num).is_zero()
        return (self.num * other.den - other.num * self.den).is_zero()

    def __repr__(self) -> str:
        return f"Frac({self.num!r} / {self.den!r})"

    def _coerce(self, other) -> "Frac":
        if isinstance(other, (int, Fraction)):
            return self.ctx.frac(other)
        if isinstance(other, Frac):
            if other.ctx is not self.ctx:
                raise ValueError("context mismatch")
            return other
        raise TypeError(f"cannot coerce {other!r}")

    def __add__(self, other) -> "Frac":
        other = self._coerce(other)
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Frac":
        return Frac(-self.num, self.den)

    def __sub__(self, other) -> "Frac":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Frac":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Frac":
        other = self._coerce(other)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "Frac":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return Frac(self.den, self.num)

    def __truediv__(self, other) -> "Frac":
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> "Frac":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "Frac":
        if n < 0:
            return self.inv() ** (-n)
        out = self.ctx.one()
        for _ in range(n):
            out = out * self
        return out

    def lambda_valuation(self):
        """Minimum L-degree of num minus that of den; +inf for zero."""
        if self.is_zero():
            return math.inf
        return self.num.min_lambda_degree() - self.den.min_lambda_degree()

    def eval_lambda_zero(self) -> "Frac":
        """Value at L=0 after cancelling the common L-power; PoleAtZero if singular."""
        if self.is_zero():
            return self
        v = self.lambda_valuation()
        if v < 0:
            raise PoleAtZero(f"order {-v} pole at L=0")
        m = self.den.min_lambda_degree()
        num = self.num.shift_lambda(-m).at_lambda_zero()
        den = self.den.shift_lambda(-m).at_lambda_zero()
        return Frac(num, den)

    def subs(self, values: Mapping[str, Union["Frac", int, Fraction]]) -> "Frac":
        vals = {k: self.ctx.frac(v) for k, v in values.items()}
        return self.num.subs(vals) / self.den.subs(vals)

    def key(self):
        """Hashable canonical-representation key (finer than equality)."""
        return (tuple(self.num.sort_key()), tuple(self.den.sort_key()))

    def as_rational(self) -> Fraction:
        """The value as a plain rational; error if any symbol is present."""
        zero = (0,) * self.ctx.nvars
        for e in list(self.num.terms) + list(self.den.terms):
            if e != zero:
                raise ValueError("not a constant")
        n = self.num.terms.get(zero, Fraction(0))
        d = self.den.terms.get(zero, Fraction(1))
        return n / d
