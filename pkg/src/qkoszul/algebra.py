"""Normal-form arithmetic in the two quantum coordinate algebras.

Bicrossproduct algebra: generators r (invertible) and t with [r, t] = L*r.
Elements are kept in normal order, all r powers to the left of all t powers,
using the rewrite t * r^c = r^c * (t - L*c) for any integer c.  t is never
inverted, so t exponents stay >= 0 while r exponents range over all of Z.

Function algebra on Z2 x Z2: a 4-vector of coefficient-field values indexed
by the points (x1, x2), index 2*x1 + x2, with pointwise product and the two
coordinate flips R_1, R_2 acting by index swaps.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Union

from .coeff import Context, Frac

Scalar = Union[Frac, int, Fraction]


class BicrossAlgebra:
    """Factory/context object for bicrossproduct normal-form elements."""

    def __init__(self, ctx: Context):
        self.ctx = ctx

    def element(self, terms: dict[tuple[int, int], Frac]) -> "BicrossElem":
        return BicrossElem(self, {k: v for k, v in terms.items() if not v.is_zero()})

    def zero(self) -> "BicrossElem":
        return self.element({})

    def from_frac(self, c: Scalar) -> "BicrossElem":
        return self.element({(0, 0): self.ctx.frac(c)})

    def one(self) -> "BicrossElem":
        return self.from_frac(1)

    def monomial(self, m: int, n: int, coeff: Scalar = 1) -> "BicrossElem":
        if n < 0:
            raise ValueError("t is never inverted")
        return self.element({(m, n): self.ctx.frac(coeff)})

    def r(self, k: int = 1) -> "BicrossElem":
        return self.monomial(k, 0)

    def t(self) -> "BicrossElem":
        return self.monomial(0, 1)

    def generators(self) -> list["BicrossElem"]:
        return [self.r(), self.t()]

    def is_central(self, x: "BicrossElem") -> bool:
        return all((x * g - g * x).is_zero() for g in self.generators())

    def lambda_zero(self, x: "BicrossElem") -> "BicrossElem":
        return x.map_coeffs(lambda c: c.eval_lambda_zero())


class BicrossElem:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: BicrossAlgebra, terms: dict[tuple[int, int], Frac]):
        self.alg = alg
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, BicrossElem):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        return f"BicrossElem({self.terms!r})"

    def _coerce(self, other) -> "BicrossElem":
        if isinstance(other, BicrossElem):
            return other
        return self.alg.from_frac(other)

    def __add__(self, other) -> "BicrossElem":
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return BicrossElem(self.alg, terms)

    __radd__ = __add__

    def __neg__(self) -> "BicrossElem":
        return BicrossElem(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "BicrossElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BicrossElem":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "BicrossElem":
        c = self.alg.ctx.frac(c)
        return self.alg.element({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "BicrossElem":
        if isinstance(other, (Frac, int, Fraction)):
            return self.scale(other)
        L = self.alg.ctx.L
        acc: dict[tuple[int, int], Frac] = {}
        for (m1, n1), c1 in self.terms.items():
            for (m2, n2), c2 in other.terms.items():
                # t^{n1} r^{m2} = r^{m2} (t - L m2)^{n1}, binomially expanded
                c = c1 * c2
                shift = L * (-m2)
                for j in range(n1 + 1):
                    coeff = c * comb(n1, j) * shift ** (n1 - j)
                    key = (m1 + m2, j + n2)
                    cur = acc.get(key)
                    acc[key] = coeff if cur is None else cur + coeff
        return self.alg.element(acc)

    def __rmul__(self, other) -> "BicrossElem":
        if isinstance(other, (Frac, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "BicrossElem":
        if n < 0:
            raise ValueError("general inversion not supported; use alg.r(-k) for r powers")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, fn: Callable[[Frac], Frac]) -> "BicrossElem":
        return self.alg.element({k: fn(c) for k, c in self.terms.items()})

    def subs(self, values) -> "BicrossElem":
        return self.map_coeffs(lambda c: c.subs(values))

    def constant_part(self) -> Frac:
        return self.terms.get((0, 0), self.alg.ctx.zero())

    def as_frac(self) -> Frac:
        """The element as a coefficient-field value; error if r or t occur."""
        for k in self.terms:
            if k != (0, 0):
                raise ValueError(f"not a scalar: monomial {k} present")
        return self.constant_part()


def commutator(x, y):
    return x * y - y * x


POINTS = ((0, 0), (0, 1), (1, 0), (1, 1))  # index 2*x1 + x2
_R1_SWAP = (2, 3, 0, 1)
_R2_SWAP = (1, 0, 3, 2)


class FiniteFnAlgebra:
    """Functions on the four points of Z2 x Z2 with pointwise product."""

    def __init__(self, ctx: Context):
        self.ctx = ctx

    def element(self, values) -> "FiniteFnElem":
        vals = tuple(self.ctx.frac(v) for v in values)
        if len(vals) != 4:
            raise ValueError("need one value per point")
        return FiniteFnElem(self, vals)

    def zero(self) -> "FiniteFnElem":
        return self.element((0, 0, 0, 0))

    def from_frac(self, c: Scalar) -> "FiniteFnElem":
        c = self.ctx.frac(c)
        return self.element((c, c, c, c))

    def one(self) -> "FiniteFnElem":
        return self.from_frac(1)

    def delta(self, index: int) -> "FiniteFnElem":
        vals = [0, 0, 0, 0]
        vals[index] = 1
        return self.element(vals)

    def generators(self) -> list["FiniteFnElem"]:
        return [self.delta(i) for i in range(4)]

    def is_central(self, x: "FiniteFnElem") -> bool:
        return True  # commutative algebra

    def lambda_zero(self, x: "FiniteFnElem") -> "FiniteFnElem":
        return x.map_coeffs(lambda c: c.eval_lambda_zero())


class FiniteFnElem:
    __slots__ = ("alg", "values")

    def __init__(self, alg: FiniteFnAlgebra, values: tuple[Frac, Frac, Frac, Frac]):
        self.alg = alg
        self.values = values

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteFnElem):
            return NotImplemented
        return all(a == b for a, b in zip(self.values, other.values))

    def __repr__(self) -> str:
        return f"FiniteFnElem({self.values!r})"

    def _coerce(self, other) -> "FiniteFnElem":
        if isinstance(other, FiniteFnElem):
            return other
        return self.alg.from_frac(other)

    def __add__(self, other) -> "FiniteFnElem":
        other = self._coerce(other)
        return FiniteFnElem(self.alg, tuple(a + b for a, b in zip(self.values, other.values)))

    __radd__ = __add__

    def __neg__(self) -> "FiniteFnElem":
        return FiniteFnElem(self.alg, tuple(-a for a in self.values))

    def __sub__(self, other) -> "FiniteFnElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FiniteFnElem":
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> "FiniteFnElem":
        c = self.alg.ctx.frac(c)
        return FiniteFnElem(self.alg, tuple(v * c for v in self.values))

    def __mul__(self, other) -> "FiniteFnElem":
        if isinstance(other, (Frac, int, Fraction)):
            return self.scale(other)
        return FiniteFnElem(self.alg, tuple(a * b for a, b in zip(self.values, other.values)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FiniteFnElem":
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def inv(self) -> "FiniteFnElem":
        return FiniteFnElem(self.alg, tuple(v.inv() for v in self.values))

    def map_coeffs(self, fn: Callable[[Frac], Frac]) -> "FiniteFnElem":
        return FiniteFnElem(self.alg, tuple(fn(v) for v in self.values))

    def subs(self, values) -> "FiniteFnElem":
        return self.map_coeffs(lambda c: c.subs(values))

    def as_frac(self) -> Frac:
        v = self.values[0]
        if any(not (w == v) for w in self.values[1:]):
            raise ValueError("not a constant function")
        return v


def translate(x: FiniteFnElem, i: int) -> FiniteFnElem:
    """R_i: flip the i-th coordinate of every point."""
    swap = _R1_SWAP if i == 1 else _R2_SWAP
    return FiniteFnElem(x.alg, tuple(x.values[swap[p]] for p in range(4)))


def partial_discrete(x: FiniteFnElem, i: int) -> FiniteFnElem:
    return translate(x, i) - x


AlgElem = Union[BicrossElem, FiniteFnElem]


def convert_elem(x: AlgElem, alg) -> AlgElem:
    """Re-express ``x`` in another algebra of the same kind, matching symbols by name."""
    src = x.alg.ctx
    if isinstance(x, BicrossElem):
        return alg.element({k: src.convert(c, alg.ctx) for k, c in x.terms.items()})
    return alg.element(tuple(src.convert(c, alg.ctx) for c in x.values))
