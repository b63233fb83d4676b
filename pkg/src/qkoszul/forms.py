"""Graded bimodule of differential forms over a 2D calculus model.

Basis words are "1" (degree 0), "e1", "e2" (degree 1) and "Vol" (degree 2);
all coefficients are stored on the LEFT of their basis word.  Right actions
move coefficients through the model's twists psi_w (identity for a central
basis).  The exterior algebra is truncated at the top degree: any product
that would land above degree 2 is zero, which is how the models' Omega^3 = 0
is realized.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

from .coeff import Context, Frac
from .algebra import AlgElem

WORD_DEGREE = {"1": 0, "e1": 1, "e2": 1, "Vol": 2}
WORDS_BY_DEGREE = {0: ("1",), 1: ("e1", "e2"), 2: ("Vol",)}
ALL_WORDS = ("1", "e1", "e2", "Vol")


class DegreeOverflow(ValueError):
    """Raised when a construction requires a degree the models do not have."""


class CalculusModel:
    """Structure tables of one differential calculus.

    The exterior derivative on algebra elements (``d_alg``), the derivative
    of generators (``d_gen``) and the presentation of the basis 1-forms in
    terms of d of generators (``basis_from_d``) are wired in by the model
    presets; this class only stores them and provides form construction.
    """

    def __init__(
        self,
        name: str,
        alg,
        twists: dict[str, Callable[[AlgElem], AlgElem]],
        wedge_1forms: dict[tuple[str, str], "FormDict"],
        central_basis: bool,
    ):
        self.name = name
        self.alg = alg
        self.ctx: Context = alg.ctx
        self.twists = twists
        self.wedge_1forms = wedge_1forms  # (ei, ej) -> dict word->AlgElem, degree 2
        self.central_basis = central_basis
        # wired later by the preset builder:
        self.d_alg: Callable[[AlgElem], "Form"] = None
        self.d_basis: dict[str, "Form"] = {}
        self.d_gen: dict[str, "Form"] = {}
        self.basis_from_d: dict[str, list[tuple[AlgElem, str]]] = {}
        self.gen_names: list[str] = []
        self.generator = {}

    def twist(self, word: str, a: AlgElem) -> AlgElem:
        if word == "1":
            return a
        return self.twists[word](a)

    def form(self, degree: int, coeffs: dict[str, AlgElem]) -> "Form":
        return Form(self, degree, coeffs)

    def zero_form(self, degree: int) -> "Form":
        return Form(self, degree, {})

    def scalar_form(self, a) -> "Form":
        if isinstance(a, (int, Frac, Fraction)):
            a = self.alg.from_frac(a)
        return Form(self, 0, {"1": a})

    def basis_form(self, word: str) -> "Form":
        return Form(self, WORD_DEGREE[word], {word: self.alg.one()})

    def e(self, i: int) -> "Form":
        return self.basis_form(f"e{i}")

    def vol(self) -> "Form":
        return self.basis_form("Vol")

    def d(self, x) -> "Form":
        """Exterior derivative of an algebra element or a form."""
        if isinstance(x, Form):
            return d_form(x)
        return self.d_alg(x)


FormDict = dict[str, AlgElem]


def _add_into(coeffs: FormDict, word: str, value: AlgElem) -> None:
    cur = coeffs.get(word)
    cur = value if cur is None else cur + value
    if cur.is_zero():
        coeffs.pop(word, None)
    else:
        coeffs[word] = cur


class Form:
    """Homogeneous form: map basis word -> left coefficient."""

    __slots__ = ("model", "degree", "coeffs")

    def __init__(self, model: CalculusModel, degree: int, coeffs: FormDict):
        if degree < 0 or degree > 2:
            raise DegreeOverflow(f"no forms of degree {degree}")
        self.model = model
        self.degree = degree
        self.coeffs = {w: c for w, c in coeffs.items() if not c.is_zero()}
        for w in self.coeffs:
            if WORD_DEGREE[w] != degree:
                raise ValueError(f"word {w} has wrong degree for a {degree}-form")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        words = set(self.coeffs) | set(other.coeffs)
        zero = self.model.alg.zero()
        return all(self.coeffs.get(w, zero) == other.coeffs.get(w, zero) for w in words)

    def __repr__(self) -> str:
        return f"Form({self.degree}, {self.coeffs!r})"

    def coeff(self, word: str) -> AlgElem:
        return self.coeffs.get(word, self.model.alg.zero())

    def __add__(self, other: "Form") -> "Form":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding forms of different degree")
        coeffs = dict(self.coeffs)
        for w, c in other.coeffs.items():
            _add_into(coeffs, w, c)
        return Form(self.model, self.degree, coeffs)

    def __neg__(self) -> "Form":
        return Form(self.model, self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, k) -> "Form":
        return Form(self.model, self.degree, {w: c * k for w, c in self.coeffs.items()})

    def left_mul(self, a: AlgElem) -> "Form":
        return Form(self.model, self.degree, {w: a * c for w, c in self.coeffs.items()})

    def right_mul(self, a: AlgElem) -> "Form":
        m = self.model
        coeffs: FormDict = {}
        for w, c in self.coeffs.items():
            _add_into(coeffs, w, c * m.twist(w, a))
        return Form(m, self.degree, coeffs)

    def wedge(self, other: "Form") -> "Form":
        m = self.model
        total = self.degree + other.degree
        if total > 2:
            return m.zero_form(2)  # Omega^3 = 0
        out: FormDict = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                c = c1 * m.twist(w1, c2)
                if w1 == "1":
                    _add_into(out, w2, c)
                elif w2 == "1":
                    _add_into(out, w1, c)
                else:
                    for v, k in m.wedge_1forms[(w1, w2)].items():
                        _add_into(out, v, c * k)
        return Form(m, total, out)

    def map_coeffs(self, fn) -> "Form":
        return Form(self.model, self.degree, {w: fn(c) for w, c in self.coeffs.items()})

    def subs(self, values) -> "Form":
        return self.map_coeffs(lambda c: c.subs(values))

    def as_alg(self) -> AlgElem:
        if self.degree != 0:
            raise ValueError("not a scalar form")
        return self.coeff("1")


def d_form(x: Form) -> Form:
    """d(a e_I) = (da) ^ e_I + a d(e_I); zero on top-degree forms."""
    m = x.model
    if x.degree == 2:
        return m.zero_form(2)
    out = m.zero_form(x.degree + 1)
    for w, c in x.coeffs.items():
        out = out + m.d_alg(c).wedge(m.basis_form(w))
        if w != "1":
            out = out + m.d_basis[w].left_mul(c)
    return out


class TensorForm:
    """Element of Omega^p tensor_A Omega^q with left coefficients on word pairs."""

    __slots__ = ("model", "bidegree", "coeffs")

    def __init__(self, model: CalculusModel, bidegree: tuple[int, int], coeffs):
        self.model = model
        self.bidegree = bidegree
        self.coeffs: dict[tuple[str, str], AlgElem] = {
            k: c for k, c in coeffs.items() if not c.is_zero()
        }
        for w1, w2 in self.coeffs:
            if (WORD_DEGREE[w1], WORD_DEGREE[w2]) != bidegree:
                raise ValueError(f"word pair ({w1},{w2}) does not match bidegree {bidegree}")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.bidegree != other.bidegree:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        zero = self.model.alg.zero()
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero) for k in keys)

    def __repr__(self) -> str:
        return f"TensorForm({self.bidegree}, {self.coeffs!r})"

    def coeff(self, w1: str, w2: str) -> AlgElem:
        return self.coeffs.get((w1, w2), self.model.alg.zero())

    def __add__(self, other: "TensorForm") -> "TensorForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.bidegree != other.bidegree:
            raise ValueError("bidegree mismatch")
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cur = coeffs.get(k)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = cur
        return TensorForm(self.model, self.bidegree, coeffs)

    def __neg__(self) -> "TensorForm":
        return TensorForm(self.model, self.bidegree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "TensorForm") -> "TensorForm":
        return self + (-other)

    def scale(self, k) -> "TensorForm":
        return TensorForm(self.model, self.bidegree, {kk: c * k for kk, c in self.coeffs.items()})

    def left_mul(self, a: AlgElem) -> "TensorForm":
        return TensorForm(self.model, self.bidegree, {k: a * c for k, c in self.coeffs.items()})

    def right_mul(self, a: AlgElem) -> "TensorForm":
        m = self.model
        coeffs = {}
        for (w1, w2), c in self.coeffs.items():
            b = c * m.twist(w1, m.twist(w2, a))
            if not b.is_zero():
                coeffs[(w1, w2)] = coeffs.get((w1, w2), m.alg.zero()) + b
        return TensorForm(m, self.bidegree, coeffs)

    def map_coeffs(self, fn) -> "TensorForm":
        return TensorForm(self.model, self.bidegree, {k: fn(c) for k, c in self.coeffs.items()})

    def subs(self, values) -> "TensorForm":
        return self.map_coeffs(lambda c: c.subs(values))


def tensor(x: Form, y: Form) -> TensorForm:
    """x tensor_A y in normal form: y's coefficients pulled through x's words."""
    m = x.model
    coeffs: dict[tuple[str, str], AlgElem] = {}
    for w1, c1 in x.coeffs.items():
        if w1 == "1":
            raise ValueError("tensor legs must have degree >= 1")
        for w2, c2 in y.coeffs.items():
            if w2 == "1":
                raise ValueError("tensor legs must have degree >= 1")
            c = c1 * m.twist(w1, c2)
            key = (w1, w2)
            cur = coeffs.get(key)
            coeffs[key] = c if cur is None else cur + c
    return TensorForm(m, (x.degree, y.degree), coeffs)


def wedge_on_first(x: Form, T: TensorForm) -> TensorForm:
    """(id ^ nabla)-style contraction: x ^ (first leg of T), second leg kept."""
    m = x.model
    p, q = T.bidegree
    out = TensorForm(m, (x.degree + p, q), {})
    for w1, c1 in x.coeffs.items():
        for (u1, u2), h in T.coeffs.items():
            c = c1 * m.twist(w1, h)
            wedge = m.basis_form(w1).wedge(m.basis_form(u1))
            for v, k in wedge.coeffs.items():
                out = out + TensorForm(m, (x.degree + p, q), {(v, u2): c * k})
    return out


class Tensor3Form:
    """Element of Omega^1 tensor Omega^1 tensor Omega^1 (left coefficients)."""

    __slots__ = ("model", "coeffs")

    def __init__(self, model: CalculusModel, coeffs):
        self.model = model
        self.coeffs: dict[tuple[str, str, str], AlgElem] = {
            k: c for k, c in coeffs.items() if not c.is_zero()
        }

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor3Form):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        zero = self.model.alg.zero()
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero) for k in keys)

    def __repr__(self) -> str:
        return f"Tensor3Form({self.coeffs!r})"

    def __add__(self, other: "Tensor3Form") -> "Tensor3Form":
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cur = coeffs.get(k)
            cur = c if cur is None else cur + c
            if cur.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = cur
        return Tensor3Form(self.model, coeffs)

    def __neg__(self) -> "Tensor3Form":
        return Tensor3Form(self.model, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "Tensor3Form") -> "Tensor3Form":
        return self + (-other)

    def map_coeffs(self, fn) -> "Tensor3Form":
        return Tensor3Form(self.model, {k: fn(c) for k, c in self.coeffs.items()})

    def subs(self, values) -> "Tensor3Form":
        return self.map_coeffs(lambda c: c.subs(values))


def tensor3_left(x: Form, T: TensorForm) -> Tensor3Form:
    """x tensor T for a 1-form x and a (1,1) tensor, normalized left."""
    m = x.model
    out = Tensor3Form(m, {})
    for w, c in x.coeffs.items():
        for (u1, u2), h in T.coeffs.items():
            out = out + Tensor3Form(m, {(w, u1, u2): c * m.twist(w, h)})
    return out


def tensor3_right(T: TensorForm, y: Form) -> Tensor3Form:
    """T tensor y for a (1,1) tensor and a 1-form, normalized left."""
    m = T.model
    out = Tensor3Form(m, {})
    for (u1, u2), h in T.coeffs.items():
        for w, c in y.coeffs.items():
            moved = h * m.twist(u1, m.twist(u2, c))
            out = out + Tensor3Form(m, {(u1, u2, w): moved})
    return out


def convert_form(x: Form, model: CalculusModel) -> Form:
    """Re-express ``x`` over another model instance, matching symbols by name."""
    from .algebra import convert_elem

    return Form(model, x.degree, {w: convert_elem(c, model.alg) for w, c in x.coeffs.items()})
