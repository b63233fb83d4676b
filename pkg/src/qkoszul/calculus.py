"""Exterior derivatives for the calculus models.

The bicrossproduct differentials are generated from d(r) and d(t) alone by
structural recursion on normal-order monomials, so the commutation relations
of the calculus enter only through those two stored forms; the partial
derivatives with respect to the basis are derived artifacts read off from
d f = (del^1 f) e1 + (del^2 f) e2.
"""

from __future__ import annotations

from .algebra import BicrossElem, FiniteFnElem, partial_discrete
from .forms import CalculusModel, Form, d_form


def make_bicross_differential(model: CalculusModel):
    """Return d on algebra elements for a bicrossproduct calculus.

    Requires model.d_gen["r"], model.d_gen["t"] and r invertible.
    """
    cache: dict[tuple, Form] = {}
    alg = model.alg

    def d_r_power(m: int) -> Form:
        if m == 0:
            return model.zero_form(1)
        key = ("r", m)
        if key in cache:
            return cache[key]
        dr = model.d_gen["r"]
        if m == 1:
            out = dr
        elif m > 1:
            out = d_r_power(m - 1).right_mul(alg.r()) + d_r_power(1).left_mul(alg.r(m - 1))
        else:
            # d(r^-1) = -r^-1 (dr) r^-1, then recurse downwards
            d_rinv = (-dr.left_mul(alg.r(-1))).right_mul(alg.r(-1))
            if m == -1:
                out = d_rinv
            else:
                out = d_r_power(m + 1).right_mul(alg.r(-1)) + d_rinv.left_mul(alg.r(m + 1))
        cache[key] = out
        return out

    def d_t_power(n: int) -> Form:
        if n == 0:
            return model.zero_form(1)
        key = ("t", n)
        if key in cache:
            return cache[key]
        dt = model.d_gen["t"]
        if n == 1:
            out = dt
        else:
            out = d_t_power(n - 1).right_mul(alg.t()) + dt.left_mul(alg.t() ** (n - 1))
        cache[key] = out
        return out

    def d_monomial(m: int, n: int) -> Form:
        key = ("m", m, n)
        if key not in cache:
            cache[key] = d_r_power(m).right_mul(alg.t() ** n) + d_t_power(n).left_mul(alg.r(m))
        return cache[key]

    def d(x: BicrossElem) -> Form:
        out = model.zero_form(1)
        for (m, n), c in x.terms.items():
            out = out + d_monomial(m, n).scale(c)
        return out

    return d


def make_discrete_differential(model: CalculusModel):
    """d f = (del_1 f) e1 + (del_2 f) e2 with del_i = R_i - id."""

    def d(x: FiniteFnElem) -> Form:
        return Form(
            model,
            1,
            {"e1": partial_discrete(x, 1), "e2": partial_discrete(x, 2)},
        )

    return d


def partials(model: CalculusModel, x) -> tuple:
    """Read off (del^1 x, del^2 x) from d x = (del^1 x) e1 + (del^2 x) e2."""
    dx = model.d_alg(x)
    return dx.coeff("e1"), dx.coeff("e2")


def graded_commutator_with(theta: Form, x) -> Form:
    """theta x - (-1)^{|x|} x theta for an algebra element or form x."""
    m = theta.model
    if not isinstance(x, Form):
        return theta.right_mul(x) - theta.left_mul(x)
    sign = -1 if x.degree % 2 else 1
    return theta.wedge(x) - x.wedge(theta).scale(sign)


def verify_inner(model: CalculusModel, theta: Form) -> bool:
    """True iff d equals the graded commutator with theta on generators and basis."""
    if theta.degree != 1:
        return False
    for name in model.gen_names:
        a = model.generator[name]
        if not (model.d_alg(a) == graded_commutator_with(theta, a)):
            return False
    for word in ("e1", "e2"):
        x = model.basis_form(word)
        if not (d_form(x) == graded_commutator_with(theta, x)):
            return False
    return True
