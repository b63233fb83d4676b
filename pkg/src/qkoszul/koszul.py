"""Codifferential data and everything it induces on a calculus model.

A codifferential is a degree -1 map delta determined by its values on the
basis: delta(e_i) = a_i in the algebra and delta(Vol) = b_1 e_1 + b_2 e_2.
Together with a degree -2 pairing (PerpData) this induces

* a right-handed companion pairing perp_R, defined on basis words against
  exact 1-forms and extended right-linearly (perpR_build), subject to a
  regularity check;
* interior products j_x = (perp + perp_R)/2 and, from them, the inverse
  metric g^{ij} = j_{e_i}(e_j) and the matrix v^{ij} with
  j_Vol(e_i) = v^{ij} e_j (interior_extract);
* a graded bracket on forms (cocycle_bracket) whose half is a connection
  along 1-forms, with braiding map sigma_along;
* a Hodge Laplacian delta d + d delta (laplacian).

The solver direction recovers the codifferential from prescribed (g, v)
targets over the model's Laurent ansatz, leaving the undetermined constants
as the named parameters k1, k2, l1, l2 (solve_delta_for_targets).

When the calculus is inner with d = [theta, .] (graded), the pairing alone
yields a codifferential delta = theta perp (inner_delta); in that case
perp_R = 0 and the bracket has a closed form (bracket_inner) used as a
crosscheck and for the finite model, whose 1-form basis is not central.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgElem, commutator, convert_elem
from .calculus import verify_inner
from .coeff import Context, Frac, Poly
from .forms import WORD_DEGREE, CalculusModel, Form, TensorForm, convert_form
from .perp import DEG1, InconsistentSystem, PerpData, gaussian_solve

HALF = Fraction(1, 2)


class NotRegular(ValueError):
    """The codifferential is incompatible with right-linear extension of perp_R."""


class NonConstantMetric(ValueError):
    """An extracted metric entry is not a scalar multiple of the identity."""


class NotInner(ValueError):
    """The supplied 1-form does not implement d as a graded commutator."""


# ---------------------------------------------------------------------------
# codifferential data


@dataclass
class DeltaData:
    """delta on the basis: delta(e_i) = a_i, delta(Vol) = b_1 e_1 + b_2 e_2.

    ``inner`` marks data obtained as theta perp; for such data the companion
    pairing perp_R is identically zero and ``theta`` retains the implementing
    1-form, so that brackets can be evaluated in their closed form even when
    the pairing table does not satisfy the 4-term identity.
    """

    model: CalculusModel
    a1: AlgElem
    a2: AlgElem
    b1: AlgElem
    b2: AlgElem
    inner: bool = False
    theta: Form | None = None

    def a(self, i: int) -> AlgElem:
        return self.a1 if i == 1 else self.a2

    def b(self, i: int) -> AlgElem:
        return self.b1 if i == 1 else self.b2

    def delta_vol(self) -> Form:
        return self.model.form(1, {"e1": self.b1, "e2": self.b2})

    def map_coeffs(self, fn) -> "DeltaData":
        return DeltaData(
            self.model,
            self.a1.map_coeffs(fn),
            self.a2.map_coeffs(fn),
            self.b1.map_coeffs(fn),
            self.b2.map_coeffs(fn),
            self.inner,
            None if self.theta is None else self.theta.map_coeffs(fn),
        )

    def subs(self, values) -> "DeltaData":
        return self.map_coeffs(lambda c: c.subs(values))


def delta_apply(d: DeltaData, p: PerpData, x: Form) -> Form:
    """delta on a general form via delta(c w) = c delta(w) + (dc) perp w."""
    m = d.model
    if x.degree == 0:
        return m.zero_form(0)
    out = m.zero_form(x.degree - 1)
    for w, c in x.coeffs.items():
        if WORD_DEGREE[w] == 0:
            continue
        if w == "Vol":
            out = out + d.delta_vol().left_mul(c)
        else:
            i = 1 if w == "e1" else 2
            out = out + m.scalar_form(c * d.a(i))
        out = out + p.apply(m.d(c), m.basis_form(w))
    return out


# ---------------------------------------------------------------------------
# right-handed companion pairing


class PerpRData:
    """Companion pairing on basis words against 1-forms, extended right-linearly.

    An empty table means the pairing is identically zero (the inner case).
    Application against a second argument of degree other than 1 is only
    meaningful for the zero table.
    """

    def __init__(self, model: CalculusModel, table: dict[tuple[str, str], Form]):
        self.model = model
        self.table = table

    def entry(self, w1: str, w2: str) -> Form:
        return self.table[(w1, w2)]

    def apply(self, x: Form, y: Form) -> Form:
        m = self.model
        total = x.degree + y.degree
        if total < 2:
            return m.zero_form(0)
        out = m.zero_form(total - 2)
        if not self.table:
            return out
        if y.degree != 1:
            raise ValueError("perp_R extends over 1-forms in the second slot")
        for w2, c2 in y.coeffs.items():
            if WORD_DEGREE[w2] == 0:
                continue
            xa = x.right_mul(c2)
            for w1, c1 in xa.coeffs.items():
                if WORD_DEGREE[w1] == 0:
                    continue
                out = out + self.table[(w1, w2)].left_mul(c1)
        return out

    def map_coeffs(self, fn) -> "PerpRData":
        return PerpRData(self.model, {k: f.map_coeffs(fn) for k, f in self.table.items()})

    def subs(self, values) -> "PerpRData":
        return self.map_coeffs(lambda c: c.subs(values))


def _perpR_base(d: DeltaData, p: PerpData) -> dict[tuple[str, str], Form]:
    """Values of w perp_R d(gen): da perp e_i + [a, a_i] and the Vol row."""
    m = d.model
    base: dict[tuple[str, str], Form] = {}
    for gen in m.gen_names:
        a = m.generator[gen]
        da = m.d(a)
        for i in (1, 2):
            base[(f"e{i}", gen)] = p.apply(da, m.e(i)) + m.scalar_form(commutator(a, d.a(i)))
        extra = m.form(
            1, {"e1": commutator(a, d.b1), "e2": commutator(a, d.b2)}
        )
        base[("Vol", gen)] = p.apply(da, m.vol()) + extra
    return base


def perpR_build(d: DeltaData, p: PerpData, check: bool = True) -> PerpRData:
    """Derive the companion pairing table; verify right-linear consistency.

    Raises NotRegular when the two ways of evaluating x perp_R (d(gen) * a)
    disagree, i.e. when the codifferential does not extend.
    """
    m = d.model
    if d.inner:
        return PerpRData(m, {})
    if not m.central_basis:
        raise ValueError("companion pairing needs a central 1-form basis or inner data")
    base = _perpR_base(d, p)
    table: dict[tuple[str, str], Form] = {}
    for w in ("e1", "e2", "Vol"):
        for bw in DEG1:
            acc = m.zero_form(WORD_DEGREE[w] - 1)
            for q, gen in m.basis_from_d[bw]:
                acc = acc + base[(w, gen)].left_mul(m.twist(w, q))
            table[(w, bw)] = acc
    pr = PerpRData(m, table)
    if check:
        bad = regularity_residuals(d, p, pr)
        if bad:
            label, res = bad[0]
            raise NotRegular(f"perp_R fails right-linearity at {label}: {res!r}")
    return pr


def regularity_residuals(d: DeltaData, p: PerpData, pr: PerpRData | None = None):
    """Nonzero differences between the two evaluations of x perp_R (d(gen) * a)."""
    m = d.model
    if d.inner:
        return []
    if not m.central_basis:
        raise ValueError("companion pairing needs a central 1-form basis or inner data")
    if pr is None:
        pr = perpR_build(d, p, check=False)
    base = _perpR_base(d, p)
    probes = [("r", m.alg.r()), ("t", m.alg.t()), ("r^-1", m.alg.r(-1))]
    out = []
    for w in ("e1", "e2", "Vol"):
        xw = m.basis_form(w)
        for gen in m.gen_names:
            dg = m.d(m.generator[gen])
            for label, a in probes:
                res = pr.apply(xw, dg.right_mul(a)) - base[(w, gen)].right_mul(a)
                if not res.is_zero():
                    out.append((f"{w} perp_R d{gen}*{label}", res))
                res = pr.apply(xw, dg.left_mul(a)) - base[(w, gen)].left_mul(m.twist(w, a))
                if not res.is_zero():
                    out.append((f"{w} perp_R {label}*d{gen}", res))
    return out


def regularity_check(d: DeltaData, p: PerpData, pr: PerpRData | None = None) -> bool:
    return not regularity_residuals(d, p, pr)


# ---------------------------------------------------------------------------
# interior products and metric extraction


def j_apply(d: DeltaData, p: PerpData, pr: PerpRData, x: Form, y: Form) -> Form:
    """Interior product j_x(y) = (x perp y + x perp_R y) / 2."""
    return (p.apply(x, y) + pr.apply(x, y)).scale(HALF)


def _interior_alg(d: DeltaData, p: PerpData, pr: PerpRData):
    m = d.model
    g = [[j_apply(d, p, pr, m.e(i), m.e(j)).as_alg() for j in (1, 2)] for i in (1, 2)]
    v = []
    for i in (1, 2):
        row = j_apply(d, p, pr, m.vol(), m.e(i))
        v.append([row.coeff("e1"), row.coeff("e2")])
    return g, v


def _require_constant(x: AlgElem, what: str) -> Frac:
    try:
        return x.as_frac()
    except ValueError:
        raise NonConstantMetric(f"{what} is not constant: {x!r}") from None


def interior_extract(d: DeltaData, p: PerpData, pr: PerpRData | None = None):
    """(g, v) as 2x2 Frac matrices: j_{e_i}(e_j) = g^{ij}, j_Vol(e_i) = v^{ij} e_j."""
    if pr is None:
        pr = perpR_build(d, p)
    g_alg, v_alg = _interior_alg(d, p, pr)
    g = [
        [_require_constant(g_alg[i][j], f"metric entry g^{i + 1}{j + 1}") for j in (0, 1)]
        for i in (0, 1)
    ]
    v = [
        [_require_constant(v_alg[i][j], f"volume entry v^{i + 1}{j + 1}") for j in (0, 1)]
        for i in (0, 1)
    ]
    return g, v


# ---------------------------------------------------------------------------
# the graded bracket and the induced connection


def cocycle_bracket(d: DeltaData, p: PerpData, w: Form, h: Form) -> Form:
    """[[w, h]] built from the deviation of delta from a graded derivation.

    [[w, h]] = L(w, h) + w perp dh - (-1)^{|w|} dw perp h - (-1)^{|w|} d(w perp h)
    with L(w, h) = delta(wh) - (delta w)h - (-1)^{|w|} w (delta h).
    """
    m = d.model
    out_deg = w.degree + h.degree - 1
    if out_deg > 2:
        return m.zero_form(2)
    if out_deg < 0:
        return m.zero_form(0)
    gsign = -1 if w.degree % 2 else 1
    out = m.zero_form(out_deg)
    terms = [
        delta_apply(d, p, w.wedge(h)),
        -delta_apply(d, p, w).wedge(h),
        w.wedge(delta_apply(d, p, h)).scale(-gsign),
        p.apply(w, m.d(h)),
        p.apply(m.d(w), h).scale(-gsign),
        m.d(p.apply(w, h)).scale(-gsign),
    ]
    for term in terms:
        if term.is_zero():
            continue
        out = out + term
    return out


def nabla_along(d: DeltaData, p: PerpData, i: int, h: Form) -> Form:
    """Connection along e_i: half the bracket.

    For inner data carrying its 1-form the bracket is taken in closed form,
    which agrees with the cocycle route whenever the pairing satisfies the
    4-term identity but remains the meaningful choice when it does not.
    """
    if d.inner and d.theta is not None:
        return bracket_inner(p, d.theta, d.model.e(i), h).scale(HALF)
    return cocycle_bracket(d, p, d.model.e(i), h).scale(HALF)


def sigma_general(d: DeltaData, p: PerpData, pr: PerpRData, w: Form, T: TensorForm) -> Form:
    """sigma_w(eta tensor zeta) = j_{w eta}(zeta) + w j_eta(zeta), summed over T."""
    m = d.model
    out_deg = w.degree + T.bidegree[0] + T.bidegree[1] - 2
    out = m.zero_form(min(out_deg, 2))
    for (w1, w2), c in T.coeffs.items():
        eta = m.form(WORD_DEGREE[w1], {w1: c})
        zeta = m.basis_form(w2)
        term = j_apply(d, p, pr, w.wedge(eta), zeta) + w.wedge(j_apply(d, p, pr, eta, zeta))
        if not term.is_zero():
            out = out + term
    return out


def sigma_along(
    d: DeltaData, p: PerpData, i: int, T: TensorForm, pr: PerpRData | None = None
) -> Form:
    if pr is None:
        pr = perpR_build(d, p)
    return sigma_general(d, p, pr, d.model.e(i), T)


# ---------------------------------------------------------------------------
# inner-calculus route


def inner_delta(theta: Form, p: PerpData) -> DeltaData:
    """delta = theta perp for an inner calculus; raises NotInner otherwise."""
    m = p.model
    if not verify_inner(m, theta):
        raise NotInner("d is not the graded commutator with the supplied 1-form")
    a1 = p.apply(theta, m.e(1)).as_alg()
    a2 = p.apply(theta, m.e(2)).as_alg()
    dv = p.apply(theta, m.vol())
    return DeltaData(m, a1, a2, dv.coeff("e1"), dv.coeff("e2"), inner=True, theta=theta)


def bracket_inner(p: PerpData, theta: Form, w: Form, h: Form) -> Form:
    """Closed form of the bracket for delta = theta perp:
    [[w, h]] = (w perp theta) h - (wh) perp theta - w (h perp theta)."""
    t1 = p.apply(w.wedge(h), theta)
    t2 = p.apply(w, theta).wedge(h)
    t3 = w.wedge(p.apply(h, theta))
    return t2 - t1 - t3


def laplacian_inner(p: PerpData, theta: Form, x: Form) -> Form:
    """Laplacian on forms for inner data: 2 nabla_theta - theta^2 perp."""
    return bracket_inner(p, theta, theta, x) - p.apply(theta.wedge(theta), x)


# ---------------------------------------------------------------------------
# diagnostics and the Laplacian


def delta_sq_left_residuals(d: DeltaData, p: PerpData):
    """delta^2(f Vol) - f delta^2(Vol) per generator f; zero iff left-module."""
    m = d.model
    vol2 = delta_apply(d, p, d.delta_vol()).as_alg()
    out = []
    for gen in m.gen_names:
        f = m.generator[gen]
        lhs = delta_apply(d, p, delta_apply(d, p, m.vol().left_mul(f))).as_alg()
        out.append(lhs - f * vol2)
    return tuple(out)


def delta_sq_vol(d: DeltaData, p: PerpData):
    """(delta^2 Vol, centrality flag)."""
    val = delta_apply(d, p, d.delta_vol()).as_alg()
    return val, d.model.alg.is_central(val)


def laplacian(d: DeltaData, p: PerpData, x):
    """Hodge Laplacian delta d + d delta on algebra elements and forms."""
    m = d.model
    if not isinstance(x, Form):
        return delta_apply(d, p, m.d(x)).as_alg()
    if x.degree == 0:
        return delta_apply(d, p, m.d(x))
    if x.degree == 1:
        return delta_apply(d, p, m.d(x)) + m.d(delta_apply(d, p, x))
    return m.d(delta_apply(d, p, x))


# ---------------------------------------------------------------------------
# solving for the codifferential from metric targets


_CONST_NAME = {"a1": "k1", "a2": "k2", "b1": "l1", "b2": "l2"}


def _affine_split(f: Frac, ctx: Context, first_u: int, n_u: int):
    """Split a Frac affine in the trailing unknowns into (constant, {col: coeff})."""
    for exp in f.den.terms:
        if any(exp[first_u:]):
            raise ValueError("unknown appears in a denominator")
    const_terms: dict[tuple, Fraction] = {}
    lin_terms: dict[int, dict[tuple, Fraction]] = {}
    for exp, c in f.num.terms.items():
        tail = exp[first_u:]
        weight = sum(tail)
        if weight == 0:
            const_terms[exp] = c
        elif weight == 1:
            col = tail.index(1)
            stripped = exp[:first_u] + (0,) * n_u
            bucket = lin_terms.setdefault(col, {})
            bucket[stripped] = bucket.get(stripped, 0) + c
        else:
            raise ValueError("system is not linear in the unknowns")
    const = Frac(Poly(ctx, const_terms), f.den)
    lin = {col: Frac(Poly(ctx, terms), f.den) for col, terms in lin_terms.items()}
    return const, lin


def _residual_rows(res: AlgElem, ctx: Context, first_u: int, ncols: int):
    """One linear row per normal-form monomial of an affine residual."""
    rows, rhs = [], []
    zero = ctx.zero()
    if hasattr(res, "terms"):
        coeffs = list(res.terms.values())
    else:
        coeffs = list(res.values)
    for c in coeffs:
        const, lin = _affine_split(c, ctx, first_u, ncols)
        row = [lin.get(k, zero) for k in range(ncols)]
        if all(x.is_zero() for x in row) and const.is_zero():
            continue
        rows.append(row)
        rhs.append(-const)
    return rows, rhs


def solve_delta_for_targets(preset, p: PerpData, g, v) -> DeltaData:
    """Codifferential with prescribed j_{e_i}(e_j) = g^{ij} and j_Vol(e_i) = v^{ij} e_j.

    The a_i, b_i are sought over the preset's Laurent ansatz; the solution is
    unique up to the additive constants, returned as the symbols k1, k2
    (for a_1, a_2) and l1, l2 (for b_1, b_2).
    """
    from .models import build_model

    m0 = preset.model
    ctx0 = m0.ctx
    mons = list(preset.delta_monomials)
    if not mons:
        raise ValueError(f"model {preset.id!r} has no codifferential ansatz")
    elems = ("a1", "a2", "b1", "b2")
    noncon = [mn for mn in mons if mn != (0, 0)]
    cols = [(e, mn) for e in elems for mn in noncon] + [(e, (0, 0)) for e in elems]
    unames = [f"u{i}" for i in range(len(cols))]
    uctx = Context(tuple(ctx0.names[1:]) + tuple(unames))
    first_u = uctx.index[unames[0]]
    um = build_model(preset.id, uctx)
    up = PerpData(um, {k: convert_form(f, um) for k, f in p.table.items()})

    vals = {e: um.alg.zero() for e in elems}
    for idx, (e, mn) in enumerate(cols):
        vals[e] = vals[e] + um.alg.monomial(mn[0], mn[1], uctx.sym(unames[idx]))
    du = DeltaData(um, vals["a1"], vals["a2"], vals["b1"], vals["b2"])
    pru = perpR_build(du, up, check=False)
    g_alg, v_alg = _interior_alg(du, up, pru)

    rows: list[list[Frac]] = []
    rhs: list[Frac] = []
    for i in (0, 1):
        for j in (0, 1):
            for comp, target in ((g_alg, g), (v_alg, v)):
                tv = ctx0.frac(target[i][j])
                res = comp[i][j] - um.alg.from_frac(ctx0.convert(tv, uctx))
                extra_rows, extra_rhs = _residual_rows(res, uctx, first_u, len(cols))
                rows.extend(extra_rows)
                rhs.extend(extra_rhs)

    sol = gaussian_solve(rows, rhs, uctx)
    free_names: dict[int, str] = {}
    for fc in sol.free_cols:
        e, mn = cols[fc]
        if mn != (0, 0):
            raise InconsistentSystem(f"unexpected freedom in ansatz column {cols[fc]!r}")
        free_names[fc] = _CONST_NAME[e]

    out = {e: m0.alg.zero() for e in elems}
    for col, (e, mn) in enumerate(cols):
        val = uctx.convert(sol.const[col], ctx0)
        for fc in sol.free_cols:
            val = val + ctx0.sym(free_names[fc]) * uctx.convert(sol.basis[fc][col], ctx0)
        if not val.is_zero():
            out[e] = out[e] + m0.alg.monomial(mn[0], mn[1], val)
    return DeltaData(m0, out["a1"], out["a2"], out["b1"], out["b2"])


# ---------------------------------------------------------------------------
# report


@dataclass
class KoszulReport:
    model_id: str
    g: list
    v: list
    bracket: dict[str, Form]
    laplacian: dict
    delta2_left: tuple
    delta2_vol: AlgElem
    delta2_central: bool


BRACKET_PAIRS = [
    ("e1", "e1"),
    ("e1", "e2"),
    ("e2", "e1"),
    ("e2", "e2"),
    ("e1", "Vol"),
    ("e2", "Vol"),
]


def build_koszul_report(model_id: str, d: DeltaData, p: PerpData) -> KoszulReport:
    m = d.model
    pr = perpR_build(d, p)
    g, v = interior_extract(d, p, pr)
    bracket = {
        f"{w1},{w2}": cocycle_bracket(d, p, m.basis_form(w1), m.basis_form(w2))
        for w1, w2 in BRACKET_PAIRS
    }
    lap = {gen: laplacian(d, p, m.generator[gen]) for gen in m.gen_names}
    for w in ("e1", "e2", "Vol"):
        lap[w] = laplacian(d, p, m.basis_form(w))
    vol_val, central = delta_sq_vol(d, p)
    return KoszulReport(
        model_id=model_id,
        g=g,
        v=v,
        bracket=bracket,
        laplacian=lap,
        delta2_left=delta_sq_left_residuals(d, p),
        delta2_vol=vol_val,
        delta2_central=central,
    )
