"""Riemannian data derived from a codifferential and its interior pairing.

Everything here is built on top of the bracket connection nabla_{e_k} =
half the cocycle bracket: exact 2x2 metric inversion, the metric-contracted
connection on 1-forms and its braiding, torsion and cotorsion read off
against the volume form, the metric-compatibility tensor, curvature, the
geometric codifferential, and entrywise evaluation at L = 0 with explicit
pole markers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import DivisionByZero, Frac, PoleAtZero
from .algebra import AlgElem, BicrossElem, FiniteFnElem
from .forms import (
    CalculusModel,
    Form,
    Tensor3Form,
    TensorForm,
    WORD_DEGREE,
    tensor,
    tensor3_left,
    tensor3_right,
    wedge_on_first,
)
from .koszul import (
    DeltaData,
    PerpRData,
    inner_delta,
    interior_extract,
    j_apply,
    nabla_along,
    perpR_build,
    sigma_general,
)
from .perp import PerpData

HALF = Fraction(1, 2)


class SingularMetric(ValueError):
    """Raised when the supplied coefficient matrix has no exact inverse."""


class Pole:
    """Marker for an entry with no finite value at L = 0."""

    __slots__ = ("what",)

    def __init__(self, what: str = ""):
        self.what = what

    def __eq__(self, other) -> bool:
        return isinstance(other, Pole)

    def __hash__(self) -> int:
        return hash("Pole")

    def __repr__(self) -> str:
        return f"Pole({self.what!r})"


# ---------------------------------------------------------------------------
# metric inversion


@dataclass
class MetricData:
    model: CalculusModel
    gUp: tuple
    gDown: tuple
    gTensor: TensorForm
    detUp: AlgElem
    detLambda: AlgElem


def _to_alg(alg, v) -> AlgElem:
    if isinstance(v, (int, Fraction, Frac)):
        return alg.from_frac(v)
    return v


def _invert_elem(alg, x: AlgElem) -> AlgElem:
    """Inverse of an algebra element, for the invertible shapes we use."""
    try:
        if isinstance(x, FiniteFnElem):
            return x.inv()
        if isinstance(x, BicrossElem):
            if len(x.terms) == 1:
                (m, n), c = next(iter(x.terms.items()))
                if n == 0:
                    return alg.monomial(-m, 0, c.inv())
    except DivisionByZero as exc:
        raise SingularMetric(str(exc)) from exc
    raise SingularMetric("determinant is not invertible in the algebra")


def invert_metric(model: CalculusModel, gUp) -> MetricData:
    """Exact inverse of a 2x2 coefficient matrix, with the metric tensor.

    Entries may be coefficient-field values or algebra elements.  Raises
    SingularMetric when the determinant has no inverse; raises ValueError
    when the resulting tensor g_{ij} e_i tensor e_j fails to be central.
    """
    alg = model.alg
    g = tuple(tuple(_to_alg(alg, v) for v in row) for row in gUp)
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    det_inv = _invert_elem(alg, det)
    gDown = (
        (det_inv * g[1][1], -(det_inv * g[0][1])),
        (-(det_inv * g[1][0]), det_inv * g[0][0]),
    )
    one, zero = alg.one(), alg.zero()
    for i in range(2):
        for j in range(2):
            prod = g[i][0] * gDown[0][j] + g[i][1] * gDown[1][j]
            if prod != (one if i == j else zero):
                raise SingularMetric("inverse check failed")
    gTensor = TensorForm(
        model,
        (1, 1),
        {(f"e{i + 1}", f"e{j + 1}"): gDown[i][j] for i in range(2) for j in range(2)},
    )
    for gen in model.gen_names:
        a = model.generator[gen]
        if gTensor.left_mul(a) != gTensor.right_mul(a):
            raise ValueError(f"metric tensor is not central against {gen}")
    det_l = det
    w22 = model.wedge_1forms.get(("e2", "e2")) or {}
    mu = w22.get("Vol")
    if mu is not None:
        half = alg.from_frac(HALF)
        det_l = det - half * mu * mu * g[0][0] * g[0][0]
    return MetricData(model, g, gDown, gTensor, det, det_l)


# ---------------------------------------------------------------------------
# connection, braiding and the derived tensors


def nabla_abstract(d: DeltaData, p: PerpData, metric: MetricData):
    """(nabla e_1, nabla e_2) with nabla e_i = sum_k g_{jk} e_j tensor nabla_{e_k} e_i."""
    m = d.model
    out = []
    for i in (1, 2):
        acc = TensorForm(m, (1, 1), {})
        for j in (1, 2):
            for k in (1, 2):
                leg = m.form(1, {f"e{j}": metric.gDown[j - 1][k - 1]})
                acc = acc + tensor(leg, nabla_along(d, p, k, m.e(i)))
        out.append(acc)
    return tuple(out)


def nabla_vol(d: DeltaData, p: PerpData, metric: MetricData) -> TensorForm:
    """nabla Vol = sum_k g_{jk} e_j tensor nabla_{e_k} Vol, a (1, 2) tensor."""
    m = d.model
    acc = TensorForm(m, (1, 2), {})
    for j in (1, 2):
        for k in (1, 2):
            leg = m.form(1, {f"e{j}": metric.gDown[j - 1][k - 1]})
            acc = acc + tensor(leg, nabla_along(d, p, k, m.vol()))
    return acc


def sigma_abstract(
    d: DeltaData, p: PerpData, metric: MetricData, T: TensorForm, pr: PerpRData | None = None
) -> TensorForm:
    """sigma(T) = sum g_{jk} e_j tensor sigma_{e_k}(T) on a (1, 1) tensor."""
    if pr is None:
        pr = perpR_build(d, p)
    m = d.model
    out_second = T.bidegree[0] + T.bidegree[1] - 1
    acc = TensorForm(m, (1, out_second), {})
    for j in (1, 2):
        for k in (1, 2):
            leg = m.form(1, {f"e{j}": metric.gDown[j - 1][k - 1]})
            acc = acc + tensor(leg, sigma_general(d, p, pr, m.e(k), T))
    return acc


def sigma_basis_table(
    d: DeltaData, p: PerpData, metric: MetricData, pr: PerpRData | None = None
) -> dict[tuple[str, str], TensorForm]:
    if pr is None:
        pr = perpR_build(d, p)
    m = d.model
    return {
        (u, v): sigma_abstract(d, p, metric, tensor(m.basis_form(u), m.basis_form(v)), pr)
        for u in ("e1", "e2")
        for v in ("e1", "e2")
    }


def wedge_legs(T: TensorForm) -> Form:
    """Multiply the two tensor legs into a single form."""
    m = T.model
    out = m.zero_form(min(T.bidegree[0] + T.bidegree[1], 2))
    for (u, v), c in T.coeffs.items():
        out = out + m.basis_form(u).wedge(m.basis_form(v)).left_mul(c)
    return out


def d_on_first(T: TensorForm) -> TensorForm:
    """Exterior derivative of the whole first leg, second leg untouched."""
    m = T.model
    p_, q_ = T.bidegree
    out = TensorForm(m, (p_ + 1, q_), {})
    for (u, v), c in T.coeffs.items():
        first = m.d(m.form(WORD_DEGREE[u], {u: c}))
        if first.is_zero():
            continue
        out = out + tensor(first, m.basis_form(v))
    return out


def torsion(d: DeltaData, p: PerpData, metric: MetricData, nablas=None):
    """(T_1, T_2) read off from (product of legs of nabla e_i) - d e_i = T_i Vol."""
    if nablas is None:
        nablas = nabla_abstract(d, p, metric)
    m = d.model
    return tuple(
        (wedge_legs(nab) - m.d(m.e(i))).coeff("Vol") for i, nab in zip((1, 2), nablas)
    )


def _minus_wedge_nabla(T: TensorForm, nablas) -> TensorForm:
    """Subtract (first leg wedged into nabla of second leg) from nothing."""
    m = T.model
    out = TensorForm(m, (T.bidegree[0] + 1, 1), {})
    for (u, v), c in T.coeffs.items():
        k = 1 if v == "e1" else 2
        out = out - wedge_on_first(m.form(WORD_DEGREE[u], {u: c}), nablas[k - 1])
    return out


def cotorsion(d: DeltaData, p: PerpData, metric: MetricData, nablas=None):
    """(C_1, C_2) from (d on first leg - wedge into nabla)(g) = sum C_i Vol tensor e_i."""
    if nablas is None:
        nablas = nabla_abstract(d, p, metric)
    coT = d_on_first(metric.gTensor) + _minus_wedge_nabla(metric.gTensor, nablas)
    return coT.coeff("Vol", "e1"), coT.coeff("Vol", "e2")


def curvature(d: DeltaData, p: PerpData, metric: MetricData, nablas=None):
    """(R(e_1), R(e_2)) with R = (d on first leg - wedge into nabla) of nabla."""
    if nablas is None:
        nablas = nabla_abstract(d, p, metric)
    return tuple(d_on_first(nab) + _minus_wedge_nabla(nab, nablas) for nab in nablas)


def metric_compat(
    d: DeltaData,
    p: PerpData,
    metric: MetricData,
    nablas=None,
    sigma: dict[tuple[str, str], TensorForm] | None = None,
    pr: PerpRData | None = None,
) -> Tensor3Form:
    """nabla g = (nabla tensor id)g + (sigma tensor id)(id tensor nabla)g."""
    m = d.model
    if pr is None:
        pr = perpR_build(d, p)
    if nablas is None:
        nablas = nabla_abstract(d, p, metric)
    if sigma is None:
        sigma = sigma_basis_table(d, p, metric, pr)
    out = Tensor3Form(m, {})
    mid = Tensor3Form(m, {})
    for (u, v), c in metric.gTensor.coeffs.items():
        i = 1 if u == "e1" else 2
        k = 1 if v == "e1" else 2
        first = nablas[i - 1].left_mul(c)
        dc = m.d(c)
        if not dc.is_zero():
            first = first + tensor(dc, m.basis_form(u))
        out = out + tensor3_right(first, m.basis_form(v))
        mid = mid + tensor3_left(m.form(1, {u: c}), nablas[k - 1])
    for (w1, w2, w3), c in mid.coeffs.items():
        out = out + tensor3_right(sigma[(w1, w2)].left_mul(c), m.basis_form(w3))
    return out


def geometric_codifferential(
    d: DeltaData, p: PerpData, metric: MetricData, pr: PerpRData | None = None, nablas=None
):
    """Contraction of nabla with the interior pairing on {e_1, e_2, Vol}.

    The value on Vol needs the pairing against the top form in the second
    slot, which the companion-pairing route only provides when it vanishes
    identically (the inner case) or when nabla Vol is already zero; the
    remaining case is reported as None.
    """
    m = d.model
    if pr is None:
        pr = perpR_build(d, p)
    if nablas is None:
        nablas = nabla_abstract(d, p, metric)
    out = {}
    for i, nab in zip((1, 2), nablas):
        acc = m.zero_form(0)
        for (u, v), c in nab.coeffs.items():
            acc = acc + j_apply(d, p, pr, m.form(1, {u: c}), m.basis_form(v))
        out[f"e{i}"] = acc.as_alg()
    nv = nabla_vol(d, p, metric)
    if nv.is_zero():
        out["Vol"] = m.zero_form(1)
    elif d.inner:
        acc = m.zero_form(1)
        for (u, v), c in nv.coeffs.items():
            acc = acc + j_apply(d, p, pr, m.form(1, {u: c}), m.basis_form(v))
        out["Vol"] = acc
    else:
        out["Vol"] = None
    return out


def braided_leibniz_residual(
    d: DeltaData,
    p: PerpData,
    metric: MetricData,
    i: int,
    eta: Form,
    zeta: Form,
    pr: PerpRData | None = None,
) -> Form:
    """Deviation of nabla_{e_i} from a braided derivation on eta * zeta.

    nabla_{e_i}(eta zeta) - (nabla_{e_i}eta)zeta
    - sum_k sigma_{e_i}(eta tensor g_{jk}e_j) nabla_{e_k}zeta,
    for a 1-form zeta and eta of degree at least 1.
    """
    if pr is None:
        pr = perpR_build(d, p)
    m = d.model
    lhs = nabla_along(d, p, i, eta.wedge(zeta))
    rhs = nabla_along(d, p, i, eta).wedge(zeta)
    for k in (1, 2):
        gcol = m.form(
            1, {"e1": metric.gDown[0][k - 1], "e2": metric.gDown[1][k - 1]}
        )
        sg = sigma_general(d, p, pr, m.e(i), tensor(eta, gcol))
        rhs = rhs + sg.wedge(nabla_along(d, p, k, zeta))
    return lhs - rhs


@dataclass
class InnerCrosscheck:
    """Residuals of closed-form torsion and cotorsion expressions, available
    when the codifferential is inner (delta = theta perp) and the metric is
    calibrated so that g^{ij} = (1/2) e_i perp e_j.

    torsion: per-basis-vector residual of the general closed expression
        -2 e_i theta + (1/2) g^(1) (g^(2) perp (e_i theta)).
    torsion_alt: residual of the tighter variant
        -e_i theta - (1/2) g^(1) ((g^(2) e_i) perp theta),
    which additionally requires the metric legs to wedge to zero; its
    deviation from `torsion` is proportional to `metric_wedge`.
    cotorsion: residual of the quadratic contraction
        2 theta g + (1/2) (g^(1') g^(1)) tensor ((g^(2) g^(2')) perp theta),
    the relative sign that verifies against the direct computation.
    cotorsion_alt: the same contraction with the opposite relative sign.
    metric_wedge: the 2-form obtained by wedging the two metric legs.
    """

    torsion: tuple
    torsion_alt: tuple
    cotorsion: "TensorForm"
    cotorsion_alt: "TensorForm"
    metric_wedge: Form

    def verified(self) -> bool:
        return all(t.is_zero() for t in self.torsion) and self.cotorsion.is_zero()


def inner_TC_crosscheck(p: PerpData, theta: Form, metric: MetricData) -> InnerCrosscheck:
    """Closed torsion and cotorsion expressions for delta = theta perp,
    minus the direct computations, in both known variants."""
    m = p.model
    d = inner_delta(theta, p)
    nablas = nabla_abstract(d, p, metric)
    t_res, t_alt_res = [], []
    for i in (1, 2):
        direct = wedge_legs(nablas[i - 1]) - m.d(m.e(i))
        closed = m.e(i).wedge(theta).scale(-2)
        alt = -(m.e(i).wedge(theta))
        for j in (1, 2):
            for k in (1, 2):
                gj = m.form(1, {f"e{j}": metric.gDown[j - 1][k - 1]})
                closed = closed + gj.wedge(
                    p.apply(m.e(k), m.e(i).wedge(theta))
                ).scale(HALF)
                alt = alt - gj.wedge(
                    p.apply(m.e(k).wedge(m.e(i)), theta)
                ).scale(HALF)
        t_res.append(closed - direct)
        t_alt_res.append(alt - direct)
    direct = d_on_first(metric.gTensor) + _minus_wedge_nabla(metric.gTensor, nablas)
    quad = TensorForm(m, (2, 1), {})
    lead = TensorForm(m, (2, 1), {})
    wedge_g = m.zero_form(2)
    for j in (1, 2):
        for k in (1, 2):
            gj = m.form(1, {f"e{j}": metric.gDown[j - 1][k - 1]})
            lead = lead + tensor(theta.wedge(gj), m.e(k)).scale(2)
            wedge_g = wedge_g + gj.wedge(m.e(k))
            for l in (1, 2):
                for q in (1, 2):
                    gl = m.form(1, {f"e{l}": metric.gDown[l - 1][q - 1]})
                    second = p.apply(m.e(k).wedge(m.e(q)), theta)
                    if second.is_zero():
                        continue
                    quad = quad + tensor(gl.wedge(gj), second).scale(HALF)
    return InnerCrosscheck(
        torsion=tuple(t_res),
        torsion_alt=tuple(t_alt_res),
        cotorsion=(lead + quad) - direct,
        cotorsion_alt=(lead - quad) - direct,
        metric_wedge=wedge_g,
    )


# ---------------------------------------------------------------------------
# values at L = 0


def classical_value(x):
    """Entrywise value at L = 0; a Pole marker if any entry has a pole."""
    try:
        return _classical(x)
    except PoleAtZero as exc:
        return Pole(str(exc))


def _elem_zero(c: AlgElem) -> AlgElem:
    return c.map_coeffs(lambda f: f.eval_lambda_zero())


def _classical(x):
    if x is None or isinstance(x, (Pole, bool, int, str)):
        return x
    if isinstance(x, Frac):
        return x.eval_lambda_zero()
    if isinstance(x, (Form, TensorForm, Tensor3Form)):
        return x.map_coeffs(_elem_zero)
    if isinstance(x, dict):
        return {k: classical_value(v) for k, v in x.items()}
    if isinstance(x, (tuple, list)):
        return tuple(classical_value(v) for v in x)
    return _elem_zero(x)


# ---------------------------------------------------------------------------
# report


@dataclass
class GeometryReport:
    model_id: str
    metric: MetricData
    nabla_e1: TensorForm
    nabla_e2: TensorForm
    sigma: dict[tuple[str, str], TensorForm]
    T1: AlgElem
    T2: AlgElem
    C1: AlgElem
    C2: AlgElem
    R1: TensorForm
    R2: TensorForm
    nabla_g: Tensor3Form
    codifferential: dict
    flags: dict[str, bool]
    classical: dict


def build_geometry_report(
    model_id: str,
    d: DeltaData,
    p: PerpData,
    gUp=None,
    pr: PerpRData | None = None,
) -> GeometryReport:
    m = d.model
    if pr is None:
        pr = perpR_build(d, p)
    if gUp is None:
        gUp, _ = interior_extract(d, p, pr)
    metric = invert_metric(m, gUp)
    nablas = nabla_abstract(d, p, metric)
    sigma = sigma_basis_table(d, p, metric, pr)
    T1, T2 = torsion(d, p, metric, nablas)
    C1, C2 = cotorsion(d, p, metric, nablas)
    nabla_g = metric_compat(d, p, metric, nablas, sigma, pr)
    R1, R2 = curvature(d, p, metric, nablas)
    cod = geometric_codifferential(d, p, metric, pr, nablas)
    torsion_free = T1.is_zero() and T2.is_zero()
    cotorsion_free = C1.is_zero() and C2.is_zero()
    compatible = nabla_g.is_zero()
    flags = {
        "torsion_free": torsion_free,
        "cotorsion_free": cotorsion_free,
        "metric_compatible": compatible,
        "qlc": torsion_free and compatible,
        "weak_qlc": torsion_free and cotorsion_free,
    }
    classical = {
        "nabla_e1": classical_value(nablas[0]),
        "nabla_e2": classical_value(nablas[1]),
        "sigma": classical_value(sigma),
        "T1": classical_value(T1),
        "T2": classical_value(T2),
        "C1": classical_value(C1),
        "C2": classical_value(C2),
        "R1": classical_value(R1),
        "R2": classical_value(R2),
        "nabla_g": classical_value(nabla_g),
        "codifferential": classical_value(cod),
    }
    return GeometryReport(
        model_id=model_id,
        metric=metric,
        nabla_e1=nablas[0],
        nabla_e2=nablas[1],
        sigma=sigma,
        T1=T1,
        T2=T2,
        C1=C1,
        C2=C2,
        R1=R1,
        R2=R2,
        nabla_g=nabla_g,
        codifferential=cod,
        flags=flags,
        classical=classical,
    )
