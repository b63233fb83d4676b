"""Codifferential data: companion pairing, bracket, Laplacian, and the solver."""

from fractions import Fraction

import pytest

from qkoszul.algebra import commutator
from qkoszul.forms import Form
from qkoszul.koszul import (
    DeltaData,
    NonConstantMetric,
    NotInner,
    NotRegular,
    bracket_inner,
    build_koszul_report,
    cocycle_bracket,
    delta_apply,
    delta_sq_left_residuals,
    delta_sq_vol,
    inner_delta,
    interior_extract,
    j_apply,
    laplacian,
    perpR_build,
    regularity_check,
    solve_delta_for_targets,
)
from qkoszul.models import build_preset, inner_theta
from qkoszul.perp import solve_four_term

ALPHA = build_preset("alpha")
BETA = build_preset("beta")
Z2 = build_preset("z2z2")

A_PERP = solve_four_term(ALPHA).perp
B_PERP = solve_four_term(BETA).perp
Z_PERP = solve_four_term(Z2).perp

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# reference codifferential families


def alpha_targets():
    s = ALPHA.model.ctx.sym
    g = [[s("g11"), s("g12")], [s("g21"), s("g22")]]
    v = [[s("v11"), s("v12")], [s("v21"), s("v22")]]
    return g, v


def alpha_family():
    """The unique codifferential with constant (g, v), linear in t and 1/r."""
    m = ALPHA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    c = lambda x: x * L.inv() * 2
    mixed = (s("b12") + s("b21")) * HALF
    a1 = (
        alg.monomial(0, 1, c(s("g11") - s("b11")))
        + alg.monomial(-1, 0, c(s("g12") - mixed))
        + alg.from_frac(s("k1"))
    )
    a2 = (
        alg.monomial(0, 1, c(s("g21") - mixed))
        + alg.monomial(-1, 0, c(s("g22") - s("b22")))
        + alg.from_frac(s("k2"))
    )
    b1 = (
        alg.monomial(0, 1, c(s("v11") + mixed))
        + alg.monomial(-1, 0, c(s("v21") + s("b22")))
        + alg.from_frac(s("l1"))
    )
    b2 = (
        alg.monomial(0, 1, c(s("v12") - s("b11")))
        + alg.monomial(-1, 0, c(s("v22") - mixed))
        + alg.from_frac(s("l2"))
    )
    return DeltaData(m, a1, a2, b1, b2)


def beta_targets():
    s = BETA.model.ctx.sym
    g = [[s("g11"), s("g12")], [s("g21"), s("g22")]]
    v = [[s("v11"), s("v12")], [s("v21"), s("v22")]]
    return g, v


def beta_family():
    """The unique codifferential with constant (g, v), linear in t/r and 1/r."""
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    c = lambda x: x * L.inv() * 2
    a1 = (
        alg.monomial(-1, 1, c(s("g11")))
        + alg.monomial(-1, 0, c(s("g12")))
        + alg.from_frac(s("k1"))
    )
    a2 = (
        alg.monomial(-1, 1, c(s("g21")))
        + alg.monomial(-1, 0, c(s("g22")) + 2 * s("b"))
        + alg.from_frac(s("k2"))
    )
    b1 = (
        alg.monomial(-1, 1, c(s("v11")))
        + alg.monomial(-1, 0, c(s("v21")))
        + alg.from_frac(s("l1"))
    )
    b2 = (
        alg.monomial(-1, 1, c(s("v12")))
        + alg.monomial(-1, 0, c(s("v22")))
        + alg.from_frac(s("l2"))
    )
    return DeltaData(m, a1, a2, b1, b2)


def messy_alpha():
    """Codifferential data outside the solvable family, for definitional checks."""
    alg = ALPHA.model.alg
    return DeltaData(
        ALPHA.model,
        alg.monomial(1, 1),
        alg.monomial(-2, 1) + alg.t(),
        alg.monomial(2, 0) + alg.t(),
        alg.monomial(1, 2),
    )


def messy_beta():
    alg = BETA.model.alg
    return DeltaData(
        BETA.model,
        alg.monomial(-1, 2),
        alg.monomial(2, 1),
        alg.monomial(-2, 0) + alg.t(),
        alg.monomial(0, 2),
    )


BETA_LEFT_MODULE = None


def beta_left_module():
    """beta_family specialized so that delta^2 is a left module map."""
    global BETA_LEFT_MODULE
    if BETA_LEFT_MODULE is None:
        s, L = BETA.model.ctx.sym, BETA.model.ctx.L
        rel = {
            "v11": -s("g21") - L * s("g11"),
            "v21": -s("g22") - L * s("g12"),
            "v12": s("g11"),
            "v22": s("g12"),
            "l1": -s("k2") - L * s("k1"),
            "l2": s("k1"),
        }
        BETA_LEFT_MODULE = beta_family().subs(rel)
    return BETA_LEFT_MODULE


# ---------------------------------------------------------------------------
# solver


def test_alpha_solver_recovers_linear_family():
    g, v = alpha_targets()
    d = solve_delta_for_targets(ALPHA, A_PERP, g, v)
    ref = alpha_family()
    assert d.a1 == ref.a1 and d.a2 == ref.a2
    assert d.b1 == ref.b1 and d.b2 == ref.b2


def test_alpha_interior_roundtrip():
    g, v = interior_extract(alpha_family(), A_PERP)
    gt, vt = alpha_targets()
    assert g == gt and v == vt


def test_alpha_family_is_regular():
    assert regularity_check(alpha_family(), A_PERP)


def test_beta_solver_recovers_laurent_family():
    g, v = beta_targets()
    d = solve_delta_for_targets(BETA, B_PERP, g, v)
    ref = beta_family()
    assert d.a1 == ref.a1 and d.a2 == ref.a2
    assert d.b1 == ref.b1 and d.b2 == ref.b2


def test_beta_interior_roundtrip():
    g, v = interior_extract(beta_family(), B_PERP)
    gt, vt = beta_targets()
    assert g == gt and v == vt


def test_beta_family_is_regular():
    assert regularity_check(beta_family(), B_PERP)


def test_beta_bare_t_is_not_regular():
    m = BETA.model
    zero = m.alg.zero()
    d = DeltaData(m, m.alg.t(), zero, zero, zero)
    with pytest.raises(NotRegular):
        perpR_build(d, B_PERP)


def test_interior_extract_rejects_nonconstant_metric():
    d = messy_alpha()
    pr = perpR_build(d, A_PERP, check=False)
    with pytest.raises(NonConstantMetric):
        interior_extract(d, A_PERP, pr)


# ---------------------------------------------------------------------------
# companion pairing and interior product closed forms


def test_alpha_interior_metric_in_commutator_form():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    d = messy_alpha()
    pr = perpR_build(d, A_PERP, check=False)
    r, t, rinv = alg.r(), alg.t(), alg.r(-1)
    mixed = alg.from_frac((s("b12") + s("b21")) * HALF)
    gA = [[j_apply(d, A_PERP, pr, m.e(i), m.e(j)).as_alg() for j in (1, 2)] for i in (1, 2)]
    assert gA[0][0] == alg.from_frac(s("b11")) + (rinv * commutator(r, d.a1)).scale(HALF)
    assert gA[0][1] == mixed + (r * commutator(t, d.a1)).scale(HALF)
    assert gA[1][0] == mixed + (rinv * commutator(r, d.a2)).scale(HALF)
    assert gA[1][1] == alg.from_frac(s("b22")) + (r * commutator(t, d.a2)).scale(HALF)


def test_alpha_interior_volume_in_commutator_form():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    d = messy_alpha()
    pr = perpR_build(d, A_PERP, check=False)
    r, t, rinv = alg.r(), alg.t(), alg.r(-1)
    mixed = alg.from_frac((s("b12") + s("b21")) * HALF)
    rows = [j_apply(d, A_PERP, pr, m.vol(), m.e(i)) for i in (1, 2)]
    assert rows[0].coeff("e1") == -mixed + (rinv * commutator(r, d.b1)).scale(HALF)
    assert rows[0].coeff("e2") == alg.from_frac(s("b11")) + (rinv * commutator(r, d.b2)).scale(HALF)
    assert rows[1].coeff("e1") == -alg.from_frac(s("b22")) + (r * commutator(t, d.b1)).scale(HALF)
    assert rows[1].coeff("e2") == mixed + (r * commutator(t, d.b2)).scale(HALF)


def test_alpha_companion_pairing_volume_rows():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    d = messy_alpha()
    pr = perpR_build(d, A_PERP, check=False)
    r, t, rinv = alg.r(), alg.t(), alg.r(-1)
    assert pr.entry("Vol", "e1") == Form(
        m,
        1,
        {
            "e1": rinv * commutator(r, d.b1) - alg.from_frac(s("b12")),
            "e2": rinv * commutator(r, d.b2) + alg.from_frac(s("b11")),
        },
    )
    assert pr.entry("Vol", "e2") == Form(
        m,
        1,
        {
            "e1": r * commutator(t, d.b1) - alg.from_frac(s("b22")),
            "e2": r * commutator(t, d.b2) + alg.from_frac(s("b21")),
        },
    )


def test_beta_companion_pairing_closed_forms():
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    d = beta_family()
    pr = perpR_build(d, B_PERP)
    r, t = alg.r(), alg.t()
    b = alg.from_frac(s("b"))
    tml = t - alg.from_frac(L)
    scal = lambda x: Form(m, 0, {"1": x})
    assert pr.entry("e1", "e1") == scal(commutator(r, d.a1))
    assert pr.entry("e1", "e2") == scal(commutator(t, d.a1) * r - commutator(r, d.a1) * tml - b)
    assert pr.entry("e2", "e1") == scal(commutator(r, d.a2) + b)
    assert pr.entry("e2", "e2") == scal(
        commutator(t, d.a2) * r - commutator(r, d.a2) * tml - b.scale(L)
    )
    assert pr.entry("Vol", "e1") == Form(
        m,
        1,
        {"e1": commutator(r, d.b1) - b, "e2": commutator(r, d.b2)},
    )
    assert pr.entry("Vol", "e2") == Form(
        m,
        1,
        {
            "e1": commutator(t, d.b1) * r - commutator(r, d.b1) * tml,
            "e2": commutator(t, d.b2) * r - commutator(r, d.b2) * tml - b,
        },
    )


# ---------------------------------------------------------------------------
# bracket tables


def test_alpha_bracket_table():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    d = messy_alpha()
    f = alg.from_frac
    br = lambda w1, w2: cocycle_bracket(d, A_PERP, m.basis_form(w1), m.basis_form(w2))
    assert br("e1", "e1").is_zero()
    assert br("e1", "e2") == Form(
        m, 1, {"e1": d.a2 + d.b1 - f(s("b12")), "e2": d.b2 - d.a1 + f(s("b11"))}
    )
    assert br("e2", "e1") == Form(
        m, 1, {"e1": -d.a2 - d.b1 - f(s("b21")), "e2": d.a1 - d.b2 + f(s("b11"))}
    )
    assert br("e2", "e2") == Form(
        m, 1, {"e1": f(-2 * s("b22")), "e2": f(s("b12") + s("b21"))}
    )
    assert br("e1", "Vol") == Form(m, 2, {"Vol": d.b2 - d.a1 + f(s("b11"))})
    assert br("e2", "Vol") == Form(m, 2, {"Vol": f(s("b12")) - d.a2 - d.b1})


def test_beta_bracket_table():
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    d = messy_beta()
    two_b_over_r = alg.monomial(-1, 0, 2 * s("b"))
    br = lambda w1, w2: cocycle_bracket(d, B_PERP, m.basis_form(w1), m.basis_form(w2))
    assert br("e1", "e1").is_zero()
    c12 = Form(m, 1, {"e1": d.a2 + d.b1 - two_b_over_r, "e2": d.b2 - d.a1})
    assert br("e1", "e2") == c12
    assert br("e2", "e1") == -c12
    assert br("e2", "e2") == Form(m, 1, {"e1": d.b1.scale(-L), "e2": d.b2.scale(-L)})
    assert br("e1", "Vol") == Form(m, 2, {"Vol": d.b2 - d.a1})
    assert br("e2", "Vol") == Form(
        m, 2, {"Vol": two_b_over_r - d.a2 - d.b1 - d.b2.scale(L)}
    )


# ---------------------------------------------------------------------------
# cocycle identities on probe grids

NUMERIC_VALUES = {
    "b11": Fraction(1, 2),
    "b12": Fraction(-1, 3),
    "b21": Fraction(2, 5),
    "b22": Fraction(3, 4),
    "g11": Fraction(1, 7),
    "g12": Fraction(2, 7),
    "g21": Fraction(-3, 7),
    "g22": Fraction(5, 7),
    "v11": Fraction(1, 11),
    "v12": Fraction(-2, 11),
    "v21": Fraction(3, 11),
    "v22": Fraction(4, 11),
    "k1": Fraction(1, 13),
    "k2": Fraction(-2, 13),
    "l1": Fraction(3, 13),
    "l2": Fraction(5, 13),
    "b": Fraction(2, 9),
}


def numeric_setup(preset):
    """(delta, perp) for one model with all parameters fixed to rationals."""
    if preset.id == "z2z2":
        return inner_delta(inner_theta(Z2), Z_PERP), Z_PERP
    vals = {k: v for k, v in NUMERIC_VALUES.items() if k in preset.model.ctx.index}
    if preset.id == "alpha":
        return alpha_family().subs(vals), A_PERP.subs(vals)
    return beta_family().subs(vals), B_PERP.subs(vals)


def probe_forms(preset):
    m = preset.model
    alg = m.alg
    if preset.id == "z2z2":
        a0 = alg.delta(0) + alg.delta(3).scale(2)
        a1 = alg.delta(1) - alg.delta(2)
    else:
        a0 = alg.monomial(1, 1)
        a1 = alg.monomial(-1, 1)
    return [
        m.scalar_form(a0),
        m.e(1),
        m.e(2).left_mul(a1),
        m.e(2),
        m.vol().left_mul(a0),
    ]


def c1_residual(d, p, w, h, z):
    sign = -1 if w.degree % 2 else 1
    lhs = cocycle_bracket(d, p, w.wedge(h), z) + cocycle_bracket(d, p, w, h).wedge(z)
    rhs = cocycle_bracket(d, p, w, h.wedge(z)) + w.wedge(cocycle_bracket(d, p, h, z)).scale(sign)
    return lhs - rhs


def c2_residual(d, p, w, h):
    m = d.model
    sign = -1 if w.degree % 2 else 1
    lhs = (
        laplacian(d, p, w.wedge(h))
        - laplacian(d, p, w).wedge(h)
        - w.wedge(laplacian(d, p, h))
    )
    rhs = (
        m.d(cocycle_bracket(d, p, w, h))
        + cocycle_bracket(d, p, m.d(w), h)
        + cocycle_bracket(d, p, w, m.d(h)).scale(sign)
    )
    return lhs - rhs


@pytest.mark.parametrize("preset", [ALPHA, BETA, Z2], ids=lambda p: p.id)
def test_bracket_is_multiplicative(preset):
    d, p = numeric_setup(preset)
    probes = probe_forms(preset)
    for w in probes:
        for h in probes:
            for z in probes:
                if w.degree + h.degree + z.degree > 3:
                    continue
                assert c1_residual(d, p, w, h, z).is_zero()


@pytest.mark.parametrize("preset", [ALPHA, BETA, Z2], ids=lambda p: p.id)
def test_bracket_controls_laplacian_leibniz_defect(preset):
    d, p = numeric_setup(preset)
    probes = probe_forms(preset)
    for w in probes:
        for h in probes:
            if w.degree + h.degree > 2:
                continue
            assert c2_residual(d, p, w, h).is_zero()


@pytest.mark.parametrize("preset", [ALPHA, BETA, Z2], ids=lambda p: p.id)
def test_bracket_vanishes_on_scalars_left(preset):
    d, p = numeric_setup(preset)
    m = preset.model
    alg = m.alg
    if preset.id == "z2z2":
        scalars = [alg.delta(0), alg.delta(2), alg.one() + alg.delta(1).scale(3)]
    else:
        scalars = [alg.r(), alg.t(), alg.r(-1), alg.monomial(1, 1)]
    for a in scalars:
        for word in ("1", "e1", "e2", "Vol"):
            h = m.basis_form(word)
            assert cocycle_bracket(d, p, m.scalar_form(a), h).is_zero()


@pytest.mark.parametrize("preset", [ALPHA, BETA, Z2], ids=lambda p: p.id)
def test_laplacian_commutes_with_d(preset):
    d, p = numeric_setup(preset)
    m = preset.model
    for x in probe_forms(preset):
        if x.degree == 2:
            continue
        assert laplacian(d, p, m.d(x)) == m.d(laplacian(d, p, x))
    for gen in m.gen_names:
        a = m.generator[gen]
        assert laplacian(d, p, m.d(a)) == m.d(laplacian(d, p, a))


# ---------------------------------------------------------------------------
# Laplacians on generators


def test_alpha_laplacian_on_generators():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    d = messy_alpha()
    f = alg.from_frac
    assert laplacian(d, A_PERP, alg.r()) == alg.r() * (f(s("b11")) + d.a1)
    assert laplacian(d, A_PERP, alg.t()) == alg.r(-1) * (d.a2 - f(s("b12")))
    assert laplacian(d, A_PERP, m.e(1)) == m.d(d.a1)
    assert laplacian(d, A_PERP, m.e(2)) == d.delta_vol() + m.d(d.a2)
    assert laplacian(d, A_PERP, m.vol()) == m.d(delta_apply(d, A_PERP, m.vol()))


def test_beta_laplacian_on_generators():
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    d = beta_left_module()
    assert laplacian(d, B_PERP, alg.r()) == d.a1
    c = lambda x: x * L.inv() * 2
    expected_t = (
        alg.monomial(-2, 2, c(s("g11")))
        + alg.monomial(-2, 1, c(s("g12") + s("g21")) + 2 * s("g11"))
        + alg.monomial(-2, 0, 2 * s("g12") + c(s("g22")))
        + alg.monomial(-1, 1, s("k1"))
        + alg.monomial(-1, 0, s("k2"))
    )
    assert laplacian(d, B_PERP, alg.t()) == expected_t


def test_beta_laplacian_on_basis_forms():
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    d = beta_left_module()
    c = lambda x: x * L.inv() * 2
    lap_e1 = laplacian(d, B_PERP, m.e(1))
    assert lap_e1 == Form(
        m,
        1,
        {
            "e1": alg.monomial(-2, 0, -c(s("g12"))),
            "e2": alg.monomial(-2, 0, c(s("g11"))),
        },
    )
    lap_vol = laplacian(d, B_PERP, m.vol())
    coeff = (
        alg.monomial(-2, 0, c(s("g12")) + c(s("g21")))
        + alg.monomial(-2, 1, 2 * c(s("g11")))
        + alg.monomial(-2, 0, 4 * s("g11"))
        + alg.monomial(-1, 0, 2 * s("k1"))
    )
    assert lap_vol == Form(m, 2, {"Vol": coeff})


# ---------------------------------------------------------------------------
# delta^2 diagnostics


def test_alpha_delta_sq_left_module_characterization():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    f = alg.from_frac
    a2 = alg.monomial(1, 1)
    b2 = alg.monomial(-1, 2)
    good = DeltaData(m, b2 + f(s("b11")), a2, f(s("b12")) - a2, b2)
    assert all(x.is_zero() for x in delta_sq_left_residuals(good, A_PERP))
    assert any(not x.is_zero() for x in delta_sq_left_residuals(messy_alpha(), A_PERP))


def test_alpha_delta_sq_vol_on_constant_family():
    m = ALPHA.model
    alg, s = m.alg, m.ctx.sym
    f = alg.from_frac
    k1, k2 = s("k1"), s("k2")
    d = DeltaData(m, f(k1), f(k2), f(s("b12") - k2), f(k1 - s("b11")))
    assert all(x.is_zero() for x in delta_sq_left_residuals(d, A_PERP))
    val, central = delta_sq_vol(d, A_PERP)
    assert central
    assert val == f(s("b12") * k1 - s("b11") * k2)


def test_beta_delta_sq_left_module_characterization():
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    a1 = alg.monomial(-1, 2)
    a2 = alg.monomial(2, 1)
    b2 = a1
    b1 = alg.monomial(-1, 0, 2 * s("b")) - a2 - b2.scale(L)
    good = DeltaData(m, a1, a2, b1, b2)
    assert all(x.is_zero() for x in delta_sq_left_residuals(good, B_PERP))
    assert any(not x.is_zero() for x in delta_sq_left_residuals(messy_beta(), B_PERP))


def test_beta_delta_sq_vol_on_left_module_family():
    d = beta_left_module()
    s, L = BETA.model.ctx.sym, BETA.model.ctx.L
    assert all(x.is_zero() for x in delta_sq_left_residuals(d, B_PERP))
    val, central = delta_sq_vol(d, B_PERP)
    assert not central
    assert val.constant_part() == -L * s("k1") * s("k1")
    # the remaining centrality conditions kill delta^2 Vol entirely
    d0 = d.subs({"g11": 0, "g21": -s("g12"), "k1": 0})
    val0, central0 = delta_sq_vol(d0, B_PERP)
    assert central0 and val0.is_zero()


# ---------------------------------------------------------------------------
# inner route


def test_beta_inner_codifferential_values():
    m = BETA.model
    alg, s, L = m.alg, m.ctx.sym, m.ctx.L
    th = inner_theta(BETA)
    d = inner_delta(th, B_PERP)
    assert d.inner
    boL = s("b") * L.inv()
    assert d.a1 == alg.monomial(-1, 0, boL)
    assert d.a2 == alg.monomial(-1, 1, -boL) + alg.monomial(-1, 0, s("b"))
    assert d.b1 == alg.monomial(-1, 1, boL)
    assert d.b2 == alg.monomial(-1, 0, boL)


def test_z2_inner_codifferential_values():
    m = Z2.model
    alg, s = m.alg, m.ctx.sym
    d = inner_delta(inner_theta(Z2), Z_PERP)
    assert d.inner
    assert d.a1 == alg.from_frac(s("a"))
    assert d.a2 == alg.from_frac(s("b"))
    assert d.b1 == alg.from_frac(-s("b"))
    assert d.b2 == alg.from_frac(s("a"))


@pytest.mark.parametrize("preset", [BETA, Z2], ids=lambda p: p.id)
def test_inner_delta_is_theta_perp(preset):
    perp = B_PERP if preset.id == "beta" else Z_PERP
    th = inner_theta(preset)
    d = inner_delta(th, perp)
    for x in probe_forms(preset):
        assert delta_apply(d, perp, x) == perp.apply(th, x)


@pytest.mark.parametrize("preset", [BETA, Z2], ids=lambda p: p.id)
def test_inner_bracket_closed_form(preset):
    # valid for left arguments of degree >= 1; on scalars the bracket is zero
    # while the closed form collapses to a multiple of d
    perp = B_PERP if preset.id == "beta" else Z_PERP
    th = inner_theta(preset)
    d = inner_delta(th, perp)
    probes = probe_forms(preset)
    for w in probes:
        if w.degree == 0:
            continue
        for h in probes:
            if w.degree + h.degree > 2:
                continue
            assert cocycle_bracket(d, perp, w, h) == bracket_inner(perp, th, w, h)


def test_beta_inner_companion_pairing_vanishes():
    th = inner_theta(BETA)
    d = inner_delta(th, B_PERP)
    general = DeltaData(d.model, d.a1, d.a2, d.b1, d.b2, inner=False)
    pr = perpR_build(general, B_PERP)
    assert all(f.is_zero() for f in pr.table.values())


def test_non_inner_form_rejected():
    with pytest.raises(NotInner):
        inner_delta(ALPHA.model.e(1), A_PERP)
    with pytest.raises(ValueError):
        inner_theta(ALPHA)


# ---------------------------------------------------------------------------
# report


def test_koszul_report_alpha():
    rep = build_koszul_report("alpha", alpha_family(), A_PERP)
    gt, vt = alpha_targets()
    assert rep.g == gt and rep.v == vt
    assert set(rep.bracket) == {
        "e1,e1", "e1,e2", "e2,e1", "e2,e2", "e1,Vol", "e2,Vol",
    }
    assert set(rep.laplacian) == {"r", "t", "e1", "e2", "Vol"}
    assert isinstance(rep.delta2_central, bool)
