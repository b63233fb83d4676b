"""Degree -2 products (perp) and the exact solver for the 4-term relation.

The solver works by symbolic linearity: every candidate table entry gets an
unknown coefficient in a dedicated context, the 4-term residual is evaluated
once per constraint triple, and the resulting linear system over Q(L) is
put in reduced row echelon form exactly.  Unknowns are ordered so that the
free columns land on the e_i perp e_j entries, which is where the papers'
parameters live.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .coeff import Context, Frac
from .algebra import BicrossElem, FiniteFnElem
from .forms import WORD_DEGREE, CalculusModel, Form


class InconsistentSystem(ValueError):
    pass


DEG1 = ("e1", "e2")


class PerpData:
    """Table of w1 perp w2 for basis words with total degree >= 2.

    perp vanishes when either argument has degree 0; a general application
    moves the second argument's coefficients into the first slot through the
    twists (the degree-0 middle case of the 4-term relation).
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
            return m.zero_form(max(total - 2, 0))
        out = m.zero_form(total - 2)
        for w2, c2 in y.coeffs.items():
            if WORD_DEGREE[w2] == 0:
                continue
            xa = x.right_mul(c2)
            for w1, c1 in xa.coeffs.items():
                if WORD_DEGREE[w1] == 0:
                    continue
                out = out + self.table[(w1, w2)].left_mul(c1)
        return out

    def map_coeffs(self, fn) -> "PerpData":
        return PerpData(self.model, {k: f.map_coeffs(fn) for k, f in self.table.items()})

    def subs(self, values) -> "PerpData":
        return self.map_coeffs(lambda c: c.subs(values))


def four_term_residual(p: PerpData, w: Form, h: Form, z: Form) -> Form:
    """(-1)^{|h|}(wh) perp z + (w perp h)z - w perp (hz) - (-1)^{|w|+|h|} w (h perp z)."""
    sign_h = -1 if h.degree % 2 else 1
    sign_wh = -1 if (w.degree + h.degree) % 2 else 1
    term1 = p.apply(w.wedge(h), z).scale(sign_h)
    term2 = p.apply(w, h).wedge(z)
    term3 = p.apply(w, h.wedge(z))
    term4 = w.wedge(p.apply(h, z)).scale(sign_wh)
    return term1 + term2 - term3 - term4


# ---------------------------------------------------------------------------
# exact linear algebra

@dataclass
class SolutionSpace:
    """Affine solution set x = const + sum_f param_f * basis[f]."""

    ncols: int
    free_cols: list[int]
    const: list[Frac]
    basis: dict[int, list[Frac]]

    @property
    def dim(self) -> int:
        return len(self.free_cols)


def gaussian_solve(rows: list[list[Frac]], rhs: list[Frac], ctx: Context) -> SolutionSpace:
    """Exact RREF; deterministic first-nonzero pivoting; raises on inconsistency."""
    if not rows:
        raise InconsistentSystem("empty system")
    ncols = len(rows[0])
    mat = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(mat)
    pivots: list[tuple[int, int]] = []  # (row, col)
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not mat[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inv()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(nrows):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if not mat[i][ncols].is_zero():
            raise InconsistentSystem("no solution")
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    zero = ctx.zero()
    const = [zero] * ncols
    for row, col in pivots:
        const[col] = mat[row][ncols]
    basis: dict[int, list[Frac]] = {}
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = ctx.one()
        for row, col in pivots:
            vec[col] = -mat[row][f]
        basis[f] = vec
    return SolutionSpace(ncols, free_cols, const, basis)


# ---------------------------------------------------------------------------
# ansatz layout

def entry_shapes(diag_order: list[tuple[str, str]]):
    """(pair, words-of-entry) in unknown order; diagonal-degree pairs last."""
    shapes: list[tuple[tuple[str, str], list[str]]] = [(("Vol", "Vol"), ["Vol"])]
    for ei in DEG1:
        shapes.append(((ei, "Vol"), list(DEG1)))
    for ei in DEG1:
        shapes.append((("Vol", ei), list(DEG1)))
    for pair in diag_order:
        shapes.append((pair, ["1"]))
    return shapes


DIAG_ORDER = {
    # chosen so the free columns surviving elimination carry the papers' names
    "alpha": [("e1", "e1"), ("e1", "e2"), ("e2", "e1"), ("e2", "e2")],
    "beta": [("e1", "e1"), ("e2", "e1"), ("e2", "e2"), ("e1", "e2")],
    "z2z2": [("e1", "e2"), ("e2", "e1"), ("e1", "e1"), ("e2", "e2")],
}

FREE_NAME_BY_PAIR = {
    "alpha": {("e1", "e1"): "b11", ("e1", "e2"): "b12", ("e2", "e1"): "b21", ("e2", "e2"): "b22"},
    "beta": {("e1", "e2"): "b"},
    "z2z2": {("e1", "e1"): "a", ("e2", "e2"): "b"},
}


@dataclass
class PerpSolution:
    model_id: str
    dim: int
    free_names: list[str]
    perp: PerpData
    # unknown layout bookkeeping, kept for reporting
    columns: list[tuple[tuple[str, str], str, int]]  # (pair, word, point-or-0)


def _unknown_columns(model: CalculusModel, diag_order) -> list[tuple[tuple[str, str], str, int]]:
    pointwise = not model.central_basis
    cols = []
    for pair, words in entry_shapes(diag_order):
        for w in words:
            if pointwise:
                for pt in range(4):
                    cols.append((pair, w, pt))
            else:
                cols.append((pair, w, 0))
    return cols


def _table_from_values(model: CalculusModel, diag_order, value_at: Callable) -> dict:
    """Build a perp table whose coefficient for column i is value_at(i)."""
    cols = _unknown_columns(model, diag_order)
    alg = model.alg
    table: dict[tuple[str, str], Form] = {}
    for pair, words in entry_shapes(diag_order):
        coeffs = {}
        for w in words:
            idxs = [i for i, (p, ww, _) in enumerate(cols) if p == pair and ww == w]
            if model.central_basis:
                coeffs[w] = alg.from_frac(value_at(idxs[0]))
            else:
                coeffs[w] = FiniteFnElem(alg, tuple(value_at(i) for i in idxs))
        table[pair] = Form(model, WORD_DEGREE[pair[0]] + WORD_DEGREE[pair[1]] - 2, coeffs)
    return table


def constraint_triples(model: CalculusModel):
    """All bare basis triples plus every triple with one generator-decorated slot."""
    bare = [model.basis_form(w) for w in ("1", "e1", "e2", "Vol")]
    gens = [model.generator[name] for name in model.gen_names]
    triples = []
    for x in bare:
        for y in bare:
            for z in bare:
                triples.append((x, y, z))
    for slot in range(3):
        for g in gens:
            for x in bare:
                for y in bare:
                    forms = [x, y]
                    forms.insert(slot, None)
                    for w in bare:
                        forms[slot] = w.left_mul(g)
                        triples.append(tuple(forms))
                    forms = forms[:slot] + forms[slot + 1:]
    return triples


def _linear_rows(res: Form, n_unknowns: int, lctx: Context):
    """Rows of the linear system contributed by one residual form."""
    rows = []
    for _, coeff in sorted(res.coeffs.items()):
        if isinstance(coeff, BicrossElem):
            scalars = [v for _, v in sorted(coeff.terms.items())]
        else:
            scalars = list(coeff.values)
        for val in scalars:
            if val.is_zero():
                continue
            if not val.den.is_one():
                raise AssertionError("unexpected denominator in residual")
            row = [lctx.zero()] * n_unknowns
            seen = False
            for exp, q in val.num.terms.items():
                ucols = [i for i in range(1, len(exp)) if exp[i]]
                if len(ucols) != 1 or exp[ucols[0]] != 1:
                    raise AssertionError("residual is not linear in the unknowns")
                col = ucols[0] - 1
                mono = lctx.frac(q) * lctx.L ** exp[0]
                row[col] = row[col] + mono
                seen = True
            if seen:
                rows.append(row)
    return rows


def solve_four_term(preset) -> PerpSolution:
    """Solve the 4-term relations for the given model preset."""
    from .models import build_model  # deferred to avoid an import cycle

    model_id = preset.id
    diag_order = DIAG_ORDER[model_id]
    # a scratch model over a context that only holds the unknowns
    n_cols_probe = len(_unknown_columns(preset.model, diag_order))
    uctx = Context(tuple(f"u{i}" for i in range(n_cols_probe)))
    umodel = build_model(model_id, uctx)
    table = _table_from_values(umodel, diag_order, lambda i: uctx.sym(f"u{i}"))
    p = PerpData(umodel, table)

    lctx = Context(())
    rows: list[list[Frac]] = []
    seen = set()
    for x, y, z in constraint_triples(umodel):
        res = four_term_residual(p, x, y, z)
        for row in _linear_rows(res, n_cols_probe, lctx):
            key = tuple(f.key() for f in row)
            if key not in seen:
                seen.add(key)
                rows.append(row)
    sol = gaussian_solve(rows, [lctx.zero()] * len(rows), lctx)

    cols = _unknown_columns(preset.model, diag_order)
    names = FREE_NAME_BY_PAIR[model_id]
    free_names = []
    name_of_col: dict[int, str] = {}
    used = set()
    for f in sol.free_cols:
        pair, word, pt = cols[f]
        name = names.get(pair)
        if name is None or name in used:
            name = f"p{f}"
        used.add(name)
        free_names.append(name)
        name_of_col[f] = name

    ctx = preset.model.ctx

    def value_at(i: int) -> Frac:
        out = ctx.zero()
        for f, vec in sol.basis.items():
            coeff = vec[i]
            if not coeff.is_zero():
                out = out + lctx.convert(coeff, ctx) * ctx.sym(name_of_col[f])
        return out

    final_table = _table_from_values(preset.model, diag_order, value_at)
    perp = PerpData(preset.model, final_table)
    return PerpSolution(model_id, sol.dim, free_names, perp, cols)
