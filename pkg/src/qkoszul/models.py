"""Preset wiring for the three calculus models and the named example setups.

Each preset is a singleton per process so that all values produced for one
model share a single coefficient context.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .coeff import Context
from .algebra import BicrossAlgebra, FiniteFnAlgebra, translate
from .forms import CalculusModel, Form
from .calculus import make_bicross_differential, make_discrete_differential


class UnknownExample(KeyError):
    pass


ALPHA_PARAMS = (
    "b11", "b12", "b21", "b22",
    "g11", "g12", "g21", "g22",
    "v11", "v12", "v21", "v22",
    "k1", "k2", "l1", "l2", "eps",
)

BETA_PARAMS = (
    "b",
    "g11", "g12", "g21", "g22",
    "v11", "v12", "v21", "v22",
    "k1", "k2", "l1", "l2", "B", "eps",
)

Z2_PARAMS = ("a", "b", "eps")

MODEL_IDS = ("alpha", "beta", "z2z2")


@dataclass
class ModelPreset:
    id: str
    model: CalculusModel
    # monomials (m, n) allowed in the ansatz for delta data, constants last
    delta_monomials: tuple = ()
    # names of the free parameters of the 4-term solution space, in order
    perp_free: tuple = ()


def _grassmann_wedge(alg, minus_lambda_e2e2=False):
    one = alg.one()
    table = {
        ("e1", "e1"): {},
        ("e1", "e2"): {"Vol": one},
        ("e2", "e1"): {"Vol": -one},
        ("e2", "e2"): {},
    }
    if minus_lambda_e2e2:
        table[("e2", "e2")] = {"Vol": alg.from_frac(-alg.ctx.L)}
    return table


def _build_alpha(ctx: Context) -> CalculusModel:
    alg = BicrossAlgebra(ctx)
    ident = lambda a: a
    model = CalculusModel(
        "alpha",
        alg,
        twists={"e1": ident, "e2": ident, "Vol": ident},
        wedge_1forms=_grassmann_wedge(alg),
        central_basis=True,
    )
    model.gen_names = ["r", "t"]
    model.generator = {"r": alg.r(), "t": alg.t()}
    model.d_gen = {
        "r": Form(model, 1, {"e1": alg.r()}),          # dr = r e1
        "t": Form(model, 1, {"e2": alg.r(-1)}),        # dt = r^-1 e2
    }
    model.d_basis = {
        "e1": model.zero_form(2),
        "e2": Form(model, 2, {"Vol": alg.one()}),
    }
    model.basis_from_d = {
        "e1": [(alg.r(-1), "r")],                      # e1 = r^-1 dr
        "e2": [(alg.r(), "t")],                        # e2 = r dt
    }
    model.d_alg = make_bicross_differential(model)
    return model


def _build_beta(ctx: Context) -> CalculusModel:
    alg = BicrossAlgebra(ctx)
    ident = lambda a: a
    model = CalculusModel(
        "beta",
        alg,
        twists={"e1": ident, "e2": ident, "Vol": ident},
        wedge_1forms=_grassmann_wedge(alg, minus_lambda_e2e2=True),
        central_basis=True,
    )
    model.gen_names = ["r", "t"]
    model.generator = {"r": alg.r(), "t": alg.t()}
    model.d_gen = {
        "r": Form(model, 1, {"e1": alg.one()}),                        # dr = e1
        "t": Form(model, 1, {"e1": alg.monomial(-1, 1), "e2": alg.r(-1)}),  # dt = (t/r) e1 + (1/r) e2
    }
    model.d_basis = {
        "e1": model.zero_form(2),
        "e2": Form(model, 2, {"Vol": alg.monomial(-1, 0, 2)}),         # de2 = (2/r) Vol
    }
    model.basis_from_d = {
        "e1": [(alg.one(), "r")],                                      # e1 = dr
        "e2": [(alg.r(), "t"), (-alg.t(), "r")],                       # e2 = r dt - t dr
    }
    model.d_alg = make_bicross_differential(model)
    return model


def _build_z2z2(ctx: Context) -> CalculusModel:
    alg = FiniteFnAlgebra(ctx)
    model = CalculusModel(
        "z2z2",
        alg,
        twists={
            "e1": lambda a: translate(a, 1),
            "e2": lambda a: translate(a, 2),
            "Vol": lambda a: translate(translate(a, 1), 2),
        },
        wedge_1forms=_grassmann_wedge(alg),
        central_basis=False,
    )
    model.gen_names = ["d0", "d1", "d2", "d3"]
    model.generator = {f"d{i}": alg.delta(i) for i in range(4)}
    model.d_basis = {
        "e1": model.zero_form(2),
        "e2": model.zero_form(2),
    }
    model.basis_from_d = {}
    model.d_alg = make_discrete_differential(model)
    return model


_BUILDERS = {"alpha": _build_alpha, "beta": _build_beta, "z2z2": _build_z2z2}

_DEFAULT_PARAMS = {"alpha": ALPHA_PARAMS, "beta": BETA_PARAMS, "z2z2": Z2_PARAMS}


def build_model(model_id: str, ctx: Context) -> CalculusModel:
    """Construct a calculus model over a caller-supplied coefficient context."""
    try:
        return _BUILDERS[model_id](ctx)
    except KeyError:
        raise UnknownExample(f"unknown model id {model_id!r}") from None


@lru_cache(maxsize=None)
def build_preset(model_id: str) -> ModelPreset:
    if model_id not in _BUILDERS:
        raise UnknownExample(f"unknown model id {model_id!r}")
    model = build_model(model_id, Context(_DEFAULT_PARAMS[model_id]))
    if model_id == "alpha":
        return ModelPreset(
            "alpha",
            model,
            delta_monomials=((0, 1), (1, 0), (-1, 0), (0, 0)),
            perp_free=("b11", "b12", "b21", "b22"),
        )
    if model_id == "beta":
        return ModelPreset(
            "beta",
            model,
            delta_monomials=((-1, 1), (-1, 0), (0, 1), (1, 0), (0, 0)),
            perp_free=("b",),
        )
    return ModelPreset("z2z2", model, delta_monomials=(), perp_free=("a", "b"))


def inner_theta(preset: ModelPreset) -> Form:
    """The inner generating 1-form, where one exists."""
    model = preset.model
    if preset.id == "z2z2":
        return model.e(1) + model.e(2)
    if preset.id == "beta":
        # theta = -dt/L
        return model.d_alg(model.alg.t()).scale(-model.ctx.L.inv())
    raise ValueError(f"the {preset.id} calculus is not inner")
