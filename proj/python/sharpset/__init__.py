"""Sharp moment inequalities for panel discrete choice models.

Rationals are exchanged as strings ("3/2") or ints; use ``fractions.Fraction``
to do arithmetic on them.
"""

import json
from fractions import Fraction

from ._core import GateRefusal, ValidationError, __version__, outcome_labels
from . import _core

__all__ = [
    "GateRefusal",
    "ValidationError",
    "__version__",
    "cases",
    "model",
    "outcome_labels",
    "reduce",
    "render",
    "solve",
    "to_fractions",
]


def _rat(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return str(x)


def model(family="static", v=None, restriction="stationary", gamma=0, gamma1=0, gamma2=0, y0=None, y_minus1=None):
    """Model dict in the report schema; ``v`` is a D x T nested list."""
    if v is None:
        raise ValidationError("v is required")
    rows = [[_rat(x) for x in row] for row in v]
    m = {"family": family, "D": len(rows), "T": len(rows[0]), "restriction": restriction, "v": rows}
    if family in ("dyn-cond", "dyn-uncond"):
        m["gamma"] = _rat(gamma)
    if family == "ar2":
        m["gamma1"], m["gamma2"] = _rat(gamma1), _rat(gamma2)
    if y0 is not None:
        m["y0"] = y0
    if y_minus1 is not None:
        m["y_minus1"] = y_minus1
    return m


def solve(model, solver="benson", K=1000, seed=0, sigma=100.0, distribution="exponential", threads=1,
          override_dynamic=False, reduce=True):
    config = {"model": model, "solver": solver, "K": K, "seed": seed, "sigma": sigma,
              "distribution": distribution, "threads": threads, "override_dynamic": override_dynamic,
              "reduce": reduce}
    return json.loads(_core.run_json(json.dumps(config)))


def cases(family, D=2, T=2, y0=0, y_minus1=0, symmetry="canonical"):
    return json.loads(_core.cases_json(family, D, T, y0, y_minus1, symmetry))


def reduce(vectors):
    return json.loads(_core.reduce_json(json.dumps([[_rat(x) for x in y] for y in vectors])))


def render(y, labels):
    return _core.render_json(json.dumps([_rat(x) for x in y]), list(labels))


def to_fractions(vectors):
    return [[Fraction(x) for x in y] for y in vectors]
