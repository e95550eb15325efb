"""Members of the Gardner family u_t + A u u_x + C u^2 u_x + B u_xxx + Q u = 0."""

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import sympy as sp

from .expr import normalize, substitute
from .symbols import param, time_function, u, u_t, u_x, u_xxx

__all__ = ["Scenario", "FAMILY_FUNCTIONS"]

FAMILY_FUNCTIONS = ("A", "B", "C", "Q")


@dataclass(frozen=True)
class Scenario:
    A: sp.Expr
    B: sp.Expr
    C: sp.Expr
    Q: sp.Expr
    params: dict = field(default_factory=dict)
    case: str = None
    initial: sp.Expr = None
    name: str = ""

    @classmethod
    def abstract(cls):
        """The whole family, with A, B, C, Q left as named functions of t."""
        return cls(*(time_function(n) for n in FAMILY_FUNCTIONS), name="family")

    @classmethod
    def constant(cls, A=1, B=1, C=1, Q=0, **kw):
        return cls(sp.sympify(A), sp.sympify(B), sp.sympify(C), sp.sympify(Q), **kw)

    @property
    def coefficients(self):
        return {"A": self.A, "B": self.B, "C": self.C, "Q": self.Q}

    @property
    def F(self):
        """Left-hand side of the equation."""
        return normalize(u_t + self.A * u * u_x + self.C * u**2 * u_x + self.B * u_xxx + self.Q * u)

    @property
    def rhs(self):
        """Right-hand side of u_t = rhs (the Delta used to eliminate u_t)."""
        return normalize(-(self.A * u * u_x + self.C * u**2 * u_x + self.B * u_xxx + self.Q * u))

    def bind(self, expr):
        """Replace the family names A, B, C, Q in ``expr`` by this member's
        coefficients and apply numeric parameter values."""
        rules = {time_function(n): c for n, c in self.coefficients.items()
                 if c != time_function(n)}
        out = substitute(expr, rules) if rules else normalize(expr)
        return self.apply_params(out)

    def apply_params(self, expr):
        if not self.params:
            return normalize(expr)
        return substitute(expr, {param(k): sp.nsimplify(v) for k, v in self.params.items()})

    def instantiate(self):
        """Copy with parameter values substituted into the coefficients."""
        if not self.params:
            return self
        coeffs = {n: self.apply_params(c) for n, c in self.coefficients.items()}
        initial = self.apply_params(self.initial) if self.initial is not None else None
        return replace(self, **coeffs, initial=initial, params={})

    # -- file format ---------------------------------------------------------

    @classmethod
    def from_dict(cls, data, name=""):
        """Build from the JSON object layout ``{"equation": {...}, "params":
        {...}, "case": ..., "initial": ...}``."""
        from .parser import ParserConfig, parse
        from .symmetry import CATALOG

        cfg = ParserConfig(functions=frozenset(FAMILY_FUNCTIONS))
        params = {str(k): v for k, v in (data.get("params") or {}).items()}
        case = data.get("case")
        if case is not None:
            base = CATALOG[str(case)].scenario()
            coeffs = base.coefficients
        else:
            coeffs = {n: time_function(n) for n in FAMILY_FUNCTIONS}
        for key, src in (data.get("equation") or {}).items():
            if key not in FAMILY_FUNCTIONS:
                raise ValueError(f"unknown equation key {key!r}")
            coeffs[key] = parse(str(src), cfg)
        initial = data.get("initial")
        if initial is not None:
            initial = parse(str(initial), ParserConfig())
        for key in ("A", "B", "C"):
            if normalize(coeffs[key]) == 0:
                raise ValueError(f"coefficient {key} must be nonzero")
        scen = cls(coeffs["A"], coeffs["B"], coeffs["C"], coeffs["Q"],
                   params=params, case=None if case is None else str(case),
                   initial=initial, name=name)
        if case is not None:
            CATALOG[str(case)].check_params(params)
        return scen

    @classmethod
    def load(cls, path):
        path = Path(path)
        with path.open(encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh), name=path.stem)

    def to_dict(self):
        from .parser import render

        out = {"equation": {n: render(c) for n, c in self.coefficients.items()},
               "params": dict(self.params)}
        if self.case is not None:
            out["case"] = self.case
        if self.initial is not None:
            out["initial"] = render(self.initial)
        return out
