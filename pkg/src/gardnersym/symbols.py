"""Shared symbolic vocabulary: independent variables, parameters, named time
functions, antiderivative atoms and jet variables.

Everything here is a plain sympy object so the rest of the package can use the
ordinary sympy API on it.
"""

from dataclasses import dataclass
from functools import lru_cache

import sympy as sp

x = sp.Symbol("x", real=True)
t = sp.Symbol("t", real=True)

# Parameter names that show up in the Gardner classification.
PARAMETER_NAMES = (
    "k", "k1", "k2", "k3", "k4", "a0", "a1", "b0", "c0", "c1", "c2",
    "d0", "beta0", "c", "q0",
)


@lru_cache(maxsize=None)
def param(name):
    """Real parameter symbol. Any identifier is accepted."""
    return sp.Symbol(name, real=True)


@lru_cache(maxsize=None)
def _function_class(name):
    return sp.Function(name, real=True)


def time_function(name):
    """Named function of t, e.g. ``time_function("A")`` is ``A(t)``."""
    return _function_class(name)(t)


def function_name(expr):
    """Name of an applied named function (``A(t)`` -> ``"A"``), else None."""
    if isinstance(expr, sp.core.function.AppliedUndef):
        return expr.func.__name__
    return None


class AD(sp.Function):
    """Antiderivative in t: ``d/dt AD(f) = f``.

    Numeric factors are pulled out so that ``AD(2*Q)`` and ``2*AD(Q)`` share a
    normal form; t-free integrands integrate to ``f*t`` (constant 0 at t=0).
    """

    nargs = 1
    is_real = True

    @classmethod
    def eval(cls, f):
        if f == 0:
            return sp.S.Zero
        if t not in f.free_symbols:
            return f * t
        coeff, rest = f.as_coeff_Mul()
        if coeff != 1:
            return coeff * cls(rest)
        return None

    def _eval_derivative(self, s):
        if s == t:
            return self.args[0]
        inner = sp.diff(self.args[0], s)
        return AD(inner) if inner != 0 else sp.S.Zero


@dataclass(frozen=True)
class JetSpace:
    """One dependent variable over two independent variables.

    ``JetSpace("u", "x", "t")`` provides u, u_x, u_t, u_xxt, ...
    """

    dep: str = "u"
    xname: str = "x"
    tname: str = "t"

    @property
    def X(self):
        return x if self.xname == "x" else sp.Symbol(self.xname, real=True)

    @property
    def T(self):
        return t if self.tname == "t" else sp.Symbol(self.tname, real=True)

    def var(self, m=0, n=0):
        return jet_symbol(self, m, n)

    def name(self, m, n):
        if m == 0 and n == 0:
            return self.dep
        return f"{self.dep}_{self.xname * m}{self.tname * n}"


@dataclass(frozen=True)
class JetVar:
    space: JetSpace
    m: int
    n: int

    @property
    def symbol(self):
        return jet_symbol(self.space, self.m, self.n)

    @property
    def order(self):
        return self.m + self.n

    def bump(self, direction):
        if direction == "x":
            return JetVar(self.space, self.m + 1, self.n)
        return JetVar(self.space, self.m, self.n + 1)


_JETS = {}


def jet_symbol(space, m=0, n=0):
    if m < 0 or n < 0:
        raise ValueError("jet orders must be nonnegative")
    sym = sp.Symbol(space.name(m, n), real=True)
    _JETS.setdefault(sym, JetVar(space, m, n))
    return sym


def jet_info(sym):
    """JetVar for a jet symbol, or None for anything else."""
    return _JETS.get(sym)


def jets_in(expr, space=None):
    """Jet variables occurring in ``expr`` (optionally only those of ``space``)."""
    out = []
    for s in sp.sympify(expr).free_symbols:
        info = _JETS.get(s)
        if info is not None and (space is None or info.space == space):
            out.append(info)
    return sorted(out, key=lambda j: (j.space.dep, j.m + j.n, j.n, j.m))


U = JetSpace("u", "x", "t")
V = JetSpace("v", "x", "t")
W = JetSpace("w", "r", "s")

u = U.var()
u_x, u_xx, u_xxx, u_xxxx = (U.var(m) for m in range(1, 5))
u_t = U.var(0, 1)
v = V.var()
w = W.var()
r = W.X
s = W.T
