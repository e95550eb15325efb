"""Exact scalar expressions: normal form, parameter derivatives, substitution,
numeric evaluation and the zero test used by every verification.

Expressions are sympy objects built from the vocabulary in
:mod:`gardnersym.symbols`. Constants stay exact (``Rational``); floats only
appear inside :func:`eval_num` and :func:`zero_test`.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from sympy.core.function import AppliedUndef

from .errors import CycleError, DomainError, JetError, UnboundError
from .symbols import AD, function_name, jets_in, param, t, x

__all__ = [
    "normalize", "diff_param", "substitute", "eval_num", "ParamEnv",
    "ZeroCheck", "zero_test", "named_functions",
]


def _expand(e):
    """Distribute products over sums without touching denominators.

    Powers of sums with negative or symbolic exponents stay atoms; powers of
    products are split into products of powers (bases are taken positive).
    """
    if e.is_Atom:
        return e
    if isinstance(e, sp.Add):
        return sp.Add(*[_expand(a) for a in e.args])
    if isinstance(e, sp.Mul):
        return sp.expand_mul(sp.Mul(*[_expand(a) for a in e.args]), deep=False)
    if isinstance(e, sp.Pow):
        base, ex = _expand(e.base), _expand(e.exp)
        if isinstance(base, sp.Mul):
            return _expand(sp.Mul(*[sp.Pow(f, ex) for f in base.args]))
        if isinstance(base, sp.Pow) and not isinstance(base, sp.exp):
            return _expand(sp.Pow(base.base, base.exp * ex))
        if isinstance(base, sp.Add):
            if ex.is_Integer and ex > 0:
                return sp.expand_mul(sp.expand_multinomial(sp.Pow(base, ex), deep=False), deep=False)
            content, prim = base.primitive()
            if content != 1 and content.is_positive:
                return sp.Pow(content, ex) * sp.Pow(prim, ex)
        return sp.Pow(base, ex)
    if isinstance(e, sp.Derivative):
        return e
    return e.func(*[_expand(a) for a in e.args])


def _merge_powers(term):
    """Collect equal bases of one product and split exponents.

    ``b**(p + 3/2)`` becomes ``b**(p + 1/2) * b`` so that an integer part is
    always distributed by the next expansion; the remaining exponent has its
    rational constant in [0, 1).
    """
    if not isinstance(term, (sp.Mul, sp.Pow)):
        return term
    coeff, factors = term.as_coeff_mul()
    exponents = {}
    order = []
    rest = []
    for f in factors:
        if isinstance(f, sp.exp) or f.is_Number:
            rest.append(f)
            continue
        base, ex = f.as_base_exp()
        if base not in exponents:
            exponents[base] = sp.S.Zero
            order.append(base)
        exponents[base] += ex
    out = [coeff, *rest]
    for base in order:
        ex = exponents[base]
        if ex == 0:
            continue
        const, symbolic = ex.as_coeff_Add()
        if symbolic == 0 or not const.is_Rational:
            out.append(sp.Pow(base, ex))
            continue
        whole = math.floor(const)
        out.append(sp.Pow(base, symbolic + const - whole))
        if whole:
            out.append(sp.Pow(base, whole))
    return sp.Mul(*out)


def _is_rational_factor(f):
    """Factor that is a rational function of plain symbols."""
    if f.is_Number or f.is_Symbol:
        return True
    if isinstance(f, sp.Pow) and not isinstance(f, sp.exp) and f.exp.is_Integer:
        b = f.base
        return b.is_Symbol or (isinstance(b, sp.Add) and all(
            _is_rational_factor(m) for a in b.args for m in sp.Mul.make_args(a)))
    return False


def _split_term(term):
    rat, trans = [], []
    for f in sp.Mul.make_args(term):
        (rat if _is_rational_factor(f) else trans).append(f)
    return sp.Mul(*rat), sp.Mul(*trans)


def _combine_rational(e):
    """Cancel rational coefficients within each transcendental monomial."""
    terms = sp.Add.make_args(e)
    if len(terms) < 2:
        return e
    groups = {}
    for term in terms:
        rat, trans = _split_term(term)
        groups.setdefault(trans, []).append(rat)
    if not any(len(r) > 1 and any(not p.is_polynomial() for p in r) for r in groups.values()):
        return e
    out = []
    for trans, rats in groups.items():
        if len(rats) == 1:
            out.append(rats[0] * trans)
            continue
        total = sp.Add(*rats)
        if not total.is_polynomial():
            total = sp.cancel(sp.together(total))
        out.append(total * trans)
    return sp.Add(*out)


def _canon(e):
    if isinstance(e, sp.Add):
        return sp.Add(*[_merge_powers(a) for a in e.args])
    return _merge_powers(e)


def normalize(e):
    """Canonical expanded form; zero normalizes to the literal ``0``."""
    e = sp.sympify(e)
    for _ in range(8):
        new = _expand(_combine_rational(_expand(_canon(_expand(e)))))
        new = _canon(new)
        if new == e:
            break
        e = new
    return e


def diff_param(e, var):
    """Partial derivative of a jet-free coefficient expression in x or t."""
    e = sp.sympify(e)
    bad = jets_in(e)
    if bad:
        raise JetError(f"coefficient expression contains jet variable {bad[0].symbol}")
    if var in ("x", "t"):
        var = x if var == "x" else t
    if var not in (x, t):
        raise ValueError("diff_param differentiates with respect to x or t only")
    return normalize(sp.diff(e, var))


def named_functions(e):
    """Applied named functions (``A(t)``, ``eta(x, t, u)``) occurring in ``e``."""
    return {f for f in sp.sympify(e).atoms(AppliedUndef)}


def _resolve_key(key, e):
    if isinstance(key, sp.Basic):
        return key
    for f in named_functions(e):
        if function_name(f) == key:
            return f
    if key == "x":
        return x
    if key == "t":
        return t
    for s in e.free_symbols:
        if s.name == key:
            return s
    return param(key)


def substitute(e, bindings):
    """Simultaneous substitution followed by :func:`normalize`.

    Keys may be symbols, applied named functions, or names. Replacing a named
    function also rewrites its t-derivatives with derivatives of the
    replacement.
    """
    e = sp.sympify(e)
    funcs = {}
    syms = {}
    for key, value in bindings.items():
        key = _resolve_key(key, e)
        value = sp.sympify(value)
        if value != key:
            if isinstance(key, AppliedUndef):
                names = {function_name(f) for f in named_functions(value)}
                if function_name(key) in names:
                    raise CycleError(f"binding for {function_name(key)} refers to itself")
            elif key in value.free_symbols:
                raise CycleError(f"binding for {key} refers to itself")
        if isinstance(key, AppliedUndef):
            funcs[key] = value
        else:
            syms[key] = value
    if funcs:
        rules = {}
        for d in e.atoms(sp.Derivative):
            if d.expr in funcs:
                rules[d] = sp.diff(funcs[d.expr], *d.variable_count)
        rules.update(funcs)
        e = e.xreplace(rules)
        # Derivatives of expressions that contained the function (inside AD, say).
        e = e.replace(lambda a: isinstance(a, sp.Derivative), lambda a: a.doit())
    if syms:
        e = e.subs(syms, simultaneous=True)
    return normalize(e)


@dataclass(frozen=True)
class ParamEnv:
    """Numeric values for parameters (and x, t, jets), plus optional closed
    forms for named time functions."""

    values: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)

    def value_of(self, sym):
        return self.values.get(sym.name, self.values.get(sym))

    def with_values(self, **kw):
        merged = dict(self.values)
        merged.update(kw)
        return ParamEnv(merged, dict(self.functions))


def _antiderivative(f, env):
    """Closed-form t-antiderivative (integration constant 0) when sympy finds
    one, numeric quadrature from t=0 otherwise."""
    undef = named_functions(f)
    if undef:
        raise UnboundError(function_name(sorted(undef, key=str)[0]))
    F = sp.integrate(f, t)
    if not F.has(sp.Integral):
        return F
    from scipy.integrate import quad

    others = {s: env.value_of(s) for s in f.free_symbols if s != t}
    missing = [s.name for s, val in others.items() if val is None]
    if missing:
        raise UnboundError(sorted(missing)[0])
    g = sp.lambdify(t, f.subs(others), "math")
    t_end = env.value_of(t)
    if t_end is None:
        raise UnboundError("t")
    val, _ = quad(g, 0.0, float(t_end), epsabs=1e-14, epsrel=1e-13)
    return sp.Float(val, 30)


def eval_num(e, env):
    """Floating value of ``e`` under ``env``."""
    e = sp.sympify(e)
    if env.functions:
        e = substitute(e, env.functions)
    for ad in sorted(e.atoms(AD), key=lambda a: sp.count_ops(a)):
        e = e.xreplace({ad: _antiderivative(ad.args[0], env)})
    undef = named_functions(e)
    if undef:
        raise UnboundError(function_name(sorted(undef, key=str)[0]))
    subs = {}
    for s in sorted(e.free_symbols, key=lambda s: s.name):
        val = env.value_of(s)
        if val is None:
            raise UnboundError(s.name)
        subs[s] = sp.nsimplify(val) if isinstance(val, (int, sp.Rational)) else val
    val = e.xreplace(subs)
    if val.has(sp.zoo, sp.nan, sp.oo, -sp.oo):
        raise DomainError(f"expression is singular at {env.values}")
    val = sp.N(val, 30)
    if not val.is_number:
        raise DomainError("expression did not evaluate to a number")
    re_part, im_part = val.as_real_imag()
    if abs(im_part) > 1e-12 * (1 + abs(re_part)):
        raise DomainError("expression is complex at the requested point")
    out = float(re_part)
    if not math.isfinite(out):
        raise DomainError("expression is not finite at the requested point")
    return out


@dataclass(frozen=True)
class ZeroCheck:
    """Outcome of :func:`zero_test`. ``mode`` is ``"symbolic"`` or ``"numeric"``."""

    is_zero: bool
    mode: str
    residual: float = 0.0
    expr: sp.Expr = sp.S.Zero

    def __bool__(self):
        return self.is_zero


def _opaque_atoms(e):
    """Derivatives, named functions and antiderivative atoms, outermost first."""
    atoms = []
    atoms.extend(e.atoms(AD))
    atoms.extend(d for d in e.atoms(sp.Derivative))
    atoms.extend(f for f in e.atoms(AppliedUndef))
    return atoms


def zero_test(e, *, samples=16, tol=1e-9, seed=0, low=0.5, high=2.0,
              fixed=None, ranges=None, constraints=(), margin=0.05):
    """Decide whether ``e`` vanishes identically.

    Normalization is tried first. When it is inconclusive the expression is
    sampled at ``samples`` random points: every free symbol is drawn from
    ``[low, high]`` (or its entry in ``ranges``) unless pinned in ``fixed``;
    named functions, their derivatives and antiderivative atoms are sampled as
    independent values. A point counts as zero when
    ``|value| < tol * (1 + sum |terms|)``. Draws that put any expression of
    ``constraints`` within ``margin`` of zero are rejected.
    """
    e = normalize(e)
    if e == 0:
        return ZeroCheck(True, "symbolic", 0.0, e)

    fixed = {str(k): v for k, v in (fixed or {}).items()}
    ranges = {str(k): v for k, v in (ranges or {}).items()}
    rules = {}
    for i, atom in enumerate(_opaque_atoms(e)):
        rules.setdefault(atom, sp.Dummy(f"atom{i}", real=True))
    body = e.xreplace(rules)
    constraints = [sp.sympify(c).xreplace(rules) for c in constraints]
    syms = sorted(body.free_symbols | set().union(*[c.free_symbols for c in constraints]),
                  key=lambda s: s.name)
    rng = np.random.default_rng(seed)

    def draw():
        out = []
        for s in syms:
            if s.name in fixed and not isinstance(s, sp.Dummy):
                out.append(np.full(samples, float(fixed[s.name])))
            else:
                lo, hi = ranges.get(s.name, (low, high))
                out.append(rng.uniform(lo, hi, samples))
        return out

    points = draw()
    if constraints:
        cfun = sp.lambdify(syms, constraints, "numpy")
        for _ in range(200):
            vals = np.atleast_2d([np.broadcast_to(v, (samples,)) for v in cfun(*points)])
            bad = np.any(np.abs(vals) < margin, axis=0)
            if not bad.any():
                break
            fresh = draw()
            points = [np.where(bad, f, p) for f, p in zip(fresh, points)]

    terms = sp.Add.make_args(body)
    f = sp.lambdify(syms, list(terms), "numpy")
    with np.errstate(all="ignore"):
        vals = np.array([np.broadcast_to(np.asarray(v, dtype=float), (samples,))
                         for v in f(*points)])
    total = vals.sum(axis=0)
    mag = np.abs(vals).sum(axis=0)
    rel = np.abs(total) / (1.0 + mag)
    if not np.all(np.isfinite(rel)):
        return ZeroCheck(False, "numeric", float("inf"), e)
    worst = float(rel.max())
    return ZeroCheck(worst < tol, "numeric", worst, e)
