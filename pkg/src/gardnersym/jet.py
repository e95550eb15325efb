"""Differential polynomials on the (x, t) jet space.

A differential polynomial is an ordinary sympy expression whose jet variables
are the symbols created by :class:`gardnersym.symbols.JetSpace` (``u``,
``u_x``, ``u_xxt``, ...). Coefficients may involve x, t, parameters, named
time functions and antiderivative atoms.
"""

from math import comb

import sympy as sp

from .errors import NotExactError, OrderError, ResidueError
from .expr import normalize, zero_test
from .symbols import U, jets_in

__all__ = [
    "total_x", "total_t", "total_derivative", "eliminate_ut", "euler",
    "higher_euler", "invert_total_x", "jet_order", "monomial_coefficients",
    "is_exact",
]


def _same_frame(a, b):
    return a.xname == b.xname and a.tname == b.tname


def total_derivative(p, direction, space=U):
    """D_x (``direction="x"``) or D_t (``"t"``) in the frame of ``space``.

    Every jet family sharing the frame is differentiated, so expressions in
    both u and v jets are handled.
    """
    p = sp.sympify(p)
    var = space.X if direction == "x" else space.T
    out = sp.diff(p, var)
    for j in jets_in(p):
        if _same_frame(j.space, space):
            out += j.bump(direction).symbol * sp.diff(p, j.symbol)
    return normalize(out)


def total_x(p, space=U):
    return total_derivative(p, "x", space)


def total_t(p, space=U):
    return total_derivative(p, "t", space)


def _repeat(p, direction, times, space, sign=1):
    for _ in range(times):
        p = sign * total_derivative(p, direction, space)
    return p


def jet_order(p, space=U):
    """Largest (x-order, t-order) of the jets of ``space`` in ``p``."""
    js = jets_in(p, space)
    if not js:
        return 0, 0
    return max(j.m for j in js), max(j.n for j in js)


def eliminate_ut(p, ctx, space=U):
    """Replace every ``u_{x^m t}`` by ``D_x^m(rhs)``.

    ``ctx`` is a scenario (anything with an ``rhs`` attribute) or the
    right-hand side of the evolution equation ``u_t = rhs`` itself.
    """
    rhs = sp.sympify(getattr(ctx, "rhs", ctx))
    p = sp.sympify(p)
    rules = {}
    for j in jets_in(p, space):
        if j.n >= 2:
            raise OrderError(f"{j.symbol} has t-order {j.n}; only first-order t-derivatives can be eliminated")
        if j.n == 1:
            rules[j.symbol] = _repeat(rhs, "x", j.m, space)
    if not rules:
        return normalize(p)
    return normalize(p.xreplace(rules))


def euler(p, space=U):
    """Variational derivative with respect to the dependent variable of ``space``."""
    p = sp.sympify(p)
    out = sp.S.Zero
    for j in jets_in(p, space):
        term = sp.diff(p, j.symbol)
        term = _repeat(term, "x", j.m, space, sign=-1)
        term = _repeat(term, "t", j.n, space, sign=-1)
        out += term
    return normalize(out)


def higher_euler(p, i, space=U):
    """i-th higher Euler operator in x (``i >= 1``)."""
    if i < 1:
        raise ValueError("higher Euler operators start at order 1")
    if jet_order(p, space)[1] > 0:
        raise OrderError("higher Euler operators act on t-order 0 expressions")
    p = sp.sympify(p)
    top = jet_order(p, space)[0]
    out = sp.S.Zero
    for j in range(i, top + 1):
        term = sp.diff(p, space.var(j))
        out += comb(j, i) * _repeat(term, "x", j - i, space, sign=-1)
    return normalize(out)


def is_exact(p, space=U, **zero_kw):
    """True when ``p`` (t-order 0) is annihilated by the Euler operator."""
    return zero_test(euler(p, space), **zero_kw).is_zero


def _drop_if_zero(rem, sym):
    """Remove ``sym`` from ``rem`` when ``rem`` is numerically independent of it."""
    if zero_test(sp.diff(rem, sym)).is_zero:
        return normalize(rem.subs(sym, 0))
    return None


def _integrate_poly(p, var):
    """Termwise antiderivative in ``var`` of an expression polynomial in it."""
    p = normalize(p)
    out = []
    for term in sp.Add.make_args(p):
        coeff, n = sp.S.One, 0
        for f in sp.Mul.make_args(term):
            b, e = f.as_base_exp()
            if b == var and e.is_Integer and e >= 0:
                n += int(e)
            elif var in f.free_symbols:
                return normalize(sp.integrate(p, var))
            else:
                coeff *= f
        out.append(coeff * var ** (n + 1) / (n + 1))
    return normalize(sp.Add(*out))


def invert_total_x(p, space=U):
    """Return ``P`` with ``D_x P = p``.

    The top x-derivative ``u_K`` of an exact expression enters linearly, so
    ``p = g u_K + h`` and ``G = integral of g d u_{K-1}`` removes it. A jet-free
    remainder must be polynomial in x and is integrated termwise.
    """
    p = normalize(p)
    if jet_order(p, space)[1] > 0:
        raise OrderError("inverse total derivative needs a t-order 0 expression")
    obstruction = euler(p, space)
    if not zero_test(obstruction).is_zero:
        raise NotExactError("expression is not a total x-derivative", obstruction)

    X = space.X
    total = sp.S.Zero
    rem = p
    for _ in range(64):
        js = jets_in(rem, space)
        if not js:
            break
        top = max(j.m for j in js)
        u_top = space.var(top)
        if top == 0:
            cleaned = _drop_if_zero(rem, u_top)
            if cleaned is None:
                raise NotExactError("jet-free remainder still depends on the dependent variable", obstruction)
            rem = cleaned
            continue
        g = sp.diff(rem, u_top)
        if jets_in(g, space) and u_top in g.free_symbols:
            if not zero_test(sp.diff(g, u_top)).is_zero:
                raise NotExactError(f"{u_top} enters nonlinearly", obstruction)
            g = g.subs(u_top, 0)
        G = _integrate_poly(g, space.var(top - 1))
        total += G
        new = normalize(rem - total_x(G, space))
        if u_top in new.free_symbols:
            new = _drop_if_zero(new, u_top)
            if new is None:
                raise NotExactError(f"could not remove {u_top}", obstruction)
        rem = new
    else:  # pragma: no cover - orders are bounded
        raise NotExactError("inverse total derivative did not terminate", obstruction)

    if rem != 0:
        if X in rem.free_symbols:
            try:
                sp.Poly(rem, X)
            except sp.PolynomialError as exc:
                raise ResidueError(f"jet-free remainder {rem} is not polynomial in {X}") from exc
        total += _integrate_poly(rem, X)
    return normalize(total)


def monomial_coefficients(p, gens):
    """Map monomial exponent tuples in ``gens`` to their coefficients.

    Works termwise on the normalized sum; raises PolynomialError when a
    generator appears other than as a nonnegative integer power.
    """
    p = normalize(p)
    if p == 0:
        return {}
    gens = list(gens)
    index = {g: i for i, g in enumerate(gens)}
    gset = set(gens)
    out = {}
    for term in sp.Add.make_args(p):
        expo = [0] * len(gens)
        rest = []
        for f in sp.Mul.make_args(term):
            base, e = f.as_base_exp()
            if base in index and e.is_Integer and e > 0:
                expo[index[base]] += int(e)
            else:
                if f.free_symbols & gset:
                    raise sp.PolynomialError(f"{f} is not polynomial in {gens}")
                rest.append(f)
        key = tuple(expo)
        out[key] = out.get(key, sp.S.Zero) + sp.Mul(*rest)
    out = {k: normalize(v) for k, v in out.items()}
    return {k: v for k, v in out.items() if v != 0}
