"""Point symmetries of the Gardner family.

Prolongation of generators, the determining system, and the catalog of
classified subcases (``1.1a``, ``1.1b``, ``1.2``, ``2.1``, ``2.2``) with their
closed forms.
"""

from dataclasses import dataclass, field

import sympy as sp
from sympy.core.function import AppliedUndef

from .errors import OrderError, ParamError
from .expr import normalize, substitute, zero_test
from .jet import eliminate_ut, monomial_coefficients, total_derivative
from .scenario import Scenario
from .symbols import U, jets_in, param, t, u, x

__all__ = [
    "VectorField", "Case", "CATALOG", "prolonged_action", "apply_symmetry",
    "determining_system", "general_ansatz", "verify_case", "CaseReport",
    "ConditionResult",
]


@dataclass(frozen=True)
class VectorField:
    """Generator xi d/dx + tau d/dt + eta d/du."""

    xi: sp.Expr
    tau: sp.Expr
    eta: sp.Expr

    def __post_init__(self):
        for name in ("xi", "tau", "eta"):
            object.__setattr__(self, name, sp.sympify(getattr(self, name)))
        if jets_in(self.xi) or jets_in(self.tau):
            raise ValueError("xi and tau must not depend on jet variables")
        if x in self.tau.free_symbols:
            raise ValueError("tau must not depend on x")

    def __add__(self, other):
        return VectorField(self.xi + other.xi, self.tau + other.tau, self.eta + other.eta)

    def __mul__(self, a):
        return VectorField(a * self.xi, a * self.tau, a * self.eta)

    __rmul__ = __mul__

    def subs(self, bindings):
        return VectorField(*(substitute(c, bindings) for c in (self.xi, self.tau, self.eta)))

    @property
    def characteristic(self):
        """W = eta - xi u_x - tau u_t."""
        return normalize(self.eta - self.xi * U.var(1) - self.tau * U.var(0, 1))


def _prolongation_coefficient(v, W, j):
    """eta^J = D_J(W) + xi u_{J,x} + tau u_{J,t}."""
    out = W
    for _ in range(j.m):
        out = total_derivative(out, "x")
    for _ in range(j.n):
        out = total_derivative(out, "t")
    return out + v.xi * U.var(j.m + 1, j.n) + v.tau * U.var(j.m, j.n + 1)


def prolonged_action(v, expr):
    """Apply the prolongation of ``v`` (to whatever order ``expr`` needs)."""
    expr = sp.sympify(expr)
    W = v.characteristic
    out = v.xi * sp.diff(expr, x) + v.tau * sp.diff(expr, t)
    for j in jets_in(expr, U):
        out += _prolongation_coefficient(v, W, j) * sp.diff(expr, j.symbol)
    return normalize(out)


def apply_symmetry(v, F):
    """pr^(3) v applied to F, before any elimination."""
    for j in jets_in(F, U):
        if j.order > 3:
            raise OrderError(f"{j.symbol} exceeds the third prolongation")
    return prolonged_action(v, F)


def general_ansatz():
    """xi(x, t), tau(t), eta(x, t, u) as unknown functions."""
    xi = sp.Function("xi", real=True)(x, t)
    tau = sp.Function("tau", real=True)(t)
    eta = sp.Function("eta", real=True)(x, t, u)
    return VectorField(xi, tau, eta)


def _depends_through_functions(expr, sym):
    for a in expr.atoms(AppliedUndef, sp.Derivative):
        if sym in a.free_symbols:
            return True
    return False


def determining_system(scenario, ansatz=None):
    """Coefficient conditions of the invariance condition.

    The prolonged generator is applied to F, u_t is eliminated and the result
    is split along monomials in the x-derivatives of u (and in u itself
    whenever u does not sit inside an unknown function).
    """
    v = ansatz if ansatz is not None else general_ansatz()
    expr = eliminate_ut(apply_symmetry(v, scenario.F), scenario)
    gens = [j.symbol for j in jets_in(expr, U) if j.order > 0]
    pieces = monomial_coefficients(expr, gens) if gens else {(): expr}
    conditions = []
    for coeff in pieces.values():
        if u in coeff.free_symbols and not _depends_through_functions(coeff, u):
            for sub in monomial_coefficients(coeff, [u]).values():
                conditions.append(normalize(sub))
        else:
            conditions.append(normalize(coeff))
    return [c for c in conditions if c != 0]


# -- catalog -----------------------------------------------------------------

P = {n: param(n) for n in ("k", "k1", "k2", "k3", "k4", "a0", "a1", "b0", "c0", "d0", "beta0")}
_half, _third, _sixth = sp.Rational(1, 2), sp.Rational(1, 3), sp.Rational(1, 6)


def f1():
    """f1(t) = 3 k1 e^{kt} + k k4."""
    return 3 * P["k1"] * sp.exp(P["k"] * t) + P["k"] * P["k4"]


def _subcase_11(branch):
    k, k1, k4, a0, a1, b0, d0 = (P[n] for n in ("k", "k1", "k4", "a0", "a1", "b0", "d0"))
    F1 = f1()
    e = d0 / (3 * k * k1)
    B = b0 * sp.exp(k * t)
    tau = k4 * sp.exp(-k * t) + 3 * k1 / k
    alpha = (k * k4 * sp.exp(-k * t) - k1) / 2
    pre = sp.sqrt(sp.exp(k * t)) / (2 * d0 + k * k1) * F1 ** (-e - _half)
    if branch == "a":
        A = pre * (2 * a1 * k * F1 ** (e + _sixth) + a0 * (2 * d0 + k * k1))
        beta = (a0 / (8 * d0 * k * (k * k1 - 2 * d0)) * F1 ** (-2 * e)
                * (a0 * (4 * d0**2 - k**2 * k1**2) + 8 * a1 * d0 * k * F1 ** (e + _sixth)))
    else:
        A = pre * (a0 * (2 * d0 + k * k1) * F1 ** (e + _sixth) - 2 * a1 * k)
        beta = (a1 / (2 * (4 * d0**2 - k**2 * k1**2)) * F1 ** (-2 * e)
                * (2 * a0 * (2 * d0 + k * k1) * F1 ** (e + _sixth) + a1 * k / d0 * (k * k1 - 2 * d0)))
    Q = (2 * d0 * sp.exp(k * t) - k**2 * k4) / (2 * F1)
    return dict(A=A, B=B, C=sp.S.One, Q=Q, tau=tau, alpha=alpha, beta=beta)


def _subcase_12():
    k1, k3, a0, a1, b0, d0 = (P[n] for n in ("k1", "k3", "a0", "a1", "b0", "d0"))
    tau = 3 * k1 * t + k3
    A = a0 * tau ** (-d0 / (3 * k1)) + a1 * tau ** (-_third)
    beta = (_half * a0 * (d0 - k1) * tau ** (-2 * d0 / (3 * k1) - _third)
            * (a0 * tau ** sp.Rational(4, 3) / (3 * k1 - 2 * d0)
               - a1 * tau ** (d0 / (3 * k1) + 1) / (d0 - 2 * k1)))
    return dict(A=A, B=b0, C=sp.S.One, Q=d0 / tau, tau=tau, alpha=-2 * k1, beta=beta)


def _subcase_21():
    k, k1, k2, k3, k4, a0, b0, c0, beta0 = (P[n] for n in ("k", "k1", "k2", "k3", "k4", "a0", "b0", "c0", "beta0"))
    F1 = f1()
    power = -2 * k3 / (3 * k1) - sp.Rational(4, 3)
    C = c0 * sp.exp(k * t) * F1**power
    A = (sp.exp(k * t) * F1**power / (k1 + k3)
         * (2 * c0 * k2 + a0 * (k1 + k3) * F1 ** (k3 / (3 * k1) + _third)))
    beta = (beta0 - a0 * k2 * F1 ** (-k3 / (3 * k1)) / (k * k3)
            - 2 * c0 * k2**2 * F1 ** (-2 * k3 / (3 * k1) - _third) / (k * (k1 + k3) * (k1 + 2 * k3)))
    tau = k4 * sp.exp(-k * t) + 3 * k1 / k
    return dict(A=A, B=b0 * sp.exp(k * t), C=C, Q=sp.S.Zero, tau=tau, beta=beta)


def _subcase_22():
    k1, k2, k3, a0, b0, c0, beta0 = (P[n] for n in ("k1", "k2", "k3", "a0", "b0", "c0", "beta0"))
    tau = 3 * k1 * t + k3
    power = -2 * k3 / (3 * k1) - sp.Rational(4, 3)
    C = c0 * tau**power
    A = tau**power / (k1 + k3) * (2 * c0 * k2 + a0 * (k1 + k3) * tau ** (k3 / (3 * k1) + _third))
    beta = (beta0 - a0 * k2 * tau ** (-k3 / (3 * k1)) / k3
            - 2 * c0 * k2**2 * tau ** (-2 * k3 / (3 * k1) - _third) / ((k1 + k3) * (k1 + 2 * k3)))
    return dict(A=A, B=b0, C=C, Q=sp.S.Zero, tau=tau, beta=beta)


def _case1_conditions(forms):
    A, B, Q, tau, alpha, beta = (forms[n] for n in ("A", "B", "Q", "tau", "alpha", "beta"))
    k1 = P["k1"]
    d = lambda e, n=1: sp.diff(e, t, n)  # noqa: E731
    return [
        ("eq1c2", (3 * k1 - d(tau)) * B - tau * d(B)),
        ("eq2c2", -tau * d(B) + (4 * k1 + 2 * alpha) * B),
        ("eq3c2", 2 * d(beta) * B + tau * A * d(A) * B - tau * A**2 * d(B) + (3 * k1 + alpha) * A**2 * B),
        ("eq4c2", tau * B * d(Q) - tau * d(B) * Q + 3 * k1 * B * Q + d(alpha) * B),
        ("eq5c2", d(beta) * (A * Q - d(A)) + d(beta, 2) * A),
    ]


def _case2_conditions(forms):
    A, B, C, tau, beta = (forms[n] for n in ("A", "B", "C", "tau", "beta"))
    k1, k2, k3 = P["k1"], P["k2"], P["k3"]
    d = lambda e: sp.diff(e, t)  # noqa: E731
    return [
        ("eq1Mol", (3 * k1 - d(tau)) * B - tau * d(B)),
        ("eq2Mol", tau * B * d(C) - tau * d(B) * C + (4 * k1 + 2 * k3) * B * C),
        ("eq3Mol", tau * d(A) * B - tau * A * d(B) + 2 * k2 * B * C + (3 * k1 + k3) * A * B),
        ("eq4Mol", k2 * A - d(beta)),
    ]


@dataclass(frozen=True)
class Case:
    id: str
    anchor: str
    family: int
    params: tuple
    constraints: tuple
    builder: object = field(repr=False)

    def closed_forms(self):
        return self.builder()

    def generator(self):
        forms = self.closed_forms()
        k1 = P["k1"]
        xi = k1 * x + forms["beta"]
        if self.family == 1:
            eta = sp.diff(forms["beta"], t) / forms["A"] + (k1 + forms["alpha"]) * u
        else:
            eta = (k1 + P["k3"]) * u + P["k2"]
        return VectorField(xi, forms["tau"], eta)

    def scenario(self, params=None):
        forms = self.closed_forms()
        return Scenario(forms["A"], forms["B"], forms["C"], forms["Q"],
                        params=dict(params or {}), case=self.id, name=f"subcase {self.id}")

    def conditions(self):
        forms = self.closed_forms()
        if self.family == 1:
            return _case1_conditions(forms)
        return _case2_conditions(forms)

    def constraint_exprs(self):
        return [expr for _, expr in self.constraints]

    def check_params(self, params):
        """Raise ParamError naming the first violated non-degeneracy condition."""
        values = {param(k): sp.nsimplify(v) for k, v in params.items()}
        for label, expr in self.constraints:
            val = expr.subs(values)
            if val.is_number and abs(float(val)) < 1e-12:
                raise ParamError(f"{label} violated by {params}")


def _nz(name):
    return (f"{name}≠0", P[name])


CATALOG = {}


def _register(case):
    CATALOG[case.id] = case


_k, _k1, _k3, _d0 = P["k"], P["k1"], P["k3"], P["d0"]
_case11_constraints = (
    _nz("k"), _nz("k1"), _nz("a0"), _nz("a1"), _nz("b0"), _nz("d0"),
    ("2d0+kk1≠0", 2 * _d0 + _k * _k1), ("2d0-kk1≠0", 2 * _d0 - _k * _k1),
)
_register(Case("1.1a", "Subcase 1.1, (Apc2)/(betapc2)", 1,
               ("k", "k1", "k4", "a0", "a1", "b0", "d0"), _case11_constraints,
               lambda: _subcase_11("a")))
_register(Case("1.1b", "Subcase 1.1, (Anc2)/(betanc2)", 1,
               ("k", "k1", "k4", "a0", "a1", "b0", "d0"), _case11_constraints,
               lambda: _subcase_11("b")))
_register(Case("1.2", "Subcase 1.2, (Ac12)/(betac12)", 1,
               ("k1", "k3", "a0", "a1", "b0", "d0"),
               (_nz("k1"), _nz("a0"), _nz("b0"), _nz("d0"),
                ("d0≠3k1/2", 2 * _d0 - 3 * _k1), ("d0≠2k1", _d0 - 2 * _k1)),
               _subcase_12))
_case2_constraints = (
    _nz("b0"), _nz("c0"), _nz("k1"), _nz("k3"),
    ("k1≠-k3", _k1 + _k3), ("k1≠-2k3", _k1 + 2 * _k3),
)
_register(Case("2.1", "Subcase 2.1, (eqC21)/(eqA21)/(eqbeta21)", 2,
               ("k", "k1", "k2", "k3", "k4", "a0", "b0", "c0", "beta0"),
               (_nz("k"), *_case2_constraints), _subcase_21))
_register(Case("2.2", "Subcase 2.2, (eqC22)/(eqA22)/(eqbeta22)", 2,
               ("k1", "k2", "k3", "a0", "b0", "c0", "beta0"),
               _case2_constraints, _subcase_22))


# -- verification ------------------------------------------------------------

@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    mode: str
    residual: float
    note: str = ""

    @property
    def status(self):
        if not self.passed:
            return "FAIL"
        return "PASS" if self.mode == "symbolic" else "NUMERIC-PASS"


@dataclass(frozen=True)
class CaseReport:
    case: str
    anchor: str
    params: dict
    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)


def verify_case(case_id, params=None, *, samples=20, tol=1e-9, seed=0, invariance=True):
    """Check a catalog subcase's closed forms against its ODE-level conditions.

    Parameters missing from ``params`` are sampled in [1/2, 2] along with t,
    avoiding the subcase's degenerate values.
    """
    case = CATALOG[case_id]
    params = dict(params or {})
    case.check_params(params)
    fixed = {k: v for k, v in params.items()}
    bind = {param(k): sp.nsimplify(v) for k, v in params.items()}
    zkw = dict(samples=samples, tol=tol, seed=seed, fixed=fixed,
               constraints=case.constraint_exprs())
    results = []
    for name, expr in case.conditions():
        check = zero_test(substitute(expr, bind), **zkw)
        results.append(_result(name, check))
    if invariance:
        scen = case.scenario()
        residual = eliminate_ut(apply_symmetry(case.generator(), scen.F), scen)
        check = zero_test(substitute(residual, bind), **zkw)
        results.append(_result("invariance", check))
    return CaseReport(case_id, case.anchor, params, tuple(results))


def _result(name, check):
    note = ""
    if not check.is_zero:
        note = "residual is nonzero at the sampled points; suspected transcription issue in the closed form"
    return ConditionResult(name, check.is_zero, check.mode, check.residual, note)

