"""Golden checks for every reproduced result, grouped by acceptance criterion.

Each check group returns a list of :class:`~gardnersym.report.Entry`; the
groups run in a fixed order so a fixed seed gives an identical report.
"""

import random
from dataclasses import dataclass

import numpy as np
import sympy as sp

from . import displays as D
from .adjoint import adjoint_equation, selfadjoint_check, theorem_lambda, theorem_phi
from .conslaw import (ConservedVector, density_from_multiplier, divergence_residual,
                      equivalent_densities, flux_from_density, ibragimov_vector,
                      multiplier_residual)
from .errors import GardnerError
from .expr import normalize, substitute, zero_test
from .jet import euler, total_t, total_x
from .parser import ADJOINT, parse, render
from .reduction import (CanonicalFrame, association_residual, reduced_ode, to_canonical,
                        travelling_wave_check)
from .report import Entry, Report, Timer, status_of
from .sampling import random_closed_form_Q, random_diffpoly, random_tree
from .scenario import Scenario
from .symbols import param, t, time_function, u, x
from .symmetry import CATALOG, VectorField, determining_system, f1, verify_case

__all__ = ["SuiteConfig", "GROUPS", "run_suite", "forced_multiplier_11"]

TYPO = "displayed form differs by trivial terms or suspected typo"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    samples: int = 20
    invariance: bool = False
    numerics: bool = True
    timings: bool = True


def _entry(name, passed, mode, residual, anchor, seconds, detail=""):
    return Entry(name, status_of(passed, mode), mode, residual, anchor, seconds, detail)


def _zero_entry(name, expr, anchor, seconds, cfg, detail="", **zkw):
    z = zero_test(expr, seed=cfg.seed, **zkw)
    res = z.expr if z.mode == "symbolic" else z.residual
    if not z.is_zero and sp.count_ops(z.expr) <= 40:
        res = z.expr  # short residuals are more useful as expressions
    return _entry(name, z.is_zero, z.mode, res, anchor, seconds, detail if not z.is_zero else "")


def _proportional(a, b):
    q = sp.cancel(sp.together(a / b))
    return q.is_number and q != 0


def forced_multiplier_11():
    """Subcase 1.1 multiplier with the c1 factor forced by the multiplier
    condition, e^{int Q} = e^{-kt/2} f1^{d0/(3k k1) + 1/2}."""
    k, k1, d0 = (param(n) for n in ("k", "k1", "d0"))
    F1 = f1()
    c2_part = sp.exp(-k * t) * F1 ** (2 * d0 / (3 * k * k1) + 1) * u
    c1_part = sp.exp(-k * t / 2) * F1 ** (d0 / (3 * k * k1) + sp.Rational(1, 2))
    return D.c1 * c1_part + D.c2 * c2_part


# -- criterion groups -----------------------------------------------------------

def check_adjoint(cfg):
    with Timer() as tm:
        star = adjoint_equation(Scenario.abstract().F)
        expected = parse("v*Q - u^2*v_x*C - B*v_xxx - u*v_x*A - v_t", ADJOINT)
        diff = normalize(star - expected)
    return [_entry("adjoint of the family", diff == 0, "symbolic", diff, D.ANCHORS["adjoint"],
                   tm.seconds, detail=f"F* = {render(star)}")]


def check_selfadjoint(cfg):
    rng = random.Random(cfg.seed)
    fam = Scenario.abstract()
    Qs = [None] + [random_closed_form_Q(rng) for _ in range(10)]
    out = []
    for Q in Qs:
        with Timer() as tm:
            sc = fam if Q is None else Scenario(time_function("A"), time_function("B"),
                                                time_function("C"), Q)
            r = selfadjoint_check(sc.F, theorem_phi(Q), seed=cfg.seed)
            lam = zero_test(r.lam - theorem_lambda(Q), seed=cfg.seed)
        label = "Q(t)" if Q is None else render(Q)
        mode = "numeric" if "numeric" in (r.mode, lam.mode) else "symbolic"
        res = r.residual if r.mode == "symbolic" else r.max_residual
        out.append(_entry(f"self-adjoint, Q = {label}", r.is_zero and lam.is_zero, mode, res,
                          D.ANCHORS["selfadjoint"], tm.seconds,
                          detail="" if lam.is_zero else f"lambda = {render(r.lam)}"))
    return out


def check_catalog(cfg):
    out = []
    for cid in CATALOG:
        with Timer() as tm:
            rep = verify_case(cid, samples=cfg.samples, seed=cfg.seed, invariance=cfg.invariance)
        mode = "numeric" if any(r.mode == "numeric" for r in rep.results) else "symbolic"
        worst = max(r.residual for r in rep.results)
        notes = "; ".join(f"{r.name}: {r.note}" for r in rep.results if not r.passed)
        out.append(_entry(f"symmetry subcase {cid}", rep.passed, mode, worst, rep.anchor,
                          tm.seconds, notes))
    return out


def check_determining(cfg):
    out = []
    fam = Scenario.abstract()
    with Timer() as tm:
        system = determining_system(fam)
        xi = sp.Function("xi", real=True)(x, t)
        tau = sp.Function("tau", real=True)(t)
        B = time_function("B")
        target = -tau * sp.diff(B, t) - sp.diff(tau, t) * B + 3 * sp.diff(xi, x) * B
        found = [c for c in system if _proportional(c, target)]
    out.append(_entry("family system contains the B-condition", bool(found), "symbolic",
                      0 if found else "missing", D.ANCHORS["determining"], tm.seconds,
                      detail=f"{len(system)} conditions"))
    with Timer() as tm:
        trivial = determining_system(fam, VectorField(1, 0, 0))
    out.append(_entry("translation in x is a symmetry", not trivial, "symbolic",
                      0 if not trivial else render(trivial[0]), D.ANCHORS["determining"], tm.seconds))
    with Timer() as tm:
        k1, k2, k3 = (param(n) for n in ("k1", "k2", "k3"))
        beta = sp.Function("beta", real=True)(t)
        sc = Scenario(time_function("A"), B, time_function("C"), 0)
        shape = determining_system(sc, VectorField(k1 * x + beta, tau, (k1 + k3) * u + k2))
        anchor = time_function("A") * k2 - sp.diff(beta, t)
        ok = len(shape) == 4 and any(_proportional(c, anchor) for c in shape)
    out.append(_entry("case-2 ansatz reduces to four ODE conditions", ok, "symbolic",
                      0 if ok else f"{len(shape)} conditions", D.ANCHORS["determining_case2"], tm.seconds))
    for cid, case in CATALOG.items():
        with Timer() as tm:
            conds = determining_system(case.scenario(), case.generator())
            checks = [zero_test(c, seed=cfg.seed, constraints=case.constraint_exprs()) for c in conds]
        mode = "numeric" if any(z.mode == "numeric" for z in checks) else "symbolic"
        worst = max((z.residual for z in checks), default=0.0)
        out.append(_entry(f"determining system vanishes on subcase {cid}", all(checks), mode, worst,
                          case.anchor, tm.seconds))
    return out


def _case_constraints(cid):
    return CATALOG[cid].constraint_exprs()


def check_multipliers(cfg):
    out = []
    for cid in ("1.1a", "1.1b"):
        with Timer() as tm:
            res = multiplier_residual(D.multiplier_11(), CATALOG[cid].scenario().F)
        out.append(_zero_entry(f"multiplier {cid}", res, D.ANCHORS["multiplier_11"], tm.seconds, cfg,
                               detail=f"{TYPO}; the c1 factor must be e^(int Q)",
                               constraints=_case_constraints(cid)))
    with Timer() as tm:
        res = multiplier_residual(D.multiplier_12(), CATALOG["1.2"].scenario().F)
    out.append(_zero_entry("multiplier 1.2", res, D.ANCHORS["multiplier_12"], tm.seconds, cfg,
                           constraints=_case_constraints("1.2")))
    fam = Scenario.abstract()
    Q = time_function("Q")
    for lam, want, label in ((sp.S.One, Q, "1"), (u, 2 * Q * u, "u")):
        with Timer() as tm:
            res = multiplier_residual(lam, fam.F)
            ok = normalize(res - want) == 0
        out.append(_entry(f"Lambda = {label} gives residual {render(want)}", ok, "symbolic", res,
                          D.ANCHORS["characterization"], tm.seconds))
    return out


def _flux_entries(label, case_id, Tt, Tx_display, anchor, cfg):
    """Derived flux must be divergence-free; the displayed pair must be a
    conservation law with the same density."""
    sc = CATALOG[case_id].scenario()
    cons = _case_constraints(case_id)
    out = []
    with Timer() as tm:
        try:
            Tx = flux_from_density(Tt, sc)
            err = None
        except GardnerError as exc:
            Tx, err = None, exc
    if err is None:
        with Timer() as tm2:
            res = divergence_residual(ConservedVector(Tt, Tx, sc))
        out.append(_zero_entry(f"flux {label} derived from density", res, anchor,
                               tm.seconds + tm2.seconds, cfg, constraints=cons))
    else:
        out.append(_entry(f"flux {label} derived from density", False, "symbolic", "not exact",
                          anchor, tm.seconds, detail=f"{err.code}: density is not conserved"))
    with Timer() as tm:
        res = divergence_residual(ConservedVector(Tt, Tx_display, sc))
    out.append(_zero_entry(f"flux {label} displayed", res, anchor, tm.seconds, cfg,
                           detail=TYPO, constraints=cons))
    return out


def check_fluxes(cfg):
    with Timer() as tm:
        dens = density_from_multiplier(D.multiplier_12())
        diff = normalize(dens - D.density_12())
    out = [_entry("density 1.2 literal", diff == 0, "symbolic", diff, D.ANCHORS["density_12"], tm.seconds)]
    out += _flux_entries("1.2", "1.2", D.density_12(), D.flux_12(), D.ANCHORS["flux_12"], cfg)
    out += _flux_entries("1.1a", "1.1a", D.density_11(), D.flux_11("a"), D.ANCHORS["flux_11a"], cfg)
    out += _flux_entries("1.1b", "1.1b", D.density_11(), D.flux_11("b"), D.ANCHORS["flux_11b"], cfg)
    return out


def check_ibragimov(cfg):
    out = []
    for cid in ("2.1", "2.2"):
        case = CATALOG[cid]
        sc = case.scenario()
        anchor = D.ANCHORS["vector_21" if cid == "2.1" else "vector_22"]
        with Timer() as tm:
            cv = ibragimov_vector(case.generator(), sc, D.phi_2x(), seed=cfg.seed)
            res = cv.residual()
        out.append(_zero_entry(f"conserved vector {cid} divergence", res, anchor, tm.seconds, cfg,
                               constraints=case.constraint_exprs()))
        with Timer() as tm:
            Tt_disp, _ = D.vector_2x(cid)
            ok = equivalent_densities(cv.Tt, Tt_disp, sc)
            literal = normalize(cv.Tt - Tt_disp) == 0
        out.append(_entry(f"conserved vector {cid} density matches display", ok, "symbolic",
                          0 if ok else "not equivalent", anchor, tm.seconds,
                          detail="literal match" if literal else "equal modulo D_x-exact terms"))
    sc = CATALOG["2.1"].scenario()
    Tt_disp, _ = D.vector_2x("2.1")
    for name, (vals, target) in D.mass_energy_specializations().items():
        with Timer() as tm:
            dens = substitute(Tt_disp, vals)
            ok = equivalent_densities(dens, target, sc)
        out.append(_entry(f"{name} specialization gives {render(target)}", ok, "symbolic",
                          normalize(dens - target), D.ANCHORS[name], tm.seconds))
    return out


def _example_reduction():
    sc = D.example_scenario()
    Tt, Tx = D.example_vector()
    k1 = param("k1")
    pick = {k1: 1, D.c1: 1, D.c2: 0}
    cv = ConservedVector(substitute(Tt, pick), substitute(Tx, pick), sc)
    frame = CanonicalFrame()
    _, Tr = to_canonical(cv, frame)
    return sc, cv, frame, Tr


def check_reduction(cfg):
    out = []
    with Timer() as tm:
        sc, cv, frame, Tr = _example_reduction()
        diff = normalize(Tr - D.example_Tr())
    out.append(_entry("T^r in canonical coordinates", diff == 0, "symbolic", diff, D.ANCHORS["Tr"], tm.seconds))
    with Timer() as tm:
        ode = reduced_ode(4 * Tr, D.kk)
        diff = normalize(ode.lhs - D.example_ode())
    out.append(_entry("reduced ODE", diff == 0, "symbolic", diff, D.ANCHORS["ode"], tm.seconds))
    with Timer() as tm:
        diff = normalize(sp.cancel(ode.first_order - D.example_first_order()))
    out.append(_entry("first-order p(w) form", diff == 0, "symbolic", diff, D.ANCHORS["first_order"],
                      tm.seconds, detail=f"excluded: {render(ode.excluded)} = 0"))
    full = ConservedVector(*D.example_vector(), sc)
    with Timer() as tm:
        res = association_residual(frame.generator, full)
        ok = all(normalize(r) == 0 for r in res)
    out.append(_entry("c d/dx + d/dt is associated", ok, "symbolic", res[0] if res[0] != 0 else res[1],
                      D.ANCHORS["association"], tm.seconds))
    with Timer() as tm:
        res = association_residual(D.example_generator(), full)
        nonzero = any(normalize(r) != 0 for r in res)
    out.append(_entry("full generator is not associated", nonzero, "symbolic",
                      "nonzero" if nonzero else 0, D.ANCHORS["association"], tm.seconds))
    return out


def check_properties(cfg, n_poly=200, n_tree=1000):
    rng = random.Random(cfg.seed)
    out = []
    with Timer() as tm:
        bad = []
        for _ in range(n_poly):
            p = random_diffpoly(rng)
            if euler(total_x(p)) != 0 or euler(total_t(p)) != 0:
                bad.append(p)
    out.append(_entry(f"Euler annihilates total derivatives ({n_poly} polynomials)", not bad, "symbolic",
                      bad[0] if bad else 0, D.ANCHORS["characterization"], tm.seconds,
                      detail=f"{len(bad)} failures" if bad else ""))
    with Timer() as tm:
        bad = []
        for _ in range(n_tree):
            e = normalize(random_tree(rng))
            try:
                back = parse(render(e))
            except GardnerError:
                bad.append(e)
                continue
            if normalize(back - e) != 0:
                bad.append(e)
    out.append(_entry(f"parser round trip ({n_tree} trees)", not bad, "symbolic",
                      bad[0] if bad else 0, "grammar", tm.seconds,
                      detail=f"{len(bad)} failures" if bad else ""))
    with Timer() as tm:
        lams = [D.multiplier_11(), forced_multiplier_11(), D.multiplier_12(), sp.S.One, u]
        bad = [lam for lam in lams if normalize(euler(density_from_multiplier(lam)) - lam) != 0]
    out.append(_entry("homotopy density inverts Euler on catalog multipliers", not bad, "symbolic",
                      bad[0] if bad else 0, D.ANCHORS["characterization"], tm.seconds))
    return out


def check_numerics(cfg):
    from .numerics import Grid, conserved_drift, convergence_study, predicted_change, simulate

    out = []
    anchor = D.ANCHORS["numerics"]
    const = Scenario.constant(1, 1, 1, 0, initial=sp.Rational(1, 10) * sp.sin(x))
    with Timer() as tm:
        runs = {N: simulate(const, Grid(N), (0, 1), n_store=11) for N in (256, 512)}
        mass = {N: conserved_drift(tr, u).max_drift for N, tr in runs.items()}
        energy = {N: conserved_drift(tr, u**2).max_drift for N, tr in runs.items()}
    for label, d, tol in (("mass", mass, 1e-6), ("energy", energy, 1e-4)):
        ratio = d[256] / d[512] if d[512] > 0 else float("inf")
        out.append(_entry(f"{label} drift, constant coefficients, N=512", d[512] < tol, "numeric",
                          d[512], anchor, tm.seconds / 2, detail=f"tolerance {tol:g}"))
        out.append(_entry(f"{label} drift refinement 256 -> 512", ratio >= 8, "numeric", ratio, anchor,
                          None, detail=f"drift {d[256]:.3e} -> {d[512]:.3e}"))

    vals = dict(k=sp.Rational(1, 2), k1=1, k2=sp.Rational(1, 2), k3=1, k4=1, a0=1, b0=1, c0=1,
                beta0=sp.Rational(1, 3))
    sc21 = CATALOG["2.1"].scenario(vals)
    Tt = substitute(D.vector_2x("2.1")[0], {D.c1: 1, D.c2: 1})
    with Timer() as tm:
        drift = {N: conserved_drift(simulate(sc21, Grid(N), (0, 1), initial=sp.sin(x) / 10, n_store=11),
                                    Tt).max_drift for N in (256, 512)}
    ratio = drift[256] / drift[512] if drift[512] > 0 else float("inf")
    out.append(_entry("subcase 2.1 density drift, N=512", drift[512] < 1e-3, "numeric", drift[512],
                      D.ANCHORS["vector_21"], tm.seconds))
    out.append(_entry("subcase 2.1 density drift refinement 256 -> 512", ratio >= 8, "numeric", ratio,
                      D.ANCHORS["vector_21"], None, detail=f"drift {drift[256]:.3e} -> {drift[512]:.3e}"))

    with Timer() as tm:
        damped = Scenario.constant(1, 1, 1, sp.Rational(1, 5))
        tr = simulate(damped, Grid(128), (0, 1), initial=1 + sp.sin(x) / 10, n_store=51)
        series = conserved_drift(tr, u)
        change = series.integrals[-1] - series.integrals[0]
        pred = predicted_change(tr, u)[-1]
        rel = abs(change - pred) / abs(pred)
    out.append(_entry("mass change with Q != 0 matches the source term", rel < 1e-3, "numeric", rel,
                      anchor, tm.seconds))

    with Timer() as tm:
        study = convergence_study(Scenario.constant(1, 1, 1, 0), sp.sin(x - t), t_end=0.02)
    out.append(_entry("manufactured solution spatial order", study.min_order >= 3.5, "numeric",
                      study.min_order, anchor, tm.seconds,
                      detail="errors " + ", ".join(f"{e:.2e}" for e in study.errors)))
    return out


def check_travelling_wave(cfg):
    with Timer() as tm:
        _, _, _, Tr = _example_reduction()
        ode = reduced_ode(4 * substitute(Tr, {D.c: 1}), 0)
        rng = np.random.default_rng(cfg.seed)
        xs, ts = rng.uniform(-1, 1, 200), rng.uniform(0, 1, 200)
        res = travelling_wave_check(ode, 1, 0.1, 0.0, (xs, ts))
    return [_entry("travelling wave from the reduced ODE solves the equation", res < 1e-6, "numeric",
                   res, D.ANCHORS["travelling_wave"], tm.seconds, detail="c = 1, k = 0, 200 points")]


def check_display_audit(cfg):
    """Corrected forms for the displays that fail, plus the 2.x displayed fluxes."""
    out = []
    for cid in ("1.1a", "1.1b"):
        sc = CATALOG[cid].scenario()
        cons = _case_constraints(cid)
        lam = forced_multiplier_11()
        with Timer() as tm:
            res = multiplier_residual(lam, sc.F)
        out.append(_zero_entry(f"forced multiplier {cid}", res, D.ANCHORS["multiplier_11"], tm.seconds,
                               cfg, constraints=cons))
        with Timer() as tm:
            dens = density_from_multiplier(lam)
            Tx = flux_from_density(dens, sc)
            res = divergence_residual(ConservedVector(dens, Tx, sc))
        out.append(_zero_entry(f"flux {cid} from forced density", res,
                               D.ANCHORS["flux_11a" if cid == "1.1a" else "flux_11b"], tm.seconds,
                               cfg, constraints=cons))
    for cid in ("2.1", "2.2"):
        sc = CATALOG[cid].scenario()
        with Timer() as tm:
            res = divergence_residual(ConservedVector(*D.vector_2x(cid), sc))
        out.append(_zero_entry(f"conserved vector {cid} displayed flux", res,
                               D.ANCHORS["vector_21" if cid == "2.1" else "vector_22"], tm.seconds, cfg,
                               detail=TYPO, constraints=_case_constraints(cid)))
    return out


GROUPS = (
    (1, "adjoint", check_adjoint),
    (2, "self-adjointness", check_selfadjoint),
    (3, "symmetry catalog", check_catalog),
    (4, "determining system", check_determining),
    (5, "multipliers", check_multipliers),
    (6, "densities and fluxes", check_fluxes),
    (7, "Ibragimov vectors", check_ibragimov),
    (8, "double reduction", check_reduction),
    (9, "property suites", check_properties),
    (10, "numeric cross-validation", check_numerics),
    (11, "travelling wave", check_travelling_wave),
    (None, "display audit", check_display_audit),
)


def run_suite(cfg=None, only=None, progress=None):
    """Run the groups (all, or the criterion numbers in ``only``) in order."""
    cfg = cfg or SuiteConfig()
    report = Report("golden checks", timings=cfg.timings)
    for num, title, fn in GROUPS:
        if only is not None and num not in only:
            continue
        if num == 10 and not cfg.numerics:
            continue
        for entry in fn(cfg):
            if num is not None:
                entry.name = f"[{num}] {entry.name}"
            report.add(entry)
        if progress:
            progress(num, title)
    return report
