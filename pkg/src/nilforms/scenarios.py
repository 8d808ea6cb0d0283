"""Catalogued verification scenarios and their deterministic reports.

Each scenario bundles a frame, a dilaton profile, an auxiliary connection
and a parameter regime, runs a fixed list of symbolic and numeric checks,
and assembles a JSON-serializable report.  Check failures and exceptions
are captured into the report, never raised past it.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import anomaly, numeric, ring
from .connection import (
    build_DB,
    build_instanton_DLambda,
    curvature,
    lam_rank,
    lam_squared,
    levi_civita,
    pontryagin4,
    torsion_connection,
)
from .elliptic import cubic_residual, half_period, half_period_agm, weierstrass_p
from .forms import FormExpr, exterior_derivative, wedge
from .frames import (
    abs_A_squared,
    build_coframe,
    contraction_eps5,
    contraction_eps6,
    h5,
    h21,
    k_a,
    quaternionic_heisenberg,
)
from .gstruct import (
    build_g2,
    build_su2,
    build_su3,
    check_integrable_pure,
    direct_torsion,
    g2_holonomy_residual,
    g2_instanton_residual,
    scalar_identity_residual,
    su2_holonomy_residual,
    su2_instanton_residual,
    su3_structure_residuals,
    su2_structure_residuals,
    torsion_3form,
)
from .profiles import BadParams, profile
from .ring import CoefExpr, const, rat

SCHEMA_VERSION = 1

SCENARIOS = (
    "thm-7d-negative",
    "thm-7d-positive",
    "ball-7d",
    "thm-5d-negative",
    "thm-5d-positive",
    "contraction-6d",
    "contraction-5d",
)


@dataclass
class ScenarioSpec:
    name: str
    seed: int = 0
    config: dict = field(default_factory=dict)
    overrides: tuple = ()


@dataclass
class CheckResult:
    id: str
    status: str  # "pass" | "fail" | "error"
    residual: float | None = None
    details: dict = field(default_factory=dict)


@dataclass
class ScenarioReport:
    name: str
    seed: int
    checks: list
    values: dict
    overrides: tuple = ()
    wall_time: float = 0.0  # informational only; excluded from serialization

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.name,
            "seed": self.seed,
            "overrides": list(self.overrides),
            "passed": self.passed,
            "summary": {
                "total": len(self.checks),
                "passed": sum(1 for c in self.checks if c.status == "pass"),
                "failed": sum(1 for c in self.checks if c.status != "pass"),
            },
            "checks": [
                {
                    "id": c.id,
                    "status": c.status,
                    "residual": _sanitize(c.residual),
                    "details": _sanitize(c.details),
                }
                for c in self.checks
            ],
            "values": _sanitize(self.values),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _sanitize(obj):
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, CoefExpr):
        return repr(obj)
    if isinstance(obj, float):
        return float(obj)
    if isinstance(obj, (int, str, bool)) or obj is None:
        return obj
    return repr(obj)


def _ck(checks: list, cid: str, fn) -> None:
    try:
        ok, residual, details = fn()
        checks.append(CheckResult(cid, "pass" if ok else "fail", residual, details))
    except Exception as exc:  # captured into the report, never thrown past it
        checks.append(CheckResult(cid, "error", None, {"exception": repr(exc)}))


# ---------------------------------------------------------------------------
# shared check bodies

def _forms_all_zero(forms) -> tuple[bool, int]:
    items = forms.values() if isinstance(forms, dict) else forms
    bad = 0
    for f in items:
        comps = f.comps if isinstance(f, FormExpr) else f.terms
        if comps:
            bad += 1
    return bad == 0, bad


def _integrability(c):
    res = c.integrability_residuals()
    ok, bad = _forms_all_zero(res)
    return ok, None, {"legs": len(res), "nonzero": bad}


def _g2_structure(c):
    g = build_g2(c)
    r1, r2 = check_integrable_pure(g)
    seven_vol = c.form(7, {tuple(range(1, 8)): rat(7)})
    norm_ok = wedge(g.theta, g.star_theta) == seven_vol
    ok = (not r1.comps) and (not r2.comps) and norm_ok
    return ok, None, {
        "coclosed_terms": len(r1.comps),
        "pure_type_terms": len(r2.comps),
        "normalization_7vol": norm_ok,
    }


def _su2_structure(c):
    s = build_su2(c)
    res = su2_structure_residuals(s)
    ok, bad = _forms_all_zero(res)
    return ok, None, {"residuals": len(res), "nonzero": bad}


def _torsion_chain(c):
    """Torsion block formula vs the structure route, and the dT closed form."""
    T = direct_torsion(c)
    if c.dim == 7:
        g = build_g2(c)
        route = torsion_3form(g)
        match = route == T
    elif c.dim == 5:
        s = build_su2(c)
        deta = exterior_derivative(s.eta)
        dpsi = wedge(_dpsi(c), s.F)
        route = wedge(s.eta, deta) + dpsi * rat(2)
        match = route == T
    else:
        match = True  # 6D has no second route catalogued
    dT = exterior_derivative(T)
    absA2 = abs_A_squared(c)
    want = (-(anomaly.lap_e2f() + rat(2) * absA2)).scale_expf(-4)
    got = dT.comps.get((1, 2, 3, 4), ring.ZERO)
    pure = all(idx == (1, 2, 3, 4) for idx in dT.comps)
    closed_form = pure and (got - want).terms == {}
    return match and closed_form, None, {
        "route_equality": match,
        "dT_pure_volume": pure,
        "dT_closed_form": closed_form,
    }


def _dpsi(c):
    from .forms import dpsi_f_form

    return dpsi_f_form(c)


def _factor_through(entries: dict, factor: CoefExpr):
    """Every nonzero coefficient must be an exact ring multiple of factor."""
    total = 0
    nonzero = 0
    for form in entries.values():
        comps = form.comps if isinstance(form, FormExpr) else {None: form}
        for coef in comps.values():
            total += 1
            if not coef.terms:
                continue
            nonzero += 1
            if ring.try_divide(coef, factor) is None:
                return False, None, {"nonzero": nonzero, "unfactored": repr(coef)}
    return True, None, {"coefficients": total, "nonzero": nonzero}


def _instanton_zero(entries: dict):
    ok, bad = _forms_all_zero(entries)
    return ok, None, {"entries": len(entries), "nonzero": bad}


def _nabla_pm(c):
    T = direct_torsion(c)
    lc = levi_civita(c)
    wm = torsion_connection(lc, T, -1)
    wp = torsion_connection(lc, T, +1)
    return T, wm, wp


# ---------------------------------------------------------------------------
# numeric helpers

def _line_points(tau: float, n: int = 64):
    return [(0.1 * tau + 1.8 * tau * k / (n - 1), 0.0, 0.0, 0.0) for k in range(n)]


def _rational_points(seed: int, n: int = 5, bound: int = 7):
    """Deterministic rational sample points away from the origin."""
    pts = []
    s = seed % 97 + 2
    for k in range(n):
        num = [((s + 3 * k + i) % bound) + 1 for i in range(4)]
        den = [((s * (k + 2) + i) % bound) + 2 for i in range(4)]
        pts.append(tuple(Fraction(num[i], den[i] + num[i]) for i in range(4)))
    return pts


def _numeric_lam(config, default):
    lam = config.get("lam", default)
    return lam


# ---------------------------------------------------------------------------
# scenario bodies

def _weierstrass_negative(checks, values, *, dim: int, seed: int, config: dict, overrides):
    """Shared body of thm-7d-negative / thm-5d-negative."""
    if dim == 7:
        csym = k_a()
        lam_default = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
        A_num = config.get("A", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    else:
        csym = h21()
        lam_default = [2, -1, 1]
        A_num = config.get("A", [[1, 1, 1]])
    lam = _numeric_lam(config, lam_default)
    if "rank2-lambda" in overrides:
        if dim != 7:
            raise BadParams("rank2-lambda override applies to the 7D scenario")
        lam = [[1, 0, 0], [0, 1, 0], [0, 0, 0]]
    values["lam"] = lam

    _ck(checks, "frame-integrability", lambda: _integrability(csym))
    if dim == 7:
        _ck(checks, "structure-integrable-pure", lambda: _g2_structure(csym))
    else:
        _ck(checks, "structure-residuals", lambda: _su2_structure(csym))
    _ck(checks, "torsion-chain", lambda: _torsion_chain(csym))

    T, wm, wp = _nabla_pm(csym)
    cur_m = curvature(wm)
    cur_p = curvature(wp)
    absA2 = abs_A_squared(csym)
    factor = anomaly.lap_e2f() + rat(2) * absA2

    rank = lam_rank(lam, csym)
    values["lam_rank"] = rank
    _ck(checks, "gauge-rank-one", lambda: (rank == 1, None, {"rank": rank}))

    if dim == 7:
        g = build_g2(csym)
        dl = build_instanton_DLambda(lam, csym)
        _ck(checks, "gauge-instanton", lambda: _instanton_zero(g2_instanton_residual(curvature(dl), g)))
        _ck(checks, "minus-instanton-factors", lambda: _factor_through(g2_instanton_residual(cur_m, g), factor))
        _ck(checks, "plus-holonomy-zero", lambda: _instanton_zero(g2_holonomy_residual(cur_p, g)))
    else:
        s = build_su2(csym)
        dl = build_instanton_DLambda(lam, csym)
        _ck(checks, "gauge-instanton", lambda: _instanton_zero(su2_instanton_residual(curvature(dl), s)))
        _ck(checks, "minus-instanton-factors", lambda: _factor_through(su2_instanton_residual(cur_m, s), factor))
        _ck(checks, "plus-holonomy-zero", lambda: _instanton_zero(su2_holonomy_residual(cur_p, s)))

    lam2 = lam_squared(lam, csym)
    values["p1_volume_reading"] = "unbarred"

    def _anomaly_sym():
        r = anomaly.anomaly_residual(csym, const("alphaP"), ("DLambda", lam))
        want = anomaly.displayed_residual_dlambda(csym, lam, const("alphaP"))
        ok = (r - want).terms == {}
        return ok, None, {"terms": len(r.terms)}

    _ck(checks, "anomaly-residual-closed-form", _anomaly_sym)

    def _reduction():
        r = anomaly.anomaly_residual(csym, const("alphaP"), ("DLambda", lam))
        ode = anomaly.reduce_onevar(r, absA2, lam2)
        ok = (ode - anomaly.solv4_ode(absA2)).terms == {}
        return ok, None, {"ode_terms": len(ode.terms)}

    _ck(checks, "reduction-first-integral", _reduction)
    _ck(
        checks,
        "u-substitution-identity",
        lambda: (
            anomaly.u_identity_residual(const("absA2")).terms == {}
            and anomaly.weierstrass_cubic_match().terms == {},
            None,
            {},
        ),
    )

    # numeric leg: Weierstrass profile under the constraint 2|A|^2 = alpha^2 lam^2
    cnum = k_a(A_num) if dim == 7 else h21(*A_num[0])
    absA2q = ring.evaluate_exact(abs_A_squared(cnum), {}, 1)
    lam2q = ring.evaluate_exact(lam_squared(lam, cnum), {}, 1)
    absA2n = float(absA2q)
    lam2n = float(lam2q)
    values["absA2"] = absA2q
    values["lam2"] = lam2q

    def _numeric_ode():
        if lam2n <= 0:
            raise BadParams("constraint needs lam^2 > 0")
        alpha = math.sqrt(2.0 * absA2n / lam2n)
        d = anomaly.d_parameter(absA2n, alpha)
        tau = half_period(d)
        values["alpha"] = alpha
        values["d"] = d
        values["tau_plus"] = tau
        values["alphaP"] = -alpha * alpha
        prof = profile("weierstrass", d=d, alpha=alpha)
        pts = _line_points(tau, config.get("npoints", 64))
        worst_ode = max(abs(cubic_residual(x[0], d)) for x in pts)
        worst_per = max(
            abs(weierstrass_p(x[0] + 2 * tau, d)[0] - weierstrass_p(x[0], d)[0]) for x in pts
        )
        worst_first = max(
            abs(anomaly.solv4_profile_residual(prof, absA2n, alpha, x[0])) for x in pts
        )
        r = anomaly.anomaly_residual(cnum, const("alphaP"), ("DLambda", lam))
        ode = anomaly.reduce_onevar(r, rat(absA2q), rat(lam2q))
        worst_res = 0.0
        for x in pts:
            assi = numeric.build_assignment(prof, x, {"alpha": alpha})
            worst_res = max(worst_res, abs(ode.evaluate(assi)))
        ok = worst_ode <= 1e-9 and worst_per <= 1e-8 and worst_first <= 1e-7 and worst_res <= 1e-6
        return ok, worst_ode, {
            "cubic": worst_ode,
            "periodicity": worst_per,
            "first_integral": worst_first,
            "reduced_residual": worst_res,
        }

    _ck(checks, "weierstrass-profile-numeric", _numeric_ode)
    _ck(
        checks,
        "half-period-agm",
        lambda: (
            abs(half_period(1.0) - half_period_agm(1.0)) <= 1e-10,
            abs(half_period(1.0) - half_period_agm(1.0)),
            {},
        ),
    )


def _fundamental_positive(checks, values, *, dim: int, seed: int, config: dict):
    """Shared body of thm-7d-positive / thm-5d-positive (gauge choice B = O)."""
    if dim == 7:
        csym = k_a()
        B = config.get("B", [[0, 0, 0], [0, 0, 0], [0, 0, 0]])
        A_num = config.get("A", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        cnum = k_a(A_num)
    else:
        csym = h21()
        B = config.get("B", [0, 0, 0])
        A_num = config.get("A", [[1, 1, 1]])
        cnum = h21(*A_num[0])
    Brows = B if isinstance(B[0], (list, tuple)) else [B]
    absB2 = sum(Fraction(x) ** 2 for row in Brows for x in row)
    values["absB2"] = absB2

    _ck(checks, "frame-integrability", lambda: _integrability(csym))
    if dim == 7:
        _ck(checks, "structure-integrable-pure", lambda: _g2_structure(csym))
    else:
        _ck(checks, "structure-residuals", lambda: _su2_structure(csym))
    _ck(checks, "torsion-chain", lambda: _torsion_chain(csym))

    absA2 = abs_A_squared(csym)
    db = build_DB(B, csym)
    factor_db = anomaly.lap_e2f() + rat(2) * rat(absB2)

    def _db_instanton_condition():
        if dim == 7:
            g = build_g2(csym)
            entries = g2_instanton_residual(curvature(db), g)
        else:
            s = build_su2(csym)
            entries = su2_instanton_residual(curvature(db), s)
        return _factor_through(entries, factor_db)

    _ck(checks, "gauge-instanton-condition", _db_instanton_condition)

    def _anomaly_sym():
        r = anomaly.anomaly_residual(csym, const("alphaP"), ("DB", B))
        want = anomaly.displayed_residual_db(csym, rat(absB2), const("alphaP"))
        return (r - want).terms == {}, None, {"terms": len(r.terms)}

    _ck(checks, "anomaly-residual-closed-form", _anomaly_sym)

    def _p1_difference():
        T = direct_torsion(csym)
        lc = levi_civita(csym)
        p1m = pontryagin4(curvature(torsion_connection(lc, T, -1)))
        p1g = pontryagin4(curvature(db))
        diff = p1m - p1g
        want = ((absA2 - rat(absB2)) * anomaly.lap_e_m2f() * rat(-3)).scale_expf(-4)
        got = diff.comps.get((1, 2, 3, 4), ring.ZERO)
        pure = all(idx == (1, 2, 3, 4) for idx in diff.comps)
        ok = pure and (got - want).terms == {}
        return ok, None, {"pure_volume": pure}

    _ck(checks, "p1-difference-closed-form", _p1_difference)

    # engine-derived constant c*: e^{2f} = c*/|x-e|^2 kills the residual
    absA2q = ring.evaluate_exact(abs_A_squared(cnum), {}, 1)

    def _cstar():
        # residual on the profile: lap e^{2f} = 0 and lap e^{-2f} = 8/c exactly,
        # measured from the engine polynomials on the c = 1 profile
        prof1 = profile("fundamental", c=1)
        pts = _rational_points(seed)
        lap_p = anomaly.lap_e2f()
        lap_m = anomaly.lap_e_m2f()
        harm = []
        k_vals = set()
        for x in pts:
            g, jets = prof1.jets_exact(x)
            harm.append(ring.evaluate_exact(lap_p, jets, g))
            k_vals.add(ring.evaluate_exact(lap_m, jets, g))
        if any(h != 0 for h in harm) or len(k_vals) != 1:
            return False, None, {"harmonic": [str(h) for h in harm]}
        kconst = k_vals.pop()  # lap e^{-2f} on the c=1 profile; scales as k/c
        # solve  2|A|^2 - (3/4) alphaP (|A|^2-|B|^2) k / c = 0  for c
        cstar_over_alphaP = Fraction(3, 4) * (absA2q - absB2) * kconst / (2 * absA2q)
        values["lap_e_m2f_c1"] = kconst
        values["cstar_over_alphaP"] = cstar_over_alphaP
        values["comparison_constant_over_alphaP"] = Fraction(3, 4)
        values["cstar_vs_comparison_ratio"] = cstar_over_alphaP / Fraction(3, 4)
        # certify residual(c*) == 0 exactly, alphaP kept symbolic via alphaP = 1
        alphaP = Fraction(config.get("alphaP", 1))
        if alphaP <= 0:
            raise BadParams("positive-alphaP scenario needs alphaP > 0")
        cstar = cstar_over_alphaP * alphaP
        prof = profile("fundamental", c=cstar)
        rfull = anomaly.anomaly_residual(cnum, const("alphaP"), ("DB", B))
        worst = []
        for x in pts:
            g, jets = prof.jets_exact(x)
            assi = dict(jets)
            assi[("c", "alphaP")] = alphaP
            worst.append(ring.evaluate_exact(rfull, assi, g))
        ok = all(w == 0 for w in worst)
        values["alphaP"] = alphaP
        values["cstar"] = cstar
        return ok, None, {"residuals": [str(w) for w in worst]}

    _ck(checks, "fundamental-cstar-derivation", _cstar)

    def _harmonic():
        prof = profile("fundamental", alphaP=Fraction(config.get("alphaP", 1)))
        lap_p = anomaly.lap_e2f()
        vals = []
        for x in _rational_points(seed + 1):
            g, jets = prof.jets_exact(x)
            vals.append(ring.evaluate_exact(lap_p, jets, g))
        return all(v == 0 for v in vals), None, {"points": len(vals)}

    _ck(checks, "profile-harmonic-exact", _harmonic)


def _ball_7d(checks, values, *, seed: int, config: dict):
    A_num = config.get("A", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    csym = k_a()
    cnum = k_a(A_num)
    absA2q = ring.evaluate_exact(abs_A_squared(cnum), {}, 1)
    values["absA2"] = absA2q
    values["p1_volume_reading"] = "unbarred"

    _ck(checks, "frame-integrability", lambda: _integrability(csym))
    _ck(checks, "structure-integrable-pure", lambda: _g2_structure(csym))
    _ck(checks, "torsion-chain", lambda: _torsion_chain(csym))

    prof = profile("ball", absA2=absA2q)

    def _ball_equation():
        expr = anomaly.lap_e2f() + rat(2) * rat(absA2q)
        vals = []
        for x in _rational_points(seed):
            xs = tuple(v / 2 for v in x)  # keep |x| < 1
            g, jets = prof.jets_exact(xs)
            vals.append(ring.evaluate_exact(expr, jets, g))
        return all(v == 0 for v in vals), None, {"points": len(vals)}

    _ck(checks, "ball-solves-instanton-equation", _ball_equation)

    T, wm, _wp = _nabla_pm(csym)
    g = build_g2(csym)
    factor = anomaly.lap_e2f() + rat(2) * abs_A_squared(csym)
    _ck(checks, "minus-instanton-factors", lambda: _factor_through(g2_instanton_residual(curvature(wm), g), factor))

    def _numeric_residuals():
        Tn, wmn, _ = _nabla_pm(cnum)
        gn = build_g2(cnum)
        res = g2_instanton_residual(curvature(wmn), gn)
        dT = exterior_derivative(Tn)
        pts = numeric.profile_points(prof, n=config.get("npoints", 64), seed=seed)
        worst = 0.0
        for x in pts:
            assi = numeric.build_assignment(prof, x)
            for coef in res.values():
                worst = max(worst, abs(coef.evaluate(assi)))
            for coef in dT.comps.values():
                worst = max(worst, abs(coef.evaluate(assi)))
        return worst <= 1e-9, worst, {"points": len(pts)}

    _ck(checks, "instanton-and-closed-torsion-numeric", _numeric_residuals)

    def _normalization_probe():
        pts = numeric.profile_points(prof, n=16, seed=seed + 7)
        outcome = {}
        for phi_factor in (-1, -2):
            expr = scalar_identity_residual(cnum, phi_factor)
            worst = 0.0
            for x in pts:
                assi = numeric.build_assignment(prof, x)
                worst = max(worst, abs(expr.evaluate(assi)))
            outcome[f"phi={phi_factor}f"] = worst
        satisfied = [k for k, v in outcome.items() if v <= 1e-8]
        values["scalar_identity_normalization"] = satisfied
        values["scalar_identity_residuals"] = outcome
        # the probe records the outcome; it passes when exactly one choice fits
        return len(satisfied) == 1, min(outcome.values()), outcome

    _ck(checks, "dilaton-normalization-probe", _normalization_probe)


def _contraction(checks, values, *, target_dim: int, seed: int, config: dict):
    sym_a = const("a")
    sym_b = const("b")
    if target_dim == 6:
        family = lambda eps, drop: contraction_eps6(eps, sym_a, sym_b, drop=drop)
        direct = h5(sym_a, sym_b)
        dropped_legs = (7,)
        lam7 = [[1, 1, 0], [0, 0, 0], [0, 0, 0]]
        lam_direct = [[1, 1], [0, 0], [0, 0]]
        a_num = {"a": 1.25, "b": 0.75}
    else:
        a1, a2, a3 = const("a1"), const("a2"), const("a3")
        family = lambda eps, drop: contraction_eps5(eps, a1, a2, a3, drop=drop)
        direct = h21(a1, a2, a3)
        dropped_legs = (6, 7)
        lam7 = [[1, 0, 0], [2, 0, 0], [0, 0, 0]]
        lam_direct = [1, 2, 0]
        a_num = {"a1": 1.0, "a2": -0.5, "a3": 0.25}

    _ck(checks, "family-integrability", lambda: (
        all(_integrability(family(Fraction(e), False))[0] for e in (Fraction(1, 10), Fraction(1, 100), 0)),
        None,
        {},
    ))

    def _coframe_limit():
        c0 = family(0, True)
        same = c0.dim == direct.dim and c0.struct == direct.struct
        return same, None, {"dim": c0.dim}

    _ck(checks, "contracted-coframe-equals-direct", _coframe_limit)

    def _torsion_limit():
        c0 = family(0, True)
        ok = direct_torsion(c0) == direct_torsion(direct)
        return ok, None, {}

    _ck(checks, "contracted-torsion-equals-direct", _torsion_limit)

    def _structure_limit():
        c0 = family(0, True)
        if target_dim == 6:
            s = build_su3(c0)
            res = su3_structure_residuals(s)
        else:
            s = build_su2(c0)
            res = su2_structure_residuals(s)
        ok, bad = _forms_all_zero(res)
        return ok, None, {"nonzero": bad}

    _ck(checks, "contracted-structure-residuals", _structure_limit)

    def _residual_limit():
        c_path = family(0, False)  # full-leg frame with the degenerate rows kept
        r_path = anomaly.anomaly_residual(c_path, const("alphaP"), ("DLambda", lam7))
        c0 = family(0, True)
        r_direct = anomaly.anomaly_residual(c0, const("alphaP"), ("DLambda", lam_direct))
        ok = (r_path - r_direct).terms == {}
        return ok, None, {"terms": len(r_direct.terms)}

    _ck(checks, "contracted-anomaly-equals-direct", _residual_limit)

    def _decay():
        prof = profile("ball", absA2=3)
        pts = numeric.profile_points(prof, n=12, seed=seed)
        maxima = {}
        for e in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
            cn = build_coframe(
                "eps6" if target_dim == 6 else "eps5",
                eps=e,
                **a_num,
            )
            _T, wmn, _ = _nabla_pm(cn)
            cur = curvature(wmn)
            worst = 0.0
            for (i, j) in cur.pairs():
                touches_slot = i in dropped_legs or j in dropped_legs
                for idx, coef in cur.entry(i, j).comps.items():
                    touches = touches_slot or any(l in dropped_legs for l in idx)
                    if not touches:
                        continue
                    for x in pts:
                        assi = numeric.build_assignment(prof, x)
                        worst = max(worst, abs(coef.evaluate(assi)))
            maxima[float(e)] = worst
        r1 = maxima[0.1] / maxima[0.01]
        r2 = maxima[0.01] / maxima[0.001]
        ok = abs(r1 - 10.0) <= 1.0 and abs(r2 - 10.0) <= 1.0
        values["dropped_leg_maxima"] = maxima
        values["decay_ratios"] = [r1, r2]
        return ok, None, {"ratios": [r1, r2]}

    _ck(checks, "dropped-leg-curvature-decay", _decay)


# ---------------------------------------------------------------------------
# public driver

def run_scenario(spec, seed: int | None = None, config: dict | None = None, overrides=()) -> ScenarioReport:
    if isinstance(spec, ScenarioSpec):
        name = spec.name
        seed = spec.seed if seed is None else seed
        config = dict(spec.config) if config is None else config
        overrides = tuple(spec.overrides) + tuple(overrides)
    else:
        name = str(spec)
    seed = 0 if seed is None else int(seed)
    config = {} if config is None else dict(config)
    overrides = tuple(overrides)
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario {name!r}; choose from {SCENARIOS}")

    checks: list[CheckResult] = []
    values: dict = {}
    t0 = time.perf_counter()
    if name == "thm-7d-negative":
        _weierstrass_negative(checks, values, dim=7, seed=seed, config=config, overrides=overrides)
    elif name == "thm-5d-negative":
        _weierstrass_negative(checks, values, dim=5, seed=seed, config=config, overrides=overrides)
    elif name == "thm-7d-positive":
        _fundamental_positive(checks, values, dim=7, seed=seed, config=config)
    elif name == "thm-5d-positive":
        _fundamental_positive(checks, values, dim=5, seed=seed, config=config)
    elif name == "ball-7d":
        _ball_7d(checks, values, seed=seed, config=config)
    elif name == "contraction-6d":
        _contraction(checks, values, target_dim=6, seed=seed, config=config)
    elif name == "contraction-5d":
        _contraction(checks, values, target_dim=5, seed=seed, config=config)
    wall = time.perf_counter() - t0
    return ScenarioReport(name, seed, checks, values, overrides, wall)
