"""Numeric evaluation of ring expressions and forms on dilaton profiles.

Provides deterministic quasi-random sampling away from singular sets and
central-finite-difference oracles for the symbolic derivatives.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

from scipy.stats import qmc

from .forms import FormExpr, exterior_derivative, wedge
from .profiles import DilatonProfile
from .ring import COORDS, CoefExpr, jet_sym

DEFAULT_STEP = 1e-4
DEFAULT_TOL = 1e-6


def build_assignment(prof: DilatonProfile, x: Sequence[float], consts: dict | None = None) -> dict:
    """Profile jets at x merged with constant-symbol values."""
    assi = prof.jets(x)
    if consts:
        for name, val in consts.items():
            key = name if isinstance(name, tuple) else ("c", name)
            assi[key] = float(val)
    return assi


def assigner(prof: DilatonProfile, consts: dict | None = None) -> Callable:
    """x -> assignment closure for repeated evaluation."""
    return lambda x: build_assignment(prof, x, consts)


def eval_coef(expr: CoefExpr, prof: DilatonProfile, x, consts=None) -> float:
    return expr.evaluate(build_assignment(prof, x, consts))


def eval_form(form: FormExpr, prof: DilatonProfile, x, consts=None) -> dict:
    """{index tuple: numeric value} of every stored component."""
    assi = build_assignment(prof, x, consts)
    return {idx: coef.evaluate(assi) for idx, coef in form.comps.items()}


def form_max_abs(form: FormExpr, prof: DilatonProfile, pts, consts=None) -> float:
    worst = 0.0
    for x in pts:
        for val in eval_form(form, prof, x, consts).values():
            worst = max(worst, abs(val))
    return worst


# ---------------------------------------------------------------------------
# sampling

def halton_points(n: int, seed: int, box, accept: Callable | None = None, max_rounds: int = 64):
    """n Halton points mapped into box=((lo,hi),)*4, filtered by accept."""
    lows = [float(lo) for lo, _ in box]
    spans = [float(hi) - float(lo) for lo, hi in box]
    sampler = qmc.Halton(d=4, scramble=True, seed=seed)
    pts: list[tuple] = []
    for _ in range(max_rounds):
        block = sampler.random(max(n, 8))
        for row in block:
            p = tuple(float(lows[i] + spans[i] * row[i]) for i in range(4))
            if accept is None or accept(p):
                pts.append(p)
                if len(pts) == n:
                    return pts
    raise RuntimeError(f"could not find {n} admissible sample points")


def profile_points(prof: DilatonProfile, n: int = 64, seed: int = 0, box=None, min_dist: float = 1e-3):
    """Deterministic points inside the profile domain, min_dist from the
    singular set."""
    if box is None:
        box = ((-0.45, 0.45),) * 4
    return halton_points(
        n,
        seed,
        box,
        accept=lambda p: prof.in_domain(p) and prof.singular_distance(p) >= min_dist,
    )


# ---------------------------------------------------------------------------
# finite-difference oracles

def fd_partial_check(
    expr: CoefExpr,
    assign: Callable,
    pts,
    step: float = DEFAULT_STEP,
    coords=COORDS,
) -> float:
    """Max relative error of symbolic partial_i(expr) against central FD."""
    worst = 0.0
    parts = {i: expr.partial(i) for i in coords}
    for x in pts:
        base = assign(x)
        for i in coords:
            sym = parts[i].evaluate(base)
            xp = tuple(c + (step if k == i - 1 else 0.0) for k, c in enumerate(x))
            xm = tuple(c - (step if k == i - 1 else 0.0) for k, c in enumerate(x))
            fd = (expr.evaluate(assign(xp)) - expr.evaluate(assign(xm))) / (2 * step)
            worst = max(worst, abs(sym - fd) / (1.0 + abs(sym)))
    return worst


def _basis_differential(c, J: tuple) -> FormExpr:
    """d(ebar^J) from the structure equations alone."""
    out = c.zero(len(J) + 1)
    for t, leg in enumerate(J):
        piece = c.dbar(leg)
        for before in reversed(J[:t]):
            piece = wedge(c.basis(before), piece)
        for after in J[t + 1:]:
            piece = wedge(piece, c.basis(after))
        if t % 2:
            piece = -piece
        out = out + piece
    return out


def fd_exterior_values(a: FormExpr, assign: Callable, x, step: float = DEFAULT_STEP) -> dict:
    """Components of d(a) at x with coefficient derivatives from central FD.

    The structure-equation part (d of the basis legs) is evaluated exactly;
    only the frame derivatives of the coefficient functions are replaced by
    finite differences, so the comparison isolates the symbolic
    differentiation of coefficients.
    """
    c = a.coframe
    base = assign(x)
    fval = base[jet_sym()]
    acc: dict[tuple, float] = {}

    def add(idx, val):
        acc[idx] = acc.get(idx, 0.0) + val

    for J, coef in a.comps.items():
        aJ = coef.evaluate(base)
        for K, ce in _basis_differential(c, J).comps.items():
            add(K, aJ * ce.evaluate(base))
        for i in COORDS:
            if i in J:
                continue
            xp = tuple(cc + (step if k == i - 1 else 0.0) for k, cc in enumerate(x))
            xm = tuple(cc - (step if k == i - 1 else 0.0) for k, cc in enumerate(x))
            fd = (coef.evaluate(assign(xp)) - coef.evaluate(assign(xm))) / (2 * step)
            weight = math.exp(-c.weights[i - 1] * fval)
            merged = tuple(sorted((i,) + J))
            sign = 1
            for leg in J:
                if leg < i:
                    sign = -sign
            add(merged, sign * fd * weight)
    return acc


def fd_exterior_check(a: FormExpr, assign: Callable, pts, step: float = DEFAULT_STEP) -> float:
    """Max relative error between engine d(a) and its FD counterpart."""
    da = exterior_derivative(a)
    worst = 0.0
    for x in pts:
        base = assign(x)
        sym = {idx: coef.evaluate(base) for idx, coef in da.comps.items()}
        fdv = fd_exterior_values(a, assign, x, step)
        for idx in set(sym) | set(fdv):
            s = sym.get(idx, 0.0)
            f = fdv.get(idx, 0.0)
            worst = max(worst, abs(s - f) / (1.0 + abs(s)))
    return worst


def perturbed_assigner(assign: Callable, sym: tuple, delta: float) -> Callable:
    """Sensitivity control: shift one bound symbol by delta."""

    def wrapped(x):
        out = dict(assign(x))
        out[sym] = out[sym] + delta
        return out

    return wrapped
