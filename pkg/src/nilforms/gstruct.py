"""Special structures carried by the rescaled coframes and their torsion.

The 7-dim coframes carry a G2 form, the 5-dim ones an almost-contact
SU(2) quadruple, the 6-dim contractions an SU(3) triple.  All three share
one totally skew torsion 3-form, computed uniformly by the block formula

    T = 2 d^psi f wedge omegabar_1 + sum_r d ebar^{4+r} wedge ebar^{4+r},

which in dimension 7 coincides with the Hodge expression
``star(2 df wedge Theta - d Theta)`` and in dimension 5 with
``eta wedge d eta + 2 d^psi f wedge F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ring
from .forms import (
    CoframeSpec,
    DimensionMismatch,
    FormExpr,
    df_form,
    dpsi_f_form,
    exterior_derivative,
    hodge_star,
    hodge_star_horizontal,
    omega_bar,
    sigma_bar,
)


class NotAntiSelfDual(Exception):
    """Raised when d eta acquires a self-dual or non-horizontal component."""


# ---------------------------------------------------------------------------
# shared torsion

def direct_torsion(c: CoframeSpec) -> FormExpr:
    """The block torsion 3-form (valid in dimensions 5, 6 and 7)."""
    T = (dpsi_f_form(c) * 2).wedge(omega_bar(c, 1))
    for leg in range(5, c.dim + 1):
        T = T + c.dbar(leg).wedge(c.basis(leg))
    return T


# ---------------------------------------------------------------------------
# G2 (dimension 7)

@dataclass
class G2Structure:
    coframe: CoframeSpec
    theta: FormExpr
    star_theta: FormExpr


def build_g2(c: CoframeSpec) -> G2Structure:
    if c.dim != 7:
        raise DimensionMismatch("G2 structure needs a 7-dim coframe")
    theta = (
        omega_bar(c, 1).wedge(c.basis(7))
        + omega_bar(c, 2).wedge(c.basis(5))
        - omega_bar(c, 3).wedge(c.basis(6))
        + c.basis(5, 6, 7)
    )
    return G2Structure(c, theta, hodge_star(theta))


def check_integrable_pure(g: G2Structure) -> tuple[FormExpr, FormExpr]:
    """Residuals (d star Theta - 2 df wedge star Theta, d Theta wedge Theta)."""
    c = g.coframe
    r1 = exterior_derivative(g.star_theta) - (df_form(c) * 2).wedge(g.star_theta)
    r2 = exterior_derivative(g.theta).wedge(g.theta)
    return r1, r2


def torsion_3form(g: G2Structure) -> FormExpr:
    """T = star(2 df wedge Theta - d Theta)."""
    c = g.coframe
    return hodge_star((df_form(c) * 2).wedge(g.theta) - exterior_derivative(g.theta))


def g2_instanton_residual(curv, g: G2Structure) -> dict[tuple, ring.CoefExpr]:
    """residual(i, j, m) = sum_{k,l} Omega^i_j(ebar_k, ebar_l) Theta(ebar_k, ebar_l, ebar_m)."""
    c = g.coframe
    out = {}
    theta = g.theta
    for (i, j) in curv.pairs():
        om = curv.entry(i, j)
        if not om and not theta:
            continue
        for m in range(1, 8):
            total = ring.CoefExpr()
            for (k, l), oc in om.comps.items():
                tc = theta.value_at(k, l, m)
                if tc:
                    total = total + oc * tc * 2
            if total:
                out[(i, j, m)] = total
    return out


def g2_holonomy_residual(curv, g: G2Structure) -> dict[tuple, ring.CoefExpr]:
    """residual(k, l, m) = sum_{i,j} Omega^i_j(ebar_k, ebar_l) Theta(ebar_i, ebar_j, ebar_m).

    Contracts the endomorphism slots against Theta: vanishing for every
    (k, l, m) says each curvature matrix lies in the g2 subalgebra, i.e.
    the connection's holonomy preserves the structure.  This is the
    contraction that vanishes identically for the (+)-torsion connection;
    g2_instanton_residual contracts the form slots instead.
    """
    c = g.coframe
    out = {}
    pair_forms = {}
    for (i, j) in curv.pairs():
        om = curv.entry(i, j)
        for (k, l), oc in om.comps.items():
            pair_forms.setdefault((k, l), []).append((i, j, oc))
    for (k, l), contribs in pair_forms.items():
        for m in range(1, 8):
            total = ring.CoefExpr()
            for (i, j, oc) in contribs:
                tc = g.theta.value_at(i, j, m)
                if tc:
                    total = total + oc * tc * 2
            if total:
                out[(k, l, m)] = total
    return out


# ---------------------------------------------------------------------------
# SU(2) (dimension 5)

@dataclass
class SU2Structure:
    coframe: CoframeSpec
    eta: FormExpr
    F: FormExpr
    omega2: FormExpr
    omega3: FormExpr


def build_su2(c: CoframeSpec) -> SU2Structure:
    if c.dim != 5:
        raise DimensionMismatch("SU(2) structure needs a 5-dim coframe")
    deta = c.dbar(5)
    for idx in deta.comps:
        if any(i > 4 for i in idx):
            raise NotAntiSelfDual("d eta has a non-horizontal component")
    if not (hodge_star_horizontal(deta) + deta).is_zero():
        raise NotAntiSelfDual("d eta has a self-dual component")
    return SU2Structure(c, c.basis(5), omega_bar(c, 1), omega_bar(c, 2), omega_bar(c, 3))


def su2_structure_residuals(s: SU2Structure) -> dict[str, FormExpr]:
    """Residuals of d omega_t = 2 df wedge omega_t and star_H d eta = -d eta."""
    c = s.coframe
    two_df = df_form(c) * 2
    out = {}
    for t, om in (("omega1", s.F), ("omega2", s.omega2), ("omega3", s.omega3)):
        out[f"d{t}"] = exterior_derivative(om) - two_df.wedge(om)
    deta = exterior_derivative(s.eta)
    out["asd"] = hodge_star_horizontal(deta) + deta
    return out


def psi_image(k: int) -> tuple[int, int]:
    """(sign, index) of psi ebar_k; (0, 0) when psi kills the vector."""
    table = {1: (-1, 2), 2: (1, 1), 3: (-1, 4), 4: (1, 3)}
    return table.get(k, (0, 0))


def su2_instanton_residual(curv, s: SU2Structure) -> dict[tuple, ring.CoefExpr]:
    """Self-dual and mixed components of each curvature entry.

    Vanishing of all entries is equivalent to the psi-compatibility pair
    Omega(psi X, psi Y) = Omega(X, Y), sum_k Omega(ebar_k, psi ebar_k) = 0.
    """
    half = ring.rat(1, 2)
    out = {}
    for (i, j) in curv.pairs():
        om = curv.entry(i, j)
        w1 = (om.value_at(1, 2) + om.value_at(3, 4)) * half
        w2 = (om.value_at(1, 3) - om.value_at(2, 4)) * half
        w3 = (om.value_at(1, 4) + om.value_at(2, 3)) * half
        for label, val in (("w1", w1), ("w2", w2), ("w3", w3)):
            if val:
                out[(i, j, label)] = val
        for k in range(1, 5):
            val = om.value_at(k, 5)
            if val:
                out[(i, j, f"m{k}")] = val
    return out


def su2_holonomy_residual(curv, s: SU2Structure) -> dict[tuple, ring.CoefExpr]:
    """Endomorphism-side analogue of su2_instanton_residual.

    For each fixed vector pair (k, l) the skew matrix
    M_{ij} = Omega^i_j(ebar_k, ebar_l) is tested for membership in the
    su(2) span of the anti-self-dual horizontal 2-forms; identically zero
    for the (+)-torsion connection.
    """
    c = s.coframe
    half = ring.rat(1, 2)
    out = {}
    for k in range(1, 6):
        for l in range(k + 1, 6):
            def M(i, j):
                return curv.entry(i, j).value_at(k, l)

            w1 = (M(1, 2) + M(3, 4)) * half
            w2 = (M(1, 3) - M(2, 4)) * half
            w3 = (M(1, 4) + M(2, 3)) * half
            for label, val in (("w1", w1), ("w2", w2), ("w3", w3)):
                if val:
                    out[(k, l, label)] = val
            for i in range(1, 5):
                val = M(i, 5)
                if val:
                    out[(k, l, f"m{i}")] = val
    return out


def psi_compatibility_residuals(om: FormExpr) -> dict[str, ring.CoefExpr]:
    """Direct transcription of the psi-invariance conditions for one 2-form."""
    out = {}
    trace = ring.CoefExpr()
    for k in range(1, 6):
        sk, ik = psi_image(k)
        if sk:
            trace = trace + om.value_at(k, ik) * sk
    out["trace"] = trace
    for k in range(1, 6):
        for l in range(k + 1, 6):
            sk, ik = psi_image(k)
            sl, il = psi_image(l)
            lhs = om.value_at(ik, il) * (sk * sl) if sk and sl else ring.CoefExpr()
            diff = lhs - om.value_at(k, l)
            if diff:
                out[f"inv{k}{l}"] = diff
    return out


# ---------------------------------------------------------------------------
# SU(3) (dimension 6)

@dataclass
class SU3Structure:
    coframe: CoframeSpec
    F: FormExpr
    psi_plus: FormExpr
    psi_minus: FormExpr


def build_su3(c: CoframeSpec) -> SU3Structure:
    if c.dim != 6:
        raise DimensionMismatch("SU(3) structure needs a 6-dim coframe")
    F = omega_bar(c, 1) + c.basis(5, 6)
    psi_p = omega_bar(c, 2).wedge(c.basis(5)) - omega_bar(c, 3).wedge(c.basis(6))
    psi_m = omega_bar(c, 2).wedge(c.basis(6)) + omega_bar(c, 3).wedge(c.basis(5))
    return SU3Structure(c, F, psi_p, psi_m)


def su3_structure_residuals(s: SU3Structure) -> dict[str, FormExpr]:
    """Algebraic compatibilities and the conformal closure of Psi+/-."""
    c = s.coframe
    two_df = df_form(c) * 2
    out = {
        "FPsiPlus": s.F.wedge(s.psi_plus),
        "FPsiMinus": s.F.wedge(s.psi_minus),
        "F3": s.F.wedge(s.F).wedge(s.F) - c.basis(1, 2, 3, 4, 5, 6) * 6,
        "dPsiPlus": exterior_derivative(s.psi_plus) - two_df.wedge(s.psi_plus),
        "dPsiMinus": exterior_derivative(s.psi_minus) - two_df.wedge(s.psi_minus),
    }
    return out


# ---------------------------------------------------------------------------
# scalar curvature identity probe

def torsion_norm_squared(T: FormExpr) -> ring.CoefExpr:
    """Full contraction sum_{i,j,k} T(ebar_i, ebar_j, ebar_k)^2 = 6 sum_{i<j<k}."""
    out = ring.CoefExpr()
    for idx, coef in T.comps.items():
        out = out + coef * coef * 6
    return out


def scalar_identity_residual(c: CoframeSpec, phi_factor: Fraction) -> ring.CoefExpr:
    """s - (8 |d phi|^2 - ||T||^2 / 12 - 6 delta d phi) for phi = phi_factor * f."""
    from .connection import curvature, levi_civita, scalar_curvature

    s = scalar_curvature(curvature(levi_civita(c)))
    dphi = df_form(c) * ring.rat(Fraction(phi_factor))
    norm_dphi = ring.CoefExpr()
    for idx, coef in dphi.comps.items():
        norm_dphi = norm_dphi + coef * coef
    T = direct_torsion(c)
    # codifferential on 1-forms: delta = -star d star
    codiff = -hodge_star(exterior_derivative(hodge_star(dphi)))
    delta_dphi = codiff.comps.get((), ring.ZERO)
    rhs = 8 * norm_dphi - ring.rat(1, 12) * torsion_norm_squared(T) - 6 * delta_dphi
    return s - rhs
