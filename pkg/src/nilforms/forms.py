"""Differential forms with exact coefficients on a rescaled invariant coframe.

A ``CoframeSpec`` fixes a global orthonormal coframe ``ebar^1..ebar^dim``
obtained from an invariant coframe of a 2-step nilpotent Lie group by the
conformal rescaling ``ebar^i = e^{w_i f} e^i`` with integer weights
(``w = (1,1,1,1,0,..)``).  Forms are dictionaries mapping sorted index
tuples to ring coefficients; evaluation on frame vectors follows the
determinant convention, so ``ebar^{12}(ebar_2, ebar_1) = -1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from . import ring
from .ring import CoefExpr

HORIZONTAL = (1, 2, 3, 4)


class DimensionMismatch(Exception):
    """Raised when mixing forms from different coframes or bad index counts."""


class NotIntegrable(Exception):
    """Raised when a coframe's structure constants fail d(d ebar^k) = 0."""


def _perm_sign(seq: tuple) -> int:
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def _merge_sign(left: tuple, right: tuple) -> int:
    """Sign of sorting the concatenation of two sorted disjoint tuples."""
    inv = 0
    for a in left:
        for b in right:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


class CoframeSpec:
    """Structure constants and conformal weights of a rescaled coframe."""

    def __init__(
        self,
        dim: int,
        struct: Mapping[int, Mapping[tuple, object]],
        weights: tuple | None = None,
        params: Mapping | None = None,
        name: str = "",
        check: bool = True,
    ):
        self.dim = int(dim)
        self.weights = tuple(weights) if weights else (1, 1, 1, 1) + (0,) * (self.dim - 4)
        if len(self.weights) != self.dim:
            raise DimensionMismatch("weights length != dim")
        self.name = name
        self.params = dict(params or {})
        self.struct: dict[int, dict[tuple, CoefExpr]] = {}
        for k, row in struct.items():
            if not 1 <= k <= self.dim:
                raise DimensionMismatch(f"structure row {k} outside 1..{self.dim}")
            clean = {}
            for (i, j), coef in row.items():
                if not (1 <= i < j <= self.dim):
                    raise DimensionMismatch(f"bad pair ({i},{j}) in row {k}")
                c = coef if isinstance(coef, CoefExpr) else ring.rat(coef)
                if c:
                    clean[(i, j)] = c
            if clean:
                self.struct[k] = clean
        self._dbar: dict[int, FormExpr] = {}
        if check:
            bad = [k for k, r in self.integrability_residuals().items() if r]
            if bad:
                raise NotIntegrable(f"d(d ebar^k) != 0 for k in {bad}")

    # -- basis forms ---------------------------------------------------------

    def zero(self, degree: int) -> "FormExpr":
        return FormExpr(self, degree, {})

    def scalar(self, g) -> "FormExpr":
        c = g if isinstance(g, CoefExpr) else ring.rat(g)
        return FormExpr(self, 0, {(): c} if c else {})

    def basis(self, *indices: int) -> "FormExpr":
        """ebar^{i1...ip} for strictly increasing indices."""
        if list(indices) != sorted(set(indices)):
            raise DimensionMismatch(f"basis indices must be strictly increasing: {indices}")
        for i in indices:
            if not 1 <= i <= self.dim:
                raise DimensionMismatch(f"index {i} outside 1..{self.dim}")
        return FormExpr(self, len(indices), {tuple(indices): ring.rat(1)})

    def form(self, degree: int, comps: Mapping[tuple, object]) -> "FormExpr":
        out: dict[tuple, CoefExpr] = {}
        for idx, coef in comps.items():
            key = tuple(idx)
            if list(key) != sorted(set(key)) or len(key) != degree:
                raise DimensionMismatch(f"bad component index {key} for degree {degree}")
            c = coef if isinstance(coef, CoefExpr) else ring.rat(coef)
            if c:
                out[key] = c
        return FormExpr(self, degree, out)

    # -- structure -----------------------------------------------------------

    def dbar(self, k: int) -> "FormExpr":
        """d ebar^k = w_k df ^ ebar^k + sum c^k_{ij} e^{(w_k-w_i-w_j) f} ebar^{ij}."""
        if k in self._dbar:
            return self._dbar[k]
        w = self.weights
        out = self.zero(2)
        if w[k - 1]:
            out = out + df_form(self).wedge(self.basis(k)) * ring.rat(w[k - 1])
        for (i, j), coef in self.struct.get(k, {}).items():
            ex = w[k - 1] - w[i - 1] - w[j - 1]
            out = out + FormExpr(self, 2, {(i, j): coef * ring.expf(ex)})
        self._dbar[k] = out
        return out

    def differentials(self) -> dict[int, "FormExpr"]:
        return {k: self.dbar(k) for k in range(1, self.dim + 1)}

    def integrability_residuals(self) -> dict[int, "FormExpr"]:
        return {k: exterior_derivative(self.dbar(k)) for k in range(1, self.dim + 1)}


class FormExpr:
    """Exact-coefficient differential form on a fixed coframe."""

    __slots__ = ("coframe", "degree", "comps")
    __hash__ = None

    def __init__(self, coframe: CoframeSpec, degree: int, comps: Mapping[tuple, CoefExpr]):
        self.coframe = coframe
        self.degree = int(degree)
        self.comps = {idx: c for idx, c in comps.items() if c}

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormExpr):
            return NotImplemented
        if not self.comps and not other.comps:
            return True
        return self.degree == other.degree and self.comps == other.comps

    def _check_mate(self, other: "FormExpr"):
        if self.coframe is not other.coframe:
            raise DimensionMismatch("forms live on different coframes")

    def __add__(self, other: "FormExpr") -> "FormExpr":
        if not isinstance(other, FormExpr):
            return NotImplemented
        self._check_mate(other)
        if self.comps and other.comps and self.degree != other.degree:
            raise DimensionMismatch("adding forms of different degree")
        out = dict(self.comps)
        for idx, coef in other.comps.items():
            c = out.get(idx, ring.ZERO) + coef
            if c:
                out[idx] = c
            else:
                out.pop(idx, None)
        return FormExpr(self.coframe, self.degree if self.comps else other.degree, out)

    def __neg__(self) -> "FormExpr":
        return FormExpr(self.coframe, self.degree, {i: -c for i, c in self.comps.items()})

    def __sub__(self, other: "FormExpr") -> "FormExpr":
        return self + (-other)

    def __mul__(self, scalar) -> "FormExpr":
        c = scalar if isinstance(scalar, CoefExpr) else ring.rat(scalar) if isinstance(scalar, (int, Fraction)) else None
        if c is None:
            return NotImplemented
        return FormExpr(self.coframe, self.degree, {i: g * c for i, g in self.comps.items()})

    __rmul__ = __mul__

    def wedge(self, other: "FormExpr") -> "FormExpr":
        self._check_mate(other)
        deg = self.degree + other.degree
        out: dict[tuple, CoefExpr] = {}
        for i1, c1 in self.comps.items():
            s1 = set(i1)
            for i2, c2 in other.comps.items():
                if s1 & set(i2):
                    continue
                sign = _merge_sign(i1, i2)
                key = tuple(sorted(i1 + i2))
                c = out.get(key, ring.ZERO) + (c1 * c2 if sign > 0 else -(c1 * c2))
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return FormExpr(self.coframe, deg, out)

    def value_at(self, *indices: int) -> CoefExpr:
        """Component on frame vectors (determinant convention)."""
        if len(indices) != self.degree:
            raise DimensionMismatch(f"{len(indices)} arguments for a degree-{self.degree} form")
        if len(set(indices)) != len(indices):
            return ring.ZERO
        key = tuple(sorted(indices))
        coef = self.comps.get(key)
        if coef is None:
            return ring.ZERO
        return coef if _perm_sign(tuple(indices)) > 0 else -coef

    def map_coefs(self, fn) -> "FormExpr":
        return FormExpr(self.coframe, self.degree, {i: fn(c) for i, c in self.comps.items()})

    def substitute(self, mapping) -> "FormExpr":
        return self.map_coefs(lambda c: c.substitute(mapping))

    def __repr__(self) -> str:
        if not self.comps:
            return "0"
        bits = []
        for idx in sorted(self.comps):
            label = "ebar^" + "".join(str(i) for i in idx) if idx else "1"
            bits.append(f"({self.comps[idx]!r}) {label}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# calculus operators

def wedge(a: FormExpr, b: FormExpr) -> FormExpr:
    return a.wedge(b)


def coframe_differentials(c: CoframeSpec) -> dict[int, FormExpr]:
    return c.differentials()


def frame_derivative(c: CoframeSpec, g: CoefExpr, i: int) -> CoefExpr:
    """ebar_i applied to a scalar: e^{-w_i f} d_i g (zero on fiber legs)."""
    if i > 4 or i > c.dim:
        return ring.ZERO
    w = c.weights[i - 1]
    return ring.expf(-w) * g.partial(i)


def exterior_derivative(a: FormExpr) -> FormExpr:
    c = a.coframe
    out = c.zero(a.degree + 1)
    for idx, g in a.comps.items():
        # derivative of the coefficient along the frame
        for i in HORIZONTAL:
            if i > c.dim:
                break
            dg = frame_derivative(c, g, i)
            if dg:
                out = out + FormExpr(c, 1, {(i,): dg}).wedge(FormExpr(c, len(idx), {idx: ring.ONE}))
        # derivative of the basis monomial
        for t, leg in enumerate(idx):
            left = FormExpr(c, t, {idx[:t]: ring.ONE})
            right = FormExpr(c, len(idx) - t - 1, {idx[t + 1:]: ring.ONE})
            piece = left.wedge(c.dbar(leg)).wedge(right)
            if t % 2:
                piece = -piece
            term = piece * g
            out = out + term
    return out


def hodge_star(a: FormExpr) -> FormExpr:
    """Hodge star of the orthonormal barred coframe, oriented ebar^{1..dim}."""
    c = a.coframe
    full = tuple(range(1, c.dim + 1))
    out = c.zero(c.dim - a.degree)
    comps: dict[tuple, CoefExpr] = {}
    for idx, g in a.comps.items():
        comp = tuple(i for i in full if i not in idx)
        sign = _perm_sign(idx + comp)
        comps[comp] = comps.get(comp, ring.ZERO) + (g if sign > 0 else -g)
    return FormExpr(c, c.dim - a.degree, {i: g for i, g in comps.items() if g})


def hodge_star_horizontal(a: FormExpr) -> FormExpr:
    """4-dimensional Hodge star on the span of ebar^1..ebar^4."""
    c = a.coframe
    out: dict[tuple, CoefExpr] = {}
    for idx, g in a.comps.items():
        if any(i > 4 for i in idx):
            raise DimensionMismatch("horizontal star needs indices within 1..4")
        comp = tuple(i for i in HORIZONTAL if i not in idx)
        sign = _perm_sign(idx + comp)
        out[comp] = out.get(comp, ring.ZERO) + (g if sign > 0 else -g)
    return FormExpr(c, 4 - a.degree, {i: g for i, g in out.items() if g})


def interior(a: FormExpr, k: int) -> FormExpr:
    """Contraction with the frame vector ebar_k."""
    c = a.coframe
    out: dict[tuple, CoefExpr] = {}
    for idx, g in a.comps.items():
        if k not in idx:
            continue
        t = idx.index(k)
        key = idx[:t] + idx[t + 1:]
        coef = g if t % 2 == 0 else -g
        prev = out.get(key, ring.ZERO) + coef
        if prev:
            out[key] = prev
        else:
            out.pop(key, None)
    return FormExpr(c, a.degree - 1, out)


# ---------------------------------------------------------------------------
# standard gadgets on the rescaled coframe

def df_form(c: CoframeSpec) -> FormExpr:
    """df = e^{-f} sum_i f_i ebar^i (f depends on the first four coordinates)."""
    comps = {(i,): ring.expf(-c.weights[i - 1]) * ring.jet(i) for i in HORIZONTAL}
    return FormExpr(c, 1, comps)


def dpsi_f_form(c: CoframeSpec) -> FormExpr:
    """d^psi f(X) = -df(psi X) for the standard almost-complex structure.

    psi ebar_1 = -ebar_2, psi ebar_2 = ebar_1, psi ebar_3 = -ebar_4,
    psi ebar_4 = ebar_3 (compatible with F = omegabar_1).
    """
    e = ring.expf(-1)
    comps = {
        (1,): e * ring.jet(2),
        (2,): -(e * ring.jet(1)),
        (3,): e * ring.jet(4),
        (4,): -(e * ring.jet(3)),
    }
    return FormExpr(c, 1, comps)


def sigma_bar(c: CoframeSpec, i: int) -> FormExpr:
    """Anti-self-dual pair forms: sigma_1 = e^{12}-e^{34}, sigma_2 = e^{13}+e^{24}, sigma_3 = e^{14}-e^{23}."""
    table = {
        1: {(1, 2): 1, (3, 4): -1},
        2: {(1, 3): 1, (2, 4): 1},
        3: {(1, 4): 1, (2, 3): -1},
    }
    return c.form(2, table[i])


def omega_bar(c: CoframeSpec, i: int) -> FormExpr:
    """Self-dual pair forms: omega_1 = e^{12}+e^{34}, omega_2 = e^{13}-e^{24}, omega_3 = e^{14}+e^{23}."""
    table = {
        1: {(1, 2): 1, (3, 4): 1},
        2: {(1, 3): 1, (2, 4): -1},
        3: {(1, 4): 1, (2, 3): 1},
    }
    return c.form(2, table[i])


def vol_bar(c: CoframeSpec) -> FormExpr:
    return c.basis(*range(1, c.dim + 1))
