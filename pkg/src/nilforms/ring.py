"""Exact coefficient ring for frame computations.

Elements are rational-linear combinations of monomials built from three
ingredients:

* constant parameters (matrix entries ``a11``..``a33``, coupling constants,
  instanton weights, ...), encoded as ``("c", name)``;
* derivative jets of a single scalar field ``f(x1, .., x4)`` up to third
  order, encoded as ``("j", idx)`` with ``idx`` a sorted tuple over
  ``{1, 2, 3, 4}`` (the empty tuple is ``f`` itself);
* integer powers of ``e^f``, carried as a per-monomial exponent so that
  ``e^{k f}`` factors multiply additively and divide exactly.

All arithmetic is exact over ``fractions.Fraction``; equal values always
have identical term dictionaries, so ``==`` is semantic equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

MAX_JET_ORDER = 3
COORDS = (1, 2, 3, 4)


class JetOrderExceeded(Exception):
    """Raised when differentiation would create a jet beyond order 3."""


class UnboundSymbol(Exception):
    """Raised by evaluate() when the assignment misses a needed symbol."""


# ---------------------------------------------------------------------------
# symbols and monomials

def const_sym(name: str) -> tuple:
    return ("c", str(name))


def jet_sym(*indices: int) -> tuple:
    idx = tuple(sorted(indices))
    if len(idx) > MAX_JET_ORDER:
        raise JetOrderExceeded(f"jet order {len(idx)} exceeds {MAX_JET_ORDER}")
    for i in idx:
        if i not in COORDS:
            raise ValueError(f"jet index {i} outside {COORDS}")
    return ("j", idx)


def _mul_syms(s1: tuple, s2: tuple) -> tuple:
    """Merge two sorted ((sym, power), ...) tuples."""
    if not s1:
        return s2
    if not s2:
        return s1
    out = []
    i = j = 0
    while i < len(s1) and j < len(s2):
        a, pa = s1[i]
        b, pb = s2[j]
        if a == b:
            out.append((a, pa + pb))
            i += 1
            j += 1
        elif a < b:
            out.append(s1[i])
            i += 1
        else:
            out.append(s2[j])
            j += 1
    out.extend(s1[i:])
    out.extend(s2[j:])
    return tuple(out)


class CoefExpr:
    """A canonical-form element of the coefficient ring."""

    __slots__ = ("terms",)
    __hash__ = None  # mutable container; compare by value only

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for key, coef in terms.items():
                if coef:
                    self.terms[key] = Fraction(coef)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def rational(p, q=1) -> "CoefExpr":
        c = Fraction(p, q)
        return CoefExpr({(0, ()): c} if c else {})

    @staticmethod
    def const(name: str) -> "CoefExpr":
        return CoefExpr({(0, ((const_sym(name), 1),)): Fraction(1)})

    @staticmethod
    def jet(*indices: int) -> "CoefExpr":
        return CoefExpr({(0, ((jet_sym(*indices), 1),)): Fraction(1)})

    @staticmethod
    def expf(k: int) -> "CoefExpr":
        return CoefExpr({(int(k), ()): Fraction(1)})

    # -- basic predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "CoefExpr":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for key, coef in other.terms.items():
            c = out.get(key, Fraction(0)) + coef
            if c:
                out[key] = c
            else:
                out.pop(key, None)
        res = CoefExpr()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "CoefExpr":
        res = CoefExpr()
        res.terms = {key: -coef for key, coef in self.terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "CoefExpr":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        for (k1, s1), c1 in self.terms.items():
            for (k2, s2), c2 in other.terms.items():
                key = (k1 + k2, _mul_syms(s1, s2))
                c = out.get(key, Fraction(0)) + c1 * c2
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        res = CoefExpr()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoefExpr":
        if n < 0:
            raise ValueError("negative powers are not in the ring")
        res = CoefExpr.rational(1)
        base = self
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    # -- calculus ------------------------------------------------------------

    def partial(self, i: int) -> "CoefExpr":
        """Flat coordinate derivative d/dx^i (Leibniz over each monomial)."""
        if i not in COORDS:
            raise ValueError(f"coordinate {i} outside {COORDS}")
        out = CoefExpr()
        for (k, syms), coef in self.terms.items():
            # derivative of the e^{kf} factor
            if k:
                key = (k, _mul_syms(syms, ((jet_sym(i), 1),)))
                out = out + CoefExpr({key: coef * k})
            # derivative of each symbol factor
            for pos, (sym, power) in enumerate(syms):
                if sym[0] != "j":
                    continue
                dsym = jet_sym(*(sym[1] + (i,)))  # may raise JetOrderExceeded
                rest = list(syms)
                if power == 1:
                    del rest[pos]
                else:
                    rest[pos] = (sym, power - 1)
                key = (k, _mul_syms(tuple(rest), ((dsym, 1),)))
                out = out + CoefExpr({key: coef * power})
        return out

    def substitute(self, mapping: Mapping) -> "CoefExpr":
        """Replace constant-parameter or jet symbols by ring elements."""
        table = {}
        for key, val in mapping.items():
            sym = _as_symbol(key)
            rep = _coerce(val)
            if rep is None:
                raise TypeError(f"cannot substitute {val!r} into the ring")
            table[sym] = rep
        out = CoefExpr()
        for (k, syms), coef in self.terms.items():
            piece = CoefExpr({(k, ()): coef})
            for sym, power in syms:
                if sym in table:
                    piece = piece * table[sym] ** power
                else:
                    piece = piece * CoefExpr({(0, ((sym, power),)): Fraction(1)})
            out = out + piece
        return out

    def evaluate(self, assignment: Mapping) -> float:
        """Numeric value; needs every symbol (and f for e^{kf}) bound."""
        import math

        table = {_as_symbol(k): float(v) for k, v in assignment.items()}
        fsym = jet_sym()
        total = 0.0
        for key in sorted(self.terms):  # deterministic summation order
            k, syms = key
            coef = self.terms[key]
            val = float(coef)
            if k:
                if fsym not in table:
                    raise UnboundSymbol("f value needed for e^{kf} factor")
                val *= math.exp(k * table[fsym])
            for sym, power in syms:
                if sym not in table:
                    raise UnboundSymbol(f"symbol {sym} not bound")
                val *= table[sym] ** power
            total += val
        return total

    def symbols(self) -> set:
        out = set()
        for (_, syms) in self.terms:
            for sym, _ in syms:
                out.add(sym)
        return out

    def expf_range(self) -> tuple[int, int]:
        ks = [k for (k, _) in self.terms]
        return (min(ks), max(ks)) if ks else (0, 0)

    def scale_expf(self, shift: int) -> "CoefExpr":
        res = CoefExpr()
        res.terms = {(k + shift, syms): c for (k, syms), c in self.terms.items()}
        return res

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            k, syms = key
            coef = self.terms[key]
            factors = []
            if coef != 1 or (not syms and k == 0):
                factors.append(str(coef))
            if k:
                factors.append(f"E({k}f)" if k != 1 else "E(f)")
            for sym, power in syms:
                if sym[0] == "c":
                    name = sym[1]
                else:
                    name = "f" + "".join(str(i) for i in sym[1]) if sym[1] else "f"
                factors.append(name if power == 1 else f"{name}^{power}")
            bits.append("*".join(factors) if factors else "1")
        return " + ".join(bits)


def _coerce(x) -> CoefExpr | None:
    if isinstance(x, CoefExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return CoefExpr.rational(x)
    return None


def _as_symbol(key) -> tuple:
    if isinstance(key, tuple) and len(key) == 2 and key[0] in ("c", "j"):
        return key
    if isinstance(key, str):
        return const_sym(key)
    raise TypeError(f"not a ring symbol: {key!r}")


# ---------------------------------------------------------------------------
# module-level operations (functional aliases over the methods)

ZERO = CoefExpr()
ONE = CoefExpr.rational(1)


def rat(p, q=1) -> CoefExpr:
    return CoefExpr.rational(p, q)


def const(name: str) -> CoefExpr:
    return CoefExpr.const(name)


def jet(*indices: int) -> CoefExpr:
    return CoefExpr.jet(*indices)


def expf(k: int) -> CoefExpr:
    return CoefExpr.expf(k)


def partial_derivative(e: CoefExpr, i: int) -> CoefExpr:
    return e.partial(i)


def flat_laplacian(e: CoefExpr) -> CoefExpr:
    out = CoefExpr()
    for i in COORDS:
        out = out + e.partial(i).partial(i)
    return out


def grad_square() -> CoefExpr:
    """|grad f|^2 = sum_i f_i^2."""
    out = CoefExpr()
    for i in COORDS:
        out = out + jet(i) * jet(i)
    return out


def hessian2() -> CoefExpr:
    """Second elementary symmetric of the Hessian: sum_{i<j} (f_ii f_jj - f_ij^2)."""
    out = CoefExpr()
    for i in COORDS:
        for j in COORDS:
            if i < j:
                out = out + jet(i, i) * jet(j, j) - jet(i, j) * jet(i, j)
    return out


def p_laplacian4() -> CoefExpr:
    """4-Laplacian of f: sum_i d_i(|grad f|^2 f_i)."""
    g2 = grad_square()
    out = CoefExpr()
    for i in COORDS:
        out = out + (g2 * jet(i)).partial(i)
    return out


def evaluate(e: CoefExpr, assignment: Mapping) -> float:
    return e.evaluate(assignment)


def evaluate_exact(e: CoefExpr, assignment: Mapping, e2f: Fraction) -> Fraction:
    """Exact Fraction value; e^{kf} factors become e2f^{k/2} (k must be even)."""
    table = {_as_symbol(k): Fraction(v) for k, v in assignment.items()}
    e2f = Fraction(e2f)
    total = Fraction(0)
    for (k, syms), coef in e.terms.items():
        if k % 2:
            raise UnboundSymbol("odd e^{kf} power has no exact rational value")
        val = coef * e2f ** (k // 2)
        for sym, power in syms:
            if sym not in table:
                raise UnboundSymbol(f"symbol {sym} not bound")
            val *= table[sym] ** power
        total += val
    return total


def substitute(e: CoefExpr, mapping: Mapping) -> CoefExpr:
    return e.substitute(mapping)


def restrict_onevar(e: CoefExpr) -> CoefExpr:
    """Keep only monomials whose jets involve coordinate 1 alone (f = f(x1))."""
    out = CoefExpr()
    for (k, syms), coef in e.terms.items():
        keep = True
        for sym, _ in syms:
            if sym[0] == "j" and any(i != 1 for i in sym[1]):
                keep = False
                break
        if keep:
            out = out + CoefExpr({(k, syms): coef})
    return out


# ---------------------------------------------------------------------------
# exact division

def _division_vars(*exprs: CoefExpr) -> list:
    vs = set()
    for e in exprs:
        vs |= e.symbols()
    return sorted(vs)


def try_divide(num: CoefExpr, den: CoefExpr) -> CoefExpr | None:
    """Exact quotient num/den in the ring, or None when not an exact multiple.

    e^{kf} powers are cleared first (they are units), then classical
    multivariate division in lex order runs on the remaining polynomial
    part.  Never returns a false negative on an exact multiple.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero element")
    if num.is_zero():
        return CoefExpr()

    kn = num.expf_range()[0]
    kd = den.expf_range()[0]
    n = num.scale_expf(-kn)
    d = den.scale_expf(-kd)

    variables = _division_vars(n, d)
    index = {v: pos for pos, v in enumerate(variables)}
    nvars = len(variables)

    def vec(key):
        k, syms = key
        v = [0] * (nvars + 1)
        for sym, power in syms:
            v[index[sym]] = power
        v[nvars] = k  # expf exponent ranked last
        return tuple(v)

    def key_of(v):
        syms = tuple(
            (variables[pos], p) for pos, p in enumerate(v[:nvars]) if p
        )
        return (v[nvars], syms)

    d_items = {vec(key): coef for key, coef in d.terms.items()}
    d_lead = max(d_items)
    d_lead_coef = d_items[d_lead]

    r = {vec(key): coef for key, coef in n.terms.items()}
    q: dict[tuple, Fraction] = {}
    max_steps = 16 * (len(r) + 1) * (len(d_items) + 1) + 1024

    for _ in range(max_steps):
        if not r:
            quotient = CoefExpr({key_of(v): c for v, c in q.items()})
            return quotient.scale_expf(kn - kd)
        r_lead = max(r)
        diff = tuple(a - b for a, b in zip(r_lead, d_lead))
        if any(x < 0 for x in diff[:nvars]):
            return None
        coef = r[r_lead] / d_lead_coef
        q[diff] = q.get(diff, Fraction(0)) + coef
        for dv, dc in d_items.items():
            t = tuple(a + b for a, b in zip(diff, dv))
            c = r.get(t, Fraction(0)) - coef * dc
            if c:
                r[t] = c
            else:
                r.pop(t, None)
    return None
