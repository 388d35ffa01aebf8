"""
Small multivariate polynomials over a pluggable exact field, used to pose
monodromy conditions on chart coefficients symbolically and to extract
coefficients of specific monomials.

Coefficients are objects supporting +, -, *, unary -, /, and is_zero();
a FieldAdapter supplies constants.  Monomials are sorted tuples of
(variable, exponent); variables are arbitrary hashable labels.
"""

from __future__ import annotations

from .gf import GF, FElem
from .pval import PVal

Mono = tuple[tuple[object, int], ...]


class FieldAdapter:
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, m: int):
        raise NotImplementedError


class GFAdapter(FieldAdapter):
    def __init__(self, F: GF):
        self.F = F

    def zero(self):
        return FElem(self.F, 0)

    def one(self):
        return FElem(self.F, 1)

    def from_int(self, m: int):
        return FElem(self.F, self.F.from_int(m))


class PValAdapter(FieldAdapter):
    def __init__(self, p: int):
        self.p = p

    def zero(self):
        return PVal.zero(self.p)

    def one(self):
        return PVal.one(self.p)

    def from_int(self, m: int):
        return PVal.of(m, self.p)


def _mono_mul(a: Mono, b: Mono) -> Mono:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda t: repr(t[0])))


class Poly:
    __slots__ = ("K", "terms")

    def __init__(self, K: FieldAdapter, terms: dict[Mono, object] | None = None):
        self.K = K
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors -----------------------------------------------------
    @staticmethod
    def const(K: FieldAdapter, c) -> "Poly":
        return Poly(K, {(): c})

    @staticmethod
    def zero(K: FieldAdapter) -> "Poly":
        return Poly(K, {})

    @staticmethod
    def var(K: FieldAdapter, v) -> "Poly":
        return Poly(K, {((v, 1),): K.one()})

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self):
        return self.terms.get((), self.K.zero())

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def coefficient_of(self, mono: Mono):
        return self.terms.get(tuple(sorted(mono, key=lambda t: repr(t[0]))), self.K.zero())

    def is_affine(self) -> bool:
        return self.total_degree() <= 1

    def as_affine(self):
        """(constant, {var: coeff}) for an affine polynomial."""
        assert self.is_affine()
        const = self.constant_value()
        lin = {m[0][0]: c for m, c in self.terms.items() if m}
        return const, lin

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, o: "Poly") -> "Poly":
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return Poly(self.K, out)

    def __neg__(self) -> "Poly":
        return Poly(self.K, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def __mul__(self, o: "Poly") -> "Poly":
        out: dict[Mono, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return Poly(self.K, out)

    def scale(self, c) -> "Poly":
        return Poly(self.K, {m: cc * c for m, cc in self.terms.items()})

    def substitute(self, assign: dict) -> "Poly":
        """Replace variables by field values."""
        out: dict[Mono, object] = {}
        for m, c in self.terms.items():
            rest = []
            for v, e in m:
                if v in assign:
                    for _ in range(e):
                        c = c * assign[v]
                else:
                    rest.append((v, e))
            key = tuple(sorted(rest, key=lambda t: repr(t[0])))
            out[key] = out[key] + c if key in out else c
        return Poly(self.K, out)

    def min_power_of(self, var) -> int:
        """Largest k with var^k dividing every monomial (0 if none)."""
        if not self.terms:
            return 0
        k = None
        for m in self.terms:
            e = dict(m).get(var, 0)
            k = e if k is None else min(k, e)
            if k == 0:
                return 0
        return k or 0

    def divide_by_var_power(self, var, k: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            d[var] = d.get(var, 0) - k
            if d[var] < 0:
                raise ValueError("not divisible")
            out[tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda t: repr(t[0])))] = c
        return Poly(self.K, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            mono = "*".join(f"{v}^{e}" if e > 1 else f"{v}" for v, e in m)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


class SolveError(ValueError):
    pass


def solve_equations(K: FieldAdapter, equations: list[Poly], unknowns: set, nonzerodivisor=None):
    """Solve a polynomial system that becomes affine-triangular after
    substitution, as the chart monodromy systems do.

    Repeatedly: drop trivially-zero equations; reject nonzero constants;
    divide out powers of `nonzerodivisor` (a chart coordinate that is a
    nonzerodivisor on the irreducible chart, e.g. c); gather the affine
    equations and solve the linear subsystem they determine; substitute.
    Returns {var: value} for every unknown that got determined.  Raises
    SolveError if stuck or inconsistent.
    """
    eqs = [e for e in equations]
    solved: dict = {}
    for _round in range(200):
        eqs = [e.substitute(solved) for e in eqs]
        nxt = []
        for e in eqs:
            if e.is_zero():
                continue
            if e.is_constant():
                raise SolveError(f"inconsistent system: constant equation {e!r}")
            if nonzerodivisor is not None:
                k = e.min_power_of(nonzerodivisor)
                if k and nonzerodivisor not in solved:
                    e = e.divide_by_var_power(nonzerodivisor, k)
                    if e.is_zero():
                        continue
                    if e.is_constant():
                        raise SolveError("inconsistent after dividing a nonzerodivisor")
            nxt.append(e)
        eqs = nxt
        if not eqs:
            return solved
        affine = [e for e in eqs if e.is_affine()]
        if not affine:
            raise SolveError(f"stuck: no affine equation among {len(eqs)} remaining, e.g. {eqs[0]!r}")
        # Gaussian elimination on the affine subsystem; a variable is
        # determined when its reduced row involves no other variable.
        cols: list = []
        seen = set()
        for e in affine:
            _, lin = e.as_affine()
            for v in lin:
                if v not in seen:
                    seen.add(v)
                    cols.append(v)
        colidx = {v: i for i, v in enumerate(cols)}
        rows = []
        for e in affine:
            const, lin = e.as_affine()
            row = [K.zero()] * len(cols)
            for v, c in lin.items():
                row[colidx[v]] = c
            rows.append((row, const))
        pivots: list[tuple[int, int]] = []  # (row, col)
        r = 0
        for c in range(len(cols)):
            piv = next((i for i in range(r, len(rows)) if not rows[i][0][c].is_zero()), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            prow, pconst = rows[r]
            inv = prow[c].inverse()
            prow = [x * inv for x in prow]
            pconst = pconst * inv
            rows[r] = (prow, pconst)
            for i in range(len(rows)):
                if i != r and not rows[i][0][c].is_zero():
                    fac = rows[i][0][c]
                    rows[i] = (
                        [x - fac * y for x, y in zip(rows[i][0], prow)],
                        rows[i][1] - fac * pconst,
                    )
            pivots.append((r, c))
            r += 1
        progress = False
        for ri, ci in pivots:
            row, const = rows[ri]
            if all(row[k].is_zero() for k in range(len(cols)) if k != ci):
                solved[cols[ci]] = -const
                progress = True
        if not progress:
            raise SolveError("stuck: affine subsystem determines no variable uniquely")
    raise SolveError("solver did not terminate")
