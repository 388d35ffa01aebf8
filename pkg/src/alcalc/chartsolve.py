"""
Symbolic assembly and solution of the explicit local-model charts.

Both chart shapes used here have the conjugated normal form

    conj . A . conj^{-1}  =  [u_{-alpha}(c) s_alpha]  (v+p)^eta  V

with V lower unipotent with degree-bounded polynomial entries: the bracket
is present for a colength-one chart (conj = w, the longer weight's
permutation) and absent for an extremal chart (conj = the chart's own
permutation).  The monodromy condition

    E = (v+p) (v dA/dv A^{-1} + A a A^{-1})  integral, upper mod v

translates into polynomial equations on the entry coefficients of V (and
on c): exact divisibility of N = (v B' + B b) C by (v+p)^{n-2}, where
B^{-1} = C (v+p)^{-(n-1)}, plus vanishing mod v at the conj-transported
strictly-lower positions.  The same assembly runs over a finite field
(special fiber, where the image of p is 0) and over the exact p-valuation
scalars (integral lifts); the resulting system is solved by the
affine-triangular solver, with c treated as a nonzerodivisor of the
irreducible chart.

A solved chart is re-verified from scratch by the independent monodromy
checkers before it is used.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import GF
from .loopmat import LoopMatrix
from .mpoly import FieldAdapter, GFAdapter, Poly, PValAdapter, SolveError, solve_equations
from .rmatrix import PMatrix, VPoly
from .series import Series
from .weyl import eta_weight, negative_roots, nu_w, perm_act_root, perm_inv, root_is_negative

VPolyP = list  # list[Poly], index = power of v


def _vp_trim(c: VPolyP) -> VPolyP:
    while c and c[-1].is_zero():
        c.pop()
    return c


def _vp_add(a: VPolyP, b: VPolyP, K) -> VPolyP:
    n = max(len(a), len(b))
    za = Poly.zero(K)
    return _vp_trim([(a[d] if d < len(a) else za) + (b[d] if d < len(b) else za) for d in range(n)])


def _vp_mul(a: VPolyP, b: VPolyP, K) -> VPolyP:
    if not a or not b:
        return []
    out = [Poly.zero(K) for _ in range(len(a) + len(b) - 1)]
    for i, pa in enumerate(a):
        if pa.is_zero():
            continue
        for j, pb in enumerate(b):
            if not pb.is_zero():
                out[i + j] = out[i + j] + pa * pb
    return _vp_trim(out)


def _vp_deriv(a: VPolyP, K) -> VPolyP:
    return _vp_trim([a[d].scale(K.from_int(d)) for d in range(1, len(a))])


def _vp_shift(a: VPolyP, K) -> VPolyP:
    """multiply by v"""
    return [Poly.zero(K)] + list(a)


def _vp_divide_at(a: VPolyP, root, K) -> tuple[VPolyP, Poly]:
    """(quotient, remainder) dividing by the monic linear (v - root)."""
    if not a:
        return [], Poly.zero(K)
    m = len(a) - 1
    q = [Poly.zero(K)] * m
    run = a[m]
    for d in range(m - 1, -1, -1):
        q[d] = run
        run = a[d] + run.scale(root)
    return _vp_trim(q), run


def _mat_mul(A, B, K):
    n = len(A)
    return [[_vp_trim(_fold_add([_vp_mul(A[i][m], B[m][k], K) for m in range(n)], K)) for k in range(n)] for i in range(n)]


def _fold_add(items, K):
    acc = []
    for it in items:
        acc = _vp_add(acc, it, K)
    return acc


@dataclass(frozen=True)
class ChartShape:
    """Static data of one chart at one embedding."""

    n: int
    p: int
    kind: str  # "colength_one" | "extremal"
    u_perm: tuple[int, ...]  # permutation governing the degree bounds
    conj_perm: tuple[int, ...]  # conjugation between A and the normal form
    a_vec: tuple[int, ...]  # integer monodromy parameter
    i0: int = 0
    k0: int = -1  # filled in __post_init__ when negative

    def __post_init__(self):
        if self.k0 < 0:
            object.__setattr__(self, "k0", self.n - 1)

    def degree_bound(self, beta: tuple[int, int]) -> int:
        """deg V_beta <= -<eta, beta> - [u^{-1}(beta) > 0] for beta in Phi^-."""
        i, k = beta
        eta = eta_weight(self.n)
        bnd = -(eta[i] - eta[k])
        if not root_is_negative(perm_act_root(perm_inv(self.u_perm), beta)):
            bnd -= 1
        return bnd

    def window_bottom(self, beta: tuple[int, int]) -> int:
        """Degree of the constant-term slot of the unconjugated entry:
        <nu_u - eta, beta>."""
        i, k = beta
        nu = nu_w(self.u_perm)
        eta = eta_weight(self.n)
        return (nu[i] - eta[i]) - (nu[k] - eta[k])

    def flagged_positions(self) -> set[tuple[int, int]]:
        c = self.conj_perm
        return {(c[i], c[k]) for i in range(self.n) for k in range(self.n) if i > k}


def vvar(beta: tuple[int, int], d: int):
    return ("V", beta[0], beta[1], d)


CVAR = "c"


def avar(i: int):
    return ("a", i)


class ChartSystem:
    """The symbolic chart at one embedding over a chosen scalar field."""

    def __init__(self, shape: ChartShape, K: FieldAdapter):
        self.shape = shape
        self.K = K
        n = shape.n
        self.vars: list = []
        self.V: list[list[VPolyP]] = [[[] for _ in range(n)] for _ in range(n)]
        one = Poly.const(K, K.one())
        for i in range(n):
            self.V[i][i] = [one]
        for beta in negative_roots(n):
            i, k = beta
            bnd = shape.degree_bound(beta)
            ent = []
            for d in range(bnd + 1):
                v = vvar(beta, d)
                self.vars.append(v)
                ent.append(Poly.var(K, v))
            self.V[i][k] = ent
        if shape.kind == "colength_one":
            self.vars.append(CVAR)
        self._equations: list[Poly] | None = None

    def with_shape(self, shape: ChartShape) -> "ChartSystem":
        """Reuse the cached symbolic assembly for a shape differing only in
        the monodromy parameter (which enters symbolically)."""
        if (shape.n, shape.p, shape.kind, shape.u_perm, shape.conj_perm, shape.i0, shape.k0) != (
            self.shape.n,
            self.shape.p,
            self.shape.kind,
            self.shape.u_perm,
            self.shape.conj_perm,
            self.shape.i0,
            self.shape.k0,
        ):
            raise ValueError("incompatible shape for cached system")
        import copy

        clone = copy.copy(self)
        clone.shape = shape
        return clone

    # -- assembly ---------------------------------------------------------
    def _vpp_pow_eta(self, exps) -> list[list[VPolyP]]:
        """diag((v+p)^{e_i}) as a vpoly matrix."""
        K = self.K
        n = self.shape.n
        p_el = Poly.const(K, K.from_int(self.shape.p))
        vp = [p_el, Poly.const(K, K.one())]  # v + p
        out = [[[] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            acc = [Poly.const(K, K.one())]
            for _ in range(exps[i]):
                acc = _vp_mul(acc, vp, K)
            out[i][i] = acc
        return out

    def _perm_matrix(self, perm) -> list[list[VPolyP]]:
        K = self.K
        n = self.shape.n
        one = [Poly.const(K, K.one())]
        return [[one if perm[k] == i else [] for k in range(n)] for i in range(n)]

    def _u_c(self, sign: int) -> list[list[VPolyP]]:
        K = self.K
        n = self.shape.n
        out = [[([Poly.const(K, K.one())] if i == k else []) for k in range(n)] for i in range(n)]
        cpoly = Poly.var(K, CVAR)
        if sign < 0:
            cpoly = -cpoly
        out[self.shape.k0][self.shape.i0] = [cpoly]
        return out

    def _vinv(self) -> list[list[VPolyP]]:
        """V^{-1} = sum (-N)^k for the strictly-lower part N of V."""
        K = self.K
        n = self.shape.n
        negN = [[[-c for c in self.V[i][k]] if i > k else [] for k in range(n)] for i in range(n)]
        acc = [[([Poly.const(K, K.one())] if i == k else []) for k in range(n)] for i in range(n)]
        power = acc
        for _ in range(1, n):
            power = _mat_mul(power, negN, K)
            acc = [[_vp_add(acc[i][k], power[i][k], K) for k in range(n)] for i in range(n)]
        return acc

    def assemble(self) -> tuple[list[list[VPolyP]], list[list[VPolyP]]]:
        """Returns (B, C) with B the normal form and C = B^{-1} (v+p)^{n-1}."""
        K = self.K
        sh = self.shape
        n = sh.n
        eta = eta_weight(n)
        D = self._vpp_pow_eta(eta)
        Dhat = self._vpp_pow_eta([n - 1 - e for e in eta])
        B = _mat_mul(D, self.V, K)
        C = _mat_mul(self._vinv(), Dhat, K)
        if sh.kind == "colength_one":
            from .weyl import transposition

            s_alpha = transposition(n, sh.i0, sh.k0)
            S = self._perm_matrix(s_alpha)
            B = _mat_mul(self._u_c(+1), _mat_mul(S, B, K), K)
            C = _mat_mul(C, _mat_mul(self._perm_matrix(perm_inv(s_alpha)), self._u_c(-1), K), K)
        return B, C

    def equations(self) -> list[Poly]:
        if self._equations is not None:
            return self._equations
        K = self.K
        sh = self.shape
        n = sh.n
        B, C = self.assemble()
        b_diag = [Poly.var(K, avar(perm_inv(sh.conj_perm)[i])) for i in range(n)]
        vB1 = [[_vp_shift(_vp_deriv(B[i][k], K), K) for k in range(n)] for i in range(n)]
        Bb = [[[c * b_diag[k] for c in B[i][k]] for k in range(n)] for i in range(n)]
        M = [[_vp_add(vB1[i][k], Bb[i][k], K) for k in range(n)] for i in range(n)]
        N = _mat_mul(M, C, K)
        root = K.from_int(-sh.p)
        eqs: list[Poly] = []
        flagged = sh.flagged_positions()
        for i in range(n):
            for k in range(n):
                q = N[i][k]
                for _ in range(n - 2):
                    q, rem = _vp_divide_at(q, root, K)
                    if not rem.is_zero():
                        eqs.append(rem)
                if (i, k) in flagged and q:
                    if not q[0].is_zero():
                        eqs.append(q[0])
        self._equations = eqs
        return eqs

    # -- solving -------------------------------------------------------------
    def solve(self, assignments: dict) -> dict:
        """Solve the monodromy system given values for some variables
        (typically the top coefficients).  Returns the full variable
        assignment."""
        assignments = dict(assignments)
        for i, ai in enumerate(self.shape.a_vec):
            assignments[avar(i)] = self.K.from_int(ai)
        eqs = [e.substitute(assignments) for e in self.equations()]
        unknowns = {v for v in self.vars if v not in assignments}
        nzd = CVAR if (self.shape.kind == "colength_one" and CVAR not in assignments) else None
        solved = solve_equations(self.K, eqs, unknowns, nonzerodivisor=nzd)
        full = dict(assignments)
        full.update(solved)
        missing = [v for v in self.vars if v not in full]
        if missing:
            raise SolveError(f"underdetermined chart: unassigned variables {missing}")
        return full

    # -- numeric realizations ----------------------------------------------------
    def _numeric_B(self, full: dict) -> list[list[list]]:
        B, _ = self.assemble()
        out = []
        for row in B:
            orow = []
            for ent in row:
                vals = []
                for c in ent:
                    cc = c.substitute(full)
                    if not cc.is_constant():
                        raise SolveError(f"entry not numeric after substitution: {cc!r}")
                    vals.append(cc.constant_value())
                orow.append(vals)
            out.append(orow)
        return out

    def numeric_A_gf(self, full: dict, F: GF, prec: int) -> LoopMatrix:
        Bnum = self._numeric_B(full)
        n = self.shape.n
        conj = self.shape.conj_perm
        rows = []
        for i in range(n):
            row = []
            for k in range(n):
                ent = Bnum[conj[i]][conj[k]]
                row.append(Series.from_coeffs(F, {d: c.a for d, c in enumerate(ent)}, prec))
            rows.append(row)
        return LoopMatrix(F, rows)

    def numeric_A_pval(self, full: dict) -> PMatrix:
        Bnum = self._numeric_B(full)
        n = self.shape.n
        conj = self.shape.conj_perm
        rows = []
        for i in range(n):
            row = []
            for k in range(n):
                ent = Bnum[conj[i]][conj[k]]
                row.append(VPoly(self.shape.p, [c for c in ent]))
            rows.append(row)
        return PMatrix(self.shape.p, rows)


_SYSTEM_CACHE: dict = {}


def _cache_key(shape: ChartShape, mode: str, q: int | None):
    return (mode, q, shape.n, shape.p, shape.kind, shape.u_perm, shape.conj_perm, shape.i0, shape.k0)


def gf_chart_system(shape: ChartShape, F: GF) -> ChartSystem:
    key = _cache_key(shape, "gf", F.q)
    sys = _SYSTEM_CACHE.get(key)
    if sys is None:
        sys = ChartSystem(shape, GFAdapter(F))
        _SYSTEM_CACHE[key] = sys
    else:
        sys = sys.with_shape(shape)
    return sys


def pval_chart_system(shape: ChartShape) -> ChartSystem:
    key = _cache_key(shape, "pval", None)
    sys = _SYSTEM_CACHE.get(key)
    if sys is None:
        sys = ChartSystem(shape, PValAdapter(shape.p))
        _SYSTEM_CACHE[key] = sys
    else:
        sys = sys.with_shape(shape)
    return sys
