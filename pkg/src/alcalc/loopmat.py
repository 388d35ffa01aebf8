"""
Exact n x n matrices over truncated Laurent series, with the Iwahori
structure of the loop group of GL_n over F_q((v)): membership tests,
affine Bruhat (Iwahori double coset) decomposition by valuation-pivot
elimination, the mod-p monodromy check, and the legal-row-operation
reduction used by the colength-one chart analysis.

Row/column operations are "legal" for the Iwahori subgroup
I = {A : A integral, A mod v upper triangular with unit diagonal}:
adding f*R_j to R_i needs val(f) >= 0 for i < j and val(f) >= 1 for
i > j; unit row scalings are free.  The same bounds transposed govern
column operations.
"""

from __future__ import annotations

from .gf import GF
from .series import Series


class SingularMatrixError(ArithmeticError):
    pass


def default_precision(n: int, max_deg: int) -> int:
    return 4 * n * (1 + max_deg)


class LoopMatrix:
    __slots__ = ("F", "n", "rows")

    def __init__(self, F: GF, rows: list[list[Series]]):
        self.F = F
        self.n = len(rows)
        self.rows = rows

    # -- constructors --------------------------------------------------------
    @staticmethod
    def identity(F: GF, n: int, prec: int) -> "LoopMatrix":
        return LoopMatrix(
            F,
            [[Series.one(F, prec) if i == k else Series.zero(F, prec) for k in range(n)] for i in range(n)],
        )

    @staticmethod
    def zero(F: GF, n: int, prec: int) -> "LoopMatrix":
        return LoopMatrix(F, [[Series.zero(F, prec) for _ in range(n)] for _ in range(n)])

    @staticmethod
    def monomial(F: GF, nu: tuple[int, ...], w: tuple[int, ...], prec: int) -> "LoopMatrix":
        """The matrix of v^nu * w, i.e. entry v^(nu_i) at (i, w^{-1}(i)).

        w is a 0-based one-line permutation; the permutation matrix has a 1
        at (w(k), k), so column k holds v^(nu_{w(k)}).
        """
        n = len(nu)
        rows = [[Series.zero(F, prec) for _ in range(n)] for _ in range(n)]
        for k in range(n):
            i = w[k]
            rows[i][k] = Series.monomial(F, 1, nu[i], prec)
        return LoopMatrix(F, rows)

    def copy(self) -> "LoopMatrix":
        return LoopMatrix(self.F, [row[:] for row in self.rows])

    # -- basic operations ------------------------------------------------------
    def mul(self, other: "LoopMatrix") -> "LoopMatrix":
        n = self.n
        F = self.F
        out = []
        ocols = list(zip(*other.rows))
        for i in range(n):
            row = self.rows[i]
            orow = []
            for k in range(n):
                col = ocols[k]
                acc = row[0].mul(col[0])
                for m in range(1, n):
                    acc = acc.add(row[m].mul(col[m]))
                orow.append(acc)
            out.append(orow)
        return LoopMatrix(F, out)

    def add(self, other: "LoopMatrix") -> "LoopMatrix":
        return LoopMatrix(
            self.F,
            [[self.rows[i][k].add(other.rows[i][k]) for k in range(self.n)] for i in range(self.n)],
        )

    def scale(self, s: Series) -> "LoopMatrix":
        return LoopMatrix(self.F, [[e.mul(s) for e in row] for row in self.rows])

    def det(self) -> Series:
        n = self.n
        if n == 1:
            return self.rows[0][0]
        acc = None
        for k in range(n):
            e = self.rows[0][k]
            if e.is_zero() and acc is not None:
                continue
            sub = LoopMatrix(self.F, [[self.rows[i][m] for m in range(n) if m != k] for i in range(1, n)])
            term = e.mul(sub.det())
            if k % 2:
                term = term.neg()
            acc = term if acc is None else acc.add(term)
        return acc

    def adjugate(self) -> "LoopMatrix":
        n = self.n
        F = self.F
        if n == 1:
            return LoopMatrix(F, [[Series.one(F, self.rows[0][0].prec)]])
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                sub = LoopMatrix(
                    F,
                    [[self.rows[r][c] for c in range(n) if c != k] for r in range(n) if r != i],
                )
                m = sub.det()
                if (i + k) % 2:
                    m = m.neg()
                out[k][i] = m
        return LoopMatrix(F, out)

    def inverse(self) -> "LoopMatrix":
        d = self.det()
        if d.is_zero():
            raise SingularMatrixError("matrix singular to working precision")
        dinv = d.inverse()
        return self.adjugate().scale(dinv)

    def derivative(self) -> "LoopMatrix":
        return LoopMatrix(self.F, [[e.derivative() for e in row] for row in self.rows])

    def conjugate_by(self, X: "LoopMatrix") -> "LoopMatrix":
        """Ad_X(self) = X * self * X^{-1}."""
        return X.mul(self).mul(X.inverse())

    def eq(self, other: "LoopMatrix") -> bool:
        return all(self.rows[i][k] == other.rows[i][k] for i in range(self.n) for k in range(self.n))

    def min_precision(self) -> int:
        return min(e.prec for row in self.rows for e in row)

    def __repr__(self) -> str:
        return "\n".join("[" + ", ".join(repr(e) for e in row) + "]" for row in self.rows)


# -- Iwahori structure ----------------------------------------------------------


def iwahori_member(A: LoopMatrix) -> bool:
    """A is in the Iwahori subgroup: integral entries, upper triangular
    mod v, invertible diagonal mod v."""
    n = A.n
    for i in range(n):
        for k in range(n):
            e = A.rows[i][k]
            if not e.is_zero() and e.val < 0:
                return False
            if i > k and e.coeff(0) != 0:
                return False
            if i == k and e.coeff(0) == 0:
                return False
    return True


def random_iwahori(F: GF, n: int, prec: int, rng, deg: int = 6) -> LoopMatrix:
    """Random element of the Iwahori subgroup with polynomial entries of
    degree <= deg."""
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            lo = 1 if i > k else 0
            cs = {d: F.rand(rng) for d in range(lo, deg + 1)}
            if i == k:
                cs[0] = F.rand_unit(rng)
            row.append(Series.from_coeffs(F, cs, prec))
        rows.append(row)
    return LoopMatrix(F, rows)


def affine_bruhat_decompose(A: LoopMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The unique (nu, w) with A in I v^nu w I.

    Valuation-pivot Gaussian elimination using only Iwahori-legal row and
    column operations.  Pivot rule: among entries of minimal valuation in
    the unprocessed submatrix, smallest column then largest row.
    """
    n = A.n
    W = A.copy()
    rows_left = set(range(n))
    cols_left = set(range(n))
    nu = [0] * n
    w_of_col = [0] * n
    for _ in range(n):
        best = None
        for k in sorted(cols_left):
            for i in sorted(rows_left):
                e = W.rows[i][k]
                if e.is_zero():
                    continue
                cand = (e.val, k, -i)
                if best is None or cand < best:
                    best = cand
        if best is None:
            raise SingularMatrixError("no pivot: matrix singular to working precision")
        m, c, negr = best
        r = -negr
        pivot = W.rows[r][c]
        # scale row r so the pivot becomes exactly v^m (legal: unit scaling)
        unit = pivot.shift(-m)  # valuation-0 unit
        uinv = unit.inverse()
        W.rows[r] = [e.mul(uinv) for e in W.rows[r]]
        # clear the rest of column c with legal row operations
        for i in list(rows_left):
            if i == r:
                continue
            e = W.rows[i][c]
            if e.is_zero():
                continue
            f = e.shift(-m)  # e / v^m = e / pivot
            if i > r and (not f.is_zero()) and f.val < 1:
                raise AssertionError("pivot rule violated: illegal row operation required")
            W.rows[i] = [W.rows[i][k].sub(f.mul(W.rows[r][k])) for k in range(n)]
        # clear the rest of row r with legal column operations
        for k in list(cols_left):
            if k == c:
                continue
            e = W.rows[r][k]
            if e.is_zero():
                continue
            f = e.shift(-m)
            if k < c and (not f.is_zero()) and f.val < 1:
                raise AssertionError("pivot rule violated: illegal column operation required")
            for i in range(n):
                W.rows[i][k] = W.rows[i][k].sub(f.mul(W.rows[i][c]))
        nu[r] = m
        w_of_col[c] = r
        rows_left.discard(r)
        cols_left.discard(c)
    return tuple(nu), tuple(w_of_col)


def coset_member(A: LoopMatrix, nu: tuple[int, ...], w: tuple[int, ...]) -> bool:
    """A in I v^nu w I, tested via the decomposition."""
    return affine_bruhat_decompose(A) == (tuple(nu), tuple(w))


def nabla_check(A: LoopMatrix, a: tuple[int, ...]) -> bool:
    """Special-fiber monodromy condition for the diagonal integer vector a:
    E = v (v dA/dv A^{-1} + A a A^{-1}) must be integral and upper
    triangular mod v."""
    F = A.F
    n = A.n
    Ainv = A.inverse()
    dA = A.derivative()
    amat = LoopMatrix(
        F,
        [
            [
                Series.monomial(F, F.from_int(a[i]), 0, A.rows[0][0].prec) if i == k else Series.zero(F, A.rows[0][0].prec)
                for k in range(n)
            ]
            for i in range(n)
        ],
    )
    term1 = dA.mul(Ainv)
    term2 = A.mul(amat).mul(Ainv)
    for i in range(n):
        for k in range(n):
            e = term1.rows[i][k].shift(1).add(term2.rows[i][k]).shift(1)  # v*(v*dA*Ainv + A a Ainv)
            if e.is_zero():
                continue
            if e.val < 0:
                return False
            if i > k and e.coeff(0) != 0:
                return False
    return True


class RowReduceError(ValueError):
    pass


def iwahori_row_reduce(
    A: LoopMatrix,
    i0: int,
    k0: int,
    m_bound: dict[tuple[int, int], int] | None = None,
) -> tuple[list[tuple[str, int, int, Series]], LoopMatrix]:
    """Reduce B = A * s_alpha (alpha = alpha_{i0 k0}, 0-based) to a lower
    unipotent matrix by legal row operations for the conjugated Iwahori.

    A must be lower unipotent.  Preconditions checked (0-based indices,
    mirroring the open-chart conditions): the (k0, i0) entry of A is a
    unit, and for each 2 <= i <= k0-i0 the i x i minor of B on rows and
    columns {k0-i+1..k0} is a unit.  Failures raise RowReduceError naming
    the offender.

    m_bound, when given, maps (i, k) -> the maximal allowed pole order
    -val(f) of the multiplier f in the operation R_i += f * R_k (that is,
    val(f) >= -m_bound[(i,k)]); every performed operation is checked.
    Returns (operations, final lower-unipotent matrix); each operation is
    ("add", i, k, f) for R_i += f*R_k or ("scale", i, i, u).
    """
    F = A.F
    n = A.n
    # precondition (2)
    if not A.rows[k0][i0].is_unit():
        raise RowReduceError(f"condition (2) fails: entry A[{k0}][{i0}] (the -alpha entry) is not a unit")
    # B = A * s_alpha: swap columns i0 and k0
    B = A.copy()
    for i in range(n):
        B.rows[i][i0], B.rows[i][k0] = B.rows[i][k0], B.rows[i][i0]
    # precondition (3): trailing minors of B
    for i in range(2, k0 - i0 + 1):
        idx = list(range(k0 - i + 1, k0 + 1))
        sub = LoopMatrix(F, [[B.rows[r][c] for c in idx] for r in idx])
        if not sub.det().is_unit():
            raise RowReduceError(f"condition (3) fails: minor M_{i} is not a unit")

    ops: list[tuple[str, int, int, Series]] = []

    def do_add(i: int, k: int, f: Series) -> None:
        if m_bound is not None and not f.is_zero():
            bound = m_bound.get((i, k), 0)
            if f.val < -bound:
                raise RowReduceError(f"illegal row operation R_{i} += f R_{k}: val(f)={f.val} < {-bound}")
        B.rows[i] = [B.rows[i][c].add(f.mul(B.rows[k][c])) for c in range(n)]
        ops.append(("add", i, k, f))

    # clear the strictly-upper entries, which sit in column k0 (rows i0..k0-1)
    # plus the fill-in at columns k in (t, k0); rows are processed bottom-up so
    # every helper row below is already upper-free
    for t in range(k0 - 1, i0 - 1, -1):
        e = B.rows[t][k0]
        if not e.is_zero():
            f = e.neg().mul(B.rows[k0][k0].inverse())
            do_add(t, k0, f)
        for k in range(k0 - 1, t, -1):
            e = B.rows[t][k]
            if not e.is_zero():
                f = e.neg().mul(B.rows[k][k].inverse())
                do_add(t, k, f)
    # check lower triangular now
    for i in range(n):
        for k in range(i + 1, n):
            if not B.rows[i][k].is_zero():
                raise RowReduceError(f"reduction left a nonzero upper entry at ({i},{k})")
    # normalize the diagonal to 1 by unit row scalings
    for i in range(n):
        d = B.rows[i][i]
        if not d.is_unit():
            raise RowReduceError(f"diagonal entry {i} is not a unit after reduction")
        u = d.inverse()
        B.rows[i] = [e.mul(u) for e in B.rows[i]]
        ops.append(("scale", i, i, u))
    return ops, B
