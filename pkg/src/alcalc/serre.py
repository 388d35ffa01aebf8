"""
Serre weights by lowest alcove presentations, tame inertial types and
presentation changes, special-alcove classification, the paired-weight
setup data feeding the chart calculus, Levi restriction data, the
explicit GL_2 (f=2) weight-cycling constituents, and principal-series
parameters from Hecke characters.

A Serre weight of GL_n(k) is classified by a p-restricted highest weight
lambda in X_1^*(T)^J up to the twist lattice (p - pi)X^0(T)^J, where pi
cyclically shifts embeddings.  A lowest alcove presentation is a pair
(w~, omega) with every component of w~ restricted and
0 < <omega, alpha^vee> < p for positive alpha, presenting
F(pi^{-1}(w~) . (omega - eta)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pval import PVal
from .weyl import (
    Colength,
    DimensionMismatchError,
    ExtAffine,
    PermTuple,
    Weight,
    aff_length,
    all_perms,
    classify_colength,
    compose,
    dot_action,
    eta_weight,
    inverse,
    is_restricted,
    length,
    ncycle,
    nu_w,
    pairing,
    perm_act_vec,
    perm_identity,
    perm_inv,
    perm_mul,
    pi_twist,
    positive_roots,
    restricted_lift,
    restricted_lift_perm,
    root_vec,
    simple_roots,
    star,
    transposition,
    up_arrow_leq_aff,
)


class PresentationError(ValueError):
    pass


class DepthError(ValueError):
    pass


class NonOrdinaryError(ValueError):
    pass


# -- Serre weight equality mod (p - pi)X^0 ----------------------------------------


def serre_canonical(lam: Weight, p: int) -> Weight:
    """Canonical representative mod (p - pi)X^0: the scalar parts of the
    early embeddings are pushed into the last one, which is reduced mod
    p^f - 1 (for f = 1 this puts the last coordinate in [0, p-1))."""
    f, n = lam.f, lam.n
    d = [lam.rows[j][n - 1] for j in range(f)]
    big = p**f - 1
    N = sum(d[j] * p ** (f - 1 - j) for j in range(f)) % big
    shifts = [-d[j] for j in range(f - 1)] + [N - d[f - 1]]
    return Weight.of([tuple(c + shifts[j] for c in lam.rows[j]) for j in range(f)])


def serre_eq(lam1: Weight, lam2: Weight, p: int) -> bool:
    return serre_canonical(lam1, p) == serre_canonical(lam2, p)


def is_p_restricted(lam: Weight, p: int) -> bool:
    return all(0 <= lam.pairing(j, a) <= p - 1 for j in range(lam.f) for a in simple_roots(lam.n))


# -- lowest alcove presentations ----------------------------------------------------


@dataclass(frozen=True)
class SerreWeightLAP:
    """Lowest alcove presentation (w~, omega) of a Serre weight at p."""

    wtilde: ExtAffine
    omega: Weight
    p: int

    def __post_init__(self):
        if (self.wtilde.n, self.wtilde.f) != (self.omega.n, self.omega.f):
            raise DimensionMismatchError("presentation shape mismatch")
        if not is_restricted(self.wtilde):
            raise PresentationError("w~ must be restricted at every embedding")
        for j in range(self.omega.f):
            for a in positive_roots(self.omega.n):
                c = self.omega.pairing(j, a)
                if not (0 < c < self.p):
                    raise PresentationError(
                        f"omega - eta is not interior to the base p-alcove: <omega, {a}> = {c} at embedding {j}"
                    )

    @property
    def n(self) -> int:
        return self.omega.n

    @property
    def f(self) -> int:
        return self.omega.f

    def to_json(self):
        return {"wtilde": self.wtilde.to_json(), "omega": self.omega.to_json(), "p": self.p}


def presentation_to_weight(lap: SerreWeightLAP) -> Weight:
    """lambda = pi^{-1}(w~) . (omega - eta); the output is p-restricted."""
    lam = dot_action(pi_twist(lap.wtilde, -1), lap.omega.sub(Weight.eta(lap.n, lap.f)), lap.p)
    assert is_p_restricted(lam, lap.p)
    return lam


def lowest_alcove_presentation(lam: Weight, p: int) -> SerreWeightLAP:
    """A lowest alcove presentation of F(lambda); exists iff lambda + eta
    lies on no p-alcove wall.  Deterministic: omega entries are the sorted
    residues of lambda + eta mod p."""
    if not is_p_restricted(lam, p):
        raise PresentationError("lambda is not p-restricted")
    f, n = lam.f, lam.n
    eta = eta_weight(n)
    wt_comps: list = [None] * f
    omega_rows: list = [None] * f
    for j in range(f):
        mu = tuple(c + e for c, e in zip(lam.rows[j], eta))
        residues = [c % p for c in mu]
        if len(set(residues)) != n:
            raise PresentationError("no lowest alcove presentation: lambda + eta lies on a p-alcove wall")
        order = sorted(range(n), key=lambda i: -residues[i])
        w = tuple(order)  # w(k) = index with k-th largest residue, so w^{-1}(i) = rank(i)
        omega_rows[j] = tuple(residues[i] for i in order)
        nu = tuple(c // p for c in mu)
        wt_comps[(j - 1) % f] = (nu, w)
    return SerreWeightLAP(ExtAffine.from_components(wt_comps), Weight.of(omega_rows), p)


def lap_weight_canonical(lap: SerreWeightLAP) -> Weight:
    return serre_canonical(presentation_to_weight(lap), lap.p)


def serre_lap_eq(l1: SerreWeightLAP, l2: SerreWeightLAP) -> bool:
    return l1.p == l2.p and serre_eq(presentation_to_weight(l1), presentation_to_weight(l2), l1.p)


# -- tame inertial types --------------------------------------------------------------


@dataclass(frozen=True)
class TameTypePresentation:
    """A presentation (s, mu) of the tame inertial type tau(s, mu + eta)."""

    s: PermTuple
    mu: Weight
    p: int

    def __post_init__(self):
        if (self.s.n, self.s.f) != (self.mu.n, self.mu.f):
            raise DimensionMismatchError("type presentation shape mismatch")

    @property
    def n(self) -> int:
        return self.mu.n

    @property
    def f(self) -> int:
        return self.mu.f

    def wtilde(self) -> ExtAffine:
        """w~(tau) = t_{mu+eta} s."""
        return ExtAffine(self.mu.add(Weight.eta(self.n, self.f)), self.s)

    def is_lowest_alcove(self) -> bool:
        return all(
            0 < self.mu.pairing(j, a) + pairing(eta_weight(self.n), a) < self.p
            for j in range(self.f)
            for a in positive_roots(self.n)
        )

    def to_json(self):
        return {"s": self.s.to_json(), "mu": self.mu.to_json(), "p": self.p}


def wtilde_pair(rho: TameTypePresentation, tau: TameTypePresentation) -> ExtAffine:
    """w~(rho, tau) = w~(tau)^{-1} w~(rho)."""
    return compose(inverse(tau.wtilde()), rho.wtilde())


def depth_genericity(obj, m: int) -> bool:
    """sigma m-deep (for a SerreWeightLAP: m < <omega, alpha> < p - m) or
    tau m-generic (for a TameTypePresentation: m < <mu+eta, alpha> < p - m),
    over all embeddings and positive roots, strictly."""
    if isinstance(obj, SerreWeightLAP):
        vals = [obj.omega.pairing(j, a) for j in range(obj.f) for a in positive_roots(obj.n)]
        p = obj.p
    elif isinstance(obj, TameTypePresentation):
        mu_eta = obj.mu.add(Weight.eta(obj.n, obj.f))
        vals = [mu_eta.pairing(j, a) for j in range(obj.f) for a in positive_roots(obj.n)]
        p = obj.p
    else:
        raise TypeError("expected a SerreWeightLAP or TameTypePresentation")
    return all(m < c < p - m for c in vals)


def depth_violation(obj, m: int):
    """The first violated inequality, as (embedding, root, value), or None."""
    if isinstance(obj, SerreWeightLAP):
        w, p = obj.omega, obj.p
    else:
        w, p = obj.mu.add(Weight.eta(obj.n, obj.f)), obj.p
    for j in range(w.f):
        for a in positive_roots(w.n):
            c = w.pairing(j, a)
            if not (m < c < p - m):
                return (j, a, c)
    return None


def change_presentation(tp: TameTypePresentation, x: ExtAffine) -> TameTypePresentation:
    """(s', mu') = x . (s, mu) = (w s pi(w)^{-1}, x . mu - w s pi(w)^{-1} pi(x)(0)),
    the dot action taken componentwise with the prime p of tp."""
    if (x.n, x.f) != (tp.n, tp.f):
        raise DimensionMismatchError("presentation change shape mismatch")
    f = tp.f
    p = tp.p
    eta = eta_weight(tp.n)
    s_rows = []
    mu_rows = []
    for j in range(f):
        nu_j, w_j = x.component(j)
        w_j1 = x.w.perms[(j + 1) % f]
        nu_j1 = x.nu.rows[(j + 1) % f]
        s_new = perm_mul(perm_mul(w_j, tp.s.perms[j]), perm_inv(w_j1))
        dot = tuple(
            p * nu_j[i] + perm_act_vec(w_j, tuple(a + e for a, e in zip(tp.mu.rows[j], eta)))[i] - eta[i]
            for i in range(tp.n)
        )
        corr = perm_act_vec(s_new, nu_j1)
        s_rows.append(s_new)
        mu_rows.append(tuple(d - c for d, c in zip(dot, corr)))
    return TameTypePresentation(PermTuple.of(s_rows), Weight.of(mu_rows), p)


def tame_type_eq(t1: TameTypePresentation, t2: TameTypePresentation, length_bound: int | None = None):
    """Decide whether t2 = x . t1 for some twist x, solving the finite
    part embedding-by-embedding and the translation part as an exact
    linear system.  Returns the twist x (an ExtAffine) or None.

    Equality is defined by chains of presentation moves of length at most
    l(t_{2 eta}); since such moves generate the full twist group, chains
    reduce to a single composite move, which is what is solved for (and is
    unbounded by default).  Pass length_bound to restrict to one bounded
    move."""
    if t1.p != t2.p or (t1.n, t1.f) != (t2.n, t2.f):
        return None
    n, f, p = t1.n, t1.f, t1.p
    if length_bound is None:
        length_bound = 10**9
    eta = eta_weight(n)
    for w0 in all_perms(n):
        ws = [w0]
        ok = True
        for j in range(f):
            # s'_j = w_j s_j w_{j+1}^{-1}  =>  w_{j+1} = s'_j^{-1} w_j s_j
            wn = perm_mul(perm_inv(t2.s.perms[j]), perm_mul(ws[j], t1.s.perms[j]))
            if j == f - 1:
                if wn != w0:
                    ok = False
                break
            ws.append(wn)
        if not ok or len(ws) != f:
            if not (ok and f == 1):
                continue
        # translation part: p*nu_j - S'_j(nu_{j+1}) = mu'_j + eta - w_j(mu_j + eta)
        rhs = []
        for j in range(f):
            target = tuple(
                t2.mu.rows[j][i]
                + eta[i]
                - perm_act_vec(ws[j], tuple(a + e for a, e in zip(t1.mu.rows[j], eta)))[i]
                for i in range(n)
            )
            rhs.append(target)
        # solve the cyclic linear system over Q
        dim = n * f
        A = [[Fraction(0)] * dim for _ in range(dim)]
        b = [Fraction(0)] * dim
        for j in range(f):
            sp = perm_mul(perm_mul(ws[j], t1.s.perms[j]), perm_inv(ws[(j + 1) % f]))
            for i in range(n):
                r = j * n + i
                A[r][j * n + i] += p
                # (S' nu_{j+1})_i = nu_{j+1}[ sp^{-1}(i) ]
                A[r][((j + 1) % f) * n + perm_inv(sp)[i]] -= 1
                b[r] = Fraction(rhs[j][i])
        sol = _solve_fraction_linear(A, b)
        if sol is None:
            continue
        if any(x.denominator != 1 for x in sol):
            continue
        nu_rows = [tuple(int(sol[j * n + i]) for i in range(n)) for j in range(f)]
        x = ExtAffine(Weight.of(nu_rows), PermTuple.of(ws))
        if change_presentation(t1, x).to_json() == t2.to_json() and length(x) <= length_bound:
            return x
    return None


def _solve_fraction_linear(A: list[list[Fraction]], b: list[Fraction]):
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [c / pv for c in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                fac = M[r][col]
                M[r] = [c - fac * d for c, d in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


# -- special alcoves ---------------------------------------------------------------


@dataclass(frozen=True)
class SpecialityCertificate:
    j0: int
    i0: int
    k0: int
    u_diamond: ExtAffine
    case: str  # "A" or "B"
    delta_used: PermTuple | None

    def to_json(self):
        return {
            "j0": self.j0,
            "i0": self.i0,
            "k0": self.k0,
            "u_diamond": self.u_diamond.to_json(),
            "case": self.case,
            "delta_used": self.delta_used.to_json() if self.delta_used else None,
        }


def _nu_mod_x0_eq(nu1, nu2, shift=None) -> bool:
    """nu1 == nu2 (+ shift) modulo constant vectors."""
    n = len(nu1)
    sh = shift or (0,) * n
    d = [nu1[i] - nu2[i] - sh[i] for i in range(n)]
    return all(x == d[0] for x in d)


def classify_case(w: PermTuple, u: PermTuple, j0: int, i0: int, k0: int) -> str:
    """Case A iff nu_w = nu_u (mod X^0), case B iff nu_w = nu_u + alpha."""
    n = w.n
    if w.perms[j0] != perm_mul(transposition(n, i0, k0), u.perms[j0]):
        raise ValueError("w != s_alpha u at the distinguished embedding")
    for j in range(w.f):
        if j != j0 and w.perms[j] != u.perms[j]:
            raise ValueError("w and u differ away from the distinguished embedding")
    nw, nu = nu_w(w.perms[j0]), nu_w(u.perms[j0])
    if _nu_mod_x0_eq(nw, nu):
        return "A"
    if _nu_mod_x0_eq(nw, nu, shift=root_vec(n, (i0, k0))):
        return "B"
    raise ValueError("pair is in neither case (a) nor case (b)")


def normalize_to_case_a(w: PermTuple, u: PermTuple, j0: int, i0: int, k0: int):
    """Right-multiply both by delta = sigma_{j0}(g^{n - w_{j0}^{-1}(i0)})
    (g the n-cycle), turning a case-B pair into case A.  Returns
    (w', u', delta)."""
    n = w.n
    case = classify_case(w, u, j0, i0, k0)
    if case == "A":
        return w, u, PermTuple.identity(n, w.f)
    g = ncycle(n)
    power = (n - perm_inv(w.perms[j0])[i0]) % n
    gk = perm_identity(n)
    for _ in range(power):
        gk = perm_mul(gk, g)
    delta = PermTuple.of([gk if j == j0 else perm_identity(n) for j in range(w.f)])
    w2, u2 = w.mul(delta), u.mul(delta)
    if classify_case(w2, u2, j0, i0, k0) != "A":
        raise AssertionError("normalization did not reach case (a)")
    return w2, u2, delta


def is_special(w_diamond: ExtAffine):
    """Certificate that the restricted element is special, or None.

    Searches the embeddings j0 for alpha = sigma_{j0}(alpha_{0,n-1}) (the
    only root avoiding every proper standard Levi) such that u := s_alpha w
    at j0 satisfies l(w^d) = l(u^d) + 1 and u^d up-arrow w^d."""
    if not is_restricted(w_diamond):
        raise ValueError("specialness is defined for restricted elements")
    n, f = w_diamond.n, w_diamond.f
    i0, k0 = 0, n - 1
    s_alpha = transposition(n, i0, k0)
    for j0 in range(f):
        wj = w_diamond.w.perms[j0]
        uj = perm_mul(s_alpha, wj)
        wd = restricted_lift_perm(wj)
        ud = restricted_lift_perm(uj)
        if aff_length(wd) != aff_length(ud) + 1:
            continue
        if not up_arrow_leq_aff(ud, wd):
            continue
        u = PermTuple.of([uj if j == j0 else w_diamond.w.perms[j] for j in range(f)])
        case = classify_case(w_diamond.w, u, j0, i0, k0)
        return SpecialityCertificate(j0, i0, k0, restricted_lift(u), case, None)
    return None


def special_perms(n: int) -> list[tuple[int, ...]]:
    """All w in W (f = 1) with w^diamond special, by the direct test."""
    out = []
    for w in all_perms(n):
        wd = restricted_lift(PermTuple.of([w]))
        if is_special(wd) is not None:
            out.append(w)
    return sorted(out)


def enumerate_special(n: int, f: int):
    """(count of special classes, total classes, proportion) over the
    p-restricted p-alcoves, i.e. (W/S)^f with at least one special
    coordinate."""
    from .weyl import aff_profile_key

    per_class: dict[tuple, bool] = {}
    for w in all_perms(n):
        key = aff_profile_key(restricted_lift_perm(w))
        sp = is_special(restricted_lift(PermTuple.of([w]))) is not None
        if key in per_class:
            assert per_class[key] == sp, "specialness is not constant on an S-coset"
        per_class[key] = sp
    classes = list(per_class.values())
    total = len(classes) ** f
    nonspecial = sum(1 for v in classes if not v) ** f
    count = total - nonspecial
    return count, total, Fraction(count, total)


# -- the paired-weight setup --------------------------------------------------------


@dataclass(frozen=True)
class SetupData:
    sigma: SerreWeightLAP
    sigma_prime: SerreWeightLAP
    tau: TameTypePresentation
    tau_prime: TameTypePresentation
    rhobar: TameTypePresentation
    rhobar_prime: TameTypePresentation
    ztilde: ExtAffine
    ztilde_prime: ExtAffine
    j0: int
    i0: int
    k0: int
    case: str
    a_tau: tuple[tuple[int, ...], ...]
    a_tau_prime: tuple[tuple[int, ...], ...]
    ztilde_shape: tuple[Colength, ...]
    ztilde_prime_shape: tuple[Colength, ...]

    @property
    def n(self) -> int:
        return self.sigma.n

    @property
    def f(self) -> int:
        return self.sigma.f

    @property
    def p(self) -> int:
        return self.sigma.p

    def w(self) -> PermTuple:
        return self.sigma.wtilde.w

    def u(self) -> PermTuple:
        return self.sigma_prime.wtilde.w

    def to_json(self):
        return {
            "sigma": self.sigma.to_json(),
            "sigma_prime": self.sigma_prime.to_json(),
            "tau": self.tau.to_json(),
            "tau_prime": self.tau_prime.to_json(),
            "rhobar": self.rhobar.to_json(),
            "rhobar_prime": self.rhobar_prime.to_json(),
            "ztilde": self.ztilde.to_json(),
            "ztilde_prime": self.ztilde_prime.to_json(),
            "j0": self.j0,
            "i0": self.i0,
            "k0": self.k0,
            "case": self.case,
            "a_tau": [list(r) for r in self.a_tau],
            "a_tau_prime": [list(r) for r in self.a_tau_prime],
            "ztilde_shape": [c.value for c in self.ztilde_shape],
            "ztilde_prime_shape": [c.value for c in self.ztilde_prime_shape],
        }


def _tame_type(s_perms, mu_rows, p) -> TameTypePresentation:
    return TameTypePresentation(PermTuple.of(s_perms), Weight.of(mu_rows), p)


def a_tau_vector(tp: TameTypePresentation) -> tuple[tuple[int, ...], ...]:
    """The integer lift of the monodromy parameter: a_{tau,j} =
    s_j^{-1}(mu_j + eta)."""
    eta = eta_weight(tp.n)
    return tuple(
        perm_act_vec(perm_inv(tp.s.perms[j]), tuple(a + e for a, e in zip(tp.mu.rows[j], eta)))
        for j in range(tp.f)
    )


def is_n_generic_vector(a: tuple[int, ...], n: int, p: int) -> bool:
    """Pairwise gaps avoid [-n, n] mod p (conservative n-genericity)."""
    for i in range(len(a)):
        for k in range(len(a)):
            if i != k and min((a[i] - a[k]) % p, (a[k] - a[i]) % p) <= n:
                return False
    return True


def build_setup(w_diamond: ExtAffine, u_diamond: ExtAffine, omega: Weight, p: int) -> SetupData:
    """Assemble the six presentations attached to a special pair
    (sigma, sigma') = (F_{(w^d, omega)}, F_{(u^d, omega)}), verifying the
    (3n-4)-deepness of sigma, the (2n-3)-genericity of tau and tau', and
    the shapes of z~ and z~'."""
    n, f = w_diamond.n, w_diamond.f
    w, u = w_diamond.w, u_diamond.w
    i0, k0 = 0, n - 1
    diffs = [j for j in range(f) if w.perms[j] != u.perms[j]]
    if len(diffs) != 1:
        raise ValueError("w and u must differ at exactly one embedding")
    j0 = diffs[0]
    if w.perms[j0] != perm_mul(transposition(n, i0, k0), u.perms[j0]):
        raise ValueError("w != s_alpha u at the distinguished embedding")
    case = classify_case(w, u, j0, i0, k0)

    sigma = SerreWeightLAP(w_diamond, omega, p)
    sigma_prime = SerreWeightLAP(u_diamond, omega, p)
    m_deep = 3 * n - 4
    viol = depth_violation(sigma, m_deep)
    if viol is not None:
        j, a, c = viol
        raise DepthError(
            f"sigma is not {m_deep}-deep: <omega, alpha_{a}> = {c} at embedding {j} violates {m_deep} < . < {p - m_deep}"
        )

    eta = eta_weight(n)
    nus_w = [nu_w(w.perms[j]) for j in range(f)]
    nus_u = [nu_w(u.perms[j]) for j in range(f)]

    def shifted(vecs, sub_eta: bool):
        rows = []
        for j in range(f):
            base = vecs[j]
            if sub_eta:
                base = tuple(a - e for a, e in zip(base, eta))
            rows.append(base)
        return rows

    # rhobar = tau(pi^{-1}(w)^{-1} u, omega + pi^{-1}(w)^{-1}(nu_u))
    def build_type(left: PermTuple, right: PermTuple, nus, sub_eta: bool) -> TameTypePresentation:
        s_rows = []
        mu_rows = []
        vec_rows = shifted(nus, sub_eta)
        for j in range(f):
            lw = left.perms[(j - 1) % f]
            s_rows.append(perm_mul(perm_inv(lw), right.perms[j]))
            mu_rows.append(tuple(o + c for o, c in zip(omega.rows[j], perm_act_vec(perm_inv(lw), vec_rows[j]))))
        return _tame_type(s_rows, mu_rows, p)

    rhobar = build_type(w, u, nus_u, sub_eta=False)
    tau = build_type(w, w, nus_w, sub_eta=True)
    rhobar_prime = build_type(u, u, nus_u, sub_eta=False)
    tau_prime = build_type(u, u, nus_u, sub_eta=True)

    for name, tp in (("tau", tau), ("tau'", tau_prime)):
        if not tp.is_lowest_alcove():
            raise PresentationError(f"{name} presentation is not lowest-alcove")
        if not depth_genericity(tp, 2 * n - 3):
            j, a, c = depth_violation(tp, 2 * n - 3)
            raise DepthError(f"{name} is not {2*n-3}-generic: <mu+eta, alpha_{a}> = {c} at embedding {j}")

    wt = wtilde_pair(rhobar, tau)
    wt_prime = wtilde_pair(rhobar_prime, tau_prime)

    # invariant: w~(rhobar, tau) = w^{-1} t_{eta + nu_u - nu_w} u
    for j in range(f):
        winv = perm_inv(w.perms[j])
        shift = tuple(e + a - b for e, a, b in zip(eta, nus_u[j], nus_w[j]))
        expect = ((perm_act_vec(winv, shift)), perm_mul(winv, u.perms[j]))
        if wt.component(j) != expect:
            raise AssertionError(f"w~(rhobar,tau) deviates from w^-1 t_(eta+nu_u-nu_w) u at embedding {j}")
    for j in range(f):
        expect = (perm_act_vec(perm_inv(u.perms[j]), eta), perm_identity(n))
        if wt_prime.component(j) != expect:
            raise AssertionError(f"w~(rhobar',tau') deviates from t_(u^-1 eta) at embedding {j}")

    ztilde = star(wt)
    ztilde_prime = star(wt_prime)
    eta_wt = Weight.eta(n, f)
    shape = classify_colength(ztilde, eta_wt)
    shape_prime = classify_colength(ztilde_prime, eta_wt)
    return SetupData(
        sigma,
        sigma_prime,
        tau,
        tau_prime,
        rhobar,
        rhobar_prime,
        ztilde,
        ztilde_prime,
        j0,
        i0,
        k0,
        case,
        a_tau_vector(tau),
        a_tau_vector(tau_prime),
        shape,
        shape_prime,
    )


# -- Levi restriction data -------------------------------------------------------------


def levi_restriction(sigma_lam: Weight, i: int, p: int):
    """The finite datum of the i-th weight-cycling step: the standard Levi
    of the parabolic attached to the antidominant fundamental cocharacter
    -omega_i has blocks (i, n-i), and the restricted highest weight is
    lambda itself."""
    n = sigma_lam.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"fundamental cocharacter index must be in [1, {n-1}]")
    if not is_p_restricted(sigma_lam, p):
        raise ValueError("lambda must be p-restricted")
    return (i, n - i), sigma_lam


# -- GL_2, f = 2 weight cycling data ----------------------------------------------------


def gl2_f2_jh(lam: Weight, p: int):
    """The four weights { F(lam), F((s_0.lam)^d), F((s_1.lam)^d),
    F((s_0 s_1 lam)^d) } by the closed formulas, with the three C_1(sigma)
    constituents tagged socle/cosocle.  Weights are returned in canonical
    form."""
    if (lam.n, lam.f) != (2, 2):
        raise DimensionMismatchError("this datum is specific to n = 2, f = 2")
    lap = lowest_alcove_presentation(lam, p)
    if not depth_genericity(lap, 2):
        raise DepthError("lambda must present a 2-deep weight")
    (a0, b0), (a1, b1) = lam.rows
    s0_d = Weight.of([(b0 - 1 + p, a0 + 1), (a1 - 1, b1)])
    s1_d = Weight.of([(a0 - 1, b0), (b1 - 1 + p, a1 + 1)])
    s01_d = Weight.of([(b0 + p - 1, a0), (b1 + p - 1, a1)])
    out = {
        "sigma": serre_canonical(lam, p),
        "socle": [serre_canonical(s0_d, p), serre_canonical(s1_d, p)],
        "cosocle": serre_canonical(s01_d, p),
    }
    consts = out["socle"] + [out["cosocle"]]
    for c in consts:
        if not is_p_restricted(c, p):
            raise AssertionError("constituent not p-restricted after normalization")
    if any(serre_eq(out["sigma"], c, p) for c in consts):
        raise AssertionError("sigma unexpectedly appears among the C_1 constituents")
    return out


# -- Hecke characters and principal series parameters -------------------------------------


@dataclass(frozen=True)
class HeckeCharacter:
    """Images of the generators x_1..x_n of the spherical Hecke algebra
    F[x_1, ..., x_{n-1}, x_n^{+-}], as exact scalars with p-valuation."""

    values: tuple[PVal, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("empty character")
        if self.values[-1].is_zero():
            raise ValueError("the image of x_n must be invertible")

    @property
    def n(self) -> int:
        return len(self.values)

    def value(self, i: int) -> PVal:
        """chi(T_i), 1-based; T_0 = 1."""
        if i == 0:
            return PVal.one(self.values[0].p)
        return self.values[i - 1]

    def to_json(self):
        return [{"val": str(v.valuation()) if not v.is_zero() else "inf", "repr": repr(v)} for v in self.values]


def ps_parameters(chi: HeckeCharacter, sigma_prime_hw: Weight):
    """Principal-series parameters: for i = 1..n the pair of the i-th
    highest-weight exponent column (over the embeddings) and the ratio
    chi(T_i)/chi(T_{i-1}) with T_0 read as 1."""
    n = chi.n
    if sigma_prime_hw.n != n:
        raise DimensionMismatchError("highest weight rank differs from character rank")
    out = []
    for i in range(1, n + 1):
        den = chi.value(i - 1)
        if den.is_zero():
            raise NonOrdinaryError(f"non-ordinary character: chi(T_{i-1}) = 0")
        ratio = chi.value(i) / den
        column = tuple(sigma_prime_hw.rows[j][i - 1] for j in range(sigma_prime_hw.f))
        out.append((column, ratio))
    return out
