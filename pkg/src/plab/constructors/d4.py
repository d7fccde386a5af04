"""Sylow p-subgroup of 3D4(q) as Q2 : T.

Q2 is the Heisenberg-type group on V x GF(q), V the triality module, with product

    (v, z)(w, z') = (v + w, z + z' + beta(v, w))

where beta is GF(p)-bilinear with beta(v, w) - beta(w, v) = B(v, w).  T acts by
automorphisms phi_t(v, z) = (t v, z + F_t(v)); F_t is fixed by the homomorphism
condition up to a linear functional, and the functionals are solved for so that
the phi_t form an action of the elementary abelian group T.

For p = 2 the squaring map (v, z)^2 = (0, beta(v, v)) must be T-invariant.  A
diagonal correction l with beta'(v, w) = beta(v, w) + sum_i l_i v_i w_i is found by
solving a linear system; the system is part of the construction and has no
solution exactly when no invariant quadratic refinement exists.

Elements are triples (a, v, z) of GF(p)-coordinate tuples: t = prod u_i^a_i,
v in the adapted basis of V, z in GF(p)-coordinates of GF(q).  The pc generators
are the T basis, then the V basis, then the GF(q) basis.
"""

from __future__ import annotations

from ..linalg import mat_vec, solve
from ..pgroup.presentation import PcPresentation
from .matrices import build_pc_generic
from .psu5 import ConstructionError
from .triality import TrialityModule, build_triality_module


class D4Model:
    def __init__(self, module: TrialityModule, refinement: int = 0):
        self.module = M = module
        self.p, self.n = p, n = M.p, M.n
        self.N = N = M.dim
        self.r = r = 3 * n
        # beta: strictly upper part of B
        self.beta = [[list(M.form[i][j]) if i < j else [0] * n for j in range(N)] for i in range(N)]
        if p == 2:
            self._refine_square_map(refinement)
        self.mats = M.t_mats
        self.F0 = [self._f0_table(k) for k in range(r)]
        self.lam = self._solve_lambdas()
        self.identity = (tuple([0] * r), tuple([0] * N), tuple([0] * n))
        self.generators = []
        for k in range(r):
            self.generators.append((tuple(int(i == k) for i in range(r)), self.identity[1], self.identity[2]))
        for j in range(N):
            self.generators.append((self.identity[0], tuple(int(i == j) for i in range(N)), self.identity[2]))
        for k in range(n):
            self.generators.append((self.identity[0], self.identity[1], tuple(int(i == k) for i in range(n))))

    # -- bilinear pieces --
    def bil(self, table, v, w):
        p = self.p
        out = [0] * self.n
        for i, vi in enumerate(v):
            if not vi:
                continue
            row = table[i]
            for j, wj in enumerate(w):
                if wj:
                    c = vi * wj
                    for k, x in enumerate(row[j]):
                        if x:
                            out[k] = (out[k] + c * x) % p
        return out

    def _basis(self, j):
        return [int(i == j) for i in range(self.N)]

    def _refine_square_map(self, refinement: int):
        """Add a diagonal l so that v -> beta(v, v) is T-invariant (p = 2)."""
        p, n, N = self.p, self.n, self.N
        M = self.module

        def Q(v):
            return self.bil(self.beta, v, v)

        rows, rhs = [], []
        for T in M.t_mats:
            for j in range(N):
                e = self._basis(j)
                te = mat_vec(T, e, p)
                target = [(x - y) % p for x, y in zip(Q(e), Q(te))]
                for k in range(n):
                    # sum_i (te_i - e_i) l_i[k] = target[k], unknown index i*n + k
                    row = [0] * (N * n)
                    for i in range(N):
                        row[i * n + k] = (te[i] - e[i]) % p
                    rows.append(row)
                    rhs.append(target[k])
        sol = solve(rows, rhs, p)
        if sol is None:
            raise ConstructionError("no T-invariant quadratic refinement of the form exists")
        if refinement:
            # alternative refinements differ by T-invariant functionals: those vanishing on [V, T]
            top = N - (M.layers[1])
            extra = [0] * (N * n)
            for b in range(top * n):
                if (refinement >> b) & 1:
                    extra[b] = 1
            sol = [(x + y) % p for x, y in zip(sol, extra)]
        for i in range(N):
            self.beta[i][i] = [(self.beta[i][i][k] + sol[i * n + k]) % p for k in range(n)]

    def _f0_table(self, k):
        """Table (i, j) -> D_k(e_i, e_j) with D_k(v, w) = beta(tv, tw) - beta(v, w)."""
        p, N = self.p, self.N
        T = self.mats[k]
        imgs = [mat_vec(T, self._basis(j), p) for j in range(N)]
        D = []
        for i in range(N):
            row = []
            for j in range(N):
                a = self.bil(self.beta, imgs[i], imgs[j])
                b = self.beta[i][j]
                row.append([(x - y) % p for x, y in zip(a, b)])
            D.append(row)
        if p == 2 and any(any(D[i][i]) for i in range(N)):
            raise ConstructionError("square map is not invariant under T")
        return D

    def f0(self, k, v):
        """Quadratic part of F_k: D_k(v, v)/2 for odd p, upper part of D_k for p = 2."""
        p, n = self.p, self.n
        D = self.F0[k]
        out = [0] * n
        half = (p + 1) // 2
        for i, vi in enumerate(v):
            if not vi:
                continue
            for j in range(i, len(v)):
                vj = v[j]
                if not vj:
                    continue
                if i == j:
                    if p == 2:
                        continue
                    c = vi * vi * half
                else:
                    c = vi * vj
                for t, x in enumerate(D[i][j]):
                    if x:
                        out[t] = (out[t] + c * x) % p
        return out

    def F(self, k, v):
        out = self.f0(k, v)
        if getattr(self, "lam", None) is not None:
            for i, vi in enumerate(v):
                if vi:
                    out = [(x + vi * y) % self.p for x, y in zip(out, self.lam[k][i])]
        return out

    def _solve_lambdas(self):
        """Linear parts making the phi_k commute and have order p."""
        p, n, N, r = self.p, self.n, self.N, self.r
        self.lam = None
        nunk = r * N * n

        def var(k, i, t):
            return (k * N + i) * n + t

        rows, rhs = [], []

        def add_lin(row, k, vec, t, sign):
            for i, x in enumerate(vec):
                if x:
                    row[var(k, i, t)] = (row[var(k, i, t)] + sign * x) % p

        for k in range(r):
            for l in range(k + 1, r):
                for j in range(N):
                    e = self._basis(j)
                    ke = mat_vec(self.mats[k], e, p)
                    le = mat_vec(self.mats[l], e, p)
                    # F_k(e) + F_l(k e) - F_l(e) - F_k(l e) = 0
                    const = [
                        (a + b - c - d) % p
                        for a, b, c, d in zip(self.f0(k, e), self.f0(l, ke), self.f0(l, e), self.f0(k, le))
                    ]
                    for t in range(n):
                        row = [0] * nunk
                        add_lin(row, k, e, t, 1)
                        add_lin(row, l, ke, t, 1)
                        add_lin(row, l, e, t, -1)
                        add_lin(row, k, le, t, -1)
                        rows.append(row)
                        rhs.append((-const[t]) % p)
        for k in range(r):
            for j in range(N):
                orbit = [self._basis(j)]
                for _ in range(p - 1):
                    orbit.append(mat_vec(self.mats[k], orbit[-1], p))
                const = [0] * n
                for v in orbit:
                    const = [(x + y) % p for x, y in zip(const, self.f0(k, v))]
                for t in range(n):
                    row = [0] * nunk
                    for v in orbit:
                        add_lin(row, k, v, t, 1)
                    rows.append(row)
                    rhs.append((-const[t]) % p)
        sol = solve(rows, rhs, p)
        if sol is None:
            raise ConstructionError("T does not lift to an action on Q2")
        return [[[sol[var(k, i, t)] for t in range(n)] for i in range(N)] for k in range(r)]

    # -- group law --
    def q2_mul(self, x, y):
        p = self.p
        v, z = x
        w, z2 = y
        b = self.bil(self.beta, v, w)
        return (
            tuple((a + c) % p for a, c in zip(v, w)),
            tuple((a + c + d) % p for a, c, d in zip(z, z2, b)),
        )

    def q2_inv(self, x):
        p = self.p
        v, z = x
        b = self.bil(self.beta, v, v)
        return tuple((-a) % p for a in v), tuple((c - a) % p for a, c in zip(z, b))

    def phi(self, a, x):
        p = self.p
        v, z = x
        for k, e in enumerate(a):
            for _ in range(e % p):
                fz = self.F(k, v)
                z = tuple((c + d) % p for c, d in zip(z, fz))
                v = tuple(mat_vec(self.mats[k], list(v), p))
        return v, z

    def mul(self, g, h):
        a, v, z = g
        b, w, z2 = h
        x = self.q2_mul(self.phi(b, (v, z)), (w, z2))
        return tuple((s + t) % self.p for s, t in zip(a, b)), x[0], x[1]

    def inv(self, g):
        a, v, z = g
        na = tuple((-s) % self.p for s in a)
        x = self.phi(na, self.q2_inv((v, z)))
        return na, x[0], x[1]

    def sift(self, g):
        a, v, z = g
        acc = ((0,) * self.N, (0,) * self.n)
        for j, c in enumerate(v):
            for _ in range(c):
                acc = self.q2_mul(acc, (tuple(self._basis(j)), (0,) * self.n))
        rest = self.q2_mul(self.q2_inv(acc), (v, z))
        return tuple(a) + tuple(v) + tuple(rest[1])

    def evaluate(self, exps):
        g = self.identity
        for gen, e in zip(self.generators, exps):
            for _ in range(e):
                g = self.mul(g, gen)
        return g


def d4_model(p: int, n: int, refinement: int = 0) -> D4Model:
    return D4Model(build_triality_module(p, n), refinement)


def build_3d4_sylow(p: int, n: int, check: bool = True) -> tuple[PcPresentation, D4Model]:
    """Pc presentation of Q2 : T plus the concrete model.

    With ``check`` the structural claims about the result are verified and the
    construction is rejected when one fails.  For p = 2 each T-invariant quadratic
    refinement is tried in turn and the first one passing the checks is kept.
    """
    q = p**n
    module = build_triality_module(p, n)
    choices = range(2 ** (n * n)) if p == 2 else [0]
    failures = []
    for refinement in choices:
        model = D4Model(module, refinement)
        meta = {
            "family": "3D4",
            "p": p,
            "n": n,
            "q": q,
            "field": module.big.to_dict(),
            "provenance": "Heisenberg group on the triality module extended by unipotent T",
            "refinement": refinement,
        }
        pres = build_pc_generic(p, model.generators, model.mul, model.inv, model.sift, meta)
        if pres.m != 12 * n:
            raise ConstructionError(f"expected {12 * n} pc generators, got {pres.m}")
        if not check:
            return pres, model
        pres.check_consistency(samples=200)
        from ..suites import d4_structure_failures

        bad = d4_structure_failures(pres)
        if not bad:
            return pres, model
        failures.append((refinement, bad))
    raise ConstructionError(f"no refinement passes the structure checks: {failures}")
