"""Twisted tensor modules for a Sylow subgroup of SL2(q^k), k = 1, 2, 3.

Let N = GF(q^k)^2 be the natural module and W = N (x) N^s (x) ... (x) N^(s^(k-1)),
where s is x -> x^q and g acts on the f-th factor through g^(s^f).  The
s-semilinear map

    theta(x e_(b0, ..., b_(k-1))) = x^q e_(b_(k-1), b0, ..., b_(k-2))

commutes with the action and has order k, so its fixed points V form a GF(q)-form
of W: a 2^k-dimensional GF(q)-module, 2^k n-dimensional over GF(p).  For k = 1 this
is the natural SL2(q)-module, for k = 2 the natural Omega4-(q)-module and for k = 3
the triality module.  The group T = {u(t) = [[1, t], [0, 1]] : t in GF(q^k)} acts
on V.  The product of k copies of the symplectic form u0 v1 - u1 v0 is an
invariant form on W (alternating for odd k) that takes values in GF(q) on V.

Everything is returned over GF(p): V has a basis adapted to the chain
V > [V, T] > [V, T, T] > ..., T is given by GF(p)-basis generators and the form
is a table of GF(q)-values in GF(p)-coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..gf import FieldSpec, build_field_tower, field_tables
from ..linalg import coordinates, identity, mat_mul, mat_pow, mat_vec, nullspace, rank, span_basis
from .psu5 import ConstructionError


def _idx(bits):
    v = 0
    for b in bits:
        v = 2 * v + b
    return v


@dataclass
class TwistedTensorModule:
    p: int
    n: int
    k: int  # number of tensor factors
    small: FieldSpec  # GF(q)
    big: FieldSpec  # GF(q^k)
    t_basis: list  # GF(p)-basis of GF(q^k) as codes; generator i is u(t_basis[i])
    t_mats: list  # action of generator i on V, column convention
    form: list  # form[i][j]: GF(q)-coordinates of B(e_i, e_j)
    layers: list  # GF(p)-dimensions of V, [V,T], [V,T,T], ...
    w_basis: list = field(repr=False, default_factory=list)  # basis of V inside W

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def dim(self) -> int:
        return 2**self.k * self.n

    @property
    def acting_rank(self) -> int:
        """GF(p)-rank of the acting group T."""
        return self.k * self.n

    def t_matrix(self, a) -> list:
        """Action of prod_i u(t_basis[i])^a_i."""
        M = identity(self.dim)
        for Mi, e in zip(self.t_mats, a):
            if e % self.p:
                M = mat_mul(M, mat_pow(Mi, e % self.p, self.p), self.p)
        return M

    def form_value(self, v, w) -> list:
        """B(v, w) in GF(q)-coordinates for coordinate vectors v, w."""
        p = self.p
        out = [0] * self.n
        for i, vi in enumerate(v):
            if not vi:
                continue
            for j, wj in enumerate(w):
                if wj:
                    c = vi * wj
                    for k, x in enumerate(self.form[i][j]):
                        out[k] = (out[k] + c * x) % p
        return out


def _u_action(F, bits_list, taus, wvec):
    """Apply u(t) (x) u(t^q) (x) ... to a W-vector of 2^k codes."""
    out = [0] * len(wvec)
    for bits, x in zip(bits_list, wvec):
        if not x:
            continue
        # a factor e_1 maps to e_1 + tau_f e_0
        choices = [[(0, 1)] if bit == 0 else [(1, 1), (0, taus[f])] for f, bit in enumerate(bits)]
        for pick in product(*choices):
            coef = x
            for _, c in pick:
                coef = F.mul[coef][c]
            i = _idx([b for b, _ in pick])
            out[i] = F.add[out[i]][coef]
    return out


def _w_form(F, bits_list, v, w):
    s = 0
    for bits, x in zip(bits_list, v):
        if not x:
            continue
        y = w[_idx([1 - b for b in bits])]
        if not y:
            continue
        term = F.mul[x][y]
        if sum(bits) % 2:
            term = F.neg[term]
        s = F.add[s][term]
    return s


def build_triality_module(p: int, n: int) -> TwistedTensorModule:
    M = build_twisted_tensor_module(p, n, 3)
    if M.layers != [8 * n, 7 * n, 4 * n, n, 0]:
        raise ConstructionError(f"triality module has commutator chain dimensions {M.layers}")
    return M


def natural_sl2_module(p: int, n: int) -> TwistedTensorModule:
    return build_twisted_tensor_module(p, n, 1)


def omega4_minus_module(p: int, n: int) -> TwistedTensorModule:
    return build_twisted_tensor_module(p, n, 2)


def build_twisted_tensor_module(p: int, n: int, k: int) -> TwistedTensorModule:
    if k not in (1, 2, 3):
        raise ValueError("number of tensor factors must be 1, 2 or 3")
    specs, emb = build_field_tower(p, n, [1, k])
    small, big = specs
    F = field_tables(big)
    d3 = k * n
    nw = 2**k
    bits_list = list(product((0, 1), repeat=k))
    sig = F.frob(n)

    def w_to_vec(wvec):
        out = []
        for x in wvec:
            out.extend(F.coords(x))
        return out

    def vec_to_w(vec):
        return [F.from_coords(vec[i * d3:(i + 1) * d3]) for i in range(nw)]

    # theta - 1 as a GF(p)-matrix on W, column convention
    size = nw * d3
    cols = []
    for b in range(size):
        e = [0] * size
        e[b] = 1
        wv = vec_to_w(e)
        img = [0] * nw
        for bits, x in zip(bits_list, wv):
            img[_idx(bits[-1:] + bits[:-1])] = sig[x]
        cols.append([(y - z) % p for y, z in zip(w_to_vec(img), e)])
    theta_minus_one = [[cols[j][i] for j in range(size)] for i in range(size)]
    raw = nullspace(theta_minus_one, p)
    if len(raw) != nw * n:
        raise ConstructionError(f"fixed space of theta has dimension {len(raw)}, expected {nw * n}")

    t_basis = [F.from_coords([int(i == b) for i in range(d3)]) for b in range(d3)]

    def raw_action(tau):
        taus = [tau]
        for _ in range(k - 1):
            taus.append(sig[taus[-1]])
        cols = []
        for v in raw:
            img = w_to_vec(_u_action(F, bits_list, taus, vec_to_w(v)))
            c = coordinates(raw, img, p)
            if c is None:
                raise ConstructionError("fixed space of theta is not T-invariant")
            cols.append(c)
        return [[cols[j][i] for j in range(len(raw))] for i in range(len(raw))]

    raw_mats = [raw_action(t) for t in t_basis]
    dim = len(raw)

    # chain V > [V,T] > ... and a basis adapted to it
    chain = [identity(dim)]
    while chain[-1]:
        nxt = []
        for u in chain[-1]:
            for M in raw_mats:
                img = mat_vec(M, u, p)
                nxt.append([(x - y) % p for x, y in zip(img, u)])
        chain.append(span_basis(nxt, p))
    layers = [len(c) for c in chain]
    adapted = []
    for sub in reversed(chain):
        for v in sub:
            if rank(adapted + [v], p) > len(adapted):
                adapted.append(v)
    adapted.reverse()
    # adapted now lists the top complement first and the deepest layer last
    P = [[adapted[j][i] for j in range(dim)] for i in range(dim)]
    Pinv_cols = [coordinates(adapted, [int(i == c) for i in range(dim)], p) for c in range(dim)]
    Pinv = [[Pinv_cols[j][i] for j in range(dim)] for i in range(dim)]
    t_mats = [mat_mul(mat_mul(Pinv, M, p), P, p) for M in raw_mats]

    # basis of V in W and the form in GF(q)-coordinates
    w_basis = []
    for c in adapted:
        vec = [0] * size
        for ci, r in zip(c, raw):
            if ci:
                vec = [(x + ci * y) % p for x, y in zip(vec, r)]
        w_basis.append(vec_to_w(vec))
    e = emb[(0, 1)]
    sub_basis = [F.coords(F.code(e(b))) for b in small.basis()]
    form = []
    for wi in w_basis:
        row = []
        for wj in w_basis:
            val = _w_form(F, bits_list, wi, wj)
            c = coordinates(sub_basis, F.coords(val), p)
            if c is None:
                raise ConstructionError("form value on V lies outside GF(q)")
            row.append(tuple(c))
        form.append(row)
    return TwistedTensorModule(p, n, k, small, big, t_basis, t_mats, form, layers, w_basis)


TrialityModule = TwistedTensorModule
