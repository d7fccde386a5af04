"""Unitriangular matrix groups over small fields and their pc presentations.

Matrices are tuples of rows of integer field codes (see gf.FieldTables).  A
group is described by generator matrices grouped into levels (superdiagonal
distance), together with a function giving the GF(p)-coordinates of a matrix
at one level once all lower levels vanish.  Sifting by those coordinates
yields normal forms, and sifting g_i^p and [g_j, g_i] yields the relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..gf import FieldSpec, FieldTables, field_tables
from ..pgroup.presentation import PcPresentation


class MatrixAlgebra:
    def __init__(self, F: FieldTables, dim: int):
        self.F = F
        self.dim = dim
        self.identity = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))

    def mul(self, A, B):
        F = self.F
        add, mul = F.add, F.mul
        n = self.dim
        cols = list(zip(*B))
        out = []
        for row in A:
            r = []
            for col in cols:
                s = 0
                for a, b in zip(row, col):
                    if a and b:
                        s = add[s][mul[a][b]]
                r.append(s)
            out.append(tuple(r))
        return tuple(out)

    def sub(self, A, B):
        sub = self.F.sub
        return tuple(tuple(sub[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B))

    def add(self, A, B):
        add = self.F.add
        return tuple(tuple(add[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A, B))

    def neg(self, A):
        neg = self.F.neg
        return tuple(tuple(neg[a] for a in r) for r in A)

    def inv_unitriangular(self, A):
        """(I + N)^-1 = I - N + N^2 - ... for nilpotent N."""
        N = self.sub(A, self.identity)
        result = self.identity
        term = self.identity
        for k in range(1, self.dim):
            term = self.mul(term, N)
            result = self.add(result, term) if k % 2 == 0 else self.sub(result, term)
        return result

    def pow(self, A, e: int):
        result = self.identity
        base = A
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def comm(self, A, B):
        inv = self.inv_unitriangular
        return self.mul(self.mul(inv(A), inv(B)), self.mul(A, B))

    def is_upper_unitriangular(self, A) -> bool:
        return all(A[i][j] == (1 if i == j else 0) for i in range(self.dim) for j in range(i + 1))


@dataclass
class MatrixGroupModel:
    field: FieldSpec
    dim: int
    form: tuple
    form_kind: str
    generators: list
    levels: list
    level_coords: object = field(repr=False, default=None)
    algebra: MatrixAlgebra = field(repr=False, default=None)
    presentation: PcPresentation = field(repr=False, default=None)

    def evaluate(self, exps) -> tuple:
        alg = self.algebra
        M = alg.identity
        for g, e in zip(self.generators, exps):
            if e:
                M = alg.mul(M, alg.pow(g, e))
        return M

    def sift(self, M) -> tuple:
        """Normal-form exponents of a matrix of the group; raises if not a member."""
        alg = self.algebra
        m = len(self.generators)
        exps = [0] * m
        by_level = {}
        for i, lv in enumerate(self.levels):
            by_level.setdefault(lv, []).append(i)
        for lv in sorted(by_level):
            idxs = by_level[lv]
            coords = self.level_coords(M, lv)
            prod = alg.identity
            for i, c in zip(idxs, coords):
                exps[i] = c
                if c:
                    prod = alg.mul(prod, alg.pow(self.generators[i], c))
            M = alg.mul(alg.inv_unitriangular(prod), M)
        if M != alg.identity:
            raise ValueError("matrix is not in the group spanned by the generators")
        return tuple(exps)


def build_pc_generic(p: int, gens: list, mul, inv, sift, metadata: dict | None = None) -> PcPresentation:
    """Relations of a concrete group by sifting g_i^p and [g_j, g_i]."""

    def power(x, e):
        r = x
        for _ in range(e - 1):
            r = mul(r, x)
        return r

    def comm(x, y):
        return mul(mul(inv(x), inv(y)), mul(x, y))

    m = len(gens)
    powers = [sift(power(g, p)) for g in gens]
    comms = {}
    for i in range(m):
        for j in range(i + 1, m):
            c = sift(comm(gens[j], gens[i]))
            if any(c):
                comms[(j, i)] = c
    return PcPresentation(p, m, powers, comms, dict(metadata or {}))


def build_pc_from_model(model: MatrixGroupModel, metadata: dict | None = None) -> PcPresentation:
    alg = model.algebra
    pres = build_pc_generic(
        model.field.p, model.generators, alg.mul, alg.inv_unitriangular, model.sift, metadata
    )
    model.presentation = pres
    return pres


def unitriangular_model(dim: int, p: int, descending_rows: bool = False) -> MatrixGroupModel:
    """UT(dim, p): generators E_{i,i+d} ordered by level d, then by row i.

    With ``descending_rows`` rows are taken bottom-up inside each level.
    """
    spec = FieldSpec(p, 1)
    F = field_tables(spec)
    alg = MatrixAlgebra(F, dim)
    gens, levels, positions = [], [], {}
    for d in range(1, dim):
        positions[d] = []
        rows = range(dim - d - 1, -1, -1) if descending_rows else range(dim - d)
        for i in rows:
            M = [list(r) for r in alg.identity]
            M[i][i + d] = 1
            gens.append(tuple(tuple(r) for r in M))
            levels.append(d)
            positions[d].append((i, i + d))

    def coords(M, d):
        return [M[i][j] for i, j in positions[d]]

    return MatrixGroupModel(spec, dim, (), "none", gens, levels, coords, alg)
