"""Sylow p-subgroup of SU5(q): unitriangular isometries of a hermitian form.

The form is h(x, y) = x^T J conj(y) with J the antidiagonal identity and
conj(x) = x^q on GF(q^2).  An upper unitriangular M preserves it iff for all
i < j with i + j >= 4

    M[i][j] + conj(M[4-j][4-i]) + sum_{i<k<j} M[k][j] conj(M[4-k][4-i]) = 0.

The sum only involves entries at smaller superdiagonal distance, so entries are
solved distance by distance.  Positions (0,1), (1,2), (0,2), (0,3) are free in
GF(q^2) and determine their reflections (3,4), (2,3), (2,4), (1,4); the
antidiagonal positions (1,3), (0,4) satisfy x + conj(x) = c, an affine
condition with q solutions.  Hence |S| = q^10.
"""

from __future__ import annotations

from itertools import product

from ..gf import FieldSpec, field_tables
from ..linalg import nullspace
from ..pgroup.presentation import PcPresentation
from .matrices import MatrixAlgebra, MatrixGroupModel, build_pc_from_model

DIM = 5
FREE_SLOTS = [(0, 1), (1, 2), (0, 2), (0, 3)]
SELF_SLOTS = [(1, 3), (0, 4)]


class ConstructionError(RuntimeError):
    pass


class HermitianSetup:
    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.big = FieldSpec(p, 2 * n)
        self.F = field_tables(self.big)
        self.conj = self.F.frob(n)
        F = self.F
        # GF(p)-basis of ker(x + conj x), as codes
        rows = []
        for b in range(2 * n):
            e = F.from_coords([int(i == b) for i in range(2 * n)])
            rows.append(F.coords(F.add[e][self.conj[e]]))
        # matrix of the GF(p)-linear map x -> x + conj(x) in column convention
        mat = [[rows[b][i] for b in range(2 * n)] for i in range(2 * n)]
        self.kernel = [F.from_coords(v) for v in nullspace(mat, p)]
        if len(self.kernel) != n:
            raise ConstructionError("kernel of x + conj(x) does not have dimension n")
        self._kernel_mat = [F.coords(k) for k in self.kernel]
        # w with w + conj(w) = 1
        self.half = next(w for w in range(F.q) if F.add[w][self.conj[w]] == 1)
        self.J = tuple(tuple(int(i + j == DIM - 1) for j in range(DIM)) for i in range(DIM))

    def kernel_coords(self, x: int) -> list:
        """Coordinates of x in the kernel basis."""
        from ..linalg import coordinates

        c = coordinates(self._kernel_mat, self.F.coords(x), self.p)
        if c is None:
            raise ConstructionError("antidiagonal entry violates x + conj(x) = 0")
        return c

    def complete(self, entries: dict):
        """Unitary unitriangular matrix with the given free/self values at one level.

        ``entries`` maps free slots to values and self slots to kernel values;
        unspecified free slots are 0 and self slots take the particular solution.
        """
        F, conj = self.F, self.conj
        M = [[int(i == j) for j in range(DIM)] for i in range(DIM)]
        for d in range(1, DIM):
            for i in range(DIM - d):
                j = i + d
                if i + j < DIM - 1:
                    M[i][j] = entries.get((i, j), 0)
            for i in range(DIM - d):
                j = i + d
                if i + j < DIM - 1:
                    continue
                s = 0
                for k in range(i + 1, j):
                    s = F.add[s][F.mul[M[k][j]][conj[M[DIM - 1 - k][DIM - 1 - i]]]]
                if i + j > DIM - 1:
                    # reflection of the free slot (4-j, 4-i): M[i][j] = -conj(M[4-j][4-i]) - s
                    a = M[DIM - 1 - j][DIM - 1 - i]
                    M[i][j] = F.neg[F.add[conj[a]][s]]
                else:
                    c = F.neg[s]
                    M[i][j] = F.add[F.mul[c][self.half]][entries.get((i, j), 0)]
        return tuple(tuple(r) for r in M)

    def preserves_form(self, alg: MatrixAlgebra, M) -> bool:
        Mbar = tuple(tuple(self.conj[x] for x in r) for r in M)
        Mt = tuple(zip(*M))
        return alg.mul(alg.mul(Mt, self.J), Mbar) == self.J

    def level_solution_count(self, d: int) -> int:
        """Number of distance-d entry patterns satisfying the linearized constraints."""
        F, conj = self.F, self.conj
        positions = [(i, i + d) for i in range(DIM - d)]
        count = 0
        for vals in product(range(F.q), repeat=len(positions)):
            M = dict(zip(positions, vals))
            ok = True
            for (i, j), v in M.items():
                if i + j >= DIM - 1 and F.add[v][conj[M[(DIM - 1 - j, DIM - 1 - i)]]] != 0:
                    ok = False
                    break
            count += ok
        return count


def su5_model(p: int, n: int) -> MatrixGroupModel:
    H = HermitianSetup(p, n)
    F = H.F
    alg = MatrixAlgebra(F, DIM)
    gens, levels = [], []
    basis = [F.from_coords([int(i == b) for i in range(2 * n)]) for b in range(2 * n)]
    layout = {}
    for d in range(1, DIM):
        layout[d] = []
        for slot in FREE_SLOTS:
            if slot[1] - slot[0] == d:
                layout[d].append(("free", slot))
                for beta in basis:
                    gens.append(H.complete({slot: beta}))
                    levels.append(d)
        for slot in SELF_SLOTS:
            if slot[1] - slot[0] == d:
                layout[d].append(("self", slot))
                for kappa in H.kernel:
                    gens.append(H.complete({slot: kappa}))
                    levels.append(d)

    def coords(M, d):
        out = []
        for kind, (i, j) in layout[d]:
            if kind == "free":
                out.extend(F.coords(M[i][j]))
            else:
                out.extend(H.kernel_coords(M[i][j]))
        return out

    model = MatrixGroupModel(H.big, DIM, H.J, "hermitian", gens, levels, coords, alg)
    model.hermitian = H
    for g in gens:
        if not alg.is_upper_unitriangular(g) or not H.preserves_form(alg, g):
            raise ConstructionError("generator does not preserve the hermitian form")
    return model


def build_su5_sylow(p: int, n: int, check: bool = True) -> tuple[PcPresentation, MatrixGroupModel]:
    """Pc presentation of the unitriangular Sylow subgroup plus its matrix model."""
    model = su5_model(p, n)
    H = model.hermitian
    q = p**n
    total = 1
    for d in range(1, DIM):
        total *= H.level_solution_count(d)
    if total != q**10:
        raise ConstructionError(f"form constraints have {total} solutions, expected q^10 = {q**10}")
    meta = {
        "family": "PSU5",
        "p": p,
        "n": n,
        "q": q,
        "field": H.big.to_dict(),
        "provenance": "unitriangular isometries of the antidiagonal hermitian form",
    }
    pres = build_pc_from_model(model, meta)
    if pres.m != 10 * n:
        raise ConstructionError(f"expected {10 * n} pc generators, got {pres.m}")
    if check:
        pres.check_consistency(samples=200)
    return pres, model
