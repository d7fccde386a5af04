"""Dense linear algebra over GF(p) on plain lists of ints.

Dimensions here never exceed a few dozen, so row reduction in pure Python is
fast enough and keeps every result exact.
"""

from __future__ import annotations

Matrix = list  # list[list[int]], row-major


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] if cols else [] for row in a]


def mat_vec(a: Matrix, v: list, p: int) -> list:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def vec_mat(v: list, a: Matrix, p: int) -> list:
    """Row vector times matrix."""
    if not a:
        return []
    out = [0] * len(a[0])
    for c, row in zip(v, a):
        if c:
            for j, x in enumerate(row):
                out[j] = (out[j] + c * x) % p
    return out


def mat_sub(a: Matrix, b: Matrix, p: int) -> Matrix:
    return [[(x - y) % p for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_pow(a: Matrix, e: int, p: int) -> Matrix:
    result = identity(len(a))
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        e >>= 1
    return result


def row_reduce(rows: Matrix, p: int) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p) if p > 2 else 1
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Matrix, p: int) -> int:
    return len(row_reduce(rows, p)[0])


def span_basis(vectors: list, p: int) -> Matrix:
    """Echelonized basis of the row space spanned by ``vectors``."""
    return row_reduce(vectors, p)[0]


def nullspace(a: Matrix, p: int, ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0} (column convention), as a list of vectors."""
    if not a:
        n = ncols or 0
        return identity(n)
    n = len(a[0])
    red, pivots = row_reduce(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def left_nullspace(a: Matrix, p: int) -> Matrix:
    """Basis of {x : x a = 0} for row vectors x."""
    if not a:
        return []
    return nullspace(transpose(a), p)


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


def solve(a: Matrix, b: list, p: int) -> list | None:
    """One solution x of a x = b (column convention), free variables zero; None if inconsistent."""
    if not a:
        return [] if not any(b) else None
    n = len(a[0])
    aug = [list(row) + [bi % p] for row, bi in zip(a, b)]
    red, pivots = row_reduce(aug, p)
    if n in pivots:
        return None
    x = [0] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


def in_span(basis: Matrix, v: list, p: int) -> bool:
    if not any(x % p for x in v):
        return True
    if not basis:
        return False
    return rank(basis + [v], p) == rank(basis, p)


def coordinates(basis: Matrix, v: list, p: int) -> list | None:
    """Coefficients c with sum c_i basis_i == v, or None."""
    if not basis:
        return [] if not any(v) else None
    return solve(transpose(basis), v, p)


def intersect_spaces(a: Matrix, b: Matrix, p: int) -> Matrix:
    if not a or not b:
        return []
    # x in both iff x = sum s_i a_i = sum t_j b_j
    stacked = transpose(a + [[(-x) % p for x in row] for row in b])
    sols = nullspace(stacked, p)
    vecs = []
    for s in sols:
        v = [0] * len(a[0])
        for c, row in zip(s[: len(a)], a):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, row)]
        vecs.append(v)
    return span_basis(vecs, p)


def is_zero(a: Matrix) -> bool:
    return all(not any(r) for r in a)
