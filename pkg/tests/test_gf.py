import random
from itertools import product

import pytest

from plab.gf import (
    FieldError,
    FieldSpec,
    build_field_tower,
    default_modulus,
    ff_arith,
    field_tables,
    fixed_field_size,
    frobenius,
    mult_matrix,
    subfield_fixed_points,
    trace,
)

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4), (7, 2), (2, 6), (3, 3)]


def test_default_moduli():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_gf4_t_squared():
    F = FieldSpec(2, 2)
    t = F.gen()
    assert ff_arith("mul", t, t) == t + 1


def test_gf8_t_cubed():
    F = FieldSpec(2, 3)
    t = F.gen()
    assert ff_arith("pow", t, 3) == t + 1


@pytest.mark.parametrize("p,n", SMALL)
def test_inverses(p, n):
    F = FieldSpec(p, n)
    for a in F.elements():
        if a:
            assert ff_arith("mul", a, ff_arith("inv", a, None)) == F.one()


def test_errors():
    F = FieldSpec(2, 2)
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()
    with pytest.raises(FieldError):
        F.one() + FieldSpec(2, 3).one()
    with pytest.raises(FieldError):
        FieldSpec(4, 1)
    with pytest.raises(FieldError):
        FieldSpec(2, 2, (1, 0, 1))  # t^2 + 1 = (t + 1)^2
    with pytest.raises(ValueError):
        ff_arith("div", F.one(), F.one())
    with pytest.raises(ValueError):
        frobenius(F.one(), -1)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 1), (7, 1)])
def test_field_axioms_exhaustive(p, n):
    F = FieldSpec(p, n)
    els = list(F.elements())
    for a, b in product(els, repeat=2):
        assert a + b == b + a and a * b == b * a
    for a, b, c in product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p,n", [(2, 6), (3, 3), (2, 5), (7, 2)])
def test_field_axioms_sampled(p, n):
    F = FieldSpec(p, n)
    els = list(F.elements())
    rng = random.Random(1)
    for _ in range(2000):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (3, 3)])
def test_frobenius_homomorphism(p, n):
    F = FieldSpec(p, n)
    els = list(F.elements())
    for k in range(n + 1):
        for a, b in product(els, repeat=2):
            assert frobenius(a * b, k) == frobenius(a, k) * frobenius(b, k)
            assert frobenius(a + b, k) == frobenius(a, k) + frobenius(b, k)
    for a in els:
        assert frobenius(a, n) == a


def test_frobenius_examples():
    F8 = FieldSpec(2, 3)
    for a in F8.elements():
        assert frobenius(frobenius(frobenius(a, 1), 1), 1) == a
    F4 = FieldSpec(2, 2)
    for a in F4.elements():
        assert frobenius(a, 1) == ff_arith("mul", a, a)
    F5 = FieldSpec(5, 1)
    for a in F5.elements():
        assert frobenius(a, 1) == a


@pytest.mark.parametrize("p,n", SMALL)
def test_fixed_field_sizes(p, n):
    F = FieldSpec(p, n)
    for k in range(1, n + 1):
        assert len(subfield_fixed_points(F, k)) == fixed_field_size(F, k)


def test_tower_examples():
    specs, emb = build_field_tower(2, 1, [1, 3])
    assert len(subfield_fixed_points(specs[1], 1)) == 2
    specs3, _ = build_field_tower(3, 1, [1, 3])
    assert len(list(specs3[1].elements())) == 27
    with pytest.raises(FieldError):
        build_field_tower(2, 1, [2, 3])


@pytest.mark.parametrize("p,n,degrees", [(2, 1, [1, 3]), (2, 1, [1, 2, 6]), (3, 1, [1, 3]), (2, 2, [1, 3])])
def test_embeddings_are_homomorphisms(p, n, degrees):
    specs, emb = build_field_tower(p, n, degrees)
    rng = random.Random(0)
    for (i, j), e in emb.items():
        src = list(specs[i].elements())
        for _ in range(100):
            a, b = rng.choice(src), rng.choice(src)
            assert e(a * b) == e(a) * e(b)
            assert e(a + b) == e(a) + e(b)
        # the image is fixed by the matching power of Frobenius
        for a in src:
            assert frobenius(e(a), specs[i].n) == e(a)


def test_trace_and_mult_matrix():
    F = FieldSpec(2, 3)
    traces = [trace(a) for a in F.elements()]
    assert all(t.coeffs[1:] == (0, 0) for t in traces)
    assert sum(1 for t in traces if t) == 4
    a = F.gen()
    M = mult_matrix(a)
    for b in F.elements():
        col = [sum(M[i][j] * b.coeffs[j] for j in range(3)) % 2 for i in range(3)]
        assert tuple(col) == (a * b).coeffs


def test_tables_match_arithmetic():
    F = FieldSpec(3, 2)
    T = field_tables(F)
    for i in range(T.q):
        for j in range(T.q):
            assert T.element(T.mul[i][j]) == T.element(i) * T.element(j)
            assert T.element(T.add[i][j]) == T.element(i) + T.element(j)
        assert T.element(T.frob(1)[i]) == frobenius(T.element(i), 1)
        assert T.from_coords(T.coords(i)) == i


def test_serialization_roundtrip():
    F = FieldSpec(3, 2)
    assert FieldSpec.from_dict(F.to_dict()) == F
