"""Exact arithmetic in GF(p^n) with explicit Frobenius maps.

Elements are stored as coordinates in the power basis of a fixed monic
irreducible modulus.  The modulus for a given (p, n) is the lexicographically
least irreducible monic polynomial (coefficients read from the constant term
up), so every run builds the same field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: list, m: list, p: int) -> list:
    """Remainder of a modulo monic m (coefficient lists, constant first)."""
    a = [x % p for x in a]
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(p: int, d: int):
    for coeffs in product(range(p), repeat=d):
        yield list(coeffs) + [1]


def is_irreducible(poly: list, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    d = len(poly) - 1
    if d < 1 or poly[-1] % p != 1:
        return False
    if d == 1:
        return True
    for k in range(1, d // 2 + 1):
        for g in _monic_polys(p, k):
            if not _poly_mod(poly, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, n: int) -> tuple:
    if n == 1:
        return (0, 1)
    for low in product(range(p), repeat=n):
        cand = list(reversed(low))
        poly = cand + [1]
        if poly[0] == 0:
            continue
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.n < 1:
            raise FieldError("extension degree must be >= 1")
        if not self.modulus:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.n))
        mod = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.n + 1 or mod[-1] != 1:
            raise FieldError(f"modulus {mod} is not monic of degree {self.n}")
        if not is_irreducible(list(mod), self.p):
            raise FieldError(f"modulus {mod} is reducible over GF({self.p})")

    @property
    def order(self) -> int:
        return self.p**self.n

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.n:
            raise FieldError(f"expected {self.n} coordinates, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return self(0)

    def one(self) -> "FieldElement":
        return self(1)

    def gen(self) -> "FieldElement":
        """The class of t, a root of the modulus."""
        if self.n == 1:
            return self(-self.modulus[0])
        return self((0, 1) + (0,) * (self.n - 2))

    def elements(self):
        for coeffs in product(range(self.p), repeat=self.n):
            yield FieldElement(self, tuple(reversed(coeffs)))

    def basis(self) -> list:
        """Power basis 1, t, ..., t^(n-1) as a GF(p)-basis."""
        return [self(tuple(int(i == j) for j in range(self.n))) for i in range(self.n)]

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return cls(int(d["p"]), int(d["n"]), tuple(d["modulus"]))


def _mul_coeffs(spec: FieldSpec, a: tuple, b: tuple) -> tuple:
    p, n = spec.p, spec.n
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    red = _poly_mod(prod, list(spec.modulus), p)
    return tuple(red + [0] * (n - len(red)))


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.spec(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.spec != self.spec:
            raise FieldError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        return FieldElement(self.spec, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-x) % p for x in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.spec, _mul_coeffs(self.spec, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in GF(%d^%d)" % (self.spec.p, self.spec.n))
        return self ** (self.spec.order - 2)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.spec.n == 1:
            return f"GF({self.spec.p})({self.coeffs[0]})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                terms.append(f"{c}{'*' if mon and c != 1 else ''}{mon}" if c != 1 or not mon else mon)
        return " + ".join(terms) if terms else "0"


def ff_arith(op: str, a: FieldElement, b) -> FieldElement:
    """Dispatch for add/sub/mul/inv/pow; ``b`` is ignored for inv."""
    if op == "add":
        return a + a._check(b)
    if op == "sub":
        return a - a._check(b)
    if op == "mul":
        return a * a._check(b)
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius(a: FieldElement, k: int) -> FieldElement:
    """a ** (p ** k)."""
    if k < 0:
        raise ValueError("frobenius exponent must be non-negative")
    k %= a.spec.n
    result = a
    for _ in range(k):
        result = result ** a.spec.p
    return result


def trace(a: FieldElement, sub_degree: int = 1) -> FieldElement:
    """Relative trace to the subfield of degree ``sub_degree``."""
    n = a.spec.n
    if n % sub_degree:
        raise FieldError("subfield degree must divide the extension degree")
    total = a.spec.zero()
    for i in range(n // sub_degree):
        total = total + frobenius(a, i * sub_degree)
    return total


def subfield_fixed_points(top: FieldSpec, k: int) -> list:
    """Elements of ``top`` fixed by frobenius(., k): the subfield GF(p^gcd(k, n))."""
    return [a for a in top.elements() if frobenius(a, k) == a]


@dataclass(frozen=True)
class Embedding:
    source: FieldSpec
    target: FieldSpec
    image_of_gen: FieldElement

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.spec != self.source:
            raise FieldError("element is not in the embedding's source field")
        result = self.target.zero()
        power = self.target.one()
        for c in a.coeffs:
            if c:
                result = result + power * c
            power = power * self.image_of_gen
        return result


def _find_root(poly: tuple, target: FieldSpec) -> FieldElement:
    for x in target.elements():
        acc = target.zero()
        for c in reversed(poly):
            acc = acc * x + c
        if acc.is_zero():
            return x
    raise FieldError("modulus has no root in the target field")


def build_field_tower(p: int, n: int, degrees: list) -> tuple[list, dict]:
    """Fields GF(p^(n*d)) for d in ``degrees`` plus embeddings into the largest.

    Every degree must divide the largest one.  Returns (specs, embeddings) where
    ``embeddings[(i, j)]`` maps specs[i] into specs[j] whenever the degree of i
    divides the degree of j.
    """
    if not degrees:
        raise FieldError("empty degree list")
    top = max(degrees)
    for d in degrees:
        if d < 1 or top % d:
            raise FieldError(f"degree {d} does not divide the top degree {top}")
    specs = [FieldSpec(p, n * d) for d in degrees]
    embeddings = {}
    for i, si in enumerate(specs):
        for j, sj in enumerate(specs):
            if sj.n % si.n == 0:
                if si == sj:
                    img = sj.gen()
                elif si.n == 1:
                    img = sj.one()
                else:
                    img = _find_root(si.modulus, sj)
                embeddings[(i, j)] = Embedding(si, sj, img)
    return specs, embeddings


def fixed_field_size(spec: FieldSpec, k: int) -> int:
    return spec.p ** gcd(k, spec.n)


def mult_matrix(a: FieldElement) -> list:
    """GF(p)-matrix of x -> a*x acting on power-basis coordinates (column convention)."""
    cols = [(a * b).coeffs for b in a.spec.basis()]
    n = a.spec.n
    return [[cols[j][i] for j in range(n)] for i in range(n)]


class FieldTables:
    """Lookup-table arithmetic on integer codes of a small field.

    The code of an element is sum(c_i * p^i) over its power-basis coordinates.
    Used by the matrix models, where thousands of products are needed.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.q = spec.order
        elems = [self.element(i) for i in range(self.q)]
        self.add = [[self.code(a + b) for b in elems] for a in elems]
        self.mul = [[self.code(a * b) for b in elems] for a in elems]
        self.neg = [self.code(-a) for a in elems]
        self.sub = [[self.add[a][self.neg[b]] for b in range(self.q)] for a in range(self.q)]
        self.inv = [0] + [self.code(a.inverse()) for a in elems[1:]]
        self._frob = {}

    def code(self, a: FieldElement) -> int:
        v = 0
        for c in reversed(a.coeffs):
            v = v * self.p + c
        return v

    def element(self, code: int) -> FieldElement:
        coeffs = []
        for _ in range(self.spec.n):
            coeffs.append(code % self.p)
            code //= self.p
        return FieldElement(self.spec, tuple(coeffs))

    def frob(self, k: int) -> list:
        """Table of a -> a^(p^k)."""
        k %= self.spec.n
        t = self._frob.get(k)
        if t is None:
            t = [self.code(frobenius(self.element(i), k)) for i in range(self.q)]
            self._frob[k] = t
        return t

    def coords(self, code: int) -> list:
        out = []
        for _ in range(self.spec.n):
            out.append(code % self.p)
            code //= self.p
        return out

    def from_coords(self, coords) -> int:
        v = 0
        for c in reversed(list(coords)):
            v = v * self.p + (c % self.p)
        return v


@lru_cache(maxsize=None)
def field_tables(spec: FieldSpec) -> FieldTables:
    return FieldTables(spec)
