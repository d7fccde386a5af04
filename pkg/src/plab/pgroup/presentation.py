"""Prime-exponent power-commutator presentations and collection.

A presentation on generators g_0..g_{m-1} (0-based here) records, for each i,
the normal form of g_i^p and, for each j > i, the normal form of the
commutator [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i.  Elements are tuples of
exponents in [0, p) standing for g_0^e_0 ... g_{m-1}^e_{m-1}.

The engine requires the generator sequence to refine a central series:
[g_j, g_i] only involves generators after g_j, and g_i^p only generators after
g_i.  Every subgroup routine relies on this (conjugation then preserves the
leading term of an element).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from ..gf import is_prime


class PresentationError(ValueError):
    pass


class InconsistentPresentation(PresentationError):
    def __init__(self, triple, lhs, rhs):
        self.triple = triple
        super().__init__(f"presentation is inconsistent at test word {triple}: {lhs} != {rhs}")


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its element or class budget."""

    def __init__(self, what: str, needed: int, bound: int):
        self.what = what
        self.needed = needed
        self.bound = bound
        super().__init__(f"{what}: needs-budget ({needed} > bound {bound})")


def word_to_exps(word, m: int) -> tuple:
    """Exponent vector of a normal word given as (index, exponent) pairs."""
    exps = [0] * m
    last = -1
    for idx, e in word:
        if idx <= last:
            raise PresentationError(f"relation word {word} is not in normal order")
        if not 0 <= idx < m:
            raise PresentationError(f"generator index {idx} out of range")
        exps[idx] = e
        last = idx
    return tuple(exps)


def exps_to_word(x: tuple) -> list:
    return [(i, e) for i, e in enumerate(x) if e]


@dataclass
class PcPresentation:
    p: int
    m: int
    powers: list
    commutators: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not is_prime(self.p):
            raise PresentationError(f"{self.p} is not prime")
        p, m = self.p, self.m
        pw = []
        for i in range(m):
            r = tuple(self.powers[i]) if i < len(self.powers) and self.powers[i] is not None else (0,) * m
            if len(r) != m or any(not 0 <= e < p for e in r):
                raise PresentationError(f"power relation {i} is not a normal form")
            if any(r[: i + 1]):
                raise PresentationError(f"power relation for g{i} mentions a generator not after g{i}")
            pw.append(r)
        self.powers = pw
        comms = {}
        for (j, i), r in self.commutators.items():
            if not 0 <= i < j < m:
                raise PresentationError(f"commutator key ({j}, {i}) must satisfy 0 <= i < j < m")
            r = tuple(r)
            if len(r) != m or any(not 0 <= e < p for e in r):
                raise PresentationError(f"commutator relation ({j}, {i}) is not a normal form")
            if any(r[: j + 1]):
                raise PresentationError(
                    f"commutator [g{j}, g{i}] mentions a generator not after g{j}; "
                    "generators must refine a central series"
                )
            if any(r):
                comms[(j, i)] = r
        self.commutators = comms
        self.identity = (0,) * m
        self.gens = [tuple(int(k == i) for k in range(m)) for i in range(m)]
        self._mul_cache: dict = {}
        self._inv_cache: dict = {}
        self._conj_pow = None
        self._build_tables()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_words(cls, p, m, power_words, comm_words, metadata=None):
        powers = [word_to_exps(power_words.get(i, []), m) for i in range(m)]
        comms = {k: word_to_exps(w, m) for k, w in comm_words.items()}
        return cls(p, m, powers, comms, dict(metadata or {}))

    @property
    def order(self) -> int:
        return self.p**self.m

    def comm_rel(self, j: int, i: int) -> tuple:
        return self.commutators.get((j, i), self.identity)

    def gen_power(self, i: int, e: int) -> tuple:
        """Normal form g_i^e for 0 <= e < p."""
        x = [0] * self.m
        x[i] = e
        return tuple(x)

    def _build_tables(self):
        p, m = self.p, self.m
        # conj_pow[k][b][l][e] = (g_l^(g_k^b))^e for l > k, 1 <= b < p, 0 <= e < p
        self._conj_pow = [None] * m
        for k in range(m - 1, -1, -1):
            per_b = [None] * p
            first = {}
            for l in range(k + 1, m):
                first[l] = self._mul(self.gens[l], self.comm_rel(l, k))
            per_b[1] = self._power_table(first, k)
            for b in range(2, p):
                nxt = {}
                for l in range(k + 1, m):
                    nxt[l] = self._conj_by_gen(per_b[b - 1][l][1], k, 1, per_b)
                per_b[b] = self._power_table(nxt, k)
            self._conj_pow[k] = per_b

    def _power_table(self, base: dict, k: int) -> dict:
        table = {}
        for l, y in base.items():
            row = [self.identity, y]
            for _ in range(2, self.p):
                row.append(self._mul(row[-1], y))
            table[l] = row
        return table

    def _conj_by_gen(self, v: tuple, k: int, b: int, per_b=None) -> tuple:
        """v^(g_k^b) for v in the subgroup generated by g_{k+1}, ..."""
        tables = per_b if per_b is not None else self._conj_pow[k]
        tb = tables[b]
        result = self.identity
        for l in range(k + 1, self.m):
            e = v[l]
            if e:
                result = self._mul(result, tb[l][e])
        return result

    # -- collection -----------------------------------------------------------

    def _mul(self, x: tuple, y: tuple) -> tuple:
        cache = self._mul_cache
        key = (x, y)
        r = cache.get(key)
        if r is not None:
            return r
        m = self.m
        k = 0
        while k < m and not y[k]:
            k += 1
        if k == m:
            return x
        p = self.p
        b = y[k]
        a = x[k]
        pad = (0,) * (k + 1)
        tail = x[k + 1:]
        if any(tail):
            tail = self._conj_by_gen(pad + tail, k, b)
        else:
            tail = self.identity
        c = a + b
        if c >= p:
            c -= p
            tail = self._mul(self.powers[k], tail)
        ytail = y[k + 1:]
        if any(ytail):
            rest = self._mul(tail, pad + ytail)
        else:
            rest = tail
        r = x[:k] + (c,) + rest[k + 1:]
        if len(cache) > 2_000_000:
            cache.clear()
        cache[key] = r
        return r

    def mul(self, x: tuple, y: tuple) -> tuple:
        return self._mul(x, y)

    def inv(self, x: tuple) -> tuple:
        r = self._inv_cache.get(x)
        if r is not None:
            return r
        p = self.p
        cur = x
        y = self.identity
        for k in range(self.m):
            e = cur[k]
            if e:
                g = self.gen_power(k, p - e)
                cur = self._mul(cur, g)
                y = self._mul(y, g)
        if len(self._inv_cache) > 500_000:
            self._inv_cache.clear()
        self._inv_cache[x] = y
        return y

    def pow(self, x: tuple, e: int) -> tuple:
        if e < 0:
            return self.pow(self.inv(x), -e)
        result = self.identity
        base = x
        while e:
            if e & 1:
                result = self._mul(result, base)
            e >>= 1
            if e:
                base = self._mul(base, base)
        return result

    def comm(self, x: tuple, y: tuple) -> tuple:
        """[x, y] = x^-1 y^-1 x y."""
        return self._mul(self.inv(self._mul(y, x)), self._mul(x, y))

    def conj(self, x: tuple, g: tuple) -> tuple:
        """x^g = g^-1 x g."""
        return self._mul(self.inv(g), self._mul(x, g))

    def collect(self, word) -> tuple:
        """Normal form of a product of generator powers (index, exponent), any order."""
        result = self.identity
        for idx, e in word:
            if not 0 <= idx < self.m:
                raise PresentationError(f"generator index {idx} out of range")
            result = self._mul(result, self.pow(self.gens[idx], e))
        return result

    def mul_many(self, *xs) -> tuple:
        result = self.identity
        for x in xs:
            result = self._mul(result, x)
        return result

    def elt(self, word) -> tuple:
        return word_to_exps(word, self.m)

    def depth(self, x: tuple) -> int:
        for i, e in enumerate(x):
            if e:
                return i
        return self.m

    def order_of(self, x: tuple) -> int:
        n = 1
        while x != self.identity:
            x = self.pow(x, self.p)
            n *= self.p
        return n

    def elements(self):
        for t in product(range(self.p), repeat=self.m):
            yield t

    def random_element(self, rng: random.Random) -> tuple:
        return tuple(rng.randrange(self.p) for _ in range(self.m))

    # -- consistency ----------------------------------------------------------

    def check_consistency(self, samples: int = 100, seed: int = 0) -> None:
        """Raise InconsistentPresentation at the first failing test word."""
        p, m, g = self.p, self.m, self.gens
        mul = self._mul

        def agree(label, lhs, rhs):
            if lhs != rhs:
                raise InconsistentPresentation(label, lhs, rhs)

        for i in range(m):
            gp = self.gen_power(i, p - 1)
            agree(("power", i), mul(self.powers[i], g[i]), mul(g[i], self.powers[i]))
            for j in range(i + 1, m):
                agree(("powleft", j, i), mul(self.powers[j], g[i]), mul(self.gen_power(j, p - 1), mul(g[j], g[i])))
                agree(("powright", j, i), mul(mul(g[j], gp), g[i]), mul(g[j], self.powers[i]))
                for k in range(j + 1, m):
                    agree((k, j, i), mul(mul(g[k], g[j]), g[i]), mul(g[k], mul(g[j], g[i])))
        rng = random.Random(seed)
        for _ in range(samples):
            x, y, z = (self.random_element(rng) for _ in range(3))
            agree(("random", x, y, z), mul(mul(x, y), z), mul(x, mul(y, z)))
        # relations must actually hold in the collected group
        for i in range(m):
            agree(("relpow", i), self.pow(g[i], p), self.powers[i])
        for (j, i), r in self.commutators.items():
            agree(("relcomm", j, i), self.comm(g[j], g[i]), r)

    # -- serialization helpers ----------------------------------------------

    def relations(self):
        """(kind, indices, word) triples for every nontrivial relation, canonical order."""
        out = []
        for i in range(self.m):
            if any(self.powers[i]):
                out.append(("P", (i,), exps_to_word(self.powers[i])))
        for (j, i) in sorted(self.commutators, key=lambda t: (t[0], t[1])):
            out.append(("C", (j, i), exps_to_word(self.commutators[(j, i)])))
        return out

    def same_relations(self, other: "PcPresentation") -> bool:
        return (
            self.p == other.p
            and self.m == other.m
            and self.powers == other.powers
            and self.commutators == other.commutators
        )
