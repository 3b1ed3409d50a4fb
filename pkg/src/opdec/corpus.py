"""Deterministic corpus of small finite categories.

The corpus mixes finite posets (up to isomorphism), monoids of order at
most 3 (up to isomorphism), a seeded sample of binary coproducts and the
décalages of the smaller members.  Every member is composition-closed by
construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from .fincat import (FinCat, arrow_category, coproduct, discrete_category,
                     empty_category, parallel_pair, terminal_category)


@dataclass(frozen=True)
class Sample:
    name: str
    cat: FinCat


@lru_cache(maxsize=None)
def posets(n: int) -> tuple[frozenset, ...]:
    """All posets on ``range(n)`` up to isomorphism, as strict-order relations.

    Every finite poset arises from a smaller one by adding a maximal element
    above some down-closed subset.
    """
    if n == 0:
        return (frozenset(),)
    seen: dict[tuple, frozenset] = {}
    for rel in posets(n - 1):
        for down in _down_sets(n - 1, rel):
            new = rel | {(d, n - 1) for d in down}
            key = _poset_canon(n, new)
            seen.setdefault(key, frozenset(key))
    return tuple(seen[k] for k in sorted(seen))


def _down_sets(n, rel):
    below = {x: {a for a, b in rel if b == x} for x in range(n)}
    for bits in itertools.product((0, 1), repeat=n):
        s = {x for x in range(n) if bits[x]}
        if all(below[x] <= s for x in s):
            yield s


def _poset_canon(n, rel):
    return min(tuple(sorted((p[a], p[b]) for a, b in rel))
               for p in itertools.permutations(range(n)))


def poset_category(n: int, rel) -> FinCat:
    """Objects ``0..n-1``; one morphism ``(i, j)`` for each ``i <= j``."""
    leq = set(rel) | {(i, i) for i in range(n)}
    arrows = [((i, j), i, j) for i, j in sorted(leq)]
    return FinCat.from_rules(range(n), arrows,
                             identity=lambda i: (i, i),
                             compose=lambda g, f: (f[0], g[1]))


@lru_cache(maxsize=None)
def monoids(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Multiplication tables of all monoids of order ``n`` up to isomorphism.

    Element 0 is the unit; ``table[a][b]`` is ``a * b``.
    """
    if n == 1:
        return (((0,),),)
    rest = range(1, n)
    found = {}
    for vals in itertools.product(range(n), repeat=(n - 1) ** 2):
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            table[0][a] = table[a][0] = a
        for k, (a, b) in enumerate(itertools.product(rest, rest)):
            table[a][b] = vals[k]
        if all(table[table[a][b]][c] == table[a][table[b][c]]
               for a in range(n) for b in range(n) for c in range(n)):
            key = _monoid_canon(n, table)
            found.setdefault(key, key)
    return tuple(sorted(found))


def _monoid_canon(n, table):
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm
        inv = [0] * n
        for a, b in enumerate(p):
            inv[b] = a
        t = tuple(tuple(p[table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or t < best:
            best = t
    return best


def monoid_category(table) -> FinCat:
    """One object ``*``; morphisms are the monoid elements, ``g∘f = g*f``."""
    n = len(table)
    return FinCat.from_rules(["*"], [(a, "*", "*") for a in range(n)],
                             identity=lambda _: 0,
                             compose=lambda g, f: table[g][f])


def _base_samples() -> list[Sample]:
    out = [Sample("empty", empty_category()),
           Sample("one", terminal_category()),
           Sample("arrow", arrow_category()),
           Sample("discrete2", discrete_category(2)),
           Sample("parallel", parallel_pair())]
    for n in range(2, 6):
        for k, rel in enumerate(posets(n)):
            out.append(Sample(f"poset{n}_{k}", poset_category(n, rel)))
    for n in range(2, 4):
        for k, table in enumerate(monoids(n)):
            out.append(Sample(f"monoid{n}_{k}", monoid_category(table)))
    return out


def build_corpus(seed: int = 0, max_objects: int = 5, max_morphisms: int = 12,
                 n_coproducts: int = 16) -> list[Sample]:
    from .decalage import dec

    def fits(C):
        return C.n_objects <= max_objects and C.n_morphisms <= max_morphisms

    base = [s for s in _base_samples() if fits(s.cat)]
    small = [s for s in base if 0 < s.cat.n_objects <= 3]
    rng = random.Random(seed)
    coprods = []
    pairs = list(itertools.combinations_with_replacement(range(len(small)), 2))
    rng.shuffle(pairs)
    for i, j in pairs:
        if len(coprods) == n_coproducts:
            break
        C, _ = coproduct([small[i].cat, small[j].cat])
        if fits(C):
            coprods.append(Sample(f"{small[i].name}+{small[j].name}", C))
    decs = []
    for s in base:
        if s.cat.n_morphisms <= max_objects:
            D = dec(s.cat)
            if fits(D):
                decs.append(Sample(f"dec({s.name})", D))
    return base + coprods + decs


def exhaustive_subcorpus(corpus: list[Sample], max_objects: int = 3,
                         max_morphisms: int = 5) -> list[Sample]:
    return [s for s in corpus
            if s.cat.n_objects <= max_objects and s.cat.n_morphisms <= max_morphisms]
