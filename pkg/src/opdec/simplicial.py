"""Truncated simplicial sets: nerves, décalage, Segal condition, undecking.

Simplices of a nerve are tagged ``(x,)`` at level 0 and by the tuple of
their ``n`` composable morphism indices ``(a_1, ..., a_n)`` above, listed
from the first arrow to the last.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .decalage import dec
from .fincat import FinCat
from .operadic import OperadicStructure, check_unary
from .report import Report

DEFAULT_TRUNCATION = 3


@dataclass(frozen=True, eq=True)
class TruncatedSSet:
    """Levels ``0..K`` with face maps and optional degeneracies.

    ``faces[n][i]`` maps level ``n`` to level ``n-1`` (``faces[0]`` is empty);
    ``degens[n][j]`` maps level ``n`` to level ``n+1`` for ``n < K``.
    """

    levels: tuple
    faces: tuple
    degens: tuple | None = None
    coskeletal: bool = False

    __hash__ = None

    @property
    def K(self) -> int:
        return len(self.levels) - 1

    @classmethod
    def build(cls, levels, face: Callable, degen: Callable | None = None,
              coskeletal: bool = False) -> "TruncatedSSet":
        levels = tuple(tuple(sorted(set(lv))) for lv in levels)
        K = len(levels) - 1
        faces = [()]
        for n in range(1, K + 1):
            faces.append(tuple({x: face(n, i, x) for x in levels[n]} for i in range(n + 1)))
        degens = None
        if degen is not None:
            degens = tuple(tuple({x: degen(n, j, x) for x in levels[n]} for j in range(n + 1))
                           for n in range(K))
        return cls(levels, tuple(faces), degens, coskeletal)

    def truncate(self, k: int) -> "TruncatedSSet":
        if not 0 <= k <= self.K:
            raise ValueError(f"cannot truncate level {self.K} at {k}")
        degens = None if self.degens is None else self.degens[:k]
        return TruncatedSSet(self.levels[:k + 1], self.faces[:k + 1], degens, self.coskeletal)

    def without_degeneracies(self) -> "TruncatedSSet":
        return TruncatedSSet(self.levels, self.faces, None, self.coskeletal)

    def d(self, n: int, i: int, x):
        return self.faces[n][i][x]

    def s(self, n: int, j: int, x):
        return self.degens[n][j][x]

    def vertex_face(self, n: int, keep: tuple[int, ...], x):
        """Restrict an ``n``-simplex to the vertices ``keep`` by deleting the others."""
        for v in reversed(range(n + 1)):
            if v not in keep:
                x = self.d(n, v, x)
                n -= 1
        return x


def check_simplicial_identities(X: TruncatedSSet) -> Report:
    r = Report()
    K = X.K
    for n in range(2, K + 1):
        for x in X.levels[n]:
            for j in range(n + 1):
                for i in range(j):
                    if X.d(n - 1, i, X.d(n, j, x)) != X.d(n - 1, j - 1, X.d(n, i, x)):
                        r.add("simplicial.dd", (n, i, j, x))
    for n in range(1, K + 1):
        below = set(X.levels[n - 1])
        for i in range(n + 1):
            for x in X.levels[n]:
                if X.d(n, i, x) not in below:
                    r.add("simplicial.range", (n, i, x))
    if X.degens is None:
        return r
    for n in range(K):
        for x in X.levels[n]:
            for j in range(n + 1):
                y = X.s(n, j, x)
                for i in range(n + 2):
                    got = X.d(n + 1, i, y)
                    if i < j:
                        want = X.s(n - 1, j - 1, X.d(n, i, x))
                    elif i in (j, j + 1):
                        want = x
                    else:
                        want = X.s(n - 1, j, X.d(n, i - 1, x))
                    if got != want:
                        r.add("simplicial.ds", (n, i, j, x))
        if n + 1 < K:
            for x in X.levels[n]:
                for j in range(n + 1):
                    for i in range(j + 1):
                        if X.s(n + 1, i, X.s(n, j, x)) != X.s(n + 1, j + 1, X.s(n, i, x)):
                            r.add("simplicial.ss", (n, i, j, x))
    return r


def nerve(C: FinCat, K: int = DEFAULT_TRUNCATION) -> TruncatedSSet:
    levels = [[(x,) for x in range(C.n_objects)]]
    if K >= 1:
        levels.append([(f,) for f in range(C.n_morphisms)])
    for _ in range(2, K + 1):
        levels.append([ch + (g,) for ch in levels[-1] for g in C.out_arrows[C.cod[ch[-1]]]])

    def face(n, i, ch):
        if n == 1:
            return (C.cod[ch[0]],) if i == 0 else (C.dom[ch[0]],)
        if i == 0:
            return ch[1:]
        if i == n:
            return ch[:-1]
        return ch[:i - 1] + (C.comp[(ch[i], ch[i - 1])],) + ch[i + 1:]

    def degen(n, j, ch):
        if n == 0:
            return (C.identity[ch[0]],)
        vertex = C.dom[ch[0]] if j == 0 else C.cod[ch[j - 1]]
        return ch[:j] + (C.identity[vertex],) + ch[j:]

    return TruncatedSSet.build(levels, face, degen, coskeletal=True)


def dec_ss(X: TruncatedSSet) -> TruncatedSSet:
    """Shift down one level, forgetting the top face and degeneracy."""
    if X.K < 1:
        raise ValueError("décalage needs truncation level at least 1")
    faces = [()] + [X.faces[n + 1][:n + 1] for n in range(1, X.K)]
    degens = None
    if X.degens is not None:
        degens = tuple(X.degens[n + 1][:n + 1] for n in range(X.K - 1))
    return TruncatedSSet(X.levels[1:], tuple(faces), degens, X.coskeletal)


def _spine(X: TruncatedSSet, n: int, x):
    return tuple(X.vertex_face(n, (k - 1, k), x) for k in range(1, n + 1))


def segal_witness(X: TruncatedSSet):
    """``None`` when the Segal maps are bijective, else ``(n, kind, data)``."""
    if X.K < 2:
        raise ValueError("Segal check needs truncation level at least 2")
    edges = X.levels[1]
    for n in range(2, X.K + 1):
        spines: dict = {}
        for x in X.levels[n]:
            sp = _spine(X, n, x)
            if sp in spines:
                return (n, "collision", (spines[sp], x))
            spines[sp] = x
        chains = [(e,) for e in edges]
        for _ in range(n - 1):
            chains = [c + (e,) for c in chains for e in edges if X.d(1, 0, c[-1]) == X.d(1, 1, e)]
        for c in chains:
            if c not in spines:
                return (n, "missing", c)
    return None


def segal(X: TruncatedSSet) -> bool:
    return segal_witness(X) is None


def relabel(X: TruncatedSSet, fns) -> TruncatedSSet:
    """Rename the simplices of level ``n`` by the injective function ``fns[n]``."""
    K = X.K

    def face(n, i, y):
        return fns[n - 1](X.d(n, i, inv[n][y]))

    def degen(n, j, y):
        return fns[n + 1](X.s(n, j, inv[n][y]))

    inv = []
    for n in range(K + 1):
        table = {fns[n](x): x for x in X.levels[n]}
        if len(table) != len(X.levels[n]):
            raise ValueError(f"renaming at level {n} is not injective")
        inv.append(table)
    levels = [list(inv[n]) for n in range(K + 1)]
    return TruncatedSSet.build(levels, face, degen if X.degens is not None else None, X.coskeletal)


def dec_chain_to_chain(DC: FinCat):
    """Level renamings from ``nerve(dec(C))`` to ``dec_ss(nerve(C))``.

    A chain ``(X, g_1, f_1), ..., (X, g_n, f_n)`` becomes ``(g_1, ..., g_n, f_n)``.
    """
    def level(n):
        if n == 0:
            return lambda x: (DC.objects[x[0]][1],)

        def fn(ch):
            tags = [DC.morphisms[m] for m in ch]
            return tuple(t[1] for t in tags) + (tags[-1][2],)
        return fn
    return level


def nerve_shift_holds(C: FinCat, K: int = DEFAULT_TRUNCATION) -> bool:
    """``nerve(dec(C)) = dec_ss(nerve(C))`` up to the canonical renaming."""
    lhs = nerve(dec(C), K - 1)
    level = dec_chain_to_chain(dec(C))
    return relabel(lhs, [level(n) for n in range(K)]) == dec_ss(nerve(C, K))


def undeck(S: OperadicStructure) -> TruncatedSSet:
    """The truncated simplicial set whose décalage is the nerve of a unary structure.

    Level 0 holds the chosen terminals ``(t,)``, level 1 the objects ``(X,)``,
    level 2 the morphisms ``(f,)`` and level 3 composable pairs ``(g, f)``.
    """
    if not check_unary(S):
        raise ValueError("structure is not unary")
    C, lt = S.C, S.lt

    def phi(f):
        return S.fibre_obj[(f, 1)]

    levels = [[(t,) for t in lt.terminals], [(x,) for x in range(C.n_objects)],
              [(f,) for f in range(C.n_morphisms)],
              [(g, f) for f in range(C.n_morphisms) for g in C.in_arrows[C.dom[f]]]]

    def face(n, i, x):
        if n == 1:
            X = x[0]
            return (lt.u[X],) if i == 0 else (phi(C.identity[X]),)
        if n == 2:
            f = x[0]
            return ((C.cod[f],), (C.dom[f],), (phi(f),))[i]
        g, f = x
        return ((f,), (C.comp[(f, g)],), (g,), (S.fibre_mor[(g, f, 1)],))[i]

    def degen(n, j, x):
        if n == 0:
            return x
        if n == 1:
            X = x[0]
            return (C.identity[X],) if j == 0 else (lt.tau[X],)
        f = x[0]
        return ((C.identity[C.dom[f]], f), (f, C.identity[C.cod[f]]), (f, lt.tau[C.cod[f]]))[j]

    return TruncatedSSet.build(levels, face, degen, coskeletal=True)


def remark4i(S: OperadicStructure) -> bool:
    """Whether the copaired fibre functor ``dec(C) -> C`` is a discrete opfibration."""
    from .correspond import unary_to_algebra
    from .moddec import is_discrete_opfib

    return is_discrete_opfib(unary_to_algebra(S).act)


def boundary_triangle(with_degeneracies: bool = False) -> TruncatedSSet:
    """The boundary of the 2-simplex, truncated at 2.

    Without degeneracies level 2 is empty; with them it holds only the
    degenerate 2-simplices.  Either way the pair ``01, 12`` has no filler.
    """
    verts = [(0,), (1,), (2,)]
    edges = [(0, 1), (1, 2), (0, 2)]
    if not with_degeneracies:
        return TruncatedSSet.build([verts, edges, []],
                                   lambda n, i, e: ((e[1],), (e[0],))[i])
    edges = edges + [(0, 0), (1, 1), (2, 2)]
    tris = []
    for a, b in edges:
        tris.extend([(a, a, b), (a, b, b)])

    def face(n, i, x):
        if n == 1:
            return ((x[1],), (x[0],))[i]
        return tuple(v for k, v in enumerate(x) if k != i)

    def degen(n, j, x):
        if n == 0:
            return (x[0], x[0])
        return x[:j + 1] + x[j:]

    return TruncatedSSet.build([verts, edges, tris], face, degen)
