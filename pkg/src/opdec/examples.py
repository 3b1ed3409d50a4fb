"""Builders for concrete operadic categories.

* :func:`ex_decalage_unary` - the unary structure on ``dec(C)``.
* :func:`ex_sub_prob` - finite sub-probability spaces.
* :func:`ex_disintegration` - probability spaces with normalized fibres.
* :func:`ex_pointed_sets` - pointed subsets of a universe with literal kernels.

Probability carriers are finite full subcategories closed under fibres and
the terminal of each component.  Arithmetic is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .decalage import dec
from .fincat import FinCat, LtObject
from .moddec import OverS
from .operadic import OperadicStructure
from .sskel import SMap, all_smaps, fibre, fibre_map

DEFAULT_CLOSURE_BOUND = 64


def ex_decalage_unary(C: FinCat) -> OperadicStructure:
    """The fibre of ``g : fg -> f`` is the object ``g``; of ``h`` w.r.t. it, ``h : gh -> g``."""
    DC = dec(C)
    lt = LtObject.choose(DC, [DC.obj((X, C.identity[X])) for X in range(C.n_objects)])
    fobj, fmor = {}, {}
    for phi, (_, g, _) in enumerate(DC.morphisms):
        fobj[(phi, 1)] = DC.obj((C.cod[g], g))
        for psi in DC.in_arrows[DC.dom[phi]]:
            _, h, _ = DC.morphisms[psi]
            fmor[(psi, phi, 1)] = DC.mor((C.cod[g], h, g))
    return OperadicStructure(OverS.constant_one(DC), lt, fobj, fmor)


@dataclass(frozen=True, order=True)
class SubProbObject:
    """A list of rational weights in ``[0, 1]`` with total at most 1."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if any(x < 0 or x > 1 for x in w):
            raise ValueError(f"weights outside [0, 1]: {self}")
        if sum(w) > 1:
            raise ValueError(f"total mass exceeds 1: {self}")

    @classmethod
    def of(cls, *ws) -> "SubProbObject":
        return cls(tuple(Fraction(w) for w in ws))

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def sublist(self, idx) -> "SubProbObject":
        """Entries at the 1-based positions ``idx``."""
        return SubProbObject(tuple(self.weights[j - 1] for j in idx))

    def normalized(self) -> "SubProbObject":
        m = self.mass
        if m == 0:
            raise ValueError("cannot normalize a space of mass 0")
        return SubProbObject(tuple(w / m for w in self.weights))

    def nonzero(self) -> tuple[int, ...]:
        """1-based positions of the non-zero entries."""
        return tuple(j for j, w in enumerate(self.weights, 1) if w != 0)

    def __str__(self) -> str:
        return "(" + ",".join(str(w) for w in self.weights) + ")"


def is_weight_map(s: SubProbObject, r: SubProbObject, phi: SMap) -> bool:
    """Whether ``r_i`` is the total of ``s`` over ``phi^{-1}(i)`` for every ``i``."""
    totals = [Fraction(0)] * len(r)
    for j, i in enumerate(phi.values):
        totals[i - 1] += s.weights[j]
    return tuple(totals) == r.weights


def _weight_maps(objs):
    for s in objs:
        for r in objs:
            for phi in all_smaps(len(s), len(r)):
                if is_weight_map(s, r, phi):
                    yield s, r, phi


def _close(seeds, step, bound):
    objs = set(seeds)
    while True:
        new = set(step(sorted(objs))) - objs
        if not new:
            return sorted(objs)
        objs |= new
        if len(objs) > bound:
            raise ValueError(f"closure exceeds {bound} objects")


def _weight_category(objs) -> FinCat:
    arrows = [((s, r, phi.values), s, r) for s, r, phi in _weight_maps(objs)]
    return FinCat.from_rules(
        objs, arrows,
        identity=lambda s: (s, s, tuple(range(1, len(s) + 1))),
        compose=lambda g, f: (f[0], g[1], tuple(g[2][v - 1] for v in f[2])))


def _smap(tag) -> SMap:
    return SMap.of(tag[2], len(tag[1]))


def ex_sub_prob(seeds, bound: int = DEFAULT_CLOSURE_BOUND) -> OperadicStructure:
    """The closure of ``seeds`` under fibres and total-mass singletons."""
    seeds = [s if isinstance(s, SubProbObject) else SubProbObject(tuple(s)) for s in seeds]
    if not seeds:
        raise ValueError("need at least one seed")

    def step(objs):
        for s in objs:
            yield SubProbObject((s.mass,))
        for s, r, phi in _weight_maps(objs):
            for i in range(1, len(r) + 1):
                yield s.sublist(fibre(phi, i).eps.values)

    C = _weight_category(_close(seeds, step, bound))
    lt = LtObject.choose(C, sub_prob_terminals(C))
    over = OverS(C, tuple(len(s) for s in C.objects), tuple(_smap(t) for t in C.morphisms))
    fobj, fmor = {}, {}
    for f, (s, r, _) in enumerate(C.morphisms):
        for i in range(1, len(r) + 1):
            fobj[(f, i)] = C.obj(s.sublist(fibre(over.card_mor[f], i).eps.values))
    for f, (_, r, _) in enumerate(C.morphisms):
        for i in range(1, len(r) + 1):
            for g in C.in_arrows[C.dom[f]]:
                fmor[(g, f, i)] = _fibre_map_morphism(C, over, fobj, g, f, i)
    return OperadicStructure(over, lt, fobj, fmor)


def _fibre_map_morphism(C, over, fobj, g, f, i):
    """The morphism with underlying map ``|g|^{|f|}_i`` between the two fibres."""
    fg = C.comp[(f, g)]
    src, tgt = C.objects[fobj[(fg, i)]], C.objects[fobj[(f, i)]]
    vals = fibre_map(over.card_mor[g], over.card_mor[f], i).values
    return C.mor((src, tgt, vals))


def sub_prob_terminals(C: FinCat) -> list[int]:
    """The singleton of each total mass present in ``C``."""
    return [x for x, s in enumerate(C.objects) if len(s) == 1]


def ex_disintegration(seeds, bound: int = DEFAULT_CLOSURE_BOUND) -> OperadicStructure:
    """Probability spaces; cardinality counts non-zero entries and fibres are normalized."""
    seeds = [s if isinstance(s, SubProbObject) else SubProbObject(tuple(s)) for s in seeds]
    if not seeds:
        raise ValueError("need at least one seed")
    for s in seeds:
        if s.mass != 1:
            raise ValueError(f"{s} is not a probability space")
    one = SubProbObject.of(1)

    def nz_fibre(s, r, phi, i):
        p = r.nonzero()[i - 1]
        return s.sublist(fibre(phi, p).eps.values).normalized()

    def step(objs):
        yield one
        for s, r, phi in _weight_maps(objs):
            for i in range(1, len(r.nonzero()) + 1):
                yield nz_fibre(s, r, phi, i)

    C = _weight_category(_close(seeds + [one], step, bound))
    card = tuple(len(s.nonzero()) for s in C.objects)
    card_mor = []
    for s, r, vals in C.morphisms:
        pos = {p: k for k, p in enumerate(r.nonzero(), 1)}
        card_mor.append(SMap.of([pos[vals[q - 1]] for q in s.nonzero()], len(pos)))
    over = OverS(C, card, tuple(card_mor))
    lt = LtObject.choose(C, [C.obj(one)])
    fobj, fmor = {}, {}
    for f, (s, r, _) in enumerate(C.morphisms):
        phi = _smap(C.morphisms[f])
        for i in range(1, card[C.cod[f]] + 1):
            fobj[(f, i)] = C.obj(nz_fibre(s, r, phi, i))
    for f, (s, r, _) in enumerate(C.morphisms):
        phi = _smap(C.morphisms[f])
        for i in range(1, card[C.cod[f]] + 1):
            p = r.nonzero()[i - 1]
            tgt = C.objects[fobj[(f, i)]]
            for g in C.in_arrows[C.dom[f]]:
                src = C.objects[fobj[(C.comp[(f, g)], i)]]
                vals = fibre_map(_smap(C.morphisms[g]), phi, p).values
                fmor[(g, f, i)] = C.mor((src, tgt, vals))
    return OperadicStructure(over, lt, fobj, fmor)


BASEPOINT = "*"


def _pointed_subsets(U):
    rest = sorted(u for u in U if u != BASEPOINT)
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            yield (BASEPOINT,) + combo


def ex_pointed_sets(U) -> OperadicStructure:
    """Pointed subsets of ``U``; the fibre of ``f`` is its literal kernel.

    Morphisms are tagged ``(X, Y, images)`` with images listed in the order
    of ``X``.  The kernel of an identity is the zero object.
    """
    U = set(U)
    if BASEPOINT not in U:
        raise ValueError(f"universe must contain the basepoint {BASEPOINT!r}")
    objs = list(_pointed_subsets(U))
    arrows = []
    for X in objs:
        for Y in objs:
            for imgs in itertools.product(Y, repeat=len(X) - 1):
                arrows.append(((X, Y, (BASEPOINT,) + imgs), X, Y))

    def compose(g, f):
        gm = dict(zip(g[0], g[2]))
        return (f[0], g[1], tuple(gm[v] for v in f[2]))

    C = FinCat.from_rules(objs, arrows, identity=lambda X: (X, X, X), compose=compose)
    zero = C.obj((BASEPOINT,))
    lt = LtObject.choose(C, [zero])

    def kernel(m):
        X, _, imgs = C.morphisms[m]
        if C.is_identity(m):
            return (BASEPOINT,)
        return tuple(x for x, y in zip(X, imgs) if y == BASEPOINT)

    fobj, fmor = {}, {}
    for f in range(C.n_morphisms):
        K = kernel(f)
        fobj[(f, 1)] = C.obj(K)
        for g in C.in_arrows[C.dom[f]]:
            Kg = kernel(C.comp[(f, g)])
            gm = dict(zip(C.morphisms[g][0], C.morphisms[g][2]))
            fmor[(g, f, 1)] = C.mor((Kg, K, tuple(gm[z] for z in Kg)))
    return OperadicStructure(OverS.constant_one(C), lt, fobj, fmor)

