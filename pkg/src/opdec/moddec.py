"""Categories over the skeleton of finite sets and modified décalage.

Covers the (π0-bijective, π0-cartesian) factorization, categories of
elements and discrete opfibrations, the translation between lax triangles
over the skeleton and squares of element projections, and the modified
décalage monad together with its unit and multiplication.

Cell tags used by the constructions here:

* ``elements(V)``: objects ``(X, i)``, morphisms ``(f, j)``.
* ``dm_object``: objects ``(X, i, f)``, morphisms ``(X, i, g, f)`` where
  ``g : f∘g -> f`` is a triangle over ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .decalage import dec
from .fincat import (FinCat, Functor, LtObject, check_functor, component_of,
                     connected_components, iter_functors, preserves_terminals)
from .report import Report
from .sskel import SMap, all_smaps, fibre, fibre_map, truncated_s


@dataclass(frozen=True)
class OverS:
    """A finite category with a cardinality functor to the skeleton."""

    C: FinCat
    card: tuple[int, ...]
    card_mor: tuple[SMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "card", tuple(self.card))
        object.__setattr__(self, "card_mor", tuple(self.card_mor))

    @classmethod
    def from_tags(cls, C: FinCat, card: dict, card_mor: dict) -> "OverS":
        """Cardinalities by object tag; image lists by morphism tag.

        Identities may be omitted from ``card_mor``.
        """
        sizes = tuple(card[o] for o in C.objects)
        maps = []
        for m, tag in enumerate(C.morphisms):
            n = sizes[C.cod[m]]
            if tag in card_mor:
                maps.append(SMap.of(card_mor[tag], n))
            elif C.is_identity(m):
                maps.append(SMap.identity(n))
            else:
                raise ValueError(f"no cardinality given for morphism {tag!r}")
        return cls(C, sizes, tuple(maps))

    @classmethod
    def constant_one(cls, C: FinCat) -> "OverS":
        one = SMap.identity(1)
        return cls(C, (1,) * C.n_objects, (one,) * C.n_morphisms)


def check_over_s(V: OverS) -> Report:
    r = Report()
    C = V.C
    if len(V.card) != C.n_objects or len(V.card_mor) != C.n_morphisms:
        r.add("card.total", (), "cardinality tables are not total")
        return r
    for m, phi in enumerate(V.card_mor):
        if phi.m != V.card[C.dom[m]] or phi.n != V.card[C.cod[m]]:
            r.add("card.type", (m,), f"|{m}| = {phi} is not a map {V.card[C.dom[m]]} -> {V.card[C.cod[m]]}")
    if not r.ok:
        return r
    for x in range(C.n_objects):
        if not V.card_mor[C.identity[x]].is_identity():
            r.add("card.identity", (x,))
    for (g, f), h in sorted(C.comp.items()):
        if V.card_mor[g].after(V.card_mor[f]) != V.card_mor[h]:
            r.add("card.compose", (g, f))
    return r


@dataclass(frozen=True)
class LtOver:
    """An object over the skeleton with chosen local terminals."""

    over: OverS
    lt: LtObject

    @property
    def C(self) -> FinCat:
        return self.over.C


def check_coalgebra_condition(W: LtOver) -> Report:
    r = Report()
    for t in W.lt.terminals:
        if W.over.card[t] != 1:
            r.add("coalgebra.terminal_card", (t,), f"|{t}| = {W.over.card[t]}, expected 1")
    return r


def over_s_instances(C: FinCat, max_card: int) -> Iterator[OverS]:
    """Every cardinality functor on ``C`` with cardinalities at most ``max_card``."""
    S = truncated_s(max_card)
    for F in iter_functors(C, S):
        yield OverS(C, tuple(S.objects[y] for y in F.obj_map),
                    tuple(S.morphisms[m] for m in F.mor_map))


@dataclass(frozen=True, eq=False)
class LaxTriangleMor:
    """A functor ``F`` with comparison maps ``nu_X : |X| -> |F X|``."""

    source: OverS
    target: OverS
    functor: Functor
    nu: tuple[SMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(self.nu))

    @classmethod
    def identity(cls, V: OverS) -> "LaxTriangleMor":
        return cls(V, V, Functor.identity(V.C), [SMap.identity(n) for n in V.card])

    @classmethod
    def strict(cls, source: OverS, target: OverS, F: Functor) -> "LaxTriangleMor":
        return cls(source, target, F, [SMap.identity(n) for n in source.card])

    def after(self, other: "LaxTriangleMor") -> "LaxTriangleMor":
        """``self ∘ other``; comparison maps compose as ``nu_{F X} ∘ nu'_X``."""
        F = self.functor.compose(other.functor)
        nu = [self.nu[other.functor.obj_map[x]].after(other.nu[x])
              for x in range(other.source.C.n_objects)]
        return LaxTriangleMor(other.source, self.target, F, nu)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaxTriangleMor):
            return NotImplemented
        return (self.functor == other.functor and self.nu == other.nu
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash((self.functor, self.nu))


def check_lax_triangle(T: LaxTriangleMor) -> Report:
    r = check_functor(T.functor)
    V, W, F = T.source, T.target, T.functor
    if not r.ok:
        return r
    for x, nu in enumerate(T.nu):
        if nu.m != V.card[x] or nu.n != W.card[F.obj_map[x]]:
            r.add("lax.nu_type", (x,))
    if not r.ok:
        return r
    C = V.C
    for f in range(C.n_morphisms):
        y, x = C.dom[f], C.cod[f]
        if W.card_mor[F.mor_map[f]].after(T.nu[y]) != T.nu[x].after(V.card_mor[f]):
            r.add("lax.naturality", (f,))
    return r


def check_strict(T: LaxTriangleMor) -> bool:
    return all(nu.is_identity() for nu in T.nu)


def lax_triangles(V: OverS, W: OverS) -> Iterator[LaxTriangleMor]:
    """All lax triangles ``V -> W``, by brute force over functors and comparison maps."""
    for F in iter_functors(V.C, W.C):
        choices = [list(all_smaps(V.card[x], W.card[F.obj_map[x]])) for x in range(V.C.n_objects)]
        for nu in itertools.product(*choices):
            T = LaxTriangleMor(V, W, F, nu)
            if check_lax_triangle(T).ok:
                yield T


# -- (π0-bijective, π0-cartesian) factorization -------------------------------


def pi0_factorize(P: Functor) -> tuple[Functor, Functor]:
    """Factor ``P`` as ``R ∘ L`` through ``Σ_y C_{f y}``.

    The middle category has objects ``(y, c)`` with ``y`` a component of the
    domain and ``c`` in the component of the codomain hit by it.
    """
    E, C = P.source, P.target
    e_comps = connected_components(E)
    c_comps = connected_components(C)
    c_of = component_of(C)
    hit = [c_of[P.obj_map[comp[0]]] for comp in e_comps]
    objects, arrows = [], []
    for y, k in enumerate(hit):
        members = set(c_comps[k])
        objects.extend((y, c) for c in c_comps[k])
        arrows.extend(((y, m), (y, C.dom[m]), (y, C.cod[m]))
                      for m in range(C.n_morphisms) if C.dom[m] in members)
    M = FinCat.from_rules(objects, arrows,
                          identity=lambda o: (o[0], C.identity[o[1]]),
                          compose=lambda b, a: (a[0], C.comp[(b[1], a[1])]))
    e_of = component_of(E)
    L = Functor(E, M, [M.obj((e_of[e], P.obj_map[e])) for e in range(E.n_objects)],
                [M.mor((e_of[E.dom[m]], P.mor_map[m])) for m in range(E.n_morphisms)])
    R = Functor(M, C, [c for _, c in M.objects], [m for _, m in M.morphisms])
    return L, R


def pi0_map(F: Functor) -> tuple[int, ...]:
    """The induced function on connected components."""
    s_comps = connected_components(F.source)
    t_of = component_of(F.target)
    return tuple(t_of[F.obj_map[comp[0]]] for comp in s_comps)


def is_pi0_bijective(F: Functor) -> bool:
    induced = pi0_map(F)
    return sorted(induced) == list(range(len(connected_components(F.target))))


def is_pi0_cartesian(F: Functor) -> bool:
    """Each domain component maps isomorphically onto a codomain component."""
    S, T = F.source, F.target
    t_comps = connected_components(T)
    induced = pi0_map(F)
    for k, comp in enumerate(connected_components(S)):
        target = t_comps[induced[k]]
        objs = [F.obj_map[x] for x in comp]
        if sorted(objs) != sorted(target):
            return False
        members = set(comp)
        mors = [F.mor_map[m] for m in range(S.n_morphisms) if S.dom[m] in members]
        tset = set(target)
        expected = [m for m in range(T.n_morphisms) if T.dom[m] in tset]
        if sorted(mors) != expected:
            return False
    return True


def diagonal_fillers(l: Functor, r: Functor, u: Functor, v: Functor) -> list[Functor]:
    """All ``d`` with ``d ∘ l = u`` and ``r ∘ d = v`` for the square ``r∘u = v∘l``."""
    B, C = l.target, r.source
    over_obj: dict[int, list[int]] = {}
    for c in range(C.n_objects):
        over_obj.setdefault(r.obj_map[c], []).append(c)
    over_mor: dict[int, list[int]] = {}
    for c in range(C.n_morphisms):
        over_mor.setdefault(r.mor_map[c], []).append(c)
    forced_obj = {}
    for a, b in enumerate(l.obj_map):
        forced_obj.setdefault(b, set()).add(u.obj_map[a])
    forced_mor = {}
    for a, b in enumerate(l.mor_map):
        forced_mor.setdefault(b, set()).add(u.mor_map[a])

    def obj_cands(b):
        cands = over_obj.get(v.obj_map[b], [])
        if b in forced_obj:
            cands = [c for c in cands if {c} == forced_obj[b]]
        return cands

    def mor_cands(m):
        cands = over_mor.get(v.mor_map[m], [])
        if m in forced_mor:
            cands = [c for c in cands if {c} == forced_mor[m]]
        return cands

    return list(iter_functors(B, C, obj_candidates=obj_cands, mor_candidates=mor_cands))


# -- categories of elements and discrete opfibrations -------------------------


@lru_cache(maxsize=256)
def elements(V: OverS) -> tuple[FinCat, Functor]:
    C = V.C
    objects = [(x, i) for x in range(C.n_objects) for i in range(1, V.card[x] + 1)]
    arrows = [((f, j), (C.dom[f], j), (C.cod[f], V.card_mor[f](j)))
              for f in range(C.n_morphisms) for j in range(1, V.card[C.dom[f]] + 1)]
    E = FinCat.from_rules(objects, arrows,
                          identity=lambda o: (C.identity[o[0]], o[1]),
                          compose=lambda b, a: (C.comp[(b[0], a[0])], a[1]))
    P = Functor(E, C, [x for x, _ in E.objects], [f for f, _ in E.morphisms])
    return E, P


def lift_counts(P: Functor) -> dict[tuple[int, int], int]:
    """Number of lifts of each ``f : P e -> X`` starting at ``e``."""
    E, C = P.source, P.target
    counts = {}
    for e in range(E.n_objects):
        for f in C.out_arrows[P.obj_map[e]]:
            counts[(e, f)] = 0
        for m in E.out_arrows[e]:
            counts[(e, P.mor_map[m])] += 1
    return counts


def is_discrete_opfib(P: Functor) -> bool:
    return all(n == 1 for n in lift_counts(P).values())


def fibres(P: Functor) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(P.target.n_objects)]
    for e, x in enumerate(P.obj_map):
        out[x].append(e)
    return out


def has_finite_fibres(P: Functor) -> bool:
    """Every fibre is a finite set; always the case between finite categories."""
    return all(len(fib) <= P.source.n_objects for fib in fibres(P))


@dataclass(frozen=True)
class Square:
    """A morphism of the arrow category: ``bottom ∘ P = P' ∘ top``."""

    top: Functor
    bottom: Functor


def element_squares(V: OverS, W: OverS) -> Iterator[Square]:
    """All commuting squares from the element projection of ``V`` to that of ``W``."""
    E, P = elements(V)
    E2, P2 = elements(W)
    over = fibres(P2)
    over_mor: dict[int, list[int]] = {}
    for n, f in enumerate(P2.mor_map):
        over_mor.setdefault(f, []).append(n)
    for F in iter_functors(V.C, W.C):
        yield from (Square(G, F) for G in iter_functors(
            E, E2,
            obj_candidates=lambda e: over[F.obj_map[P.obj_map[e]]],
            mor_candidates=lambda m: over_mor.get(F.mor_map[P.mor_map[m]], [])))


def upsilon_to_square(V: OverS, V2: OverS, T: LaxTriangleMor) -> Square:
    E, _ = elements(V)
    E2, _ = elements(V2)
    F = T.functor
    C = V.C
    objs = [E2.obj((F.obj_map[x], T.nu[x](i))) for x, i in E.objects]
    mors = [E2.mor((F.mor_map[f], T.nu[C.dom[f]](j))) for f, j in E.morphisms]
    return Square(Functor(E, E2, objs, mors), F)


def upsilon_from_square(V: OverS, V2: OverS, sq: Square) -> LaxTriangleMor:
    E, P = elements(V)
    E2, P2 = elements(V2)
    G, F = sq.top, sq.bottom
    if G.source != E or G.target != E2 or F.source != V.C or F.target != V2.C:
        raise ValueError("square is not between the element projections")
    if P2.compose(G) != F.compose(P):
        raise ValueError("square does not commute")
    nu = []
    for x in range(V.C.n_objects):
        vals = [E2.objects[G.obj_map[E.obj((x, i))]][1] for i in range(1, V.card[x] + 1)]
        nu.append(SMap.of(vals, V2.card[F.obj_map[x]]))
    T = LaxTriangleMor(V, V2, F, nu)
    if upsilon_to_square(V, V2, T) != sq:
        raise ValueError("top functor is not induced by its object action")
    return T


def linear_order_iso(H: Functor, orders=None) -> tuple[OverS, Functor]:
    """Present a discrete opfibration with ordered fibres as an element projection.

    ``orders[X]`` lists the fibre over ``X`` in the chosen order (defaults to
    index order).  Returns ``(V, K)`` with ``K : source(H) -> elements(V)``
    the unique fibrewise-monotone isomorphism over the base.
    """
    if not is_discrete_opfib(H):
        raise ValueError("functor is not a discrete opfibration")
    E, C = H.source, H.target
    fib = fibres(H)
    if orders is None:
        orders = fib
    orders = [list(o) for o in orders]
    for x in range(C.n_objects):
        if sorted(orders[x]) != fib[x]:
            raise ValueError(f"order for {x} is not a permutation of its fibre")
    pos = {}
    for x in range(C.n_objects):
        for k, e in enumerate(orders[x], 1):
            pos[e] = k
    lift = {(E.dom[m], H.mor_map[m]): m for m in range(E.n_morphisms)}
    card_mor = []
    for f in range(C.n_morphisms):
        vals = [pos[E.cod[lift[(e, f)]]] for e in orders[C.dom[f]]]
        card_mor.append(SMap.of(vals, len(orders[C.cod[f]])))
    V = OverS(C, [len(o) for o in orders], card_mor)
    EV, _ = elements(V)
    K = Functor(E, EV, [EV.obj((H.obj_map[e], pos[e])) for e in range(E.n_objects)],
                [EV.mor((H.mor_map[m], pos[E.dom[m]])) for m in range(E.n_morphisms)])
    return V, K


def transported_orders(V: OverS, K: Functor) -> list[list[int]]:
    EV, _ = elements(V)
    inv = {y: x for x, y in enumerate(K.obj_map)}
    return [[inv[EV.obj((x, i))] for i in range(1, V.card[x] + 1)] for x in range(V.C.n_objects)]


@lru_cache(maxsize=256)
def dm_arrow(P: Functor) -> Functor:
    """Modified décalage of an arbitrary functor ``P : E -> C``.

    ``Σ_{Y in E} E/Y -> Σ_{Y in E} C/PY``; the codomain has objects
    ``(Y, c)`` and morphisms ``(Y, g, c)``.
    """
    E, C = P.source, P.target
    DE = dec(E)
    objects = [(Y, c) for Y in range(E.n_objects) for c in C.in_arrows[P.obj_map[Y]]]
    arrows = [((Y, g, c), (Y, C.comp[(c, g)]), (Y, c))
              for Y, c in objects for g in C.in_arrows[C.dom[c]]]
    M = FinCat.from_rules(objects, arrows,
                          identity=lambda o: (o[0], C.identity[C.dom[o[1]]], o[1]),
                          compose=lambda b, a: (a[0], C.comp[(b[1], a[1])], b[2]))
    return Functor(DE, M, [M.obj((Y, P.mor_map[e])) for Y, e in DE.objects],
                   [M.mor((Y, P.mor_map[g], P.mor_map[e])) for Y, g, e in DE.morphisms])


# -- the modified décalage monad ---------------------------------------------


@lru_cache(maxsize=256)
def _dm_category(V: OverS) -> FinCat:
    C = V.C
    objects, arrows = [], []
    for X in range(C.n_objects):
        for i in range(1, V.card[X] + 1):
            for f in C.in_arrows[X]:
                objects.append((X, i, f))
                for g in C.in_arrows[C.dom[f]]:
                    arrows.append(((X, i, g, f), (X, i, C.comp[(f, g)]), (X, i, f)))
    return FinCat.from_rules(
        objects, arrows,
        identity=lambda o: (o[0], o[1], C.identity[C.dom[o[2]]], o[2]),
        compose=lambda b, a: (a[0], a[1], C.comp[(b[2], a[2])], b[3]))


@lru_cache(maxsize=256)
def dm_object(W: LtOver) -> LtOver:
    """``Σ_{X, i} C/X`` with cardinality ``(X, i, f) -> |f|^{-1}(i)``."""
    if not check_coalgebra_condition(W).ok:
        raise ValueError("chosen terminals must have cardinality 1")
    V = W.over
    C = V.C
    M = _dm_category(V)
    card = [fibre(V.card_mor[f], i).k for X, i, f in M.objects]
    card_mor = [fibre_map(V.card_mor[g], V.card_mor[f], i) for X, i, g, f in M.morphisms]
    lt = LtObject.choose(M, [M.obj((X, i, C.identity[X]))
                             for X in range(C.n_objects) for i in range(1, V.card[X] + 1)])
    return LtOver(OverS(M, card, card_mor), lt)


def dm_counit(W: LtOver) -> LaxTriangleMor:
    """Slice projections with comparison maps the fibre inclusions."""
    D = dm_object(W)
    M = D.C
    V = W.over
    F = Functor(M, V.C, [V.C.dom[f] for _, _, f in M.objects], [g for _, _, g, _ in M.morphisms])
    nu = [fibre(V.card_mor[f], i).eps for _, i, f in M.objects]
    return LaxTriangleMor(D.over, V, F, nu)


def _factor_through(eps: SMap, target: SMap, what) -> SMap:
    """The unique ``k`` with ``eps ∘ k = target`` for an injective ``eps``."""
    pos = {v: k for k, v in enumerate(eps.values, 1)}
    try:
        return SMap(target.m, eps.m, tuple(pos[v] for v in target.values))
    except KeyError:
        raise ValueError(f"no factorization at {what}") from None


def tilde_dm_mor(T: LaxTriangleMor, src: LtOver, tgt: LtOver) -> LaxTriangleMor:
    F = T.functor
    if not preserves_terminals(F, src.lt, tgt.lt):
        raise ValueError("functor does not preserve the chosen terminals")
    D, D2 = dm_object(src), dm_object(tgt)
    M, M2 = D.C, D2.C
    V, V2 = src.over, tgt.over
    objs = [M2.obj((F.obj_map[X], T.nu[X](i), F.mor_map[f])) for X, i, f in M.objects]
    mors = [M2.mor((F.obj_map[X], T.nu[X](i), F.mor_map[g], F.mor_map[f]))
            for X, i, g, f in M.morphisms]
    nu = []
    for X, i, f in M.objects:
        Y = V.C.dom[f]
        inner = T.nu[Y].after(fibre(V.card_mor[f], i).eps)
        outer = fibre(V2.card_mor[F.mor_map[f]], T.nu[X](i)).eps
        nu.append(_factor_through(outer, inner, (X, i, f)))
    return LaxTriangleMor(D.over, D2.over, Functor(M, M2, objs, mors), nu)


def tilde_dm_unit(W: LtOver) -> LaxTriangleMor:
    """``X -> (uX, 1, tau_X)``; comparison maps are forced by the counit."""
    D = dm_object(W)
    M = D.C
    V, lt = W.over, W.lt
    C = V.C
    objs = [M.obj((lt.u[X], 1, lt.tau[X])) for X in range(C.n_objects)]
    mors = [M.mor((lt.u[C.cod[f]], 1, f, lt.tau[C.cod[f]])) for f in range(C.n_morphisms)]
    nu = []
    for X in range(C.n_objects):
        eps = fibre(V.card_mor[lt.tau[X]], 1).eps
        nu.append(_factor_through(eps, SMap.identity(V.card[X]), X))
    return LaxTriangleMor(V, D.over, Functor(C, M, objs, mors), nu)


def tilde_dm_mult(W: LtOver) -> LaxTriangleMor:
    """``(X, i, f, j, g) -> (Y, eps j, g)`` and ``h -> h``.

    Comparison maps are the unique maps compatible with the fibre inclusions
    down to the domain of ``g``.
    """
    D = dm_object(W)
    DD = dm_object(D)
    V = W.over
    C = V.C
    M, MM = D.C, DD.C
    objs, mors, nu = [], [], []
    for x, j, phi in MM.objects:
        X, i, g, f = M.morphisms[phi]
        e = fibre(V.card_mor[f], i).eps(j)
        objs.append(M.obj((C.cod[g], e, g)))
        fg = C.comp[(f, g)]
        down = fibre(V.card_mor[fg], i).eps.after(fibre(D.over.card_mor[phi], j).eps)
        nu.append(_factor_through(fibre(V.card_mor[g], e).eps, down, (x, j, phi)))
    for x, j, psi, phi in MM.morphisms:
        _, _, h, _ = M.morphisms[psi]
        X, i, g, f = M.morphisms[phi]
        e = fibre(V.card_mor[f], i).eps(j)
        mors.append(M.mor((C.cod[g], e, h, g)))
    return LaxTriangleMor(DD.over, D.over, Functor(MM, M, objs, mors), nu)


def check_dm_monad_laws(W: LtOver) -> Report:
    r = Report()
    D = dm_object(W)
    eta, mu = tilde_dm_unit(W), tilde_dm_mult(W)
    for name, T in (("unit", eta), ("mult", mu)):
        for v in check_lax_triangle(T):
            r.add(f"dm.{name}.{v.law}", v.witness, v.message)
    ident = LaxTriangleMor.identity(D.over)
    if mu.after(tilde_dm_unit(D)) != ident:
        r.add("dm.monad.unit_left", (), "mu o eta_Dm != id")
    if mu.after(tilde_dm_mor(eta, W, D)) != ident:
        r.add("dm.monad.unit_right", (), "mu o Dm(eta) != id")
    if mu.after(tilde_dm_mor(mu, dm_object(D), D)) != mu.after(tilde_dm_mult(D)):
        r.add("dm.monad.assoc", (), "mu o Dm(mu) != mu o mu_Dm")
    return r
