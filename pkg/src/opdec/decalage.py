"""The décalage comonad on finite categories and the monad it lifts to.

``dec(C)`` is the coproduct of the slices of ``C``.  Its object ``(X, f)``
is the arrow ``f`` into ``X``; its morphism ``(X, g, f)`` is the triangle
``g : f∘g -> f`` over ``X``.  All indices are integers of ``C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fincat import (FinCat, Functor, LtObject, iter_functors,
                     preserves_terminals)
from .report import Report


@lru_cache(maxsize=512)
def dec(C: FinCat) -> FinCat:
    objects = [(X, f) for X in range(C.n_objects) for f in C.in_arrows[X]]
    arrows = []
    for X in range(C.n_objects):
        for f in C.in_arrows[X]:
            for g in C.in_arrows[C.dom[f]]:
                arrows.append(((X, g, f), (X, C.comp[(f, g)]), (X, f)))
    return FinCat.from_rules(
        objects, arrows,
        identity=lambda o: (o[0], C.identity[C.dom[o[1]]], o[1]),
        compose=lambda b, a: (a[0], C.comp[(b[1], a[1])], b[2]))


def summand_of(DC: FinCat, o: int) -> int:
    """The object ``X`` whose slice contains the object ``o`` of ``dec(C)``."""
    return DC.objects[o][0]


def counit(C: FinCat) -> Functor:
    """Copairing of the domain projections ``dec(C) -> C``."""
    DC = dec(C)
    return Functor(DC, C, [C.dom[f] for _, f in DC.objects], [g for _, g, _ in DC.morphisms])


def comult(C: FinCat) -> Functor:
    """``dec(C) -> dec(dec(C))``, sending the X-summand into the ``1_X``-summand."""
    DC = dec(C)
    DDC = dec(DC)
    objs, mors = [], []
    for X, f in DC.objects:
        top = DC.obj((X, C.identity[X]))
        objs.append(DDC.obj((top, DC.mor((X, f, C.identity[X])))))
    for X, g, f in DC.morphisms:
        top = DC.obj((X, C.identity[X]))
        mors.append(DDC.mor((top, DC.mor((X, g, f)), DC.mor((X, f, C.identity[X])))))
    return Functor(DC, DDC, objs, mors)


def dec_functor(F: Functor) -> Functor:
    """``D(F)``: the X-summand goes to the F(X)-summand via ``F/X``."""
    DC, DE = dec(F.source), dec(F.target)
    objs = [DE.obj((F.obj_map[X], F.mor_map[f])) for X, f in DC.objects]
    mors = [DE.mor((F.obj_map[X], F.mor_map[g], F.mor_map[f])) for X, g, f in DC.morphisms]
    return Functor(DC, DE, objs, mors)


def check_comonad_laws(C: FinCat) -> Report:
    r = Report()
    DC = dec(C)
    delta = comult(C)
    ident = Functor.identity(DC)
    if dec_functor(counit(C)).compose(delta) != ident:
        r.add("comonad.counit_left", (), "D(eps) o delta != id")
    if counit(DC).compose(delta) != ident:
        r.add("comonad.counit_right", (), "eps_D o delta != id")
    if dec_functor(delta).compose(delta) != comult(DC).compose(delta):
        r.add("comonad.coassoc", (), "D(delta) o delta != delta_D o delta")
    return r


# -- coalgebras ---------------------------------------------------------------


@dataclass(frozen=True)
class Coalgebra:
    carrier: FinCat
    structure: Functor


def check_coalgebra(A: Coalgebra) -> Report:
    r = Report()
    C, alpha = A.carrier, A.structure
    if alpha.source != C or alpha.target != dec(C):
        r.add("coalgebra.type", ())
        return r
    if counit(C).compose(alpha) != Functor.identity(C):
        r.add("coalgebra.counit", ())
    if dec_functor(alpha).compose(alpha) != comult(C).compose(alpha):
        r.add("coalgebra.coassoc", ())
    return r


def coalgebra_from_lt(L: LtObject) -> Coalgebra:
    """``X`` goes to ``tau_X`` in the summand of ``uX``; ``f`` to itself as a triangle."""
    return Coalgebra(L.base, unit_eta(L))


def lt_from_coalgebra(A: Coalgebra) -> LtObject:
    DC = A.structure.target
    return LtObject.choose(A.carrier, {summand_of(DC, o) for o in A.structure.obj_map})


def enumerate_coalgebras(C: FinCat, max_objects: int | None = 4,
                         max_morphisms: int | None = 8) -> list[Coalgebra]:
    """All coalgebra structures on ``C`` by exhaustive functor search."""
    if (max_objects is not None and C.n_objects > max_objects) or \
            (max_morphisms is not None and C.n_morphisms > max_morphisms):
        raise ValueError(f"{C!r} exceeds the coalgebra search bound")
    DC = dec(C)
    by_dom: dict[int, list[int]] = {}
    for o, (_, f) in enumerate(DC.objects):
        by_dom.setdefault(C.dom[f], []).append(o)
    by_under: dict[int, list[int]] = {}
    for m, (_, g, _) in enumerate(DC.morphisms):
        by_under.setdefault(g, []).append(m)
    out = []
    for alpha in iter_functors(C, DC, obj_candidates=lambda x: by_dom.get(x, []),
                               mor_candidates=lambda m: by_under.get(m, [])):
        A = Coalgebra(C, alpha)
        if check_coalgebra(A).ok:
            out.append(A)
    return out


# -- the lifted monad on categories with local terminals ------------------------


def tilde_d(L: LtObject) -> LtObject:
    """``dec(C)`` with the identity ``1_X`` chosen in each summand."""
    C = L.base
    DC = dec(C)
    return LtObject.choose(DC, [DC.obj((X, C.identity[X])) for X in range(C.n_objects)])


def tilde_d_mor(F: Functor, L: LtObject, L2: LtObject) -> Functor:
    if not preserves_terminals(F, L, L2):
        raise ValueError("functor does not preserve the chosen terminals")
    return dec_functor(F)


def unit_eta(L: LtObject) -> Functor:
    C = L.base
    DC = dec(C)
    objs = [DC.obj((L.u[X], L.tau[X])) for X in range(C.n_objects)]
    mors = [DC.mor((L.u[C.cod[f]], f, L.tau[C.cod[f]])) for f in range(C.n_morphisms)]
    return Functor(C, DC, objs, mors)


def mult_mu(L: LtObject) -> Functor:
    """The summand indexed by ``f : Y -> X`` goes to the Y-summand."""
    C = L.base
    DC = dec(C)
    DDC = dec(DC)
    objs = []
    for _, phi in DDC.objects:
        _, g, _ = DC.morphisms[phi]
        objs.append(DC.obj((C.cod[g], g)))
    mors = []
    for _, psi, phi in DDC.morphisms:
        _, h, _ = DC.morphisms[psi]
        _, g, _ = DC.morphisms[phi]
        mors.append(DC.mor((C.cod[g], h, g)))
    return Functor(DDC, DC, objs, mors)


def check_monad_laws(L: LtObject) -> Report:
    r = Report()
    DL = tilde_d(L)
    mu, eta = mult_mu(L), unit_eta(L)
    ident = Functor.identity(DL.base)
    if mu.compose(unit_eta(DL)) != ident:
        r.add("monad.unit_left", (), "mu o eta_D != id")
    if mu.compose(dec_functor(eta)) != ident:
        r.add("monad.unit_right", (), "mu o D(eta) != id")
    if mu.compose(dec_functor(mu)) != mu.compose(mult_mu(DL)):
        r.add("monad.assoc", (), "mu o D(mu) != mu o mu_D")
    return r
