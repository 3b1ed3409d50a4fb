"""Translations between operadic structures and algebras.

Unary operadic structures correspond to algebras for the lifted décalage
monad; lax-operadic structures to algebras for the modified décalage monad,
and operadic structures to those algebras whose action is a strict
triangle.  All translations are identities on the stored tables, so
roundtrips are compared by plain equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .decalage import dec, dec_functor, mult_mu, tilde_d, unit_eta
from .fincat import (Functor, LtObject, check_functor, iter_functors,
                     preserves_terminals, slice_category)
from .moddec import (LaxTriangleMor, LtOver, OverS, check_lax_triangle, check_strict,
                     dm_object, tilde_dm_mor, tilde_dm_mult, tilde_dm_unit)
from .operadic import OperadicStructure, check_operadic
from .report import Report

# -- unary structures and the lifted décalage monad ---------------------------


@dataclass(frozen=True)
class TildeDAlgebra:
    carrier: LtObject
    act: Functor


def check_tilde_d_algebra(A: TildeDAlgebra) -> Report:
    """Functoriality, terminal preservation, unit and associativity.

    The two laws are compared as tables, so they are evaluated even when
    ``act`` fails to be a functor.
    """
    r = Report()
    L, act = A.carrier, A.act
    C = L.base
    DL = tilde_d(L)
    if act.source != DL.base or act.target != C:
        r.add("algebra.type", (), "action is not D(C) -> C")
        return r
    for v in check_functor(act):
        r.add("algebra." + v.law, v.witness, v.message)
    if not preserves_terminals(act, DL, L):
        r.add("algebra.terminals", ())
    if act.compose(unit_eta(L)) != Functor.identity(C):
        r.add("algebra.unit", ())
    try:
        lhs = act.compose(mult_mu(L))
        rhs = act.compose(dec_functor(act))
    except (KeyError, ValueError):
        r.add("algebra.assoc", (), "D(act) is undefined")
    else:
        if lhs != rhs:
            r.add("algebra.assoc", ())
    return r


def unary_to_algebra(S: OperadicStructure) -> TildeDAlgebra:
    """Copairing of the fibre functors ``C/X -> C``."""
    if not all(n == 1 for n in S.over.card):
        raise ValueError("structure is not unary")
    C = S.C
    DC = dec(C)
    objs = [S.fibre_obj[(f, 1)] for _, f in DC.objects]
    mors = [S.fibre_mor[(g, f, 1)] for _, g, f in DC.morphisms]
    return TildeDAlgebra(S.lt, Functor(DC, C, objs, mors))


def algebra_to_unary(A: TildeDAlgebra) -> OperadicStructure:
    L, act = A.carrier, A.act
    C = L.base
    if not preserves_terminals(act, tilde_d(L), L):
        raise ValueError("action does not preserve chosen terminals")
    DC = act.source
    fobj = {(f, 1): act.obj_map[o] for o, (_, f) in enumerate(DC.objects)}
    fmor = {(g, f, 1): act.mor_map[m] for m, (_, g, f) in enumerate(DC.morphisms)}
    return OperadicStructure(OverS.constant_one(C), L, fobj, fmor)


def enumerate_algebras(L: LtObject) -> list[TildeDAlgebra]:
    """Every terminal-preserving ``D(C) -> C`` satisfying both monad-algebra laws."""
    C = L.base
    DL = tilde_d(L)
    DC = DL.base
    terms = list(L.terminals)
    every = list(range(C.n_objects))

    def obj_cands(o):
        return terms if DL.is_chosen(o) else every

    out = []
    for act in iter_functors(DC, C, obj_candidates=obj_cands):
        A = TildeDAlgebra(L, act)
        if check_tilde_d_algebra(A).ok:
            out.append(A)
    return out


def _summand_candidates(L: LtObject, X: int) -> list[tuple[tuple, tuple]]:
    """Fibre functors ``C/X -> C`` allowed by the axioms local to the summand.

    The fibre of ``1_X`` must be chosen terminal; when ``X`` is itself
    chosen, the fibre of ``tau_Y`` must be ``Y`` and ``f`` its own fibre map.
    """
    C = L.base
    S, _ = slice_category(C, X)
    terms = list(L.terminals)
    every = list(range(C.n_objects))
    idx = S.obj(C.identity[X])
    forced_obj, forced_mor = {}, {}
    if L.is_chosen(X):
        for Y in range(C.n_objects):
            if L.u[Y] == X:
                forced_obj[S.obj(L.tau[Y])] = Y
                for f in C.in_arrows[Y]:
                    forced_mor[S.mor((f, L.tau[Y]))] = f

    def obj_cands(o):
        if o in forced_obj:
            return [forced_obj[o]] if o != idx or forced_obj[o] in terms else []
        return terms if o == idx else every

    def mor_cands(m):
        if m in forced_mor:
            return [forced_mor[m]]
        return range(C.n_morphisms)

    out = []
    for F in iter_functors(S, C, obj_candidates=obj_cands, mor_candidates=mor_cands):
        fo = tuple(F.obj_map[S.obj(f)] for f in C.in_arrows[X])
        fm = tuple(F.mor_map[m] for m in range(S.n_morphisms))
        out.append((fo, fm))
    return out


def enumerate_unary_structures(L: LtObject) -> list[OperadicStructure]:
    """Every unary operadic structure on ``L`` passing the full axiom suite."""
    C = L.base
    slices = [slice_category(C, X)[0] for X in range(C.n_objects)]
    per_x = [_summand_candidates(L, X) for X in range(C.n_objects)]
    over = OverS.constant_one(C)
    out = []
    for choice in itertools.product(*per_x):
        fobj, fmor = {}, {}
        for X, (fo, fm) in enumerate(choice):
            for f, o in zip(C.in_arrows[X], fo):
                fobj[(f, 1)] = o
            for m, (g, f) in enumerate(slices[X].morphisms):
                fmor[(g, f, 1)] = fm[m]
        S = OperadicStructure(over, L, fobj, fmor)
        if check_operadic(S).ok:
            out.append(S)
    return out


def _key(F: Functor) -> tuple:
    return (tuple(F.obj_map), tuple(F.mor_map))


@dataclass(frozen=True)
class Thm1Result:
    n_unary: int
    n_algebras: int
    bijective: bool
    roundtrip: bool


def thm1_check(L: LtObject) -> Thm1Result:
    unary = enumerate_unary_structures(L)
    algebras = enumerate_algebras(L)
    encoded = [_key(unary_to_algebra(S).act) for S in unary]
    direct = [_key(A.act) for A in algebras]
    bijective = len(set(encoded)) == len(encoded) and sorted(encoded) == sorted(direct)
    roundtrip = all(algebra_to_unary(unary_to_algebra(S)) == S for S in unary) and \
        all(unary_to_algebra(algebra_to_unary(A)).act == A.act for A in algebras)
    return Thm1Result(len(unary), len(algebras), bijective, roundtrip)


@dataclass(frozen=True)
class MutationPair:
    """A valid algebra and a single-entry mutation of its action."""

    base: TildeDAlgebra
    mutant: TildeDAlgebra
    entry: int
    a4: bool
    unit: bool
    a5: bool
    assoc: bool

    @property
    def agrees(self) -> bool:
        return self.a4 == self.unit and self.a5 == self.assoc


def mutation_pairs(A: TildeDAlgebra) -> list[MutationPair]:
    """Replace one morphism of the action by a parallel one.

    Parallel replacements keep the fibre tables well typed, so both the
    axioms and the algebra laws can be evaluated on the mutant.
    """
    act = A.act
    C = A.carrier.base
    out = []
    for m, n in enumerate(act.mor_map):
        for alt in C.hom(C.dom[n], C.cod[n]):
            if alt == n:
                continue
            mors = list(act.mor_map)
            mors[m] = alt
            M = TildeDAlgebra(A.carrier, Functor(act.source, C, act.obj_map, mors))
            ops = set(check_operadic(algebra_to_unary(M)).laws())
            laws = set(check_tilde_d_algebra(M).laws())
            out.append(MutationPair(
                A, M, m,
                a4=not ops & {"A4.obj", "A4.mor"}, unit="algebra.unit" not in laws,
                a5=not ops & {"A5.obj", "A5.mor"}, assoc="algebra.assoc" not in laws))
    return out


def algebra_morphism_commutes(A: TildeDAlgebra, A2: TildeDAlgebra, F: Functor) -> bool:
    """Whether ``F`` is a map of algebras: terminal-preserving with ``act' ∘ D(F) = F ∘ act``."""
    if not preserves_terminals(F, A.carrier, A2.carrier):
        return False
    return A2.act.compose(dec_functor(F)) == F.compose(A.act)


# -- lax-operadic structures and the modified décalage monad ------------------


@dataclass(frozen=True)
class TildeDmAlgebra:
    carrier: LtOver
    act: LaxTriangleMor


def check_dm_algebra(A: TildeDmAlgebra) -> Report:
    r = Report()
    W, act = A.carrier, A.act
    D = dm_object(W)
    if act.functor.source != D.C or act.functor.target != W.C:
        r.add("algebra.type", (), "action is not D_m(C) -> C")
        return r
    for v in check_lax_triangle(act):
        r.add("algebra." + v.law, v.witness, v.message)
    if not r.ok:
        return r
    if not preserves_terminals(act.functor, D.lt, W.lt):
        r.add("algebra.terminals", ())
        return r
    if act.after(tilde_dm_unit(W)) != LaxTriangleMor.identity(W.over):
        r.add("algebra.unit", ())
    try:
        rhs = act.after(tilde_dm_mor(act, D, W))
    except ValueError as exc:
        r.add("algebra.assoc", (), str(exc))
    else:
        if act.after(tilde_dm_mult(W)) != rhs:
            r.add("algebra.assoc", ())
    return r


def lax_to_dm_algebra(S: OperadicStructure) -> TildeDmAlgebra:
    """``phi`` copairs the fibre functors; ``gamma`` gives the comparison maps."""
    W = LtOver(S.over, S.lt)
    D = dm_object(W)
    M = D.C
    objs = [S.fibre_obj[(f, i)] for _, i, f in M.objects]
    mors = [S.fibre_mor[(g, f, i)] for _, i, g, f in M.morphisms]
    nu = []
    for X, i, f in M.objects:
        gam = S.gamma(f, i)
        if gam.n != S.card(S.fibre_obj[(f, i)]):
            raise ValueError(f"relabelling at ({f}, {i}) has the wrong codomain")
        nu.append(gam)
    return TildeDmAlgebra(W, LaxTriangleMor(D.over, S.over, Functor(M, S.C, objs, mors), nu))


def dm_algebra_to_lax(A: TildeDmAlgebra) -> OperadicStructure:
    W, act = A.carrier, A.act
    M = act.functor.source
    fobj = {(f, i): act.functor.obj_map[o] for o, (_, i, f) in enumerate(M.objects)}
    fmor = {(g, f, i): act.functor.mor_map[m] for m, (_, i, g, f) in enumerate(M.morphisms)}
    gamma = {(f, i): act.nu[o] for o, (_, i, f) in enumerate(M.objects)}
    return OperadicStructure(W.over, W.lt, fobj, fmor, gamma)


def operadic_to_strict_algebra(S: OperadicStructure) -> TildeDmAlgebra:
    A = lax_to_dm_algebra(S if S.relabel is None else drop_identity_relabel(S))
    if not check_strict(A.act):
        raise ValueError("fibre cardinalities differ from the fibres of the cardinalities")
    return A


def strict_algebra_to_operadic(A: TildeDmAlgebra) -> OperadicStructure:
    if not check_strict(A.act):
        raise ValueError("action is not a strict triangle")
    S = dm_algebra_to_lax(A)
    return OperadicStructure(S.over, S.lt, S.fibre_obj, S.fibre_mor)


def drop_identity_relabel(S: OperadicStructure) -> OperadicStructure:
    if not all(g.is_identity() for g in S.relabel.values()):
        raise ValueError("structure has non-identity relabellings")
    return OperadicStructure(S.over, S.lt, S.fibre_obj, S.fibre_mor)


def is_gamma_trivial(S: OperadicStructure) -> bool:
    return S.relabel is None or all(g.is_identity() for g in S.relabel.values())


def pasting_sides(S: OperadicStructure, x: tuple) -> tuple[int, int]:
    """The two sides of the associativity pasting at ``(X, i, f, j, g)``.

    Returns the objects ``act(D_m(act)(..))`` and ``act(mu(..))``, which are
    ``(g^f_i)^{-1}(gamma j)`` and ``g^{-1}(eps j)``.
    """
    A = lax_to_dm_algebra(S)
    W = A.carrier
    D = dm_object(W)
    DD = dm_object(D)
    X, i, f, j, g = x
    M = D.C
    top = M.obj((X, i, f))
    phi = M.mor((X, i, g, f))
    o = DD.C.obj((top, j, phi))
    left = A.act.after(tilde_dm_mor(A.act, D, W)).functor.obj_map[o]
    right = A.act.after(tilde_dm_mult(W)).functor.obj_map[o]
    return left, right


def strict_morphism_commutes(A: TildeDmAlgebra, A2: TildeDmAlgebra, F: Functor) -> bool:
    """Whether the strict triangle ``(F, 1)`` is a map of algebras."""
    V, V2 = A.carrier.over, A2.carrier.over
    if any(V2.card[F.obj_map[x]] != V.card[x] for x in range(V.C.n_objects)):
        return False
    if any(V2.card_mor[F.mor_map[f]] != V.card_mor[f] for f in range(V.C.n_morphisms)):
        return False
    if not preserves_terminals(F, A.carrier.lt, A2.carrier.lt):
        return False
    T = LaxTriangleMor.strict(V, V2, F)
    return A2.act.after(tilde_dm_mor(T, A.carrier, A2.carrier)) == T.after(A.act)


def lt_over(S: OperadicStructure) -> LtOver:
    return LtOver(S.over, S.lt)


__all__ = [
    "TildeDAlgebra", "TildeDmAlgebra", "Thm1Result", "MutationPair",
    "check_tilde_d_algebra", "unary_to_algebra", "algebra_to_unary", "enumerate_algebras",
    "enumerate_unary_structures", "thm1_check", "mutation_pairs", "algebra_morphism_commutes",
    "check_dm_algebra", "lax_to_dm_algebra", "dm_algebra_to_lax", "operadic_to_strict_algebra",
    "strict_algebra_to_operadic", "drop_identity_relabel", "is_gamma_trivial", "pasting_sides", "strict_morphism_commutes",
    "lt_over",
]
