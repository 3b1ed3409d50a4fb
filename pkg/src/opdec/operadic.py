"""Operadic, unary operadic and lax-operadic structures on finite categories.

Fibres are stored as total tables keyed by morphism indices:

* ``fibre_obj[(f, i)]`` is the object ``f^{-1}(i)`` for ``f : Y -> X`` and
  ``i`` in ``1..|X|``;
* ``fibre_mor[(g, f, i)]`` is the fibre map ``g^f_i : (fg)^{-1}(i) -> f^{-1}(i)``;
* ``relabel[(f, i)]`` is the relabelling ``|f|^{-1}(i) -> |f^{-1}(i)|``
  (lax structures only).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .fincat import FinCat, Functor, LtObject, check_functor, check_lt, preserves_terminals
from .moddec import LaxTriangleMor, OverS, check_lax_triangle, check_over_s
from .report import Report
from .sskel import SMap, fibre, fibre_map


@dataclass(frozen=True)
class OperadicStructure:
    over: OverS
    lt: LtObject
    fibre_obj: dict = field(hash=False)
    fibre_mor: dict = field(hash=False)
    relabel: dict | None = field(default=None, hash=False)

    @property
    def C(self) -> FinCat:
        return self.over.C

    def card(self, x: int) -> int:
        return self.over.card[x]

    def card_of(self, f: int) -> SMap:
        return self.over.card_mor[f]

    def is_strict(self) -> bool:
        return self.relabel is None

    def fibre_indices(self):
        """All ``(f, i)`` with ``i`` in ``|cod f|``, in lexicographic order."""
        C = self.C
        for f in range(C.n_morphisms):
            for i in range(1, self.card(C.cod[f]) + 1):
                yield f, i

    def fibre_map_indices(self):
        C = self.C
        for f, i in self.fibre_indices():
            for g in C.in_arrows[C.dom[f]]:
                yield g, f, i

    def with_identity_relabel(self) -> "OperadicStructure":
        gamma = {(f, i): SMap.identity(fibre(self.card_of(f), i).k)
                 for f, i in self.fibre_indices()}
        return replace(self, relabel=gamma)

    def gamma(self, f: int, i: int) -> SMap:
        if self.relabel is None:
            return SMap.identity(fibre(self.card_of(f), i).k)
        return self.relabel[(f, i)]


def _check_data(S: OperadicStructure, r: Report) -> None:
    C = S.C
    for v in check_over_s(S.over):
        r.add("type." + v.law, v.witness, v.message)
    for v in check_lt(S.lt):
        r.add("type." + v.law, v.witness, v.message)
    if S.lt.base != C:
        r.add("type.lt", (), "local terminals are chosen in another category")
    if not r.ok:
        return
    for f, i in S.fibre_indices():
        if (f, i) not in S.fibre_obj:
            r.add("type.fibre_obj", (f, i), "missing fibre")
    for g, f, i in S.fibre_map_indices():
        key = (g, f, i)
        if key not in S.fibre_mor:
            r.add("type.fibre_mor", key, "missing fibre map")
            continue
        fg = C.comp[(f, g)]
        m = S.fibre_mor[key]
        src, tgt = S.fibre_obj.get((fg, i)), S.fibre_obj.get((f, i))
        if not 0 <= m < C.n_morphisms or C.dom[m] != src or C.cod[m] != tgt:
            r.add("type.fibre_mor", key, f"fibre map {m} is not {src} -> {tgt}")


def _check_d3(S: OperadicStructure, r: Report) -> None:
    """Each fibre functor preserves identities and composites."""
    C = S.C
    for f, i in S.fibre_indices():
        idm = C.identity[C.dom[f]]
        if S.fibre_mor[(idm, f, i)] != C.identity[S.fibre_obj[(f, i)]]:
            r.add("D3.identity", (f, i))
    for g, f, i in S.fibre_map_indices():
        fg = C.comp[(f, g)]
        for h in C.in_arrows[C.dom[g]]:
            lhs = S.fibre_mor[(C.comp[(g, h)], f, i)]
            rhs = C.comp[(S.fibre_mor[(g, f, i)], S.fibre_mor[(h, fg, i)])]
            if lhs != rhs:
                r.add("D3.compose", (h, g, f, i))


def _check_common(S: OperadicStructure, r: Report) -> bool:
    _check_data(S, r)
    if not r.ok:
        return False
    _check_d3(S, r)
    C = S.C
    for t in S.lt.terminals:
        if S.card(t) != 1:
            r.add("A1", (t,), f"|{C.objects[t]}| = {S.card(t)}")
    for x in range(C.n_objects):
        for i in range(1, S.card(x) + 1):
            o = S.fibre_obj[(C.identity[x], i)]
            if o not in S.lt.terminals:
                r.add("A2", (x, i), f"fibre {o} of the identity is not chosen terminal")
    for x in range(C.n_objects):
        t = S.lt.tau[x]
        if S.card(S.lt.u[x]) < 1:
            continue
        if S.fibre_obj[(t, 1)] != x:
            r.add("A4.obj", (x,), f"tau^-1(*) = {S.fibre_obj[(t, 1)]}")
        for f in C.in_arrows[x]:
            if S.fibre_mor[(f, t, 1)] != f:
                r.add("A4.mor", (f,))
    return True


def check_operadic(S: OperadicStructure) -> Report:
    """All operadic axioms; ``S.relabel`` is ignored."""
    r = Report()
    if not _check_common(S, r):
        return r
    C = S.C
    for f, i in S.fibre_indices():
        if S.card(S.fibre_obj[(f, i)]) != fibre(S.card_of(f), i).k:
            r.add("A3.obj", (f, i))
    for g, f, i in S.fibre_map_indices():
        if S.card_of(S.fibre_mor[(g, f, i)]) != fibre_map(S.card_of(g), S.card_of(f), i):
            r.add("A3.mor", (g, f, i))
    for g, f, i in S.fibre_map_indices():
        fd = fibre(S.card_of(f), i)
        gf = S.fibre_mor[(g, f, i)]
        fg = C.comp[(f, g)]
        for j in range(1, min(fd.k, S.card(C.cod[gf])) + 1):
            e = fd.eps(j)
            if e > S.card(C.cod[g]):
                continue
            if S.fibre_obj[(gf, j)] != S.fibre_obj[(g, e)]:
                r.add("A5.obj", (g, f, i, j))
            for h in C.in_arrows[C.dom[g]]:
                inner = S.fibre_mor[(h, fg, i)]
                if S.fibre_mor.get((inner, gf, j)) != S.fibre_mor[(h, g, e)]:
                    r.add("A5.mor", (h, g, f, i, j))
    return r


def check_unary(S: OperadicStructure) -> bool:
    return all(n == 1 for n in S.over.card)


def gamma_bar(S: OperadicStructure, f: int, g: int, i: int, j: int) -> SMap:
    """The unique ``(|g|^{|f|}_i)^{-1}(j) -> |g^f_i|^{-1}(gamma j)`` over ``gamma_{fg,i}``."""
    C = S.C
    fg = C.comp[(f, g)]
    psi = fibre_map(S.card_of(g), S.card_of(f), i)
    down = S.gamma(fg, i).after(fibre(psi, j).eps)
    gj = S.gamma(f, i)(j)
    right = fibre(S.card_of(S.fibre_mor[(g, f, i)]), gj).eps
    pos = {v: k for k, v in enumerate(right.values, 1)}
    try:
        return SMap(down.m, right.m, tuple(pos[v] for v in down.values))
    except KeyError:
        raise ValueError(f"no factorization for gamma at f={f}, g={g}, i={i}, j={j}") from None


def check_lax_operadic(S: OperadicStructure) -> Report:
    """Lax axioms; a structure without relabelling is read with identities."""
    if S.relabel is None:
        S = S.with_identity_relabel()
    r = Report()
    if not _check_common(S, r):
        return r
    C = S.C
    for f, i in S.fibre_indices():
        gam = S.relabel.get((f, i))
        k = fibre(S.card_of(f), i).k
        if gam is None or gam.m != k or gam.n != S.card(S.fibre_obj[(f, i)]):
            r.add("gamma.type", (f, i))
    if not r.ok:
        return r
    lax3_ok = set()
    for g, f, i in S.fibre_map_indices():
        fg = C.comp[(f, g)]
        lhs = S.card_of(S.fibre_mor[(g, f, i)]).after(S.gamma(fg, i))
        rhs = S.gamma(f, i).after(fibre_map(S.card_of(g), S.card_of(f), i))
        if lhs != rhs:
            r.add("A3lax", (g, f, i))
        else:
            lax3_ok.add((g, f, i))
    for g, f, i in S.fibre_map_indices():
        fd = fibre(S.card_of(f), i)
        gf = S.fibre_mor[(g, f, i)]
        fg = C.comp[(f, g)]
        for j in range(1, fd.k + 1):
            e, gj = fd.eps(j), S.gamma(f, i)(j)
            if S.fibre_obj[(gf, gj)] != S.fibre_obj[(g, e)]:
                r.add("A5lax.a", (g, f, i, j))
            elif (g, f, i) in lax3_ok:
                gb = gamma_bar(S, f, g, i, j)
                if S.gamma(gf, gj).after(gb) != S.gamma(g, e):
                    r.add("A5lax.b", (g, f, i, j), "relabelling square does not commute")
            for h in C.in_arrows[C.dom[g]]:
                inner = S.fibre_mor[(h, fg, i)]
                if S.fibre_mor.get((inner, gf, gj)) != S.fibre_mor[(h, g, e)]:
                    r.add("A5lax.c", (h, g, f, i, j))
    return r


def check_operadic_functor(S: OperadicStructure, S2: OperadicStructure, F: Functor,
                           nu=None) -> Report:
    """Strict operadic functor when ``nu`` is None, lax-operadic otherwise."""
    r = Report()
    if F.source != S.C or F.target != S2.C:
        r.add("functor.endpoints", (), "functor is not between the given structures")
        return r
    r.extend(check_functor(F))
    if not r.ok:
        return r
    if not preserves_terminals(F, S.lt, S2.lt):
        r.add("functor.terminals", ())
    C = S.C
    if nu is None:
        for x in range(C.n_objects):
            if S2.card(F.obj_map[x]) != S.card(x):
                r.add("functor.card", (x,))
        for f in range(C.n_morphisms):
            if S2.card_of(F.mor_map[f]) != S.card_of(f):
                r.add("functor.card", (f,))
        if not r.ok:
            return r
        nu = [SMap.identity(n) for n in S.over.card]
    else:
        for v in check_lax_triangle(LaxTriangleMor(S.over, S2.over, F, nu)):
            r.add("functor.nu", v.witness, v.law)
        if not r.ok:
            return r
    for f, i in S.fibre_indices():
        i2 = nu[C.cod[f]](i)
        if F.obj_map[S.fibre_obj[(f, i)]] != S2.fibre_obj[(F.mor_map[f], i2)]:
            r.add("functor.fibre_obj", (f, i))
    for g, f, i in S.fibre_map_indices():
        i2 = nu[C.cod[f]](i)
        if F.mor_map[S.fibre_mor[(g, f, i)]] != S2.fibre_mor[(F.mor_map[g], F.mor_map[f], i2)]:
            r.add("functor.fibre_mor", (g, f, i))
    return r


def transport(S: OperadicStructure, perms) -> tuple[OperadicStructure, LaxTriangleMor]:
    """Conjugate ``S`` by bijections ``perms[X]`` of each ``|X|``.

    The new cardinality is ``pi_X ∘ |f| ∘ pi_Y^{-1}``, the fibre at ``i`` is
    the old fibre at ``pi_X^{-1}(i)`` and relabellings absorb the
    permutations.  Returns the new structure and the comparison triangle
    ``(id, pi)`` from the old cardinality to the new one.
    """
    C = S.C
    perms = [p if isinstance(p, SMap) else SMap.of(p, len(p)) for p in perms]
    for x, p in enumerate(perms):
        if not p.is_bijection() or p.m != S.card(x):
            raise ValueError(f"perms[{x}] is not a permutation of |{x}|")
    for t in S.lt.terminals:
        if not perms[t].is_identity():
            raise ValueError("permutations must fix chosen terminals")
    inv = [p.inverse() for p in perms]
    card_mor = [perms[C.cod[f]].after(S.card_of(f)).after(inv[C.dom[f]])
                for f in range(C.n_morphisms)]
    over = OverS(C, S.over.card, card_mor)
    fobj, fmor, gamma = {}, {}, {}
    for f, i in S.fibre_indices():
        i0 = inv[C.cod[f]](i)
        z = S.fibre_obj[(f, i0)]
        fobj[(f, i)] = z
        old = fibre(S.card_of(f), i0).eps
        pos = {v: k for k, v in enumerate(old.values, 1)}
        new = fibre(card_mor[f], i).eps
        vals = [perms[z](S.gamma(f, i0)(pos[inv[C.dom[f]](v)])) for v in new.values]
        gamma[(f, i)] = SMap.of(vals, S.card(z))
        for g in C.in_arrows[C.dom[f]]:
            fmor[(g, f, i)] = S.fibre_mor[(g, f, i0)]
    S2 = OperadicStructure(over, S.lt, fobj, fmor, gamma)
    theta = LaxTriangleMor(S.over, over, Functor.identity(C), perms)
    return S2, theta
