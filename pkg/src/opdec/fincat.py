"""Finite categories, functors, natural transformations and local terminals.

Objects and morphisms are dense integer indices.  Every index also carries a
hashable *tag*; constructions (slices, décalage, categories of elements, ...)
choose tags that record where each cell came from, so that two constructions
producing "the same" category agree index-for-index and tag-for-tag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .report import Report

Tag = Hashable


class FinCat:
    """A finite category given by an explicit composition table.

    ``comp[(g, f)]`` is ``g ∘ f``.  The constructor does not validate the
    category laws; use :func:`check_category` for that.
    """

    def __init__(self, objects: Sequence[Tag], morphisms: Sequence[Tag],
                 dom: Sequence[int], cod: Sequence[int],
                 identity: Sequence[int], comp: dict[tuple[int, int], int]):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.identity = tuple(identity)
        self.comp = dict(comp)
        if len(self.dom) != len(self.morphisms) or len(self.cod) != len(self.morphisms):
            raise ValueError("dom/cod must have one entry per morphism")
        if len(self.identity) != len(self.objects):
            raise ValueError("identity must have one entry per object")
        self.obj_index = {t: i for i, t in enumerate(self.objects)}
        self.mor_index = {t: i for i, t in enumerate(self.morphisms)}
        if len(self.obj_index) != len(self.objects):
            raise ValueError("object tags must be distinct")
        if len(self.mor_index) != len(self.morphisms):
            raise ValueError("morphism tags must be distinct")

    @classmethod
    def from_rules(cls, objects: Iterable[Tag],
                   arrows: Iterable[tuple[Tag, Tag, Tag]],
                   identity: Callable[[Tag], Tag],
                   compose: Callable[[Tag, Tag], Tag]) -> "FinCat":
        """Build a category from tags.

        ``arrows`` lists ``(tag, source_tag, target_tag)``; ``identity`` and
        ``compose`` act on tags.  Composition is tabulated on every
        composable pair.
        """
        objects = list(objects)
        arrows = list(arrows)
        oi = {t: i for i, t in enumerate(objects)}
        mi = {a[0]: i for i, a in enumerate(arrows)}
        dom = [oi[a[1]] for a in arrows]
        cod = [oi[a[2]] for a in arrows]
        ident = [mi[identity(t)] for t in objects]
        out: list[list[int]] = [[] for _ in objects]
        for m, d in enumerate(dom):
            out[d].append(m)
        comp = {}
        for f, (ftag, _, _) in enumerate(arrows):
            for g in out[cod[f]]:
                htag = compose(arrows[g][0], ftag)
                try:
                    comp[(g, f)] = mi[htag]
                except KeyError:
                    raise ValueError(f"composite {arrows[g][0]!r} o {ftag!r} = {htag!r} "
                                     "is not a declared morphism") from None
        return cls(objects, [a[0] for a in arrows], dom, cod, ident, comp)

    # -- basic queries -----------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def compose(self, g: int, f: int) -> int:
        return self.comp[(g, f)]

    def obj(self, tag: Tag) -> int:
        return self.obj_index[tag]

    def mor(self, tag: Tag) -> int:
        return self.mor_index[tag]

    def is_identity(self, m: int) -> bool:
        return self.identity[self.dom[m]] == m

    @cached_property
    def out_arrows(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.objects]
        for m, d in enumerate(self.dom):
            out[d].append(m)
        return tuple(map(tuple, out))

    @cached_property
    def in_arrows(self) -> tuple[tuple[int, ...], ...]:
        into: list[list[int]] = [[] for _ in self.objects]
        for m, c in enumerate(self.cod):
            into[c].append(m)
        return tuple(map(tuple, into))

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for m in range(self.n_morphisms):
            homs.setdefault((self.dom[m], self.cod[m]), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._homs.get((x, y), ())

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        """All ``(g, f)`` with ``cod f == dom g``."""
        for f in range(self.n_morphisms):
            for g in self.out_arrows[self.cod[f]]:
                yield g, f

    # -- equality ----------------------------------------------------------

    @cached_property
    def _key(self):
        return (self.objects, self.morphisms, self.dom, self.cod, self.identity,
                tuple(sorted(self.comp.items())))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return self._key == other._key

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FinCat({self.n_objects} objects, {self.n_morphisms} morphisms)"

    def retag(self, obj_tag: Callable[[Tag], Tag], mor_tag: Callable[[Tag], Tag]) -> "FinCat":
        """Same category, tags replaced through the given functions."""
        return FinCat([obj_tag(t) for t in self.objects], [mor_tag(t) for t in self.morphisms],
                      self.dom, self.cod, self.identity, self.comp)

    @cached_property
    def _components(self) -> tuple[tuple[int, ...], ...]:
        parent = list(range(self.n_objects))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in range(self.n_morphisms):
            a, b = find(self.dom[m]), find(self.cod[m])
            if a != b:
                parent[max(a, b)] = min(a, b)
        classes: dict[int, list[int]] = {}
        for x in range(self.n_objects):
            classes.setdefault(find(x), []).append(x)
        return tuple(tuple(c) for _, c in sorted(classes.items()))

    @cached_property
    def _component_of(self) -> tuple[int, ...]:
        out = [0] * self.n_objects
        for k, comp in enumerate(self._components):
            for x in comp:
                out[x] = k
        return tuple(out)


def check_category(C: FinCat) -> Report:
    """Every violated category law, in a deterministic order."""
    r = Report()
    n = C.n_morphisms
    for x, i in enumerate(C.identity):
        if not 0 <= i < n or C.dom[i] != x or C.cod[i] != x:
            r.add("identity.type", (x,), "identity is not an endomorphism of its object")
    for (g, f), h in sorted(C.comp.items()):
        if C.cod[f] != C.dom[g]:
            r.add("compose.domain", (g, f), "composite recorded for a non-composable pair")
        elif C.dom[h] != C.dom[f] or C.cod[h] != C.cod[g]:
            r.add("compose.endpoints", (g, f), f"composite {h} has the wrong endpoints")
    for g, f in C.composable_pairs():
        if (g, f) not in C.comp:
            r.add("compose.total", (g, f), "missing composite")
    if not r.ok and r.failed("identity"):
        return r

    def well_typed(g, f):
        h = C.comp.get((g, f))
        return h is not None and C.dom[h] == C.dom[f] and C.cod[h] == C.cod[g]

    for f in range(n):
        left = C.comp.get((C.identity[C.cod[f]], f))
        if left is not None and left != f:
            r.add("unit", (f, "left"), f"id o {f} = {left}")
        right = C.comp.get((f, C.identity[C.dom[f]]))
        if right is not None and right != f:
            r.add("unit", (f, "right"), f"{f} o id = {right}")
    for g, f in C.composable_pairs():
        if not well_typed(g, f):
            continue
        gf = C.comp[(g, f)]
        for h in C.out_arrows[C.cod[g]]:
            if not well_typed(h, g) or not well_typed(h, gf):
                continue
            hg = C.comp[(h, g)]
            if not well_typed(hg, f):
                continue
            if C.comp[(h, gf)] != C.comp[(hg, f)]:
                r.add("assoc", (h, g, f))
    return r


def connected_components(C: FinCat) -> tuple[tuple[int, ...], ...]:
    """Partition of the objects into connected components, ordered by least element."""
    return C._components


def component_of(C: FinCat) -> tuple[int, ...]:
    return C._component_of


# -- functors and natural transformations ------------------------------------


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCat
    target: FinCat
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "obj_map", tuple(self.obj_map))
        object.__setattr__(self, "mor_map", tuple(self.mor_map))
        if len(self.obj_map) != self.source.n_objects or len(self.mor_map) != self.source.n_morphisms:
            raise ValueError("functor maps must be total on the source")

    @classmethod
    def identity(cls, C: FinCat) -> "Functor":
        return cls(C, C, range(C.n_objects), range(C.n_morphisms))

    def ob(self, x: int) -> int:
        return self.obj_map[x]

    def mo(self, m: int) -> int:
        return self.mor_map[m]

    def compose(self, other: "Functor") -> "Functor":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("functors are not composable")
        return Functor(other.source, self.target,
                       [self.obj_map[x] for x in other.obj_map],
                       [self.mor_map[m] for m in other.mor_map])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.obj_map == other.obj_map and self.mor_map == other.mor_map
                and self.source == other.source and self.target == other.target)

    def __hash__(self) -> int:
        return hash((self.obj_map, self.mor_map))

    def __repr__(self) -> str:
        return f"Functor(obj={self.obj_map}, mor={self.mor_map})"


def functor_equal(F: Functor, G: Functor) -> bool:
    """On-the-nose equality: same endpoints, same object and morphism maps."""
    return F == G


def check_functor(F: Functor) -> Report:
    r = Report()
    C, D = F.source, F.target
    for x, y in enumerate(F.obj_map):
        if not 0 <= y < D.n_objects:
            r.add("functor.range", ("object", x))
    for m, n in enumerate(F.mor_map):
        if not 0 <= n < D.n_morphisms:
            r.add("functor.range", ("morphism", m))
    if not r.ok:
        return r
    for m, n in enumerate(F.mor_map):
        if D.dom[n] != F.obj_map[C.dom[m]]:
            r.add("functor.dom", (m,), f"dom F({m}) != F(dom {m})")
        if D.cod[n] != F.obj_map[C.cod[m]]:
            r.add("functor.cod", (m,), f"cod F({m}) != F(cod {m})")
    for x in range(C.n_objects):
        if F.mor_map[C.identity[x]] != D.identity[F.obj_map[x]]:
            r.add("functor.identity", (x,))
    for (g, f), h in sorted(C.comp.items()):
        Fg, Ff = F.mor_map[g], F.mor_map[f]
        if D.comp.get((Fg, Ff)) != F.mor_map[h]:
            r.add("functor.compose", (g, f))
    return r


@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: tuple[int, ...]


def check_nat_trans(a: NatTrans) -> Report:
    r = Report()
    F, G = a.source, a.target
    if F.source != G.source or F.target != G.target:
        r.add("nat.endpoints", (), "functors are not parallel")
        return r
    C, D = F.source, F.target
    for x, c in enumerate(a.components):
        if D.dom[c] != F.obj_map[x] or D.cod[c] != G.obj_map[x]:
            r.add("nat.component", (x,))
    if not r.ok:
        return r
    for m in range(C.n_morphisms):
        y, x = C.dom[m], C.cod[m]
        lhs = D.comp[(a.components[x], F.mor_map[m])]
        rhs = D.comp[(G.mor_map[m], a.components[y])]
        if lhs != rhs:
            r.add("nat.naturality", (m,))
    return r


def iter_functors(src: FinCat, tgt: FinCat,
                  obj_candidates: Callable[[int], Iterable[int]] | None = None,
                  mor_candidates: Callable[[int], Iterable[int]] | None = None,
                  ) -> Iterator[Functor]:
    """Exhaustive backtracking search over functors ``src -> tgt``.

    Optional callbacks restrict the allowed image of each object/morphism.
    Identities are forced; composites are checked as soon as all three
    morphisms of a composable pair are assigned.
    """
    n_obj = src.n_objects
    obj_cands = [list(obj_candidates(x)) if obj_candidates else list(range(tgt.n_objects))
                 for x in range(n_obj)]
    nonid = [m for m in range(src.n_morphisms) if not src.is_identity(m)]
    pos = {m: k for k, m in enumerate(nonid)}
    # A composite constraint fires once its last non-identity member is assigned.
    checks: list[list[tuple[int, int, int]]] = [[] for _ in nonid]
    for (g, f), h in src.comp.items():
        members = [pos[m] for m in (g, f, h) if m in pos]
        if members:
            checks[max(members)].append((g, f, h))
    mor_cands = None
    if mor_candidates is not None:
        mor_cands = {m: set(mor_candidates(m)) for m in nonid}
    # object-phase pruning: every morphism needs a nonempty hom
    edges_at: list[list[int]] = [[] for _ in range(n_obj)]
    for m in nonid:
        edges_at[max(src.dom[m], src.cod[m])].append(m)

    obj_map = [0] * n_obj
    mor_map = [0] * src.n_morphisms

    def assign_mor(k: int) -> Iterator[Functor]:
        if k == len(nonid):
            yield Functor(src, tgt, obj_map, mor_map)
            return
        m = nonid[k]
        options = tgt.hom(obj_map[src.dom[m]], obj_map[src.cod[m]])
        if mor_cands is not None:
            options = [o for o in options if o in mor_cands[m]]
        for n in options:
            mor_map[m] = n
            if all(tgt.comp.get((mor_map[g], mor_map[f])) == mor_map[h]
                   for g, f, h in checks[k]):
                yield from assign_mor(k + 1)

    def assign_obj(x: int) -> Iterator[Functor]:
        if x == n_obj:
            for y in range(n_obj):
                mor_map[src.identity[y]] = tgt.identity[obj_map[y]]
            yield from assign_mor(0)
            return
        for y in obj_cands[x]:
            obj_map[x] = y
            if all(tgt.hom(obj_map[src.dom[m]], obj_map[src.cod[m]]) for m in edges_at[x]):
                yield from assign_obj(x + 1)

    yield from assign_obj(0)


def find_isomorphism(C: FinCat, D: FinCat) -> Functor | None:
    """Some isomorphism ``C -> D``, or None.  Diagnostic only."""
    if C.n_objects != D.n_objects or C.n_morphisms != D.n_morphisms:
        return None
    for F in iter_functors(C, D):
        if len(set(F.obj_map)) == D.n_objects and len(set(F.mor_map)) == D.n_morphisms:
            return F
    return None


# -- local terminal objects --------------------------------------------------


def is_terminal_in_component(C: FinCat, t: int) -> bool:
    comp = C._components[C._component_of[t]]
    return all(len(C.hom(y, t)) == 1 for y in comp)


@dataclass(frozen=True, eq=False)
class LtObject:
    """A category with one chosen terminal object per connected component."""

    base: FinCat
    terminals: tuple[int, ...]
    u: tuple[int, ...]
    tau: tuple[int, ...]

    @classmethod
    def choose(cls, C: FinCat, terminals: Iterable[int]) -> "LtObject":
        terminals = tuple(sorted(set(terminals)))
        comp_of = C._component_of
        chosen: dict[int, int] = {}
        for t in terminals:
            if comp_of[t] in chosen:
                raise ValueError(f"two chosen terminals in the component of {t}")
            chosen[comp_of[t]] = t
        if len(chosen) != len(C._components):
            raise ValueError("every component needs a chosen terminal")
        u = tuple(chosen[comp_of[x]] for x in range(C.n_objects))
        tau = []
        for x in range(C.n_objects):
            maps = C.hom(x, u[x])
            if len(maps) != 1:
                raise ValueError(f"object {u[x]} is not terminal for {x}")
            tau.append(maps[0])
        return cls(C, terminals, u, tuple(tau))

    def is_chosen(self, x: int) -> bool:
        return self.u[x] == x

    def __eq__(self, other) -> bool:
        if not isinstance(other, LtObject):
            return NotImplemented
        return self.terminals == other.terminals and self.base == other.base

    def __hash__(self) -> int:
        return hash(self.terminals)

    def __repr__(self) -> str:
        return f"LtObject({self.base!r}, terminals={self.terminals})"


def check_lt(L: LtObject) -> Report:
    r = Report()
    C = L.base
    for x in range(C.n_objects):
        if C._component_of[L.u[x]] != C._component_of[x]:
            r.add("lt.component", (x,))
        elif not is_terminal_in_component(C, L.u[x]):
            r.add("lt.terminal", (L.u[x],))
        if C.dom[L.tau[x]] != x or C.cod[L.tau[x]] != L.u[x]:
            r.add("lt.tau", (x,))
    for t in L.terminals:
        if L.tau[t] != C.identity[t]:
            r.add("lt.tau_identity", (t,))
    return r


def local_terminal_choices(C: FinCat) -> list[LtObject]:
    per_component = [[t for t in comp if is_terminal_in_component(C, t)]
                     for comp in C._components]
    return [LtObject.choose(C, pick) for pick in itertools.product(*per_component)]


def preserves_terminals(F: Functor, L: LtObject, L2: LtObject) -> bool:
    return all(L2.is_chosen(F.obj_map[t]) for t in L.terminals)


# -- slices and coproducts ---------------------------------------------------


def slice_category(C: FinCat, X: int) -> tuple[FinCat, Functor]:
    """The slice ``C/X`` and its domain projection.

    Objects are tagged by the underlying arrow ``f`` into ``X``; the triangle
    ``g : f∘g -> f`` is tagged ``(g, f)``.
    """
    objs = list(C.in_arrows[X])
    arrows = []
    for f in objs:
        for g in C.in_arrows[C.dom[f]]:
            arrows.append(((g, f), C.comp[(f, g)], f))
    S = FinCat.from_rules(objs, arrows,
                          identity=lambda f: (C.identity[C.dom[f]], f),
                          compose=lambda b, a: (C.comp[(b[0], a[0])], b[1]))
    proj = Functor(S, C, [C.dom[f] for f in S.objects], [t[0] for t in S.morphisms])
    return S, proj


def coproduct(parts: Sequence[FinCat]) -> tuple[FinCat, list[Functor]]:
    """Disjoint union; cells of part ``k`` are tagged ``(k, tag)``."""
    objects, morphisms, dom, cod, ident, comp = [], [], [], [], [], {}
    offsets = []
    for k, P in enumerate(parts):
        oo, mo = len(objects), len(morphisms)
        offsets.append((oo, mo))
        objects.extend((k, t) for t in P.objects)
        morphisms.extend((k, t) for t in P.morphisms)
        dom.extend(d + oo for d in P.dom)
        cod.extend(c + oo for c in P.cod)
        ident.extend(i + mo for i in P.identity)
        comp.update({(g + mo, f + mo): h + mo for (g, f), h in P.comp.items()})
    S = FinCat(objects, morphisms, dom, cod, ident, comp)
    inj = [Functor(P, S, [x + oo for x in range(P.n_objects)], [m + mo for m in range(P.n_morphisms)])
           for P, (oo, mo) in zip(parts, offsets)]
    return S, inj


def full_subcategory(C: FinCat, objs: Iterable[int]) -> tuple[FinCat, Functor]:
    objs = sorted(set(objs))
    keep = set(objs)
    mors = [m for m in range(C.n_morphisms) if C.dom[m] in keep and C.cod[m] in keep]
    S = FinCat.from_rules([C.objects[x] for x in objs],
                          [(C.morphisms[m], C.objects[C.dom[m]], C.objects[C.cod[m]]) for m in mors],
                          identity=lambda t: C.morphisms[C.identity[C.obj(t)]],
                          compose=lambda g, f: C.morphisms[C.comp[(C.mor(g), C.mor(f))]])
    incl = Functor(S, C, [C.obj(t) for t in S.objects], [C.mor(t) for t in S.morphisms])
    return S, incl


# -- small named categories --------------------------------------------------


def _free_rules(objects, arrows):
    """Categories whose only composites involve an identity."""
    ids = {o: f"id_{o}" for o in objects}
    all_arrows = [(ids[o], o, o) for o in objects] + list(arrows)

    def compose(g, f):
        if g.startswith("id_"):
            return f
        if f.startswith("id_"):
            return g
        raise ValueError(f"{g} o {f} is not defined")

    return FinCat.from_rules(objects, all_arrows, identity=ids.__getitem__, compose=compose)


def terminal_category() -> FinCat:
    return _free_rules(["t"], [])


def arrow_category() -> FinCat:
    """The walking arrow ``a --f--> b``."""
    return _free_rules(["a", "b"], [("f", "a", "b")])


def discrete_category(n: int) -> FinCat:
    return _free_rules([f"x{i}" for i in range(n)], [])


def parallel_pair() -> FinCat:
    return _free_rules(["a", "b"], [("f", "a", "b"), ("g", "a", "b")])


def empty_category() -> FinCat:
    return FinCat([], [], [], [], [], {})
