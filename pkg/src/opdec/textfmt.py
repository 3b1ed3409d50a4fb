"""Line-oriented text format for categories, structures, functors and simplicial sets.

A structure document::

    category arrow
    objects a b
    morphism f : a -> b
    compose g f = h            # every composable non-identity pair
    terminal a = b             # chosen terminal in the component of a
    card a = 2
    cardmap f = [1 1]
    fibre (b,1) f = a
    fibremap (b,1) g f = h
    relabel f 1 = [2 1]

Identities are implicit as ``id_<obj>``; they may be declared to fix their
position.  ``#`` starts a comment.  A document with fibres is an operadic
structure, one with cardinalities an object over the skeleton, otherwise a
category.  Functor documents start with ``functor`` and simplicial ones with
``simplicial``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .fincat import FinCat, Functor, LtObject, check_category
from .moddec import LtOver, OverS, check_over_s
from .operadic import OperadicStructure
from .simplicial import TruncatedSSet
from .sskel import SMap

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


class DocumentError(ValueError):
    """A list of ``(line, message)`` problems found while reading a document."""

    def __init__(self, errors):
        self.errors = sorted(errors)
        super().__init__("\n".join(f"line {n}: {msg}" for n, msg in self.errors))


@dataclass
class Document:
    kind: str
    name: str
    cat: FinCat | None = None
    lt: LtObject | None = None
    over: OverS | None = None
    structure: OperadicStructure | None = None
    functor: Functor | None = None
    nu: list | None = None
    sset: TruncatedSSet | None = None

    @property
    def lt_over(self) -> LtOver:
        return LtOver(self.over, self.lt)


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


_FIBRE = re.compile(r"\(\s*(\S+?)\s*,\s*(\d+)\s*\)\s+(.*)$")


def parse(text: str, base: Path | None = None) -> Document:
    lines = list(_lines(text))
    if not lines:
        raise DocumentError([(0, "empty document")])
    head = lines[0][1].split()
    if head[0] == "functor":
        return _parse_functor(lines, base)
    if head[0] == "simplicial":
        return _parse_simplicial(lines)
    return _parse_structure(lines)


def parse_file(path) -> Document:
    path = Path(path)
    return parse(path.read_text(), base=path.parent)


def _parse_structure(lines) -> Document:
    errors = []
    name = "unnamed"
    objects, arrows, compose = [], [], {}
    terminals, card, cardmap, fibres, fmaps, relabel = [], {}, {}, [], [], []
    for n, line in lines:
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if word == "category":
                name = rest or name
            elif word == "objects":
                for o in rest.split():
                    if not NAME.match(o) or o in objects:
                        raise ValueError(f"bad or repeated object name {o!r}")
                    objects.append(o)
            elif word == "morphism":
                m = re.match(r"(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", rest)
                if not m:
                    raise ValueError("expected 'morphism f : a -> b'")
                arrows.append((n,) + m.groups())
            elif word == "compose":
                m = re.match(r"(\S+)\s+(\S+)\s*=\s*(\S+)$", rest)
                if not m:
                    raise ValueError("expected 'compose g f = h'")
                g, f, h = m.groups()
                if (g, f) in compose:
                    raise ValueError(f"composite {g} {f} given twice")
                compose[(g, f)] = (n, h)
            elif word == "terminal":
                m = re.match(r"(\S+)\s*=\s*(\S+)$", rest)
                if not m:
                    raise ValueError("expected 'terminal <rep> = <obj>'")
                terminals.append((n,) + m.groups())
            elif word == "card":
                m = re.match(r"(\S+)\s*=\s*(\d+)$", rest)
                if not m:
                    raise ValueError("expected 'card <obj> = n'")
                card[m.group(1)] = (n, int(m.group(2)))
            elif word == "cardmap":
                m = re.match(r"(\S+)\s*=\s*(\[.*\])$", rest)
                if not m:
                    raise ValueError("expected 'cardmap <mor> = [..]'")
                cardmap[m.group(1)] = (n, m.group(2))
            elif word == "fibre":
                m = _FIBRE.match(rest)
                m2 = m and re.match(r"(\S+)\s*=\s*(\S+)$", m.group(3))
                if not m2:
                    raise ValueError("expected 'fibre (<obj>,<i>) <mor> = <obj>'")
                fibres.append((n, m.group(1), int(m.group(2))) + m2.groups())
            elif word == "fibremap":
                m = _FIBRE.match(rest)
                m2 = m and re.match(r"(\S+)\s+(\S+)\s*=\s*(\S+)$", m.group(3))
                if not m2:
                    raise ValueError("expected 'fibremap (<obj>,<i>) <mor> <mor> = <mor>'")
                fmaps.append((n, m.group(1), int(m.group(2))) + m2.groups())
            elif word == "relabel":
                m = re.match(r"(\S+)\s+(\d+)\s*=\s*(\[.*\])$", rest)
                if not m:
                    raise ValueError("expected 'relabel <mor> <i> = [..]'")
                relabel.append((n, m.group(1), int(m.group(2)), m.group(3)))
            else:
                raise ValueError(f"unknown declaration {word!r}")
        except ValueError as exc:
            errors.append((n, str(exc)))
    if errors:
        raise DocumentError(errors)

    # morphisms, with identities implicit unless declared
    obj_set = set(objects)
    mor_names, dom, cod = [], {}, {}
    for n, f, a, b in arrows:
        for o in (a, b):
            if o not in obj_set:
                errors.append((n, f"undeclared object {o!r}"))
        if f in dom:
            errors.append((n, f"morphism {f!r} declared twice"))
        if f.startswith("id_") and not (f[3:] == a == b):
            errors.append((n, f"{f!r} is reserved for the identity of {f[3:]!r}"))
        mor_names.append(f)
        dom[f], cod[f] = a, b
    if errors:
        raise DocumentError(errors)
    for o in objects:
        if "id_" + o not in dom:
            mor_names.append("id_" + o)
            dom["id_" + o] = cod["id_" + o] = o
    table = {}
    for (g, f), (n, h) in compose.items():
        for x in (g, f, h):
            if x not in dom:
                errors.append((n, f"undeclared morphism {x!r}"))
        if errors:
            continue
        if cod[f] != dom[g]:
            errors.append((n, f"{g} {f} is not composable"))
        elif dom[h] != dom[f] or cod[h] != cod[g]:
            errors.append((n, f"{h} is not a morphism {dom[f]} -> {cod[g]}"))
        table[(g, f)] = h
    for f in mor_names:
        for g in mor_names:
            if cod[f] != dom[g]:
                continue
            if f.startswith("id_"):
                table.setdefault((g, f), g)
            elif g.startswith("id_"):
                table.setdefault((g, f), f)
            elif (g, f) not in table:
                errors.append((0, f"missing compose entry for {g} {f}"))
    if errors:
        raise DocumentError(errors)
    C = FinCat.from_rules(objects, [(f, dom[f], cod[f]) for f in mor_names],
                          identity=lambda o: "id_" + o, compose=lambda g, f: table[(g, f)])
    r = check_category(C)
    if not r.ok:
        raise DocumentError([(0, "category law: " + s) for s in r.lines()])
    doc = Document("category", name, cat=C)

    if terminals:
        chosen = []
        for n, rep, t in terminals:
            if rep not in obj_set or t not in obj_set:
                errors.append((n, "undeclared object in terminal line"))
                continue
            if C._component_of[C.obj(rep)] != C._component_of[C.obj(t)]:
                errors.append((n, f"{t} is not in the component of {rep}"))
            chosen.append(C.obj(t))
        if errors:
            raise DocumentError(errors)
        try:
            doc.lt = LtObject.choose(C, chosen)
        except ValueError as exc:
            raise DocumentError([(0, str(exc))]) from None

    if card or cardmap or fibres or relabel:
        if not card and (fibres or relabel):
            card = {o: (0, 1) for o in objects}
        for o in objects:
            if o not in card:
                errors.append((0, f"missing card for {o}"))
        for o, (n, _) in card.items():
            if o not in obj_set:
                errors.append((n, f"undeclared object {o!r}"))
        maps = []
        for f in C.morphisms:
            if errors:
                break
            ncod = card[cod[f]][1]
            if f in cardmap:
                n, text = cardmap[f]
                try:
                    phi = SMap.parse(text, ncod)
                except ValueError as exc:
                    errors.append((n, str(exc)))
                    continue
                if phi.m != card[dom[f]][1]:
                    errors.append((n, f"|{f}| must have {card[dom[f]][1]} entries"))
                maps.append(phi)
            elif f.startswith("id_"):
                maps.append(SMap.identity(ncod))
            elif all(card[o][1] == 1 for o in objects):
                maps.append(SMap.identity(1))
            else:
                errors.append((0, f"missing cardmap for {f}"))
        for f, (n, _) in cardmap.items():
            if f not in dom:
                errors.append((n, f"undeclared morphism {f!r}"))
        if errors:
            raise DocumentError(errors)
        V = OverS(C, tuple(card[o][1] for o in objects), tuple(maps))
        r = check_over_s(V)
        if not r.ok:
            raise DocumentError([(0, "cardinality: " + s) for s in r.lines()])
        doc.over, doc.kind = V, "over"

    if fibres or fmaps or relabel:
        if doc.lt is None:
            raise DocumentError([(0, "an operadic structure needs terminal declarations")])
        fobj, fmor, gamma = {}, {}, {}

        def check_index(n, X, i, f):
            if X not in obj_set or f not in dom:
                errors.append((n, "undeclared name"))
                return False
            if cod[f] != X:
                errors.append((n, f"{f} does not land in {X}"))
                return False
            if not 1 <= i <= doc.over.card[C.obj(X)]:
                errors.append((n, f"index {i} outside |{X}|"))
                return False
            return True

        for n, X, i, f, Z in fibres:
            if check_index(n, X, i, f):
                if Z not in obj_set:
                    errors.append((n, f"undeclared object {Z!r}"))
                else:
                    fobj[(C.mor(f), i)] = C.obj(Z)
        for n, X, i, g, f, h in fmaps:
            if check_index(n, X, i, f):
                if g not in dom or h not in dom:
                    errors.append((n, "undeclared morphism"))
                elif cod[g] != dom[f]:
                    errors.append((n, f"{g} does not land in the domain of {f}"))
                else:
                    fmor[(C.mor(g), C.mor(f), i)] = C.mor(h)
        for n, f, i, text in relabel:
            if f not in dom or not check_index(n, cod[f], i, f):
                continue
            key = (C.mor(f), i)
            if key not in fobj:
                errors.append((n, f"relabel of {f} at {i} before its fibre"))
                continue
            try:
                gamma[key] = SMap.parse(text, doc.over.card[fobj[key]])
            except ValueError as exc:
                errors.append((n, str(exc)))
        if errors:
            raise DocumentError(errors)
        doc.structure = OperadicStructure(doc.over, doc.lt, fobj, fmor, gamma or None)
        doc.kind = "operadic"
    return doc


def _parse_functor(lines, base) -> Document:
    errors = []
    name = lines[0][1].partition(" ")[2].strip() or "unnamed"
    paths, objmap, mormap, nu = {}, {}, {}, {}
    for n, line in lines[1:]:
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word in ("source", "target"):
            paths[word] = (n, rest)
        elif word in ("objmap", "mormap"):
            m = re.match(r"(\S+)\s*->\s*(\S+)$", rest)
            if not m:
                errors.append((n, f"expected '{word} x -> y'"))
            else:
                (objmap if word == "objmap" else mormap)[m.group(1)] = (n, m.group(2))
        elif word == "nu":
            m = re.match(r"(\S+)\s*=\s*(\[.*\])$", rest)
            if not m:
                errors.append((n, "expected 'nu <obj> = [..]'"))
            else:
                nu[m.group(1)] = (n, m.group(2))
        else:
            errors.append((n, f"unknown declaration {word!r}"))
    for key in ("source", "target"):
        if key not in paths:
            errors.append((0, f"missing {key} line"))
    if errors:
        raise DocumentError(errors)
    docs = {}
    for key, (n, p) in paths.items():
        path = Path(p) if base is None else base / p
        try:
            docs[key] = parse_file(path)
        except OSError as exc:
            raise DocumentError([(n, f"cannot read {p}: {exc.strerror}")]) from None
    S, T = docs["source"], docs["target"]
    C, D = S.cat, T.cat
    objs, mors = [], []
    for o in C.objects:
        if o not in objmap:
            errors.append((0, f"missing objmap for {o}"))
        elif objmap[o][1] not in D.obj_index:
            errors.append((objmap[o][0], f"unknown target object {objmap[o][1]!r}"))
        else:
            objs.append(D.obj(objmap[o][1]))
    for f in C.morphisms:
        if f in mormap:
            if mormap[f][1] not in D.mor_index:
                errors.append((mormap[f][0], f"unknown target morphism {mormap[f][1]!r}"))
            else:
                mors.append(D.mor(mormap[f][1]))
        elif f.startswith("id_") and f[3:] in objmap:
            mors.append(D.mor("id_" + objmap[f[3:]][1]))
        else:
            errors.append((0, f"missing mormap for {f}"))
    if errors:
        raise DocumentError(errors)
    F = Functor(C, D, objs, mors)
    nus = None
    if nu:
        if S.over is None or T.over is None:
            raise DocumentError([(0, "nu needs cardinalities on both sides")])
        nus = []
        for x, o in enumerate(C.objects):
            if o not in nu:
                errors.append((0, f"missing nu for {o}"))
                continue
            n, text = nu[o]
            try:
                nus.append(SMap.parse(text, T.over.card[objs[x]]))
            except ValueError as exc:
                errors.append((n, str(exc)))
        if errors:
            raise DocumentError(errors)
    doc = Document("functor", name, functor=F, nu=nus)
    doc.source, doc.target = S, T
    return doc


def _parse_simplicial(lines) -> Document:
    errors = []
    name = lines[0][1].partition(" ")[2].strip() or "unnamed"
    levels, faces, degens = {}, {}, {}
    for n, line in lines[1:]:
        word, _, rest = line.partition(" ")
        m_level = re.match(r"(\d+)\s*:\s*(.*)$", rest.strip())
        m_map = re.match(r"(\d+)\s+(\d+)\s+(\S+)\s*=\s*(\S+)$", rest.strip())
        if word == "level" and m_level:
            levels[int(m_level.group(1))] = m_level.group(2).split()
        elif word in ("face", "degen") and m_map:
            k, i, x, y = m_map.groups()
            (faces if word == "face" else degens)[(int(k), int(i), x)] = (n, y)
        else:
            errors.append((n, f"cannot read {line!r}"))
    if errors:
        raise DocumentError(errors)
    K = max(levels, default=-1)
    if sorted(levels) != list(range(K + 1)):
        raise DocumentError([(0, "levels must be 0..K without gaps")])

    def face(k, i, x):
        key = (k, i, x)
        if key not in faces:
            errors.append((0, f"missing face {i} of {x}"))
            return None
        n, y = faces[key]
        if y not in levels[k - 1]:
            errors.append((n, f"{y!r} is not at level {k - 1}"))
        return y

    def degen(k, j, x):
        key = (k, j, x)
        if key not in degens:
            errors.append((0, f"missing degeneracy {j} of {x}"))
            return None
        n, y = degens[key]
        if y not in levels[k + 1]:
            errors.append((n, f"{y!r} is not at level {k + 1}"))
        return y

    X = TruncatedSSet.build([levels[k] for k in range(K + 1)], face,
                            degen if degens else None)
    if errors:
        raise DocumentError(errors)
    return Document("simplicial", name, sset=X)


# -- emitting ---------------------------------------------------------------


def _names(C: FinCat) -> tuple[list[str], list[str]]:
    """Printable names: tags when they are identifiers, generic ones otherwise."""
    otags = [t for t in C.objects]
    if all(isinstance(t, str) and NAME.match(t) for t in otags):
        onames = list(otags)
    else:
        onames = [f"x{i}" for i in range(C.n_objects)]
    nonid = [m for m in range(C.n_morphisms) if not C.is_identity(m)]
    tags = [C.morphisms[m] for m in nonid]
    usable = all(isinstance(t, str) and NAME.match(t) and not t.startswith("id_") for t in tags)
    mnames = [""] * C.n_morphisms
    for k, m in enumerate(nonid):
        mnames[m] = tags[k] if usable else f"f{m}"
    for x in range(C.n_objects):
        mnames[C.identity[x]] = "id_" + onames[x]
    return onames, mnames


def renamed(C: FinCat) -> FinCat:
    """``C`` with the tags a document round trip produces."""
    on, mn = _names(C)
    return FinCat(on, mn, C.dom, C.cod, C.identity, C.comp)


def emit(obj, name: str = "unnamed") -> str:
    """Text for a FinCat, LtObject, OverS, LtOver or OperadicStructure."""
    C, lt, over, S = None, None, None, None
    if isinstance(obj, OperadicStructure):
        S, over, lt, C = obj, obj.over, obj.lt, obj.C
    elif isinstance(obj, LtOver):
        over, lt, C = obj.over, obj.lt, obj.C
    elif isinstance(obj, OverS):
        over, C = obj, obj.C
    elif isinstance(obj, LtObject):
        lt, C = obj, obj.base
    elif isinstance(obj, FinCat):
        C = obj
    else:
        raise TypeError(f"cannot emit {type(obj).__name__}")
    on, mn = _names(C)
    out = [f"category {name}", "objects " + " ".join(on)]
    for m in range(C.n_morphisms):
        out.append(f"morphism {mn[m]} : {on[C.dom[m]]} -> {on[C.cod[m]]}")
    for (g, f), h in sorted(C.comp.items()):
        if not C.is_identity(g) and not C.is_identity(f):
            out.append(f"compose {mn[g]} {mn[f]} = {mn[h]}")
    if lt is not None:
        for t in lt.terminals:
            out.append(f"terminal {on[t]} = {on[t]}")
    if over is not None:
        for x in range(C.n_objects):
            out.append(f"card {on[x]} = {over.card[x]}")
        for m in range(C.n_morphisms):
            if not C.is_identity(m):
                out.append(f"cardmap {mn[m]} = {over.card_mor[m]}")
    if S is not None:
        for f, i in S.fibre_indices():
            out.append(f"fibre ({on[C.cod[f]]},{i}) {mn[f]} = {on[S.fibre_obj[(f, i)]]}")
        for g, f, i in S.fibre_map_indices():
            out.append(f"fibremap ({on[C.cod[f]]},{i}) {mn[g]} {mn[f]} = {mn[S.fibre_mor[(g, f, i)]]}")
        if S.relabel is not None:
            for f, i in S.fibre_indices():
                out.append(f"relabel {mn[f]} {i} = {S.relabel[(f, i)]}")
    return "\n".join(out) + "\n"


def renamed_structure(S: OperadicStructure) -> OperadicStructure:
    """``S`` over the renamed carrier, for comparison with a parsed document."""
    C = renamed(S.C)
    over = OverS(C, S.over.card, S.over.card_mor)
    lt = LtObject.choose(C, S.lt.terminals)
    return OperadicStructure(over, lt, S.fibre_obj, S.fibre_mor, S.relabel)


def _sname(x) -> str:
    return "s" + "_".join(str(v) for v in x) if isinstance(x, tuple) else str(x)


def emit_sset(X: TruncatedSSet, name: str = "unnamed") -> str:
    out = [f"simplicial {name}"]
    for k, lv in enumerate(X.levels):
        out.append(f"level {k} : " + " ".join(_sname(x) for x in lv))
    for k in range(1, X.K + 1):
        for i in range(k + 1):
            for x in X.levels[k]:
                out.append(f"face {k} {i} {_sname(x)} = {_sname(X.d(k, i, x))}")
    if X.degens is not None:
        for k in range(X.K):
            for j in range(k + 1):
                for x in X.levels[k]:
                    out.append(f"degen {k} {j} {_sname(x)} = {_sname(X.s(k, j, x))}")
    return "\n".join(out) + "\n"


def emit_functor(F: Functor, source: str, target: str, name: str = "unnamed",
                 nu=None) -> str:
    son, smn = _names(F.source)
    ton, tmn = _names(F.target)
    out = [f"functor {name}", f"source {source}", f"target {target}"]
    for x in range(F.source.n_objects):
        out.append(f"objmap {son[x]} -> {ton[F.obj_map[x]]}")
    for m in range(F.source.n_morphisms):
        if not F.source.is_identity(m):
            out.append(f"mormap {smn[m]} -> {tmn[F.mor_map[m]]}")
    if nu is not None:
        for x in range(F.source.n_objects):
            out.append(f"nu {son[x]} = {nu[x]}")
    return "\n".join(out) + "\n"
