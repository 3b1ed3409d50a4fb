"""Command-line front end.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
bad input or an exceeded bound.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import correspond as cor
from .corpus import build_corpus, exhaustive_subcorpus
from .decalage import check_comonad_laws, check_monad_laws
from .fincat import check_category, check_functor, check_lt, local_terminal_choices
from .moddec import (check_dm_monad_laws, elements, has_finite_fibres, is_discrete_opfib,
                     is_pi0_bijective, is_pi0_cartesian, pi0_factorize)
from .operadic import check_lax_operadic, check_operadic, check_unary
from .simplicial import check_simplicial_identities, dec_ss, nerve, segal_witness, undeck
from .sskel import s_operadic
from .textfmt import DocumentError, emit, emit_sset, parse_file
from . import examples as ex

PASS, FAIL, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _report(out, title, report) -> bool:
    if report.ok:
        out.append(f"{title}: ok")
    else:
        out.append(f"{title}: {len(report)} violation(s)")
        out.extend("  " + line for line in report.lines())
    return report.ok


def _load(path, *kinds):
    doc = parse_file(path)
    if kinds and doc.kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc


def _within(C, args):
    if C.n_objects > args.bound_objects or C.n_morphisms > args.bound_morphisms:
        raise InputError(f"category with {C.n_objects} objects and {C.n_morphisms} morphisms "
                         f"exceeds the bounds ({args.bound_objects}, {args.bound_morphisms})")


def _card_within(V, args):
    if V is not None and max(V.card, default=0) > args.bound_card:
        raise InputError(f"cardinality {max(V.card)} exceeds the bound {args.bound_card}")


def cmd_check(args, out) -> bool:
    doc = _load(args.file)
    if doc.kind == "functor":
        return _report(out, "functor laws", check_functor(doc.functor))
    if doc.kind == "simplicial":
        return _report(out, "simplicial identities", check_simplicial_identities(doc.sset))
    ok = _report(out, "category laws", check_category(doc.cat))
    if doc.lt is not None:
        ok &= _report(out, "local terminals", check_lt(doc.lt))
    return ok


def cmd_operadic(args, out) -> bool:
    doc = _load(args.file, "operadic")
    ok = _report(out, "operadic axioms", check_operadic(doc.structure))
    out.append(f"unary: {'yes' if check_unary(doc.structure) else 'no'}")
    return ok


def cmd_lax(args, out) -> bool:
    doc = _load(args.file, "operadic")
    return _report(out, "lax-operadic axioms", check_lax_operadic(doc.structure))


def _categories(args):
    if args.file:
        return [(args.file, _load(args.file).cat)]
    corpus = build_corpus(seed=args.corpus_seed)
    return [(s.name, s.cat) for s in corpus]


def cmd_comonad(args, out) -> bool:
    ok = True
    for name, C in _categories(args):
        ok &= _report(out, f"comonad laws on {name}", check_comonad_laws(C))
    return ok


def cmd_monad(args, out) -> bool:
    doc = _load(args.file)
    if doc.lt is None:
        raise InputError("the monad check needs terminal declarations")
    ok = _report(out, "lifted décalage monad", check_monad_laws(doc.lt))
    if doc.over is not None:
        _card_within(doc.over, args)
        ok &= _report(out, "modified décalage monad", check_dm_monad_laws(doc.lt_over))
    return ok


def _lt_objects(args):
    if args.file:
        doc = _load(args.file)
        _within(doc.cat, args)
        if doc.lt is not None:
            return [(args.file, doc.lt)]
        return [(f"{args.file}#{k}", L) for k, L in enumerate(local_terminal_choices(doc.cat))]
    corpus = build_corpus(seed=args.corpus_seed)
    sub = exhaustive_subcorpus(corpus, args.bound_objects, args.bound_morphisms)
    return [(f"{s.name}#{k}", L) for s in sub for k, L in enumerate(local_terminal_choices(s.cat))]


def cmd_thm1(args, out) -> bool:
    ok = True
    for name, L in _lt_objects(args):
        r = cor.thm1_check(L)
        good = r.bijective and r.roundtrip
        ok &= good
        out.append(f"{name}: unary={r.n_unary} algebras={r.n_algebras} "
                   f"bijection={'yes' if r.bijective else 'no'} "
                   f"roundtrip={'yes' if r.roundtrip else 'no'}")
    out.append(f"thm1: {'ok' if ok else 'FAILED'}")
    return ok


def cmd_thm2(args, out) -> bool:
    S = _load(args.file, "operadic").structure
    _card_within(S.over, args)
    r = check_lax_operadic(S)
    A = cor.lax_to_dm_algebra(S)
    laws = cor.check_dm_algebra(A)
    back = cor.dm_algebra_to_lax(A) == (S if S.relabel is not None else S.with_identity_relabel())
    _report(out, "lax-operadic axioms", r)
    _report(out, "algebra laws", laws)
    agree = r.ok == laws.ok
    out.append(f"roundtrip: {'ok' if back else 'FAILED'}")
    out.append(f"axioms and laws agree: {'yes' if agree else 'no'}")
    return r.ok and laws.ok and back and agree


def cmd_thm4(args, out) -> bool:
    S = _load(args.file, "operadic").structure
    ok = _report(out, "operadic axioms", check_operadic(S))
    if not ok:
        return False
    A = cor.operadic_to_strict_algebra(S)
    laws = cor.check_dm_algebra(A)
    back = cor.strict_algebra_to_operadic(A)
    same = back == (S if S.relabel is None else cor.drop_identity_relabel(S))
    ok &= _report(out, "algebra laws", laws)
    out.append("action strict: yes")
    out.append(f"roundtrip: {'ok' if same else 'FAILED'}")
    return ok and same


def cmd_undeck(args, out) -> bool:
    S = _load(args.file, "operadic").structure
    if not check_unary(S):
        raise InputError("undecking needs a unary structure")
    U = undeck(S)
    out.append(emit_sset(U, "undeck").rstrip("\n"))
    ok = _report(out, "simplicial identities", check_simplicial_identities(U))
    D = dec_ss(U)
    w = segal_witness(D)
    out.append(f"segal of the décalage: {'ok' if w is None else w}")
    same = D.truncate(2) == nerve(S.C, 2)
    out.append(f"décalage equals nerve up to level 2: {'yes' if same else 'no'}")
    return ok and w is None and same


def cmd_segal(args, out) -> bool:
    doc = _load(args.file)
    if doc.kind == "simplicial":
        X = doc.sset
    elif doc.kind == "operadic":
        X = dec_ss(undeck(doc.structure))
    else:
        X = nerve(doc.cat, args.truncation)
    if X.K < 2:
        raise InputError("the Segal check needs truncation at least 2")
    w = segal_witness(X)
    if w is None:
        out.append("segal: ok")
        return True
    n, kind, data = w
    out.append(f"segal: fails at level {n} ({kind}) witness {data!r}")
    return False


def cmd_factorize(args, out) -> bool:
    doc = _load(args.file, "functor")
    L, R = pi0_factorize(doc.functor)
    M = L.target
    out.append(f"middle: {M.n_objects} objects, {M.n_morphisms} morphisms")
    checks = [("R o L = P", R.compose(L) == doc.functor),
              ("L pi0-bijective", is_pi0_bijective(L)),
              ("R pi0-cartesian", is_pi0_cartesian(R))]
    for label, good in checks:
        out.append(f"{label}: {'yes' if good else 'no'}")
    return all(g for _, g in checks)


def cmd_elements(args, out) -> bool:
    doc = _load(args.file, "over", "operadic")
    E, P = elements(doc.over)
    out.append(emit(E, "elements").rstrip("\n"))
    opf, fin = is_discrete_opfib(P), has_finite_fibres(P)
    out.append(f"discrete opfibration: {'yes' if opf else 'no'}")
    out.append(f"finite fibres: {'yes' if fin else 'no'}")
    return opf and fin


def _weights(text):
    try:
        return [tuple(Fraction(w) for w in part.split(",")) for part in text]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight list: {exc}") from None


def cmd_examples(args, out) -> bool:
    name, rest = args.name, args.args
    if name == "s-operadic":
        S = s_operadic(int(rest[0]) if rest else args.truncation)
    elif name == "decalage-unary":
        if not rest:
            raise InputError("decalage-unary needs a category file")
        S = ex.ex_decalage_unary(_load(rest[0]).cat)
    elif name == "sub-prob":
        S = ex.ex_sub_prob(_weights(rest or ["1/4,1/4,1/2"]), bound=args.closure_bound)
    elif name == "disintegration":
        S = ex.ex_disintegration(_weights(rest or ["1/4,1/4,1/4,1/4"]), bound=args.closure_bound)
    elif name == "pointed-sets":
        S = ex.ex_pointed_sets(rest[0] if rest else "*ab")
    else:
        raise InputError(f"unknown example {name!r}")
    out.append(emit(S, name).rstrip("\n"))
    return True


COMMANDS = {
    "check": (cmd_check, "category, functor or simplicial laws of FILE"),
    "operadic": (cmd_operadic, "operadic axioms of FILE"),
    "lax": (cmd_lax, "lax-operadic axioms of FILE"),
    "comonad": (cmd_comonad, "décalage comonad laws on FILE or the corpus"),
    "monad": (cmd_monad, "lifted monad laws on FILE"),
    "thm1": (cmd_thm1, "unary structures versus algebras, by enumeration"),
    "thm2": (cmd_thm2, "lax structures versus modified décalage algebras"),
    "thm4": (cmd_thm4, "operadic structures versus strict algebras"),
    "undeck": (cmd_undeck, "undecking of a unary structure"),
    "segal": (cmd_segal, "Segal condition of a simplicial set, nerve or undecking"),
    "factorize": (cmd_factorize, "pi0 factorization of a functor"),
    "elements": (cmd_elements, "category of elements of an object over the skeleton"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opdec", description="Checks for operadic categories "
                                "and décalage constructions on finite categories.")
    p.add_argument("--bound-objects", type=int, default=3)
    p.add_argument("--bound-morphisms", type=int, default=6)
    p.add_argument("--bound-card", type=int, default=3)
    p.add_argument("--truncation", type=int, default=3)
    p.add_argument("--corpus-seed", type=int, default=0)
    p.add_argument("--closure-bound", type=int, default=ex.DEFAULT_CLOSURE_BOUND)
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        optional = name in ("comonad", "thm1")
        sp.add_argument("file", nargs="?" if optional else None, default=None)
    sp = sub.add_parser("examples", help="emit a built-in example structure")
    sp.add_argument("name", choices=["s-operadic", "decalage-unary", "sub-prob",
                                     "disintegration", "pointed-sets"])
    sp.add_argument("args", nargs="*")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = cmd_examples if args.command == "examples" else COMMANDS[args.command][0]
    out: list[str] = []
    try:
        ok = handler(args, out)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    print("\n".join(out))
    return PASS if ok else FAIL


if __name__ == "__main__":
    sys.exit(main())
