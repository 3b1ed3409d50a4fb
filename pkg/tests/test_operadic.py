from dataclasses import replace

import pytest

from conftest import corpus
from opdec.examples import ex_decalage_unary, ex_pointed_sets
from opdec.fincat import Functor, LtObject, arrow_category, empty_category, iter_functors
from opdec.moddec import OverS
from opdec.operadic import (OperadicStructure, check_lax_operadic, check_operadic,
                            check_operadic_functor, check_unary, gamma_bar, transport)
from opdec.sskel import SMap, all_smaps, fibre, fibre_map, s_operadic

CYCLE = [SMap.identity(0), SMap.identity(1), SMap.identity(2), SMap.of([2, 3, 1], 3)]


@pytest.fixture(scope="module")
def s2():
    return s_operadic(2)


@pytest.fixture(scope="module")
def transported():
    T, _ = transport(s_operadic(3), CYCLE)
    return T


def corrupt_fibre(S, key, value):
    fobj = dict(S.fibre_obj)
    fobj[key] = value
    return replace(S, fibre_obj=fobj)


def test_s_operadic_passes():
    assert check_operadic(s_operadic(3)).ok


def test_decalage_unary_on_arrow_passes():
    S = ex_decalage_unary(arrow_category())
    assert check_operadic(S).ok and check_unary(S)


def test_corrupted_fibre_is_caught(s2):
    # the fibre maps around a moved fibre become ill typed
    C = s2.C
    f = C.mor(SMap.of([1, 1], 1))
    S = corrupt_fibre(s2, (f, 1), C.obj(1))
    r = check_operadic(S)
    assert r.failed("type.fibre_mor")
    assert any(v.witness[1:] == (f, 1) for v in r)


def test_parallel_fibre_map_breaks_a3(s2):
    C = s2.C
    key = next(k for k, m in sorted(s2.fibre_mor.items())
               if len(C.hom(C.dom[m], C.cod[m])) > 1)
    m = s2.fibre_mor[key]
    alt = next(n for n in C.hom(C.dom[m], C.cod[m]) if n != m)
    fmor = dict(s2.fibre_mor)
    fmor[key] = alt
    r = check_operadic(replace(s2, fibre_mor=fmor))
    assert [v.witness for v in r.by_law("A3.mor")] == [key]


def test_unary_predicate(s2):
    assert check_unary(ex_pointed_sets("*a"))
    assert not check_unary(s2)
    E = empty_category()
    empty = OperadicStructure(OverS.constant_one(E), LtObject.choose(E, []), {}, {})
    assert check_unary(empty) and check_operadic(empty).ok


def test_identity_relabelling_reduces_to_strict(s2):
    assert check_lax_operadic(s2.with_identity_relabel()).ok
    assert check_lax_operadic(s2).ok


def test_transported_structure_is_lax_not_strict(transported):
    assert not all(g.is_identity() for g in transported.relabel.values())
    assert check_lax_operadic(transported).ok
    strict = replace(transported, relabel=None)
    assert not check_operadic(strict).ok


def test_broken_relabelling_square(transported):
    key = next(k for k, g in sorted(transported.relabel.items()) if g.m == 2 and g.n == 2)
    swap = SMap.of([2, 1], 2)
    gamma = dict(transported.relabel)
    gamma[key] = swap.after(gamma[key])
    r = check_lax_operadic(replace(transported, relabel=gamma))
    assert r.failed("A5lax.b")


def test_gamma_bar_on_small_fibres_and_identities(s2):
    S = s2.with_identity_relabel()
    for g, f, i in S.fibre_map_indices():
        for j in range(1, fibre(S.card_of(f), i).k + 1):
            assert gamma_bar(S, f, g, i, j).is_identity()


def test_gamma_bar_matches_brute_force(transported):
    S, C = transported, transported.C
    checked = 0
    for g, f, i in S.fibre_map_indices():
        fg = C.comp[(f, g)]
        psi = fibre_map(S.card_of(g), S.card_of(f), i)
        for j in range(1, fibre(S.card_of(f), i).k + 1):
            down = S.gamma(fg, i).after(fibre(psi, j).eps)
            right = fibre(S.card_of(S.fibre_mor[(g, f, i)]), S.gamma(f, i)(j)).eps
            sols = [v for v in all_smaps(down.m, right.m) if right.after(v) == down]
            assert sols == [gamma_bar(S, f, g, i, j)]
            checked += 1
    assert checked > 0


def test_gamma_bar_reports_missing_factorization(transported):
    key = next(k for k, g in sorted(transported.relabel.items()) if g.m == 2 and g.n == 2)
    gamma = dict(transported.relabel)
    gamma[key] = SMap.of([1, 1], 2)
    S = replace(transported, relabel=gamma)
    raised = False
    for g, f, i in S.fibre_map_indices():
        for j in range(1, fibre(S.card_of(f), i).k + 1):
            try:
                gamma_bar(S, f, g, i, j)
            except ValueError:
                raised = True
    assert raised
    assert check_lax_operadic(S).failed("A3lax")


def test_identity_functor_is_operadic(s2):
    assert check_operadic_functor(s2, s2, Functor.identity(s2.C)).ok


def test_inclusion_of_truncations_is_operadic(s2):
    S3 = s_operadic(3)
    C2, C3 = s2.C, S3.C
    F = Functor(C2, C3, [C3.obj(t) for t in C2.objects], [C3.mor(t) for t in C2.morphisms])
    assert check_operadic_functor(s2, S3, F).ok


def test_fibre_breaking_functor_is_caught():
    S = ex_decalage_unary(arrow_category())
    verdicts = [check_operadic_functor(S, S, F) for F in iter_functors(S.C, S.C)]
    broken = [r for r in verdicts if r.failed("functor.fibre_obj")]
    assert broken and all(v.witness for r in broken for v in r.by_law("functor.fibre_obj"))


def test_lax_functor_with_relabelling(transported):
    S3 = s_operadic(3)
    _, theta = transport(S3, CYCLE)
    r = check_operadic_functor(S3, transported, theta.functor, theta.nu)
    assert r.ok


def test_transport_needs_permutations():
    S = s_operadic(2)
    T, _ = transport(S, [SMap.identity(0), SMap.identity(1), SMap.of([2, 1], 2)])
    assert check_lax_operadic(T).ok
    with pytest.raises(ValueError):
        transport(S, [SMap.identity(0), SMap.of([1], 1), SMap.of([1, 1], 2)])


def test_strict_iff_lax_with_identities_on_corpus():
    for s in corpus():
        if s.cat.n_morphisms > 8:
            continue
        S = ex_decalage_unary(s.cat)
        assert check_operadic(S).ok == check_lax_operadic(S.with_identity_relabel()).ok
        C = S.C
        for key in list(S.fibre_obj)[:3]:
            for z in range(min(C.n_objects, 3)):
                M = corrupt_fibre(S, key, z)
                assert check_operadic(M).ok == check_lax_operadic(M.with_identity_relabel()).ok
