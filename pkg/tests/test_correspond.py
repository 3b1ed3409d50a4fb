from dataclasses import replace

import pytest

from conftest import corpus, sub_lt_objects
from opdec.correspond import (TildeDAlgebra, algebra_morphism_commutes, algebra_to_unary,
                              check_dm_algebra, check_tilde_d_algebra, dm_algebra_to_lax,
                              enumerate_algebras, enumerate_unary_structures,
                              is_gamma_trivial, lax_to_dm_algebra, lt_over, mutation_pairs,
                              operadic_to_strict_algebra, pasting_sides,
                              strict_algebra_to_operadic, strict_morphism_commutes,
                              thm1_check, unary_to_algebra)
from opdec.examples import ex_decalage_unary
from opdec.fincat import (Functor, arrow_category, iter_functors, local_terminal_choices,
                          terminal_category)
from opdec.moddec import check_strict, dm_object
from opdec.operadic import check_operadic, check_operadic_functor, transport
from opdec.sskel import SMap, fibre, s_operadic

CYCLE = [SMap.identity(0), SMap.identity(1), SMap.identity(2), SMap.of([2, 3, 1], 3)]


@pytest.fixture(scope="module")
def transported():
    T, _ = transport(s_operadic(3), CYCLE)
    return T


def unary_structures():
    return [S for _, L in sub_lt_objects() for S in enumerate_unary_structures(L)]


def test_decalage_unary_gives_an_algebra():
    A = unary_to_algebra(ex_decalage_unary(arrow_category()))
    assert check_tilde_d_algebra(A).ok


def test_terminal_instance_has_one_trivial_algebra():
    L = local_terminal_choices(terminal_category())[0]
    algebras = enumerate_algebras(L)
    assert len(algebras) == 1
    assert algebras[0].act.obj_map == (0,)
    assert len(enumerate_unary_structures(L)) == 1


def test_thm1_on_subcorpus():
    for name, L in sub_lt_objects():
        r = thm1_check(L)
        assert r.bijective and r.roundtrip, name
        assert r.n_unary == r.n_algebras


def test_thm1_on_decalage_carriers():
    for s in corpus():
        if s.cat.n_morphisms > 4:
            continue
        S = ex_decalage_unary(s.cat)
        assert algebra_to_unary(unary_to_algebra(S)) == S
        assert check_tilde_d_algebra(unary_to_algebra(S)).ok


def test_mutations_flip_axioms_and_laws_together():
    pairs = []
    for s in corpus():
        if s.cat.n_morphisms <= 4:
            pairs.extend(mutation_pairs(unary_to_algebra(ex_decalage_unary(s.cat))))
    assert len(pairs) >= 20
    assert all(p.agrees for p in pairs)
    assert any(p.unit for p in pairs) and any(not p.unit for p in pairs)


def test_decoded_structure_axioms_match_laws():
    for S in unary_structures():
        A = unary_to_algebra(S)
        assert check_operadic(algebra_to_unary(A)).ok == check_tilde_d_algebra(A).ok


def test_non_preserving_action_is_rejected():
    L = local_terminal_choices(arrow_category())[0]
    A = enumerate_algebras(L)[0]
    act = A.act
    C = act.target
    b = C.obj("b")
    const = Functor(act.source, C, [b] * act.source.n_objects,
                    [C.identity[b]] * act.source.n_morphisms)
    r = check_tilde_d_algebra(TildeDAlgebra(A.carrier, const))
    assert r.failed("algebra.unit")


def test_unary_morphisms_match_algebra_morphisms():
    small = [S for S in unary_structures() if S.C.n_morphisms <= 4]
    verdicts = []
    for S in small:
        for S2 in small:
            A, A2 = unary_to_algebra(S), unary_to_algebra(S2)
            for F in iter_functors(S.C, S2.C):
                ok = check_operadic_functor(S, S2, F).ok
                assert ok == algebra_morphism_commutes(A, A2, F)
                verdicts.append(ok)
    assert any(verdicts) and not all(verdicts)


# -- lax and strict structures -----------------------------------------------------


def test_strict_structure_has_strict_action():
    S = s_operadic(2)
    A = lax_to_dm_algebra(S)
    assert check_strict(A.act)
    assert check_dm_algebra(A).ok


def test_transported_structure_gives_a_lax_algebra(transported):
    A = lax_to_dm_algebra(transported)
    assert not check_strict(A.act)
    assert dm_algebra_to_lax(A) == transported


def test_pastings_are_the_two_fibres(transported):
    S = transported
    C = S.C
    M = dm_object(lt_over(S)).C
    seen = 0
    for X, i, g, f in M.morphisms:
        if C.is_identity(g):
            continue
        for j in range(1, fibre(S.card_of(f), i).k + 1):
            left, right = pasting_sides(S, (X, i, f, j, g))
            gf = S.fibre_mor[(g, f, i)]
            assert left == S.fibre_obj[(gf, S.gamma(f, i)(j))]
            assert right == S.fibre_obj[(g, fibre(S.card_of(f), i).eps(j))]
            seen += 1
            if seen == 12:
                return
    assert seen > 0


def test_strict_algebra_roundtrip():
    for S in (s_operadic(1), s_operadic(2), ex_decalage_unary(arrow_category())):
        A = operadic_to_strict_algebra(S)
        assert check_strict(A.act) and check_dm_algebra(A).ok
        assert strict_algebra_to_operadic(A) == S


def test_strict_encoding_refuses_lax_input(transported):
    with pytest.raises(ValueError):
        operadic_to_strict_algebra(transported)
    with pytest.raises(ValueError):
        strict_algebra_to_operadic(lax_to_dm_algebra(transported))


def test_strictness_matches_gamma_triviality(transported):
    S2 = s_operadic(2)
    for S in (S2, S2.with_identity_relabel(), transported):
        assert check_strict(lax_to_dm_algebra(S).act) == is_gamma_trivial(S)


def test_strict_morphisms_match_algebra_morphisms():
    structures = [s_operadic(1), s_operadic(2)]
    verdicts = []
    for S in structures:
        for S2 in structures:
            A, A2 = operadic_to_strict_algebra(S), operadic_to_strict_algebra(S2)
            for F in iter_functors(S.C, S2.C):
                ok = check_operadic_functor(S, S2, F).ok
                assert ok == strict_morphism_commutes(A, A2, F)
                verdicts.append(ok)
    assert any(verdicts) and not all(verdicts)


def test_broken_relabelling_breaks_the_algebra(transported):
    key = next(k for k, g in sorted(transported.relabel.items()) if g.m == 2 and g.n == 2)
    gamma = dict(transported.relabel)
    gamma[key] = SMap.of([2, 1], 2).after(gamma[key])
    S = replace(transported, relabel=gamma)
    A = lax_to_dm_algebra(S)
    assert dm_algebra_to_lax(A) == S
    assert not check_dm_algebra(A).ok
