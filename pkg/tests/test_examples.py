from fractions import Fraction as Q

import pytest

from opdec.examples import (SubProbObject, ex_disintegration, ex_pointed_sets, ex_sub_prob,
                            is_weight_map)
from opdec.fincat import check_lt, connected_components
from opdec.operadic import check_operadic, check_unary
from opdec.sskel import SMap

P = SubProbObject.of


@pytest.fixture(scope="module")
def sub_prob():
    return ex_sub_prob([(Q(1, 4), Q(1, 4), Q(1, 2))])


@pytest.fixture(scope="module")
def sub_prob_wide():
    return ex_sub_prob([(Q(1, 4), Q(1, 4), Q(1, 2)), (Q(1, 2), Q(1, 2))])


@pytest.fixture(scope="module")
def pointed():
    return ex_pointed_sets("*ab")


def test_weights_are_validated():
    with pytest.raises(ValueError):
        P(Q(3, 4), Q(1, 2))
    with pytest.raises(ValueError):
        P(Q(-1, 4))
    assert P(Q(1, 4), 0).nonzero() == (1,)
    with pytest.raises(ValueError):
        P(0, 0).normalized()


def test_weight_map_predicate():
    s, r = P(Q(1, 4), Q(1, 4), Q(1, 2)), P(Q(1, 2), Q(1, 2))
    assert is_weight_map(s, r, SMap.of([1, 1, 2], 2))
    assert not is_weight_map(s, r, SMap.of([1, 2, 2], 2))


def test_sub_prob_closure_sizes(sub_prob, sub_prob_wide):
    assert (sub_prob.C.n_objects, sub_prob.C.n_morphisms) == (4, 6)
    assert (sub_prob_wide.C.n_objects, sub_prob_wide.C.n_morphisms) == (6, 14)


def test_sub_prob_fibre(sub_prob_wide):
    C = sub_prob_wide.C
    s, r = P(Q(1, 4), Q(1, 4), Q(1, 2)), P(Q(1, 2), Q(1, 2))
    f = C.mor((s, r, (1, 1, 2)))
    assert C.objects[sub_prob_wide.fibre_obj[(f, 1)]] == P(Q(1, 4), Q(1, 4))
    assert C.objects[sub_prob_wide.fibre_obj[(f, 2)]] == P(Q(1, 2))


def test_sub_prob_terminals_are_mass_singletons(sub_prob_wide):
    C, lt = sub_prob_wide.C, sub_prob_wide.lt
    assert check_lt(lt).ok
    assert all(len(C.objects[t]) == 1 for t in lt.terminals)
    assert len(lt.terminals) == len({s.mass for s in C.objects})
    assert lt.u[C.obj(P(Q(1, 2), Q(1, 2)))] == C.obj(P(1))


def test_sub_prob_components_are_mass_classes():
    S = ex_sub_prob([(Q(1, 4), Q(1, 4)), (Q(1, 3),), (Q(1, 6), Q(1, 6))])
    C = S.C
    classes = {frozenset(C.objects[x].mass for x in comp) for comp in connected_components(C)}
    assert all(len(c) == 1 for c in classes)
    assert len(classes) == len({s.mass for s in C.objects})
    assert check_operadic(S).ok


def test_sub_prob_passes(sub_prob, sub_prob_wide):
    assert check_operadic(sub_prob).ok and check_operadic(sub_prob_wide).ok


def test_disintegration_closure():
    S = ex_disintegration([(Q(1, 4),) * 4])
    assert (S.C.n_objects, S.C.n_morphisms) == (2, 26)
    assert check_operadic(S).ok


def test_disintegration_with_a_zero_entry():
    S = ex_disintegration([(Q(1, 4),) * 4, (0, Q(1, 2), Q(1, 2))])
    C = S.C
    assert C.n_objects == 5
    x = C.obj(P(0, Q(1, 2), Q(1, 2)))
    assert S.over.card[x] == 2
    f = C.mor((C.objects[x], P(1), (1, 1, 1)))
    assert C.objects[S.fibre_obj[(f, 1)]] == P(0, Q(1, 2), Q(1, 2))
    half = C.mor((C.objects[x], P(Q(1, 2), Q(1, 2)), (1, 1, 2)))
    assert C.objects[S.fibre_obj[(half, 1)]] == P(0, 1)
    assert check_operadic(S).ok


def test_disintegration_needs_probability_seeds():
    with pytest.raises(ValueError):
        ex_disintegration([(Q(1, 4), Q(1, 4))])


def test_closure_bound():
    with pytest.raises(ValueError):
        ex_sub_prob([(Q(1, 4),) * 4], bound=2)
    with pytest.raises(ValueError):
        ex_sub_prob([])


def test_pointed_sets_sizes(pointed):
    assert pointed.C.n_objects == 4 and pointed.C.n_morphisms == 38
    assert ex_pointed_sets("*a").C.n_morphisms == 5
    with pytest.raises(ValueError):
        ex_pointed_sets("ab")


def test_pointed_kernels(pointed):
    C = pointed.C
    star, ab, b = ("*",), ("*", "a", "b"), ("*", "b")
    kill_a = C.mor((ab, ab, ("*", "*", "b")))
    assert C.objects[pointed.fibre_obj[(kill_a, 1)]] == ("*", "a")
    to_zero = C.mor((b, star, ("*", "*")))
    assert C.objects[pointed.fibre_obj[(to_zero, 1)]] == b
    tau = pointed.lt.tau[C.obj(ab)]
    assert C.objects[pointed.fibre_obj[(tau, 1)]] == ab


def test_pointed_identity_kernels_are_zero(pointed):
    C = pointed.C
    zero = C.obj(("*",))
    for X in range(C.n_objects):
        m = C.identity[X]
        src, _, imgs = C.morphisms[m]
        literal = tuple(x for x, y in zip(src, imgs) if y == "*")
        assert literal == ("*",) and pointed.fibre_obj[(m, 1)] == zero


def test_pointed_sets_pass(pointed):
    assert check_unary(pointed) and check_operadic(pointed).ok
