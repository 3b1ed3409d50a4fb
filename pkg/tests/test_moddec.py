import pytest
import hypothesis.strategies as st
from hypothesis import given, settings

from conftest import corpus, subcorpus
from helpers import fillers, lt_over_instances, orthogonality_squares
from opdec.decalage import counit, dec
from opdec.fincat import (Functor, LtObject, arrow_category, check_functor, coproduct,
                          empty_category, local_terminal_choices, preserves_terminals,
                          terminal_category)
from opdec.moddec import (LaxTriangleMor, LtOver, OverS, Square, check_lax_triangle,
                          check_over_s, check_strict, diagonal_fillers, dm_arrow,
                          dm_counit, dm_object, element_squares, elements, has_finite_fibres,
                          is_discrete_opfib, is_pi0_bijective, is_pi0_cartesian, lax_triangles,
                          linear_order_iso, over_s_instances, pi0_factorize, tilde_dm_mor,
                          tilde_dm_mult, tilde_dm_unit, transported_orders,
                          upsilon_from_square, upsilon_to_square)
from opdec.sskel import SMap

corpus_cats = st.sampled_from([s.cat for s in corpus()])


def point(card):
    one = terminal_category()
    return OverS.from_tags(one, {"t": card}, {})


def lt_point(card=1):
    V = point(card)
    return LtOver(V, LtObject.choose(V.C, [0]))


@pytest.fixture
def two_instance(two):
    V = OverS.from_tags(two, {"a": 2, "b": 1}, {"f": [1, 1]})
    return LtOver(V, local_terminal_choices(two)[0])


def test_over_s_laws(two_instance):
    assert check_over_s(two_instance.over).ok
    bad = OverS(two_instance.C, (2, 1), (SMap.identity(2), SMap.identity(1), SMap.of([1], 1)))
    assert check_over_s(bad).failed("card.type")


# -- pi0 factorization ---------------------------------------------------------


def test_factorize_point_into_two_points():
    one = terminal_category()
    D, (left, _) = coproduct([one, one])
    L, R = pi0_factorize(left)
    assert L.target.n_objects == 1 and L.target.n_morphisms == 1
    assert R.obj_map == (0,)
    assert R.compose(L) == left


def test_factorize_pi0_bijective_gives_iso_right_part():
    P = Functor.identity(arrow_category())
    L, R = pi0_factorize(P)
    assert sorted(R.obj_map) == list(range(R.target.n_objects))
    assert sorted(R.mor_map) == list(range(R.target.n_morphisms))


def test_factorization_is_unique_up_to_comparison():
    P = counit(arrow_category())
    L, R = pi0_factorize(P)
    assert diagonal_fillers(L, R, L, R) == [Functor.identity(L.target)]


def test_orthogonality_squares_have_unique_fillers():
    squares = list(orthogonality_squares())
    assert len(squares) >= 10
    assert all(len(fillers(sq)) == 1 for sq in squares)


def test_outside_the_classes_fillers_need_not_be_unique():
    one = terminal_category()
    D, _ = coproduct([one, one])
    E = empty_category()
    l = Functor(E, one, [], [])
    fold = Functor(D, one, [0, 0], [0, 0])
    u = Functor(E, D, [], [])
    assert not is_pi0_bijective(l) and is_pi0_cartesian(fold)
    assert len(diagonal_fillers(l, fold, u, Functor.identity(one))) == 2


@settings(max_examples=40, deadline=None)
@given(corpus_cats)
def test_factorization_of_counits(C):
    P = counit(C)
    L, R = pi0_factorize(P)
    assert R.compose(L) == P
    assert is_pi0_bijective(L) and is_pi0_cartesian(R)
    assert check_functor(L).ok and check_functor(R).ok


# -- elements and discrete opfibrations -------------------------------------------


def test_elements_of_a_two_point_set():
    E, P = elements(point(2))
    assert E.n_objects == 2 and E.n_morphisms == 2


def test_elements_of_constant_one_is_iso(two):
    E, P = elements(OverS.constant_one(two))
    assert sorted(P.obj_map) == [0, 1] and sorted(P.mor_map) == [0, 1, 2]


def test_counit_of_arrow_is_not_a_discrete_opfibration(two):
    assert not is_discrete_opfib(counit(two))
    assert is_discrete_opfib(Functor.identity(two))


def test_elements_projections_are_discrete_opfibrations():
    for _, W in lt_over_instances(subcorpus(), 2):
        _, P = elements(W.over)
        assert is_discrete_opfib(P) and has_finite_fibres(P)


# -- Upsilon -------------------------------------------------------------------


def test_upsilon_identity_comparison(two):
    V = OverS.from_tags(two, {"a": 2, "b": 1}, {"f": [1, 1]})
    sq = upsilon_to_square(V, V, LaxTriangleMor.identity(V))
    E, _ = elements(V)
    assert sq.top == Functor.identity(E)


def test_upsilon_swap():
    V = point(2)
    T = LaxTriangleMor(V, V, Functor.identity(V.C), [SMap.of([2, 1], 2)])
    sq = upsilon_to_square(V, V, T)
    assert sq.top.obj_map == (1, 0)
    assert upsilon_from_square(V, V, sq) == T


def test_upsilon_rejects_non_commuting_square(two):
    V = OverS.from_tags(two, {"a": 1, "b": 1}, {"f": [1]})
    E, _ = elements(V)
    swap_base = Functor(two, two, [1, 1], [1, 1, 1])
    with pytest.raises(ValueError):
        upsilon_from_square(V, V, Square(Functor.identity(E), swap_base))


def test_upsilon_roundtrips_on_small_homs(two):
    instances = list(over_s_instances(two, 2)) + [point(2), point(1)]
    for V in instances:
        for W in instances:
            triangles = list(lax_triangles(V, W))
            squares = list(element_squares(V, W))
            assert len(triangles) == len(squares)
            assert all(upsilon_from_square(V, W, upsilon_to_square(V, W, T)) == T
                       for T in triangles)
            assert all(upsilon_to_square(V, W, upsilon_from_square(V, W, sq)) == sq
                       for sq in squares)


def test_lax_triangles_between_two_point_sets():
    assert len(list(lax_triangles(point(2), point(2)))) == 4


# -- linear orders ---------------------------------------------------------------


def test_linear_order_iso_on_projection_is_identity(two_instance):
    V = two_instance.over
    E, P = elements(V)
    V2, K = linear_order_iso(P)
    assert V2 == V and K == Functor.identity(E)


def test_linear_order_iso_with_swapped_order():
    V = point(2)
    E, P = elements(V)
    V2, K = linear_order_iso(P, [[1, 0]])
    assert K.obj_map == (1, 0)
    assert transported_orders(V2, K) == [[1, 0]]


def test_linear_order_iso_rejects_non_opfibrations(two):
    with pytest.raises(ValueError):
        linear_order_iso(counit(two))


# -- modified decalage -----------------------------------------------------------


def test_dm_of_point_is_point():
    D = dm_object(lt_point())
    assert D.C.n_objects == 1 and D.over.card == (1,)


def test_dm_of_two_instance(two, two_instance):
    D = dm_object(two_instance)
    M = D.C
    a, b, f = two.obj("a"), two.obj("b"), two.mor("f")
    assert {(X, i) for X, i, _ in M.objects} == {(a, 1), (a, 2), (b, 1)}
    assert D.over.card[M.obj((b, 1, two.identity[b]))] == 1
    assert D.over.card[M.obj((b, 1, f))] == 2
    assert M.n_objects == 4


def test_dm_object_count_formula():
    for _, W in lt_over_instances(subcorpus(), 2):
        C, card = W.C, W.over.card
        expected = sum(card[X] * len(C.in_arrows[X]) for X in range(C.n_objects))
        assert dm_object(W).C.n_objects == expected


def test_dm_requires_coalgebra_condition():
    with pytest.raises(ValueError):
        dm_object(lt_point(2))


def test_dm_counit(two, two_instance):
    assert check_strict(dm_counit(lt_point()))
    eps = dm_counit(two_instance)
    M = eps.source.C
    assert eps.nu[M.obj((two.obj("b"), 1, two.mor("f")))].is_identity()
    assert check_lax_triangle(eps).ok
    assert not check_strict(eps)


def test_counit_naturality_on_subcorpus():
    for _, W in lt_over_instances(subcorpus(), 2):
        assert check_lax_triangle(dm_counit(W)).ok


def test_dm_unit_on_point():
    W = lt_point()
    eta = tilde_dm_unit(W)
    M = dm_object(W).C
    assert eta.functor.obj_map == (M.obj((0, 1, 0)),)
    assert check_strict(eta)


def test_dm_mult_formula(two_instance):
    W = two_instance
    V, C = W.over, W.C
    D = dm_object(W)
    DD = dm_object(D)
    mu = tilde_dm_mult(W)
    M = D.C
    for o, (x, j, phi) in enumerate(DD.C.objects):
        X, i, g, f = M.morphisms[phi]
        e = [k for k, v in enumerate(V.card_mor[f].values, 1) if v == i][j - 1]
        assert mu.functor.obj_map[o] == M.obj((C.cod[g], e, g))
    assert check_strict(mu)


def test_dm_mor_preserves_strictness():
    instances = [W for _, W in lt_over_instances(subcorpus()[:12], 2)][:12]
    seen = 0
    for W in instances:
        for W2 in instances:
            for T in lax_triangles(W.over, W2.over):
                if check_strict(T) and preserves_terminals(T.functor, W.lt, W2.lt):
                    assert check_strict(tilde_dm_mor(T, W, W2))
                    seen += 1
    assert seen > 0


def test_dm_of_element_projection_is_discrete_opfibration(two_instance):
    _, P = elements(two_instance.over)
    Q = dm_arrow(P)
    assert is_discrete_opfib(Q) and has_finite_fibres(Q)
    assert dm_arrow(P).source == dec(P.source)
