import pytest
import hypothesis.strategies as st
from hypothesis import given

from opdec.fincat import check_category, connected_components
from opdec.sskel import SMap, all_smaps, fibre, fibre_map, s_operadic, truncated_s


@st.composite
def smaps(draw, max_size=4, m=None, n=None):
    if m is None:
        m = 0 if n == 0 else draw(st.integers(0, max_size))
    n = draw(st.integers(1 if m else 0, max_size)) if n is None else n
    if n == 0:
        return SMap(0, 0, ())
    return SMap.of(draw(st.lists(st.integers(1, n), min_size=m, max_size=m)), n)


@st.composite
def composable(draw):
    phi = draw(smaps())
    psi = draw(smaps(n=phi.m))
    return psi, phi


def brute_fibre_maps(psi, phi, i):
    src = fibre(phi.after(psi), i).eps
    tgt = fibre(phi, i).eps
    return [v for v in all_smaps(src.m, tgt.m)
            if tgt.after(v) == psi.after(src)]


def test_fibre_examples():
    f = fibre(SMap.of([1, 2, 1], 2), 1)
    assert f.k == 2 and f.eps.values == (1, 3)
    f = fibre(SMap.identity(3), 2)
    assert f.k == 1 and f.eps.values == (2,)
    f = fibre(SMap.terminal(4), 1)
    assert f.k == 4 and f.eps.is_identity()


def test_fibre_index_out_of_range():
    with pytest.raises(ValueError):
        fibre(SMap.of([1, 1], 1), 2)


def test_fibre_map_example():
    psi, phi = SMap.of([3, 1], 3), SMap.of([1, 2, 1], 2)
    assert fibre_map(psi, phi, 1).values == (2, 1)


def test_fibre_map_of_identity_and_over_terminal():
    phi = SMap.of([2, 1, 2], 2)
    for i in (1, 2):
        assert fibre_map(SMap.identity(3), phi, i).is_identity()
    psi = SMap.of([2, 2, 1], 3)
    assert fibre_map(psi, SMap.terminal(3), 1) == psi


def test_fibre_map_rejects_size_mismatch():
    with pytest.raises(ValueError):
        fibre_map(SMap.of([1], 2), SMap.of([1, 1, 1], 1), 1)


def test_smap_rejects_bad_values():
    with pytest.raises(ValueError):
        SMap.of([0], 1)
    with pytest.raises(ValueError):
        SMap(2, 2, (1,))


def test_smap_text_roundtrip():
    phi = SMap.of([1, 2, 1], 2)
    assert str(phi) == "[1 2 1]" and SMap.parse(str(phi), 2) == phi


def test_truncated_counts():
    assert (truncated_s(0).n_objects, truncated_s(0).n_morphisms) == (1, 1)
    assert (truncated_s(1).n_objects, truncated_s(1).n_morphisms) == (2, 3)
    assert truncated_s(2).n_morphisms == 11
    assert truncated_s(3).n_morphisms == 60


def test_truncated_is_a_connected_category():
    for N in (1, 2, 3):
        C = truncated_s(N)
        assert check_category(C).ok
        assert len(connected_components(C)) == 1


def test_s_operadic_fibres():
    S = s_operadic(3)
    C = S.C
    for X in range(C.n_objects):
        for i in range(1, S.card(X) + 1):
            assert C.objects[S.fibre_obj[(C.identity[X], i)]] == 1
    tau3 = C.mor(SMap.terminal(3))
    assert C.objects[S.fibre_obj[(tau3, 1)]] == 3
    assert S.lt.terminals == (C.obj(1),)


@given(smaps())
def test_fibre_sizes_sum_to_domain(phi):
    assert sum(fibre(phi, i).k for i in range(1, phi.n + 1)) == phi.m


@given(smaps())
def test_fibre_inclusion_is_monotone_onto_preimage(phi):
    for i in range(1, phi.n + 1):
        eps = fibre(phi, i).eps.values
        assert list(eps) == sorted(set(eps))
        assert set(eps) == {j for j in range(1, phi.m + 1) if phi(j) == i}


@given(composable())
def test_fibre_map_is_the_unique_filler(pair):
    psi, phi = pair
    for i in range(1, phi.n + 1):
        assert brute_fibre_maps(psi, phi, i) == [fibre_map(psi, phi, i)]


@given(composable(), st.data())
def test_fibre_map_cocycle(pair, data):
    psi, phi = pair
    psi2 = data.draw(smaps(n=psi.m))
    for i in range(1, phi.n + 1):
        lhs = fibre_map(psi.after(psi2), phi, i)
        rhs = fibre_map(psi, phi, i).after(fibre_map(psi2, phi.after(psi), i))
        assert lhs == rhs
        assert fibre_map(SMap.identity(phi.m), phi, i).is_identity()
