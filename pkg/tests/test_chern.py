from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from twofano.algebra import G2P2, GradedClass, Grassmannian, OGPlus, SG, ProjSpace, generator
from twofano.chern import (
    ChernCharacter,
    ch_ambient,
    ch_grassmannian,
    ch_og,
    ch_og_plus,
    ch_proj_space,
    ch_product_proj,
    ch_q,
    ch_s,
    ch_s_dual,
    ch_sg,
    ch_sg_lagrangian,
    ch_sym2_s_dual,
    ch_wedge2_s_dual,
    ch_weighted_proj,
    line_bundle_ch,
    rank_og,
    rank_sg,
)
from twofano.schubert import schubert_class

GRASS = [(k, n) for n in range(4, 13) for k in range(2, n // 2 + 1)]


def sigma(G, *lam):
    return schubert_class(G, list(lam))


@pytest.mark.parametrize("k,n", GRASS)
def test_s_plus_s_dual_is_even(k, n):
    G = Grassmannian(k, n)
    total = ch_s_dual(G) + ch_s(G)
    assert total.rank == 2 * k
    assert total.ch(1).is_zero()
    assert total.ch(3).is_zero()


@pytest.mark.parametrize("k,n", GRASS)
def test_tangent_is_s_dual_times_quotient(k, n):
    G = Grassmannian(k, n)
    trivial = ChernCharacter(n, GradedClass.zero(G))
    assert ch_s_dual(G) * (trivial - ch_s(G)) == ch_grassmannian(k, n)
    assert ch_s_dual(G) * ch_q(G) == ch_grassmannian(k, n)


@pytest.mark.parametrize("k,n", GRASS)
def test_wedge_plus_sym_is_square(k, n):
    G = Grassmannian(k, n)
    Sd = ch_s_dual(G)
    assert ch_wedge2_s_dual(G) + ch_sym2_s_dual(G) == Sd * Sd


@pytest.mark.parametrize("k,n", GRASS)
def test_grassmannian_closed_low_codim(k, n):
    G = Grassmannian(k, n)
    ch = ch_grassmannian(k, n)
    assert ch.rank == k * (n - k)
    assert ch.c1 == sigma(G, 1) * n
    assert ch.ch2 == sigma(G, 2) * Fraction(n + 2 - 2 * k, 2) - sigma(G, 1, 1) * Fraction(n - 2 - 2 * k, 2)


def test_g25_character():
    G = Grassmannian(2, 5)
    ch = ch_grassmannian(2, 5)
    assert ch.rank == 6
    assert ch.c1 == sigma(G, 1) * 5
    assert ch.ch2 == sigma(G, 2) * Fraction(3, 2) + sigma(G, 1, 1) * Fraction(1, 2)


@pytest.mark.parametrize("k,n", [(2, 5), (3, 7), (2, 8), (4, 9), (3, 10)])
def test_og_sg_rank_and_c1(k, n):
    G = Grassmannian(k, n)
    og, sg = ch_og(k, n), ch_sg(k, n)
    assert og.rank == rank_og(k, n) == Fraction(k * (2 * n - 3 * k - 1), 2)
    assert sg.rank == rank_sg(k, n) == Fraction(k * (2 * n - 3 * k + 1), 2)
    assert og.c1 == sigma(G, 1) * (n - k - 1)
    assert sg.c1 == sigma(G, 1) * (n - k + 1)


@pytest.mark.parametrize("k,n", [(2, 5), (3, 7), (2, 8), (4, 9)])
def test_og_sg_are_zero_loci(k, n):
    G = Grassmannian(k, n)
    assert ch_og(k, n) == ch_grassmannian(k, n) - ch_sym2_s_dual(G)
    assert ch_sg(k, n) == ch_grassmannian(k, n) - ch_wedge2_s_dual(G)


@pytest.mark.parametrize("k", [4, 5, 6, 7])
def test_og_plus_reduced(k):
    A = OGPlus(k)
    ch = ch_og_plus(k)
    assert ch.rank == A.dim == k * (k - 1) // 2
    assert ch.c1 == generator(A) * (2 * k - 2)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_sg_lagrangian_reduced(k):
    A = SG(k)
    ch = ch_sg_lagrangian(k)
    assert ch.rank == A.dim == k * (k + 1) // 2
    assert ch.c1 == generator(A) * (k + 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_projective_space_closed(n):
    ch = ch_proj_space(n)
    h = generator(ProjSpace(n))
    for i in range(1, min(n, 3) + 1):
        assert ch.ch(i) == h ** i * Fraction(n + 1, factorial(i))
    # Euler sequence: c(P^n) = (1 + h)^(n+1)
    for i, c in enumerate(ch.chern_classes()):
        assert c == h ** i * comb(n + 1, i)


@given(st.lists(st.integers(1, 4), min_size=3, max_size=6))
def test_weighted_with_unit_weights_is_projective(ws):
    n = len(ws) - 1
    ones = ch_weighted_proj([1] * (n + 1))
    assert ones.rank == n
    assert [ones.ch(i).items for i in range(1, ones.known + 1)] == \
        [ch_proj_space(n).ch(i).items for i in range(1, ones.known + 1)]


def test_weighted_character():
    ch = ch_weighted_proj([1, 1, 1, 1, 2])
    H = generator(ch.ambient)
    assert ch.c1 == H * 6
    assert ch.ch2 == H * H * Fraction(4 + 4, 2)


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_product_character_is_sum(dims):
    ch = ch_product_proj(dims)
    assert ch.rank == sum(dims)
    A = ch.ambient
    expected = GradedClass.zero(A)
    for i, n in enumerate(dims):
        expected = expected + generator(A, i) * (n + 1)
    assert ch.c1 == expected


@given(st.integers(-5, 5))
def test_line_bundle_exponential(d):
    h = generator(ProjSpace(4))
    L = line_bundle_ch(h * d)
    assert L.rank == 1
    assert L.ch2 == h * h * Fraction(d * d, 2)
    assert L.ch(3) == h ** 3 * Fraction(d ** 3, 6)
    assert L.chern_classes()[1] == h * d
    assert L.chern_classes()[2].is_zero()


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_adams_and_dual(a, b):
    h = generator(ProjSpace(4))
    E = line_bundle_ch(h * a) + line_bundle_ch(h * b)
    assert E.dual() == line_bundle_ch(h * -a) + line_bundle_ch(h * -b)
    assert E.adams(2) == line_bundle_ch(h * 2 * a) + line_bundle_ch(h * 2 * b)


def test_g2p2_character():
    ch = ch_ambient(G2P2())
    assert ch.rank == 5
    assert ch.c1 == generator(G2P2()) * 3


def test_untracked_component_raises():
    ch = ch_og_plus(5)
    with pytest.raises(ValueError):
        ch.ch(3)
