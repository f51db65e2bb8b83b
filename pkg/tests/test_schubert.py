from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from twofano.algebra import GradedClass, Grassmannian, Partition, boxed_partitions
from twofano.schubert import (
    degree,
    lr_product_tableaux,
    lr_product_terms,
    pieri_terms,
    dual_class,
    dual_partition,
    lr_multiply,
    multiply_all,
    pieri,
    schubert_class,
)

# Grassmannian ambients need 2 <= k <= n/2; the partition-level rules take any box
GRASS = [(k, n) for n in range(4, 9) for k in range(2, 4) if 2 * k <= n]
BOXES = [(k, n) for n in range(2, 9) for k in range(1, min(n, 4))]


@st.composite
def boxed_pair(draw):
    k, n = draw(st.sampled_from(GRASS))
    parts = boxed_partitions(k, n - k)
    return Grassmannian(k, n), draw(st.sampled_from(parts)), draw(st.sampled_from(parts))


@settings(max_examples=150)
@given(boxed_pair())
def test_lr_commutative_and_nonnegative(data):
    G, lam, mu = data
    x = lr_multiply(G, lam, mu)
    assert x == lr_multiply(G, mu, lam)
    for _, c in x.items:
        assert c >= 0 and c.denominator == 1


@settings(max_examples=150)
@given(boxed_pair())
def test_two_routes_agree(data):
    G, lam, mu = data
    assert lr_multiply(G, lam, mu, route="pieri") == lr_multiply(G, lam, mu, route="tableaux")


@st.composite
def any_box_pair(draw):
    k, n = draw(st.sampled_from(BOXES))
    parts = boxed_partitions(k, n - k)
    return k, n, draw(st.sampled_from(parts)), draw(st.sampled_from(parts))


@settings(max_examples=150)
@given(any_box_pair())
def test_two_routes_agree_on_any_box(data):
    k, n, lam, mu = data
    assert lr_product_terms(lam, mu, k, n) == lr_product_tableaux(lam, mu, k, n)


@pytest.mark.parametrize("k,n", BOXES)
def test_pieri_is_lr_with_row(k, n):
    for lam in boxed_partitions(k, n - k):
        for p in range(0, n - k + 1):
            assert pieri_terms(lam, p, k, n) == lr_product_tableaux(lam, Partition([p]), k, n)


def test_delta_orthogonality():
    for n in range(4, 11):
        for k in range(2, n // 2 + 1):
            if k * (n - k) > 16:
                continue
            G = Grassmannian(k, n)
            m = n - k
            for lam in boxed_partitions(k, m):
                dual = dual_partition(G, lam)
                assert degree(lr_multiply(G, lam, dual)) == 1
                for mu in boxed_partitions(k, m, k * m - lam.weight):
                    if mu != dual:
                        assert degree(lr_multiply(G, lam, mu)) == 0


@lru_cache(maxsize=None)
def syt_count(shape: tuple) -> int:
    """Standard tableaux of a shape by removing the largest entry from each corner."""
    if sum(shape) == 0:
        return 1
    total = 0
    for i, r in enumerate(shape):
        if r and (i + 1 == len(shape) or shape[i + 1] < r):
            smaller = list(shape)
            smaller[i] -= 1
            total += syt_count(tuple(smaller))
    return total


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (2, 6), (3, 6), (2, 7), (3, 7)])
def test_degree_of_sigma1_power_counts_tableaux(k, n):
    G = Grassmannian(k, n)
    assert degree(multiply_all(G, [[1]] * (k * (n - k)))) == syt_count((n - k,) * k)


def sigma1_power(k, n, m):
    terms = {Partition(): 1}
    for _ in range(m):
        nxt = {}
        for lam, c in terms.items():
            for mu, d in pieri_terms(lam, 1, k, n).items():
                nxt[mu] = nxt.get(mu, 0) + c * d
        terms = nxt
    return terms


@pytest.mark.parametrize("k,n,m", [(2, 5, 4), (2, 6, 6), (3, 7, 5), (2, 7, 8), (1, 4, 3)])
def test_transpose_duality(k, n, m):
    a = sigma1_power(k, n, m)
    b = sigma1_power(n - k, n, m)
    assert {lam.conjugate(): c for lam, c in a.items()} == b
    if 2 <= k <= n / 2:
        assert multiply_all(Grassmannian(k, n), [[1]] * m).terms == a


def test_out_of_box_terms_are_dropped():
    G = Grassmannian(2, 4)
    assert lr_multiply(G, [2], [2]) == schubert_class(G, [2, 2])
    assert lr_multiply(G, [2, 2], [1]).is_zero()


def test_rejects_partitions_outside_box():
    G = Grassmannian(2, 5)
    with pytest.raises(ValueError):
        schubert_class(G, [4])
    with pytest.raises(ValueError):
        pieri(G, [1], 4)
    with pytest.raises(ValueError):
        lr_multiply(G, [1], [1], route="other")


def test_dual_class_examples():
    G = Grassmannian(2, 5)
    assert dual_class(G, [2]) == schubert_class(G, [3, 1])
    assert dual_class(G, [1, 1]) == schubert_class(G, [2, 2])
    assert dual_class(G, []) == schubert_class(G, [3, 3])


def test_ring_multiplication_matches_lr():
    G = Grassmannian(3, 6)
    x = schubert_class(G, [2, 1]) * schubert_class(G, [1, 1])
    assert x == lr_multiply(G, [2, 1], [1, 1], route="tableaux")
    assert isinstance(x, GradedClass) and Partition([3, 2]) in x.terms
