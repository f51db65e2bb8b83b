from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from twofano.algebra import G2P2, Grassmannian, ProjSpace, RankOnePicBFour, generator
from twofano.classifier import (
    FanoStatus,
    SurfaceWitness,
    Verdict,
    _grass_ci,
    classify_ci_g2p2,
    classify_ci_grass,
    classify_ci_ogplus,
    classify_ci_proj,
    classify_ci_rank_one_b4,
    classify_ci_sg,
    classify_ci_weighted,
    classify_del_pezzo_surface,
    classify_double_cover,
    classify_grassmannian,
    classify_linear_section_grass,
    classify_o_plus_l,
    classify_proj_space,
    double_cover_descent,
    double_cover_semiample_descent,
    product_verdict,
    rho_one_blowup_descent,
    semiample_descent,
    sign_verdict,
)
from twofano.constructions import ambient_space

NW, W, TF, NF, OPEN = (FanoStatus.NOT_WEAKLY, FanoStatus.WEAKLY, FanoStatus.TWO_FANO,
                       FanoStatus.NOT_FANO, FanoStatus.OPEN)


def multisets(max_sum, lo=1):
    out = []
    for r in range(0, max_sum + 1):
        for ds in combinations_with_replacement(range(lo, max_sum + 1), r):
            if sum(ds) <= max_sum:
                out.append(list(ds))
    return out


def test_status_ordering():
    assert TF.is_weakly and W.is_weakly
    assert not NW.is_weakly and not OPEN.is_weakly and not NF.is_weakly


def test_sign_verdict():
    pos = [SurfaceWitness("a", Fraction(1)), SurfaceWitness("b", Fraction(1, 2))]
    zero = [SurfaceWitness("a", Fraction(0))]
    neg = [SurfaceWitness("a", Fraction(-1, 2))]
    assert sign_verdict(pos, True, "r").status is TF
    assert sign_verdict(zero, True, "r").status is W
    assert sign_verdict(neg, False, "r").status is NW
    assert sign_verdict(pos, False, "r").status is OPEN


@pytest.mark.parametrize("N", range(3, 14))
def test_monotonicity_in_projective_space(N):
    verdicts = {tuple(ds): classify_ci_proj(N, ds).status for ds in multisets(12, 2) if len(ds) < N - 1}
    for ds, status in verdicts.items():
        if status is not NW:
            continue
        for d in range(2, 13 - sum(ds)):
            bigger = tuple(sorted(ds + (d,)))
            if bigger in verdicts:
                assert verdicts[bigger] not in (TF, W), (N, ds, bigger)


@pytest.mark.parametrize("k,n", [(2, 5), (2, 6), (2, 7), (3, 6), (3, 7)])
def test_monotonicity_in_grassmannians(k, n):
    dim = k * (n - k)
    verdicts = {tuple(ds): classify_ci_grass(k, n, ds).status for ds in multisets(6) if len(ds) < dim - 1}
    for ds, status in verdicts.items():
        if status is not NW:
            continue
        for d in range(1, 7 - sum(ds)):
            bigger = tuple(sorted(ds + (d,)))
            if bigger in verdicts:
                assert verdicts[bigger] not in (TF, W), (k, n, ds, bigger)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_middle_grassmannian_two_hyperplanes(k):
    v = classify_ci_grass(k, 2 * k, [1, 1])
    assert v.status.is_weakly
    assert _grass_ci(k, 2 * k, [1, 1]).ch.ch2.is_zero()


@pytest.mark.parametrize("k,n", [(2, 5), (2, 6), (2, 7), (3, 6), (3, 7)])
def test_not_weakly_grass_has_negative_sigma1_witness(k, n):
    for ds in multisets(5):
        if not ds or ds == [1, 1] and n == 2 * k:
            continue
        v = classify_ci_grass(k, n, ds)
        if v.status is not NW:
            continue
        X = _grass_ci(k, n, ds)
        s1 = generator(X.ambient)
        assert X.ch_pair(2, s1 ** (X.dim - 2)) < 0 or any(w.value < 0 for w in v.witnesses), ds


@given(st.integers(3, 12), st.lists(st.integers(1, 4), max_size=4))
def test_proj_and_unit_weighted_agree(N, ds):
    if len(ds) >= N:
        return
    assert classify_ci_proj(N, ds).status is classify_ci_weighted([1] * (N + 1), ds).status


def test_projective_space_and_quadric():
    assert classify_proj_space(5).status is TF
    assert classify_ci_proj(3, [2]).status is W
    assert classify_ci_proj(4, [2]).status is TF
    assert classify_ci_proj(4, [5]).status is NF


def test_grassmannian_is_two_fano():
    v = classify_grassmannian(2, 5)
    assert v.status is TF
    assert [w.value for w in v.witnesses] == [Fraction(3, 2), Fraction(1, 2)]


def test_linear_sections_of_g25():
    assert classify_linear_section_grass(2, 5, 1).status is W
    assert classify_linear_section_grass(2, 5, 2).status is OPEN
    assert classify_linear_section_grass(2, 5, 3).status is NW


def test_reduced_rings():
    assert classify_ci_ogplus(5, []).status.is_weakly
    assert classify_ci_sg(3, []).status.is_weakly
    assert classify_ci_g2p2([]).status is TF
    assert classify_ci_g2p2([1, 1]).status is NW
    A = RankOnePicBFour("test", 5, Fraction(1, 2), 3)
    assert classify_ci_rank_one_b4(A, [1]).status is classify_ci_rank_one_b4(A, [1]).status


def test_double_cover_of_p3_branched_in_quartic():
    Y = ambient_space(ProjSpace(3))
    h = generator(Y.ambient)
    v = classify_double_cover(Y, h * 4, [("h", h)], True)
    assert v.status is NW
    assert v.witnesses[0].value == 2 - Fraction(3, 8) * 16


def test_o_plus_l():
    assert classify_o_plus_l([2], [1]).status is W
    assert classify_o_plus_l([2], [3]).status is NF


@pytest.mark.parametrize("d,expected", [(9, TF), (8, NW), (1, NW)])
def test_del_pezzo_surfaces(d, expected):
    status = classify_del_pezzo_surface(d).status
    # ch2(S_d) = (3/2)(d - 8) so only d = 9 is positive; d = 8 gives 0
    if d == 8:
        assert status is W
    else:
        assert status is expected


def test_products_are_never_two_fano():
    tf = Verdict(TF)
    assert product_verdict(tf, tf).status is W
    assert product_verdict(tf, Verdict(NW, (SurfaceWitness("x", Fraction(-1)),))).status is NW
    assert product_verdict(tf, Verdict(OPEN)).status is OPEN
    assert product_verdict(tf, Verdict(NF)).status is NF


def test_descent_rules():
    assert double_cover_descent(W, True).status is NW
    assert double_cover_descent(TF, True) is None
    assert double_cover_descent(NW, False) is None
    assert rho_one_blowup_descent(NW, 1).status is NW
    assert rho_one_blowup_descent(NW, 2) is None
    assert rho_one_blowup_descent(W, 1) is None
    assert semiample_descent(Fraction(-1, 2)).status is NW
    assert semiample_descent(0) is None
    assert double_cover_semiample_descent(0, True).status is NW
    assert double_cover_semiample_descent(Fraction(1, 2), True) is None
    assert double_cover_semiample_descent(-1, False) is None


def test_verdict_text():
    text = str(classify_ci_proj(9, [2, 2]))
    assert text.splitlines()[0] == "TwoFano"
