"""Schubert calculus on G(k, n).

Two independent product routes are kept on purpose:

* ``lr_product_terms`` expands the second factor by Jacobi-Trudi into
  special classes and applies the Pieri rule repeatedly.
* ``lr_product_tableaux`` counts Littlewood-Richardson skew tableaux
  directly by backtracking over cell fillings.

Neither calls the other; tests compare them.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .algebra import (
    OGPlus,
    SG,
    GradedClass,
    Grassmannian,
    Partition,
    RankOnePicBFour,
    boxed_partitions,
)


def horizontal_strips(lam: Partition, p: int, rows: int, cols: int) -> list[Partition]:
    """Shapes mu in the box with mu/lam a horizontal strip of size p."""
    lam = list(lam) + [0] * (rows - len(lam))
    out: list[Partition] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == rows:
            if left == 0:
                out.append(Partition(acc))
            return
        upper = cols if i == 0 else lam[i - 1]
        for add in range(min(left, upper - lam[i]), -1, -1):
            rec(i + 1, left - add, acc + [lam[i] + add])

    if p >= 0:
        rec(0, p, [])
    return out


@lru_cache(maxsize=None)
def pieri_terms(lam: Partition, p: int, k: int, n: int) -> dict[Partition, int]:
    if p < 0 or p > n - k:
        return {}
    return {mu: 1 for mu in horizontal_strips(lam, p, k, n - k)}


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _jacobi_trudi(mu: Partition) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """Signed rows h_{a_1}...h_{a_l} whose alternating sum is s_mu."""
    ell = len(mu)
    acc: dict[tuple[int, ...], int] = {}
    for perm in permutations(range(ell)):
        rows = tuple(mu[i] - i + perm[i] for i in range(ell))
        if any(a < 0 for a in rows):
            continue
        key = tuple(sorted((a for a in rows if a), reverse=True))
        acc[key] = acc.get(key, 0) + _perm_sign(perm)
    return tuple((c, key) for key, c in acc.items() if c)


@lru_cache(maxsize=None)
def lr_product_terms(lam: Partition, mu: Partition, k: int, n: int) -> dict[Partition, int]:
    """sigma_lam * sigma_mu on G(k, n) by iterated Pieri."""
    if len(lam) < len(mu) or (len(lam) == len(mu) and lam < mu):
        lam, mu = mu, lam
    total: dict[Partition, int] = {}
    for sign, rows in _jacobi_trudi(mu):
        cur = {lam: 1}
        for a in rows:
            nxt: dict[Partition, int] = {}
            for shape, c in cur.items():
                for out in pieri_terms(shape, a, k, n):
                    nxt[out] = nxt.get(out, 0) + c
            cur = nxt
            if not cur:
                break
        for shape, c in cur.items():
            total[shape] = total.get(shape, 0) + sign * c
    return {s: c for s, c in total.items() if c}


def _count_lr_tableaux(outer: Partition, inner: Partition, content: Partition) -> int:
    """Semistandard fillings of outer/inner with the given content whose
    right-to-left, top-to-bottom reading word is a lattice word."""
    inner_l = list(inner) + [0] * (len(outer) - len(inner))
    if any(i > o for i, o in zip(inner_l, outer)):
        return 0
    cells = []
    for r, (o, i) in enumerate(zip(outer, inner_l)):
        for c in range(o - 1, i - 1, -1):
            cells.append((r, c))
    if len(cells) != sum(content):
        return 0
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(content) + 1)

    def rec(idx: int) -> int:
        if idx == len(cells):
            return 1
        r, c = cells[idx]
        total = 0
        for v in range(1, len(content) + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            right = filling.get((r, c + 1))
            if right is not None and v > right:
                continue
            above = filling.get((r - 1, c))
            if above is not None and v <= above:
                continue
            filling[(r, c)] = v
            counts[v] += 1
            total += rec(idx + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return rec(0)


def lr_product_tableaux(lam: Partition, mu: Partition, k: int, n: int) -> dict[Partition, int]:
    """sigma_lam * sigma_mu on G(k, n) by counting LR tableaux of shape nu/lam."""
    lam, mu = Partition(lam), Partition(mu)
    out: dict[Partition, int] = {}
    if not (lam.fits(k, n - k) and mu.fits(k, n - k)):
        return out
    for nu in boxed_partitions(k, n - k, lam.weight + mu.weight):
        if not all(a >= b for a, b in zip(list(nu) + [0] * k, lam)):
            continue
        c = _count_lr_tableaux(nu, lam, mu)
        if c:
            out[nu] = c
    return out


# ---------------------------------------------------------------- public API


def _boxed(G: Grassmannian, lam) -> Partition:
    lam = Partition(lam)
    if not lam.fits(G.k, G.n - G.k):
        raise ValueError(f"{lam!r} does not fit the {G.k}x{G.n - G.k} box of {G}")
    return lam


def schubert_class(G: Grassmannian, lam, coeff=1) -> GradedClass:
    return GradedClass.basis(G, _boxed(G, lam), coeff)


def pieri(G: Grassmannian, lam, p: int) -> GradedClass:
    """sigma_lam * sigma_p."""
    lam = _boxed(G, lam)
    if not 0 <= p <= G.n - G.k:
        raise ValueError(f"special class index {p} outside 0..{G.n - G.k}")
    return GradedClass.from_terms(G, pieri_terms(lam, p, G.k, G.n))


def lr_multiply(G: Grassmannian, lam, mu, route: str = "pieri") -> GradedClass:
    """sigma_lam * sigma_mu; ``route`` is ``"pieri"`` or ``"tableaux"``."""
    lam, mu = _boxed(G, lam), _boxed(G, mu)
    if route == "pieri":
        terms = lr_product_terms(lam, mu, G.k, G.n)
    elif route == "tableaux":
        terms = lr_product_tableaux(lam, mu, G.k, G.n)
    else:
        raise ValueError(f"unknown route {route!r}")
    return GradedClass.from_terms(G, terms)


def degree(x: GradedClass) -> Fraction:
    """Coefficient of the point class (the full box on a Grassmannian)."""
    return x.degree()


def dual_partition(G: Grassmannian, lam) -> Partition:
    return _boxed(G, lam).complement(G.k, G.n - G.k)


def dual_class(G: Grassmannian, lam) -> GradedClass:
    return schubert_class(G, dual_partition(G, lam))


def multiply_all(G: Grassmannian, parts) -> GradedClass:
    out = GradedClass.one(G)
    for lam in parts:
        out = out * schubert_class(G, lam)
    return out


# ---------------------------------------------------------------- reduced rings

_ONE, _S1, _S2, _S11 = Partition(), Partition([1]), Partition([2]), Partition([1, 1])


def _sigma_to_h(ambient) -> dict[Partition, Fraction]:
    if isinstance(ambient, OGPlus):
        # sigma_1 = 2H and sigma_2 = sigma_11 = sigma_1^2/2
        return {_ONE: Fraction(1), _S1: Fraction(2), _S2: Fraction(2), _S11: Fraction(2)}
    if isinstance(ambient, SG):
        return {_ONE: Fraction(1), _S1: Fraction(1), _S2: Fraction(1, 2), _S11: Fraction(1, 2)}
    raise ValueError(f"no sigma reduction for {ambient}")


def reduce_to_h(ambient, x: GradedClass) -> GradedClass:
    """Rewrite a sigma-basis class of codim <= 2 in the H basis of ``ambient``."""
    if not isinstance(x.ambient, Grassmannian):
        raise ValueError("expected a sigma-basis class")
    table = _sigma_to_h(ambient)
    terms = []
    for lab, c in x.items:
        if lab not in table:
            raise ValueError(f"label {lab!r} has codimension above 2")
        terms.append(((lab.weight,), c * table[lab]))
    return GradedClass.from_terms(ambient, terms)


def reduced_ring_multiply(ambient, a: GradedClass, b: GradedClass) -> GradedClass:
    """Product in OG+(k,2k), SG(k,2k), G2/P2 or a rank-one b4=1 ring.

    Sigma-basis inputs are reduced first; the result is truncated at codim 2.
    """
    if not isinstance(ambient, (OGPlus, SG, RankOnePicBFour)):
        raise ValueError(f"{ambient} is not a reduced ring")
    if isinstance(a.ambient, Grassmannian):
        a = reduce_to_h(ambient, a)
    if isinstance(b.ambient, Grassmannian):
        b = reduce_to_h(ambient, b)
    return a * b
