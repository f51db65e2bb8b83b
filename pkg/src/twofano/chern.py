"""Chern characters through codimension 3.

Homogeneous characters are computed from Chern roots rather than typed in:
ch(S*) comes from Newton's identities with c_i(S*) = sigma_{1^i}, and the
tangent, wedge and symmetric squares follow from ring operations. Tests
compare the results with the closed expansions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import (
    OGPlus,
    SG,
    Ambient,
    GradedClass,
    Grassmannian,
    Partition,
    ProductProj,
    ProjSpace,
    RankOnePicBFour,
    WeightedProj,
    as_rational,
    generator,
    linear_form,
    pullback,
)
from .schubert import reduce_to_h

TRUNCATION = 3


@dataclass(frozen=True)
class ChernCharacter:
    """rank + ch_1 + ch_2 + ch_3 in one ambient; ``known`` caps the valid codims."""

    rank: Fraction
    graded: GradedClass
    known: int = TRUNCATION

    def __post_init__(self):
        object.__setattr__(self, "rank", as_rational(self.rank))
        cap = min(self.known, TRUNCATION, self.graded.ambient.max_codim)
        object.__setattr__(self, "known", cap)
        g = self.graded.truncate(cap)
        if 0 in g.codims():
            raise ValueError("codim-0 part belongs in rank")
        object.__setattr__(self, "graded", g)

    @property
    def ambient(self) -> Ambient:
        return self.graded.ambient

    def ch(self, i: int) -> GradedClass:
        if i == 0:
            return GradedClass.one(self.ambient) * self.rank
        if i > self.known:
            raise ValueError(f"ch_{i} is not tracked (known through codim {self.known})")
        return self.graded.component(i)

    @property
    def c1(self) -> GradedClass:
        return self.ch(1)

    @property
    def ch2(self) -> GradedClass:
        return self.ch(2)

    def total(self) -> GradedClass:
        return self.graded + self.rank

    def _cap(self, other: "ChernCharacter") -> int:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
        return min(self.known, other.known)

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        cap = self._cap(other)
        return ChernCharacter(self.rank + other.rank, self.graded + other.graded, cap)

    def __neg__(self):
        return ChernCharacter(-self.rank, -self.graded, self.known)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChernCharacter(self.rank * other, self.graded * other, self.known)
        cap = self._cap(other)
        g = self.graded.truncate(cap) * other.graded.truncate(cap)
        g = g + self.graded * other.rank + other.graded * self.rank
        return ChernCharacter(self.rank * other.rank, g.truncate(cap), cap)

    __rmul__ = __mul__

    def adams(self, k: int) -> "ChernCharacter":
        """psi^k: multiply the codim-c part by k^c."""
        terms = []
        for lab, c in self.graded.items:
            terms.append((lab, c * k ** self.ambient.codim(lab)))
        return ChernCharacter(self.rank, GradedClass.from_terms(self.ambient, terms), self.known)

    def dual(self) -> "ChernCharacter":
        return self.adams(-1)

    def chern_classes(self) -> list[GradedClass]:
        """c_0..c_known via Newton's identities from p_i = i! ch_i."""
        A = self.ambient
        p = [None] + [self.ch(i) * factorial(i) for i in range(1, self.known + 1)]
        e = [GradedClass.one(A)]
        for m in range(1, self.known + 1):
            acc = GradedClass.zero(A)
            for i in range(1, m + 1):
                acc = acc + e[m - i] * p[i] * ((-1) ** (i - 1))
            e.append(acc * Fraction(1, m))
        return e

    def __str__(self):
        lines = [f"rank: {self.rank}"]
        for i in range(1, self.known + 1):
            lines.append(f"ch{i}: {self.ch(i)}")
        return "\n".join(lines)


def line_bundle_ch(D: GradedClass) -> ChernCharacter:
    """exp(D) truncated."""
    g = GradedClass.zero(D.ambient)
    power = GradedClass.one(D.ambient)
    for k in range(1, TRUNCATION + 1):
        power = power * D
        g = g + power * Fraction(1, factorial(k))
    return ChernCharacter(1, g)


def ch_from_elementary(A: Ambient, rank, elementary: list[GradedClass]) -> ChernCharacter:
    """Character of a bundle with elementary symmetric functions e_1, e_2, e_3 of its roots."""
    e = [GradedClass.one(A)] + list(elementary) + [GradedClass.zero(A)] * 3
    p1 = e[1]
    p2 = e[1] * p1 - e[2] * 2
    p3 = e[1] * p2 - e[2] * p1 + e[3] * 3
    g = p1 + p2 * Fraction(1, 2) + p3 * Fraction(1, 6)
    return ChernCharacter(rank, g)


# ---------------------------------------------------------------- projective spaces


def ch_proj_space(n: int) -> ChernCharacter:
    """Tangent bundle of P^n: n + sum (n+1)/k! h^k."""
    A = ProjSpace(n)
    h = generator(A)
    g = sum((h ** k * Fraction(n + 1, factorial(k)) for k in range(1, TRUNCATION + 1)), GradedClass.zero(A))
    return ChernCharacter(n, g)


def ch_weighted_proj(weights) -> ChernCharacter:
    """Well-formed weighted projective space: sum_i a_i^k / k! H^k."""
    A = WeightedProj(tuple(weights))
    H = generator(A)
    g = GradedClass.zero(A)
    for k in range(1, TRUNCATION + 1):
        g = g + H ** k * Fraction(sum(a ** k for a in A.weights), factorial(k))
    return ChernCharacter(A.dim, g)


def ch_product_proj(dims) -> ChernCharacter:
    A = ProductProj(tuple(dims))
    g = GradedClass.zero(A)
    for i, n in enumerate(A.dims):
        g = g + pullback(ch_proj_space(n).graded, A, i)
    return ChernCharacter(A.dim, g)


# ---------------------------------------------------------------- Grassmannians


def ch_s_dual(G: Grassmannian) -> ChernCharacter:
    """Dual tautological subbundle; c_i(S*) = sigma_{1^i}."""
    e = [GradedClass.basis(G, Partition([1] * i)) for i in (1, 2, 3)]
    return ch_from_elementary(G, G.k, e)


def ch_s(G: Grassmannian) -> ChernCharacter:
    return ch_s_dual(G).dual()


def ch_q(G: Grassmannian) -> ChernCharacter:
    """Universal quotient bundle, n - ch(S)."""
    return ChernCharacter(G.n, GradedClass.zero(G)) - ch_s(G)


def ch_grassmannian(k: int, n: int) -> ChernCharacter:
    """Tangent bundle Hom(S, Q) = S* (x) Q."""
    G = Grassmannian(k, n)
    return ch_s_dual(G) * ch_q(G)


def ch_wedge2_s_dual(G: Grassmannian) -> ChernCharacter:
    e = ch_s_dual(G)
    return (e * e - e.adams(2)) * Fraction(1, 2)


def ch_sym2_s_dual(G: Grassmannian) -> ChernCharacter:
    e = ch_s_dual(G)
    return (e * e + e.adams(2)) * Fraction(1, 2)


def ch_og(k: int, n: int) -> ChernCharacter:
    """OG(k, n) as the zero locus of Sym^2 S*, expanded on G(k, n)."""
    G = Grassmannian(k, n)
    return ch_grassmannian(k, n) - ch_sym2_s_dual(G)


def ch_sg(k: int, n: int) -> ChernCharacter:
    """SG(k, n) as the zero locus of wedge^2 S*, expanded on G(k, n)."""
    G = Grassmannian(k, n)
    return ch_grassmannian(k, n) - ch_wedge2_s_dual(G)


def _reduce(target, ch: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(ch.rank, reduce_to_h(target, ch.graded.truncate(2)), 2)


def ch_og_plus(k: int) -> ChernCharacter:
    """OG+(k, 2k) in the H basis, from the sigma expansion of OG(k, 2k)."""
    return _reduce(OGPlus(k), ch_og(k, 2 * k))


def ch_sg_lagrangian(k: int) -> ChernCharacter:
    """SG(k, 2k) in the H = sigma_1 basis."""
    return _reduce(SG(k), ch_sg(k, 2 * k))


def ch_rank_one_b4(ambient: RankOnePicBFour) -> ChernCharacter:
    H = generator(ambient)
    return ChernCharacter(ambient.dim, H * ambient.index + H ** 2 * ambient.a, 2)


def ch_ambient(A: Ambient) -> ChernCharacter:
    """Tangent character of a standard ambient."""
    if isinstance(A, ProjSpace):
        return ch_proj_space(A.n)
    if isinstance(A, WeightedProj):
        return ch_weighted_proj(A.weights)
    if isinstance(A, ProductProj):
        return ch_product_proj(A.dims)
    if isinstance(A, Grassmannian):
        return ch_grassmannian(A.k, A.n)
    if isinstance(A, OGPlus):
        return ch_og_plus(A.k)
    if isinstance(A, SG):
        return ch_sg_lagrangian(A.k)
    if isinstance(A, RankOnePicBFour):
        return ch_rank_one_b4(A)
    raise ValueError(f"no built-in tangent character for {A}")


def rank_og(k: int, n: int) -> int:
    return k * (2 * n - 3 * k - 1) // 2


def rank_sg(k: int, n: int) -> int:
    return k * (2 * n - 3 * k + 1) // 2


def divisor(A: Ambient, coeffs) -> GradedClass:
    """Divisor class from generator coefficients (an int means d * sigma_1 or d * H)."""
    if isinstance(coeffs, (int, Fraction)):
        coeffs = [coeffs]
    return linear_form(A, coeffs)


__all__ = [
    "ChernCharacter",
    "TRUNCATION",
    "ch_ambient",
    "ch_grassmannian",
    "ch_og",
    "ch_og_plus",
    "ch_product_proj",
    "ch_proj_space",
    "ch_q",
    "ch_rank_one_b4",
    "ch_s",
    "ch_s_dual",
    "ch_sg",
    "ch_sg_lagrangian",
    "ch_sym2_s_dual",
    "ch_weighted_proj",
    "ch_wedge2_s_dual",
    "divisor",
    "line_bundle_ch",
    "rank_og",
    "rank_sg",
]
