"""Chern characters of derived constructions and the intersection numbers
that certify verdicts.

A ``Subvariety`` carries its tangent character expressed in the ambient
basis together with its fundamental class, so every pairing on X is a
degree computation in the ambient: (alpha . beta)_X = deg(alpha beta [X]).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    Ambient,
    ChowRing,
    GradedClass,
    Grassmannian,
    ProductProj,
    ProjSpace,
    _MonomialAmbient,
    as_rational,
    blow_up_points_ring,
    generator,
    line_bundle_sum_chern,
    linear_form,
    projective_bundle_ring,
    pullback,
    ring_product,
)
from .chern import (
    ChernCharacter,
    TRUNCATION,
    ch_ambient,
    ch_s_dual,
    ch_sym2_s_dual,
    ch_wedge2_s_dual,
    line_bundle_ch,
)


@dataclass(frozen=True)
class Subvariety:
    ch: ChernCharacter
    fundamental: GradedClass
    dim: int
    name: str = ""

    @property
    def ambient(self) -> Ambient:
        return self.ch.ambient

    def pair(self, *factors: GradedClass) -> Fraction:
        """Degree on X of a product of ambient classes."""
        out = self.fundamental
        for f in factors:
            out = out * f
        return out.degree()

    def ch_pair(self, i: int, *factors: GradedClass) -> Fraction:
        return self.pair(self.ch.ch(i), *factors)

    def is_ambient(self) -> bool:
        return self.fundamental == GradedClass.one(self.ambient)


def ambient_space(A: Ambient, ch: ChernCharacter | None = None, name: str = "") -> Subvariety:
    ch = ch or ch_ambient(A)
    return Subvariety(ch, GradedClass.one(A), A.dim, name or str(A))


# ---------------------------------------------------------------- zero loci


def zero_locus_ch(ambient_ch: ChernCharacter, bundle_ch: ChernCharacter) -> ChernCharacter:
    """ch(X) = ch(Y) - ch(E) for X the zero locus of a regular section of E."""
    return ambient_ch - bundle_ch


def ci_ch(ambient_ch: ChernCharacter, divisors: Sequence[GradedClass]) -> ChernCharacter:
    """Complete intersection: ch_k(X) = ch_k(Y) - (1/k!) sum D_i^k."""
    out = ambient_ch
    for D in divisors:
        if D.codims() not in ([], [1]):
            raise ValueError("divisor classes must be pure codimension 1")
        out = out - line_bundle_ch(D)
    return out


def complete_intersection(Y: Subvariety, divisors: Sequence[GradedClass], name: str = "") -> Subvariety:
    fund = Y.fundamental
    for D in divisors:
        fund = fund * D
    return Subvariety(ci_ch(Y.ch, divisors), fund, Y.dim - len(divisors), name)


def zero_locus(Y: Subvariety, bundle_ch: ChernCharacter, top_chern: GradedClass, name: str = "") -> Subvariety:
    r = int(bundle_ch.rank)
    return Subvariety(zero_locus_ch(Y.ch, bundle_ch), Y.fundamental * top_chern, Y.dim - r, name)


def tautological_bundle(G: Grassmannian, kind: str) -> ChernCharacter:
    kinds = {"sdual": ch_s_dual, "wedge2": ch_wedge2_s_dual, "sym2": ch_sym2_s_dual}
    if kind not in kinds:
        raise ValueError(f"unknown tautological bundle {kind!r}")
    return kinds[kind](G)


def grassmannian_zero_locus(k: int, n: int, bundles: Iterable[tuple[str, int]], name: str = "") -> Subvariety:
    """Zero locus on G(k, n) of a sum of copies of S*, wedge^2 S* or Sym^2 S*."""
    G = Grassmannian(k, n)
    Y = ambient_space(G)
    total = ChernCharacter(0, GradedClass.zero(G))
    top = GradedClass.one(G)
    for kind, copies in bundles:
        E = tautological_bundle(G, kind)
        r = int(E.rank)
        if r > 3:
            raise ValueError("top Chern classes are tracked through rank 3")
        c_top = E.chern_classes()[r]
        for _ in range(copies):
            total = total + E
            top = top * c_top
    return zero_locus(Y, total, top, name)


# ---------------------------------------------------------------- double covers


@dataclass(frozen=True)
class DoubleCover:
    """Classes on the base Y; pull back by f and multiply pairings by ``degree``."""

    base: Subvariety
    branch: GradedClass
    c1: GradedClass
    ch2: GradedClass
    degree: int = 2

    def criterion_pair(self, *factors: GradedClass) -> Fraction:
        """(ch2(Y) - 3/8 B^2) . S on Y, before pulling back."""
        return self.base.pair(self.ch2, *factors)

    def upstairs_pair(self, *factors: GradedClass) -> Fraction:
        return self.degree * self.criterion_pair(*factors)


def double_cover_ch2(Y: Subvariety, branch: GradedClass) -> DoubleCover:
    """c1(X) = f*(c1(Y) - B/2), ch2(X) = f*(ch2(Y) - 3/8 B^2)."""
    c1 = Y.ch.c1 - branch * Fraction(1, 2)
    ch2 = Y.ch.ch2 - branch * branch * Fraction(3, 8)
    return DoubleCover(Y, branch, c1, ch2)


# ---------------------------------------------------------------- projective bundles


def proj_bundle_ch2(base_ch: ChernCharacter, e_dual: ChernCharacter, ring: ChowRing) -> GradedClass:
    """ch2(P(E)) = pi*(ch2 X + ch2 E*) + pi*c1(E*) xi + (r/2) xi^2.

    ``ring`` must be built over the base ring of ``base_ch`` with xi last.
    """
    r = e_dual.rank
    up = lambda c: pullback(c, ring)  # noqa: E731
    xi = generator(ring, len(ring.generators) - 1)
    return up(base_ch.ch2 + e_dual.ch2) + up(e_dual.c1) * xi + xi * xi * (r / 2)


def proj_bundle_space(base: Subvariety, summands: Sequence[Sequence[int]], name: str = "") -> Subvariety:
    """P(E) = Proj Sym E for E a sum of line bundles on a monomial ambient base."""
    if not base.is_ambient() or not isinstance(base.ambient, _MonomialAmbient):
        raise ValueError("projective bundles are built over a full monomial ambient")
    B = base.ambient
    chern = line_bundle_sum_chern(B, list(summands))
    ring = projective_bundle_ring(B, chern, name or f"P_{B}(E)")
    e_dual = ChernCharacter(0, GradedClass.zero(B), 2)
    for s in summands:
        e_dual = e_dual + line_bundle_ch(linear_form(B, s) * -1)
    r = len(summands)
    xi = generator(ring, len(ring.generators) - 1)
    c1 = pullback(base.ch.c1 + e_dual.c1, ring) + xi * r
    ch2 = proj_bundle_ch2(ChernCharacter(base.ch.rank, base.ch.graded, 2), e_dual, ring)
    ch = ChernCharacter(ring.dim, c1 + ch2, 2)
    return Subvariety(ch, GradedClass.one(ring), ring.dim, ring.name)


def rank2_bundle_criterion(base_ch: ChernCharacter, c1: GradedClass, c2: GradedClass) -> GradedClass:
    """For rank 2: ch2(P(E)) >= 0 iff ch2(X) + (c1(E)^2 - 4 c2(E))/2 >= 0."""
    return base_ch.ch2 + (c1 * c1 - c2 * 4) * Fraction(1, 2)


def o_plus_l_criterion(base_ch: ChernCharacter, c1L: GradedClass) -> GradedClass:
    """E = O + L: ch2(X) + c1(L)^2/2."""
    return rank2_bundle_criterion(base_ch, c1L, GradedClass.zero(c1L.ambient))


# ---------------------------------------------------------------- products


def product_space(*spaces: Subvariety, name: str = "") -> Subvariety:
    """Product of full monomial ambients; ch is the sum of pulled-back characters."""
    rings = []
    for S in spaces:
        if not S.is_ambient() or not isinstance(S.ambient, _MonomialAmbient):
            raise ValueError("products are formed from full monomial ambients")
        rings.append(S.ambient)
    R = ring_product(*rings, name=name or None)
    # a factor tracked through its own dimension is complete
    known = min(S.ch.known if S.ch.known < S.dim else TRUNCATION for S in spaces)
    g = GradedClass.zero(R)
    offset = 0
    for S in spaces:
        g = g + pullback(S.ch.graded.truncate(known), R, offset)
        offset += len(S.ambient.generators)
    ch = ChernCharacter(R.dim, g, known)
    return Subvariety(ch, GradedClass.one(R), R.dim, R.name)


# ---------------------------------------------------------------- blow-ups


def blowup_points(base: Subvariety, count: int = 1, name: str = "") -> Subvariety:
    """Blow-up of general points: ch2 = f*ch2 + (d+1)/2 sum E_i^2, c1 = f*c1 - (d-1) sum E_i."""
    if not base.is_ambient() or not isinstance(base.ambient, _MonomialAmbient):
        raise ValueError("point blow-ups are built over a full monomial ambient")
    B = base.ambient
    d = B.dim
    R = blow_up_points_ring(B, count, name or None)
    nb = len(B.generators)
    es = [generator(R, nb + i) for i in range(count)]
    c1 = pullback(base.ch.c1, R) - sum(es, GradedClass.zero(R)) * (d - 1)
    ch2 = pullback(base.ch.ch2, R) + sum((e * e for e in es), GradedClass.zero(R)) * Fraction(d + 1, 2)
    ch = ChernCharacter(d, c1 + ch2, 2)
    return Subvariety(ch, GradedClass.one(R), d, R.name)


@dataclass(frozen=True)
class FormalBlowupCh2:
    """ch2(X~) = f*ch2(X) + e2 [E]^2 - j_* pi* c1(N), with e2 = (c+1)/2."""

    base_ch2: GradedClass
    center_codim: int

    @property
    def e_squared_coefficient(self) -> Fraction:
        return Fraction(self.center_codim + 1, 2)


def blowup_ch2(base_ch2: GradedClass, center_codim: int) -> FormalBlowupCh2:
    if center_codim < 2:
        raise ValueError("blow-up centers need codimension >= 2")
    return FormalBlowupCh2(base_ch2, center_codim)


def normal_degree(genus: int, minus_k_dot_c) -> Fraction:
    """deg N_{C/X} = -K_X.C + 2g - 2 by adjunction."""
    return as_rational(minus_k_dot_c) + 2 * genus - 2


def blowup_curve_exceptional(genus: int, minus_k_dot_c) -> Fraction:
    """ch2(X~).E = -deg(N)/2 for a smooth curve in a threefold."""
    return -normal_degree(genus, minus_k_dot_c) / 2


def blowup_curve_proper_transform(base_pairing, meets: int) -> Fraction:
    """Surface meeting the curve transversally in ``meets`` points: ch2.T - 3r/2."""
    return as_rational(base_pairing) - Fraction(3 * meets, 2)


def blowup_curve_contained(base_pairing, self_intersection, genus: int, minus_k_dot_c) -> Fraction:
    """Surface containing the curve: ch2.T + (3/2)(C^2)_T - deg N."""
    return as_rational(base_pairing) + Fraction(3, 2) * as_rational(self_intersection) - normal_degree(genus, minus_k_dot_c)


def blowup_point_exceptional(dim: int = 3) -> Fraction:
    """ch2(X~).E for a point blow-up, computed in the blown-up ring of P^dim."""
    X = blowup_points(ambient_space(ProjSpace(dim)), 1)
    E = generator(X.ambient, 1)
    return X.ch_pair(2, *([E] * (dim - 2)))


def blowup_point_proper_transform(base_pairing, multiplicity: int) -> Fraction:
    return as_rational(base_pairing) - 2 * multiplicity


def blowup_mixed(base_pairing, curve_meets: int, point_meets: int) -> Fraction:
    """Disjoint curves and points, T transversal: ch2.T - 3r/2 - 2s."""
    return as_rational(base_pairing) - Fraction(3 * curve_meets, 2) - 2 * point_meets


@dataclass(frozen=True)
class BundleOnCurve:
    """A smooth curve C with a split bundle along it.

    ``degrees`` splits E|_C (bundle context) or N_{C/X} (blow-up context).
    """

    genus: int
    degrees: tuple[int, ...]
    minus_k_dot_c: int | None = None


def ruled_surface_ch2_dot(context: str, curve: BundleOnCurve, quotient_degrees: Sequence[int]) -> Fraction:
    """ch2 . S for S = P(G) ruled over C.

    ``bundle``: X = P(E), E|_C ->> G, and xi_S^2 = deg G.
    ``blowup``: X~ = Bl_C, S inside E = P(N*) from N* ->> G' where G' is
    dual to the listed sub-multiset of N's degrees.
    """
    q = list(quotient_degrees)
    if len(q) != 2:
        raise ValueError("a ruled surface needs a rank-2 quotient")
    if Counter(q) - Counter(curve.degrees):
        raise ValueError(f"{q} is not a sub-multiset of {list(curve.degrees)}")
    if context == "bundle":
        r = len(curve.degrees)
        return Fraction(-sum(curve.degrees)) + Fraction(r, 2) * sum(q)
    if context == "blowup":
        c = len(curve.degrees)
        deg_n = sum(curve.degrees)
        if curve.minus_k_dot_c is not None and deg_n != normal_degree(curve.genus, curve.minus_k_dot_c):
            raise ValueError("normal bundle degree disagrees with adjunction")
        return Fraction(c + 1, 2) * (-sum(q)) + deg_n
    raise ValueError(f"unknown context {context!r}")


def corollary_a_sign(genus: int, minus_k_dot_c) -> int:
    """Sign of ch2.E for the blow-up of a Fano threefold along a smooth curve."""
    v = blowup_curve_exceptional(genus, minus_k_dot_c)
    return (v > 0) - (v < 0)


# ---------------------------------------------------------------- surfaces


def del_pezzo_ch2(d: int) -> Fraction:
    """ch2 of P^2 blown up in 9-d general points, by iterating point blow-ups."""
    if not 1 <= d <= 9:
        raise ValueError("del Pezzo degree must be 1..9")
    X = ambient_space(ProjSpace(2))
    for _ in range(9 - d):
        X = blowup_points(X, 1)
    return X.ch_pair(2)


def del_pezzo_k2(d: int) -> Fraction:
    X = ambient_space(ProjSpace(2))
    for _ in range(9 - d):
        X = blowup_points(X, 1)
    return X.ch_pair(1, X.ch.c1)


# ---------------------------------------------------------------- products of projective spaces


def divisor_in_product(dims: Sequence[int], multidegree: Sequence[int]) -> Subvariety:
    Y = ambient_space(ProductProj(tuple(dims)))
    return complete_intersection(Y, [linear_form(Y.ambient, multidegree)])


def divisor_in_product_ch2_closed(dims: Sequence[int], multidegree: Sequence[int]) -> GradedClass:
    """1/2 sum (n_i + 1 - a_i^2) h_i^2 - sum_{i<j} a_i a_j h_i h_j."""
    A = ProductProj(tuple(dims))
    h = [generator(A, i) for i in range(len(A.dims))]
    out = GradedClass.zero(A)
    for i, (n, a) in enumerate(zip(A.dims, multidegree)):
        out = out + h[i] * h[i] * Fraction(n + 1 - a * a, 2)
        for j in range(i + 1, len(A.dims)):
            out = out - h[i] * h[j] * (a * multidegree[j])
    return out


def divisor_pairing_two_factor_closed(n: int, m: int, a: int, b: int) -> Fraction:
    """ch2(Y) . h1^(n-2) h2^(m-1) for Y of type (a, b) in P^n x P^m."""
    return Fraction(b, 2) * (n + 1 - 3 * a * a)


def divisor_pairings_p1p1p2_closed(a: int, b: int, c: int) -> dict[str, Fraction]:
    """Pairings of ch2(Y) with h1, h2, h3 for Y of type (a, b, c) in P1 x P1 x P2.

    The h1 and h2 values reduce to (3/2)(1 - b c^2) and (3/2)(1 - a c^2)
    when the other P1 degree is 1.
    """
    return {
        "h3": Fraction(-3 * a * b * c),
        "h1": Fraction(3 * b, 2) * (1 - c * c),
        "h2": Fraction(3 * a, 2) * (1 - c * c),
    }


def divisor_pairing_p1_power_closed(multidegree: Sequence[int]) -> Fraction:
    """ch2(Y) . h1 ... h_(r-3) for Y of type (a_1..a_r) in (P1)^r."""
    a = list(multidegree)
    return Fraction(-3 * a[-3] * a[-2] * a[-1])


def ci_in_product(dims: Sequence[int], d1: Sequence[int], d2: Sequence[int]) -> Subvariety:
    Y = ambient_space(ProductProj(tuple(dims)))
    return complete_intersection(Y, [linear_form(Y.ambient, d1), linear_form(Y.ambient, d2)])


def ci_in_product_pairing_closed(n: int, m: int, a1: int, b1: int, a2: int, b2: int) -> Fraction:
    """ch2(Y) . h1^(n-2) h2^(m-2) for types (a1,b1), (a2,b2) in P^n x P^m.

    The mixed term alone is -(a1 b1 + a2 b2)(a1 b2 + a2 b1); the squared
    terms add b1 b2 (n+1-a1^2-a2^2)/2 and a1 a2 (m+1-b1^2-b2^2)/2.
    """
    mixed = -(a1 * b1 + a2 * b2) * (a1 * b2 + a2 * b1)
    return Fraction(b1 * b2 * (n + 1 - a1 * a1 - a2 * a2) + a1 * a2 * (m + 1 - b1 * b1 - b2 * b2), 2) + mixed


def monomial(A: _MonomialAmbient, exps: Sequence[int]) -> GradedClass:
    return GradedClass.basis(A, tuple(exps))
