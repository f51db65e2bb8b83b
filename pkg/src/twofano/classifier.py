"""2-Fano verdicts.

Every verdict carries the exact intersection numbers it rests on. A
negative pairing with an effective surface is decisive; strict or weak
positivity is decisive only against generators of the cone of surfaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    OGPlus,
    SG,
    GradedClass,
    Grassmannian,
    Partition,
    ProjSpace,
    RankOnePicBFour,
    WeightedProj,
    G2P2,
    as_rational,
    generator,
    linear_form,
    monomials_of_codim,
)
from .chern import ch_weighted_proj
from .constructions import (
    Subvariety,
    ambient_space,
    complete_intersection,
    double_cover_ch2,
    o_plus_l_criterion,
    rank2_bundle_criterion,
)
from .schubert import dual_class


class FanoStatus(str, Enum):
    NOT_FANO = "NotFano"
    TWO_FANO = "TwoFano"
    WEAKLY = "WeaklyNotTwoFano"
    NOT_WEAKLY = "NotWeakly"
    OPEN = "Open"

    def __str__(self):
        return self.value

    @property
    def is_weakly(self) -> bool:
        return self in (FanoStatus.TWO_FANO, FanoStatus.WEAKLY)


@dataclass(frozen=True)
class SurfaceWitness:
    description: str
    value: Fraction
    certifies: bool = True

    def __str__(self):
        return f"{self.description} = {self.value}"


@dataclass(frozen=True)
class Verdict:
    status: FanoStatus
    witnesses: tuple[SurfaceWitness, ...] = ()
    rules: tuple[str, ...] = ()
    note: str = ""

    def __str__(self):
        lines = [str(self.status)]
        lines += [f"  witness: {w}" for w in self.witnesses]
        if self.rules:
            lines.append("  rules: " + " -> ".join(self.rules))
        if self.note:
            lines.append(f"  note: {self.note}")
        return "\n".join(lines)


def _w(desc: str, value, certifies: bool = True) -> SurfaceWitness:
    return SurfaceWitness(desc, as_rational(value), certifies)


def sign_verdict(witnesses: Sequence[SurfaceWitness], generating: bool, rule: str) -> Verdict:
    """Negative on an effective class: not weakly. All >0 (>=0) on cone
    generators: 2-Fano (weakly). Anything else is undecided."""
    ws = tuple(witnesses)
    if any(w.value < 0 for w in ws):
        return Verdict(FanoStatus.NOT_WEAKLY, ws, (rule,))
    if generating and ws:
        if all(w.value > 0 for w in ws):
            return Verdict(FanoStatus.TWO_FANO, ws, (rule,))
        return Verdict(FanoStatus.WEAKLY, ws, (rule,))
    return Verdict(FanoStatus.OPEN, ws, (rule, "undecided"))


def not_fano(reason: str) -> Verdict:
    return Verdict(FanoStatus.NOT_FANO, (), ("fano-check",), reason)


# ---------------------------------------------------------------- projective ambients


def classify_proj_space(n: int) -> Verdict:
    Y = ambient_space(ProjSpace(n))
    if n < 2:
        return Verdict(FanoStatus.TWO_FANO, (), ("no-surfaces",))
    h = generator(Y.ambient)
    return sign_verdict([_w(f"ch2.h^{n - 2}", Y.ch_pair(2, h ** (n - 2)))], True, "linear-cone")


def classify_ci_proj(ambient_dim: int, degrees: Sequence[int]) -> Verdict:
    """Complete intersection of the given degrees in P^ambient_dim."""
    degrees = [int(d) for d in degrees]
    if any(d < 1 for d in degrees):
        raise ValueError("degrees must be positive")
    N = ambient_dim
    Y = ambient_space(ProjSpace(N))
    h = generator(Y.ambient)
    X = complete_intersection(Y, [h * d for d in degrees])
    c1 = X.ch.c1.coefficient((1,))
    if c1 <= 0:
        return not_fano(f"c1 = {c1} h")
    if X.dim < 2:
        return Verdict(FanoStatus.TWO_FANO, (), ("no-surfaces",))
    t = X.ch.ch2.coefficient((2,))
    ws = [_w("ch2 coefficient of h^2", t), _w(f"ch2.h^{X.dim - 2}", X.ch_pair(2, h ** (X.dim - 2)))]
    return sign_verdict(ws, True, "ci-projective")


def classify_ci_weighted(weights: Sequence[int], degrees: Sequence[int]) -> Verdict:
    """Quasi-smooth well-formed complete intersection; only the sign of ch2 matters."""
    A = WeightedProj(tuple(weights))
    degrees = [int(d) for d in degrees]
    ch = ch_weighted_proj(A.weights)
    H = generator(A)
    Y = ambient_space(A, ch)
    X = complete_intersection(Y, [H * d for d in degrees])
    c1 = X.ch.c1.coefficient((1,))
    if c1 <= 0:
        return not_fano(f"c1 = {c1} H")
    if X.dim < 2:
        return Verdict(FanoStatus.TWO_FANO, (), ("no-surfaces",))
    t = X.ch.ch2.coefficient((2,))
    return sign_verdict([_w("ch2 coefficient of H^2", t)], True, "ci-weighted")


# ---------------------------------------------------------------- Grassmannians

_S2, _S11 = Partition([2]), Partition([1, 1])


def classify_grassmannian(k: int, n: int) -> Verdict:
    G = Grassmannian(k, n)
    Y = ambient_space(G)
    ws = [_w("ch2.sigma_2*", Y.ch_pair(2, dual_class(G, _S2))), _w("ch2.sigma_11*", Y.ch_pair(2, dual_class(G, _S11)))]
    return sign_verdict(ws, True, "schubert-cone")


def _grass_ci(k: int, n: int, degrees: Sequence[int]) -> Subvariety:
    G = Grassmannian(k, n)
    s1 = generator(G)
    return complete_intersection(ambient_space(G), [s1 * d for d in degrees])


def _sigma1_witness(X: Subvariety) -> SurfaceWitness:
    s1 = generator(X.ambient)
    return _w(f"ch2.sigma_1^{X.dim - 2}", X.ch_pair(2, s1 ** (X.dim - 2)))


def classify_ci_grass(k: int, n: int, degrees: Sequence[int]) -> Verdict:
    degrees = [int(d) for d in degrees]
    if not degrees:
        return classify_grassmannian(k, n)
    if all(d == 1 for d in degrees):
        return classify_linear_section_grass(k, n, len(degrees))
    X = _grass_ci(k, n, degrees)
    c1 = X.ch.c1.coefficient(Partition([1]))
    if c1 <= 0:
        return not_fano(f"c1 = {c1} sigma_1")
    s2 = sum(d * d for d in degrees)
    if s2 >= n - 2 * k + 2:
        w = _sigma1_witness(X)
        return Verdict(FanoStatus.NOT_WEAKLY, (w,), ("grassmannian-ci-bound",))
    return Verdict(FanoStatus.OPEN, (_sigma1_witness(X),), ("grassmannian-ci-bound", "undecided"))


def classify_linear_section_grass(k: int, n: int, c: int) -> Verdict:
    """Codimension-c linear section of G(k, n) in the Plucker embedding."""
    if c == 0:
        return classify_grassmannian(k, n)
    X = _grass_ci(k, n, [1] * c)
    G = X.ambient
    c1 = X.ch.c1.coefficient(Partition([1]))
    if c1 <= 0:
        return not_fano(f"c1 = {c1} sigma_1")
    if X.dim < 2:
        return Verdict(FanoStatus.TWO_FANO, (), ("no-surfaces",))
    a = X.ch.ch2.coefficient(_S2)
    b = X.ch.ch2.coefficient(_S11)
    if c >= n - 2 * k + 2 and not (n == 2 * k and c == 2):
        return Verdict(FanoStatus.NOT_WEAKLY, (_sigma1_witness(X),), ("linear-section-bound",))
    if a > 0 and b > 0:
        # a sigma_2 + b sigma_11 >= min(a, b) sigma_1^2, positive on surfaces
        return Verdict(FanoStatus.TWO_FANO, (_w("ch2 coefficient of sigma_2", a), _w("ch2 coefficient of sigma_11", b)), ("nef-schubert",))
    # surfaces of class sigma_2* and sigma_11* lie on X once c <= k - 1
    cone_surjects = c <= k - 1
    duals = [_w("ch2.sigma_2*", (X.ch.ch2 * dual_class(G, _S2)).degree()),
             _w("ch2.sigma_11*", (X.ch.ch2 * dual_class(G, _S11)).degree())]
    if a >= 0 and b >= 0:
        if a == 0 and b == 0:
            return Verdict(FanoStatus.WEAKLY, (_w("ch2", 0),), ("ch2-vanishes",))
        if cone_surjects:
            return Verdict(FanoStatus.WEAKLY, tuple(duals), ("nef-schubert", "cone-surjects"))
        return Verdict(FanoStatus.OPEN, tuple(duals), ("nef-schubert", "undecided"))
    if cone_surjects:
        return Verdict(FanoStatus.NOT_WEAKLY, tuple(d for d in duals if d.value < 0), ("cone-surjects",))
    w = _sigma1_witness(X)
    if w.value < 0:
        return Verdict(FanoStatus.NOT_WEAKLY, (w,), ("ample-power",))
    return Verdict(FanoStatus.OPEN, (w,), ("ample-power", "undecided"))


# ---------------------------------------------------------------- b4 = 1 ambients


def _reduced_ci(A, degrees: Sequence[int]) -> Verdict:
    from .chern import ch_ambient

    Y = ambient_space(A, ch_ambient(A))
    H = generator(A)
    X = complete_intersection(Y, [H * int(d) for d in degrees])
    c1 = X.ch.c1.coefficient((1,))
    if c1 <= 0:
        return not_fano(f"c1 = {c1} H")
    if X.dim < 2:
        return Verdict(FanoStatus.TWO_FANO, (), ("no-surfaces",))
    t = X.ch.ch2.coefficient((2,))
    return sign_verdict([_w("ch2 coefficient of H^2", t)], True, "b4-one")


def classify_ci_ogplus(k: int, degrees: Sequence[int]) -> Verdict:
    return _reduced_ci(OGPlus(k), degrees)


def classify_ci_sg(k: int, degrees: Sequence[int]) -> Verdict:
    return _reduced_ci(SG(k), degrees)


def classify_ci_rank_one_b4(ambient: RankOnePicBFour, degrees: Sequence[int]) -> Verdict:
    return _reduced_ci(ambient, degrees)


def classify_ci_g2p2(degrees: Sequence[int]) -> Verdict:
    return _reduced_ci(G2P2(), degrees)


# ---------------------------------------------------------------- constructions


def classify_rank_one_surfaces(X: Subvariety, cycle: GradedClass, desc: str) -> Verdict:
    """N^2(X) of rank one spanned by an ample-positive class: the sign of ch2 . cycle decides."""
    return sign_verdict([_w(desc, X.ch_pair(2, cycle))], True, "rank-one-surfaces")


def classify_double_cover(base: Subvariety, branch: GradedClass, cycles: Sequence[tuple[str, GradedClass]],
                          generating: bool, fano: bool | None = None) -> Verdict:
    """Double cover branched along ``branch``; pairings are taken before pulling back."""
    dc = double_cover_ch2(base, branch)
    if fano is None:
        if len(getattr(base.ambient, "generators", ("x",))) != 1 and not isinstance(base.ambient, Grassmannian):
            raise ValueError("Fano check needs a Picard-rank-one base or an explicit flag")
        lab = Partition([1]) if isinstance(base.ambient, Grassmannian) else (1,)
        fano = dc.c1.coefficient(lab) > 0
    if not fano:
        return not_fano("c1(X) is not positive")
    ws = [_w(f"(ch2(Y) - 3/8 B^2).{d}", dc.criterion_pair(c)) for d, c in cycles]
    return sign_verdict(ws, generating, "double-cover-criterion")


def classify_rank2_bundle(base: Subvariety, c1: GradedClass, c2: GradedClass,
                          cycles: Sequence[tuple[str, GradedClass]], generating: bool, fano: bool) -> Verdict:
    """P(E) for E of rank 2: never 2-Fano; weakly iff the criterion class is nonnegative."""
    if not fano:
        return not_fano("P(E) is not Fano")
    crit = rank2_bundle_criterion(base.ch, c1, c2)
    ws = [_w(f"criterion.{d}", base.pair(crit, c)) for d, c in cycles]
    v = sign_verdict(ws, generating, "rank2-bundle-criterion")
    if v.status is FanoStatus.TWO_FANO:
        v = Verdict(FanoStatus.WEAKLY, v.witnesses, v.rules + ("fibres-give-zero",))
    return v


def classify_o_plus_l(dims: Sequence[int], degrees: Sequence[int]) -> Verdict:
    """P(O + O(a_1, ..)) over a product of projective spaces."""
    from .chern import ch_product_proj

    dims = tuple(int(n) for n in dims)
    degrees = tuple(int(a) for a in degrees)
    if len(dims) != len(degrees):
        raise ValueError("one degree per factor")
    if any(abs(a) > n for a, n in zip(degrees, dims)):
        return not_fano("|a_i| > n_i")
    base = ambient_space(ch_product_proj(dims).ambient)
    L = linear_form(base.ambient, degrees)
    cycles = [(base.ambient.format_label(m.items[0][0]), m) for m in monomials_of_codim(base.ambient, base.dim - 2)]
    crit = o_plus_l_criterion(base.ch, L)
    ws = [_w(f"criterion.{d}", base.pair(crit, c)) for d, c in cycles]
    v = sign_verdict(ws, True, "o-plus-l-criterion")
    if v.status is FanoStatus.TWO_FANO:
        v = Verdict(FanoStatus.WEAKLY, v.witnesses, v.rules + ("fibres-give-zero",))
    return v


def classify_del_pezzo_surface(d: int) -> Verdict:
    from .constructions import del_pezzo_ch2

    return sign_verdict([_w("ch2", del_pezzo_ch2(d))], True, "surface")


def product_verdict(*verdicts: Verdict) -> Verdict:
    """X1 x X2 is never 2-Fano; it is weakly 2-Fano iff both factors are."""
    statuses = [v.status for v in verdicts]
    rules = ("product",)
    if FanoStatus.NOT_FANO in statuses:
        return Verdict(FanoStatus.NOT_FANO, (), rules)
    if FanoStatus.NOT_WEAKLY in statuses:
        ws = tuple(w for v in verdicts if v.status is FanoStatus.NOT_WEAKLY for w in v.witnesses)
        return Verdict(FanoStatus.NOT_WEAKLY, ws, rules)
    if FanoStatus.OPEN in statuses:
        return Verdict(FanoStatus.OPEN, (), rules + ("undecided",))
    return Verdict(FanoStatus.WEAKLY, (), rules)


# ---------------------------------------------------------------- descent rules


def double_cover_descent(base_status: FanoStatus, branch_ample: bool) -> Verdict | None:
    """Y not 2-Fano and B ample: the double cover is not weakly 2-Fano."""
    if branch_ample and base_status not in (FanoStatus.TWO_FANO, FanoStatus.OPEN):
        return Verdict(FanoStatus.NOT_WEAKLY, (), ("double-cover-descent",))
    return None


def rho_one_blowup_descent(base_status: FanoStatus, base_picard_rank: int) -> Verdict | None:
    """Picard rank one base not weakly 2-Fano: no blow-up along points and curves is."""
    if base_picard_rank == 1 and base_status is FanoStatus.NOT_WEAKLY:
        return Verdict(FanoStatus.NOT_WEAKLY, (), ("rho-one-blowup-descent",))
    return None


def semiample_descent(pairing) -> Verdict | None:
    """ch2 negative on a base-point-free divisor: blow-ups along points and curves stay negative."""
    if as_rational(pairing) < 0:
        return Verdict(FanoStatus.NOT_WEAKLY, (_w("ch2.T (T base-point-free)", pairing),), ("semiample-descent",))
    return None


def double_cover_semiample_descent(criterion_pairing, branch_ample: bool) -> Verdict | None:
    """(ch2(Y) - 3/8 B^2).T <= 0 for T semiample, B ample: blow-ups of the cover are not weakly 2-Fano."""
    if branch_ample and as_rational(criterion_pairing) <= 0:
        return Verdict(FanoStatus.NOT_WEAKLY, (_w("(ch2(Y) - 3/8 B^2).T", criterion_pairing),), ("double-cover-semiample-descent",))
    return None
