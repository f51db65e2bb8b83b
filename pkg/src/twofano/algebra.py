"""Exact graded cohomology classes over a small family of ambient rings.

Every class is a finite sum of basis labels with rational coefficients.
Labels are tuples of ints: a partition for a Grassmannian, an exponent
vector for rings generated by divisors, and ``(c,)`` for rings with a
single generator. Zero coefficients never survive construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product as iproduct
from math import gcd
from typing import Callable, Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]
Label = tuple


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/2"`` to a Fraction."""
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or string")
    return Fraction(x)


class Partition(tuple):
    """A weakly decreasing tuple of positive ints; trailing zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def fits(self, rows: int, cols: int) -> bool:
        return len(self) <= rows and (not self or self[0] <= cols)

    def complement(self, rows: int, cols: int) -> "Partition":
        """Box complement read backwards: the Poincare dual index."""
        if not self.fits(rows, cols):
            raise ValueError(f"{list(self)} does not fit a {rows}x{cols} box")
        padded = list(self) + [0] * (rows - len(self))
        return Partition(cols - p for p in reversed(padded))

    def __repr__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


def boxed_partitions(rows: int, cols: int, weight: int | None = None) -> list[Partition]:
    """All partitions in a rows x cols box, optionally of a fixed weight."""
    out: list[Partition] = []

    def rec(prefix: list[int], bound: int, left: int | None):
        if len(prefix) == rows:
            if left in (None, 0):
                out.append(Partition(prefix))
            return
        for p in range(bound, -1, -1):
            if left is not None and p > left:
                continue
            rec(prefix + [p], p, None if left is None else left - p)

    rec([], cols, weight)
    return out


def _label_key(label: Label):
    return (sum(label), tuple(-x for x in label))


# ---------------------------------------------------------------- ambients


class Ambient:
    """Base of all ambient rings. Subclasses are frozen dataclasses."""

    dim: int

    def codim(self, label: Label) -> int:
        return sum(label)

    def valid(self, label: Label) -> bool:
        raise NotImplementedError

    def mul_labels(self, a: Label, b: Label) -> Mapping[Label, Scalar]:
        raise NotImplementedError

    def top_degree(self, label: Label) -> Fraction:
        """Integral of a top-codimension basis element."""
        raise ValueError(f"{self} has no degree map")

    def unit_label(self) -> Label:
        raise NotImplementedError

    def format_label(self, label: Label) -> str:
        return repr(label)

    @property
    def max_codim(self) -> int:
        return self.dim


class _MonomialAmbient(Ambient):
    """Rings presented as polynomials in named divisor generators."""

    generators: tuple[str, ...]

    def unit_label(self) -> Label:
        return (0,) * len(self.generators)

    def gen_label(self, i: int, power: int = 1) -> Label:
        e = [0] * len(self.generators)
        e[i] = power
        return tuple(e)

    def mul_labels(self, a, b):
        c = tuple(x + y for x, y in zip(a, b))
        return {c: 1} if self.valid(c) else {}

    def format_label(self, label):
        if not any(label):
            return "1"
        bits = []
        for name, e in zip(self.generators, label):
            if e == 1:
                bits.append(name)
            elif e > 1:
                bits.append(f"{name}^{e}")
        return "*".join(bits)

    def integrate_monomial(self, exps: Label) -> Fraction:
        raise ValueError(f"{self} has no degree map")

    def top_degree(self, label):
        return self.integrate_monomial(label)


@dataclass(frozen=True)
class ProjSpace(_MonomialAmbient):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("projective space needs n >= 0")

    @property
    def dim(self):
        return self.n

    @property
    def generators(self):
        return ("h",)

    def valid(self, label):
        return len(label) == 1 and 0 <= label[0] <= self.n

    def integrate_monomial(self, exps):
        return Fraction(1) if exps == (self.n,) else Fraction(0)

    def __str__(self):
        return f"P^{self.n}"


@dataclass(frozen=True)
class WeightedProj(_MonomialAmbient):
    """Well-formed weighted projective space; only the H-graded ring is used."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2 or any(x < 1 for x in w):
            raise ValueError("weights must be positive and at least two")
        if reduce(gcd, w) != 1:
            raise ValueError(f"weights {w} are not coprime")

    @property
    def dim(self):
        return len(self.weights) - 1

    @property
    def generators(self):
        return ("H",)

    def valid(self, label):
        return len(label) == 1 and 0 <= label[0] <= self.dim

    def __str__(self):
        return "P(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class ProductProj(_MonomialAmbient):
    dims: tuple[int, ...]

    def __post_init__(self):
        d = tuple(int(x) for x in self.dims)
        object.__setattr__(self, "dims", d)
        if any(x < 0 for x in d):
            raise ValueError("factor dimensions must be >= 0")

    @property
    def dim(self):
        return sum(self.dims)

    @property
    def generators(self):
        if len(self.dims) == 1:
            return ("h",)
        return tuple(f"h{i + 1}" for i in range(len(self.dims)))

    def valid(self, label):
        return len(label) == len(self.dims) and all(0 <= e <= n for e, n in zip(label, self.dims))

    def integrate_monomial(self, exps):
        return Fraction(1) if tuple(exps) == self.dims else Fraction(0)

    def __str__(self):
        return "x".join(f"P^{n}" for n in self.dims) or "pt"


@dataclass(frozen=True)
class ChowRing(_MonomialAmbient):
    """Free polynomial ring in divisor generators with a monomial integral.

    Classes are not reduced modulo relations, so equality of classes is only
    meaningful after pairing. ``integral`` is excluded from equality.
    """

    name: str
    generators: tuple[str, ...]
    dim: int
    integral: Callable[[Label], Fraction] = field(compare=False, hash=False, repr=False)

    def valid(self, label):
        return len(label) == len(self.generators) and all(e >= 0 for e in label) and sum(label) <= self.dim

    def integrate_monomial(self, exps):
        if sum(exps) != self.dim:
            return Fraction(0)
        return Fraction(self.integral(tuple(exps)))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Grassmannian(Ambient):
    """G(k, n) of k-planes in C^n; Schubert basis indexed by boxed partitions."""

    k: int
    n: int

    def __post_init__(self):
        if not (2 <= self.k and 2 * self.k <= self.n):
            raise ValueError(f"need 2 <= k <= n/2, got k={self.k}, n={self.n}")

    @property
    def dim(self):
        return self.k * (self.n - self.k)

    def valid(self, label):
        return isinstance(label, tuple) and Partition(label).fits(self.k, self.n - self.k)

    def unit_label(self):
        return Partition()

    def mul_labels(self, a, b):
        from .schubert import lr_product_terms

        return lr_product_terms(Partition(a), Partition(b), self.k, self.n)

    def top_degree(self, label):
        full = Partition([self.n - self.k] * self.k)
        return Fraction(1) if Partition(label) == full else Fraction(0)

    def format_label(self, label):
        return repr(Partition(label))

    def __str__(self):
        return f"G({self.k},{self.n})"


class _ReducedRing(_MonomialAmbient):
    """Picard rank one, b4 = 1: classes a*H^c, modelled through codim 2."""

    @property
    def generators(self):
        return ("H",)

    @property
    def max_codim(self):
        return min(2, self.dim)

    def valid(self, label):
        return len(label) == 1 and 0 <= label[0] <= self.max_codim


@dataclass(frozen=True)
class OGPlus(_ReducedRing):
    """Spinor component OG+(k, 2k); H is half of the Plucker class."""

    k: int

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("OG+(k,2k) needs k >= 3")

    @property
    def dim(self):
        return self.k * (self.k - 1) // 2

    def __str__(self):
        return f"OG+({self.k},{2 * self.k})"


@dataclass(frozen=True)
class SG(_ReducedRing):
    """Lagrangian Grassmannian SG(k, 2k); H is the Plucker class."""

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("SG(k,2k) needs k >= 2")

    @property
    def dim(self):
        return self.k * (self.k + 1) // 2

    def __str__(self):
        return f"SG({self.k},{2 * self.k})"


@dataclass(frozen=True)
class RankOnePicBFour(_ReducedRing):
    """Fano manifold with Pic = Z.H, b4 = 1, c1 = index*H and ch2 = a*H^2."""

    name: str
    dim: int
    a: Fraction
    index: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))

    def __str__(self):
        return self.name


def G2P2() -> RankOnePicBFour:
    """The 5-dimensional adjoint G2 variety: index 3, ch2 = H^2/2."""
    return RankOnePicBFour("G2/P2", 5, Fraction(1, 2), 3)


# ---------------------------------------------------------------- classes


@dataclass(frozen=True)
class GradedClass:
    """Immutable rational combination of basis labels of one ambient."""

    ambient: Ambient
    items: tuple[tuple[Label, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, ambient: Ambient, terms: Mapping[Label, Scalar] | Iterable) -> "GradedClass":
        acc: dict[Label, Fraction] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for label, coeff in pairs:
            label = Partition(label) if isinstance(ambient, Grassmannian) else tuple(label)
            if not ambient.valid(label):
                continue
            acc[label] = acc.get(label, Fraction(0)) + as_rational(coeff)
        kept = sorted(((lab, c) for lab, c in acc.items() if c != 0), key=lambda t: _label_key(t[0]))
        return cls(ambient, tuple(kept))

    @classmethod
    def zero(cls, ambient: Ambient) -> "GradedClass":
        return cls(ambient, ())

    @classmethod
    def one(cls, ambient: Ambient) -> "GradedClass":
        return cls.from_terms(ambient, {ambient.unit_label(): 1})

    @classmethod
    def basis(cls, ambient: Ambient, label: Label, coeff: Scalar = 1) -> "GradedClass":
        """A single basis element; labels outside the ring give zero."""
        return cls.from_terms(ambient, {label: coeff})

    @property
    def terms(self) -> dict[Label, Fraction]:
        return dict(self.items)

    def coefficient(self, label: Label) -> Fraction:
        label = Partition(label) if isinstance(self.ambient, Grassmannian) else tuple(label)
        return self.terms.get(label, Fraction(0))

    def component(self, c: int) -> "GradedClass":
        return GradedClass(self.ambient, tuple(t for t in self.items if self.ambient.codim(t[0]) == c))

    def codims(self) -> list[int]:
        return sorted({self.ambient.codim(lab) for lab, _ in self.items})

    def truncate(self, max_codim: int) -> "GradedClass":
        return GradedClass(self.ambient, tuple(t for t in self.items if self.ambient.codim(t[0]) <= max_codim))

    def is_zero(self) -> bool:
        return not self.items

    def _check(self, other: "GradedClass"):
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedClass.one(self.ambient) * other
        self._check(other)
        return GradedClass.from_terms(self.ambient, list(self.items) + list(other.items))

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ambient, tuple((lab, -c) for lab, c in self.items))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedClass.from_terms(self.ambient, [(lab, c * other) for lab, c in self.items])
        if isinstance(other, str):
            return self * as_rational(other)
        self._check(other)
        acc: dict[Label, Fraction] = {}
        for la, ca in self.items:
            for lb, cb in other.items:
                for lab, m in self.ambient.mul_labels(la, lb).items():
                    acc[lab] = acc.get(lab, Fraction(0)) + ca * cb * m
        return GradedClass.from_terms(self.ambient, acc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are undefined")
        out = GradedClass.one(self.ambient)
        for _ in range(e):
            out = out * self
        return out

    def degree(self) -> Fraction:
        """Integral over the ambient; only top-codimension terms contribute."""
        total = Fraction(0)
        for lab, c in self.items:
            if self.ambient.codim(lab) == self.ambient.dim:
                total += c * self.ambient.top_degree(lab)
        return total

    def __str__(self):
        if not self.items:
            return "0"
        out = []
        for i, (lab, c) in enumerate(self.items):
            name = self.ambient.format_label(lab)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 and name != "1" else (str(mag) if name == "1" else f"{mag}*{name}")
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)


def add_graded(a: GradedClass, b: GradedClass) -> GradedClass:
    return a + b


def scale_graded(q: Scalar, a: GradedClass) -> GradedClass:
    return a * as_rational(q)


def generator(ambient: Ambient, i: int = 0, power: int = 1) -> GradedClass:
    """The i-th divisor generator (sigma_1 on a Grassmannian) raised to ``power``."""
    if isinstance(ambient, Grassmannian):
        if i != 0:
            raise ValueError("a Grassmannian has one divisor generator")
        return GradedClass.basis(ambient, Partition([1])) ** power
    return GradedClass.basis(ambient, ambient.gen_label(i, power))


def linear_form(ambient: Ambient, coeffs: Iterable[Scalar]) -> GradedClass:
    """Sum of coeffs[i] times the i-th divisor generator."""
    coeffs = list(coeffs)
    out = GradedClass.zero(ambient)
    for i, c in enumerate(coeffs):
        if c:
            out = out + generator(ambient, i) * as_rational(c)
    return out


# ---------------------------------------------------------------- ring builders


def ring_product(*rings: _MonomialAmbient, name: str | None = None) -> ChowRing:
    """Product of monomial rings; generators are concatenated."""
    gens: list[str] = []
    slices = []
    for r in rings:
        slices.append((len(gens), len(gens) + len(r.generators)))
        gens.extend(f"{g}" for g in r.generators)
    if len(set(gens)) != len(gens):
        gens = [f"{g}{j + 1}" for j, r in enumerate(rings) for g in r.generators]

    def integral(exps):
        total = Fraction(1)
        for r, (lo, hi) in zip(rings, slices):
            part = exps[lo:hi]
            if sum(part) != r.dim:
                return Fraction(0)
            total *= r.integrate_monomial(part)
        return total

    return ChowRing(name or "x".join(map(str, rings)), tuple(gens), sum(r.dim for r in rings), integral)


def pullback(cls: GradedClass, target: _MonomialAmbient, offset: int = 0) -> GradedClass:
    """Transport exponent labels into ``target`` at generator position ``offset``."""
    width = len(target.generators)
    terms = []
    for lab, c in cls.items:
        e = [0] * width
        e[offset:offset + len(lab)] = lab
        terms.append((tuple(e), c))
    return GradedClass.from_terms(target, terms)


def blow_up_points_ring(base: _MonomialAmbient, count: int = 1, name: str | None = None) -> ChowRing:
    """Blow-up of ``count`` general points: new generators e1..; e_i^dim = (-1)^(dim-1)."""
    d = base.dim
    nb = len(base.generators)

    def integral(exps):
        b, es = exps[:nb], exps[nb:]
        nz = [x for x in es if x]
        if not nz:
            return base.integrate_monomial(b)
        if len(nz) == 1 and not any(b) and nz[0] == d:
            return Fraction((-1) ** (d - 1))
        return Fraction(0)

    gens = tuple(base.generators) + tuple(f"e{i + 1}" if count > 1 else "e" for i in range(count))
    return ChowRing(name or f"Bl_{count}pt({base})", gens, d, integral)


def projective_bundle_ring(base: _MonomialAmbient, chern: list[GradedClass], name: str | None = None) -> ChowRing:
    """P(E) = Proj Sym E over ``base`` with xi = c1(O(1)).

    ``chern`` lists c_1(E), ..., c_r(E) as classes on ``base``. The relation
    sum (-1)^i c_i(E) xi^(r-i) = 0 drives the pushforward of xi powers.
    """
    r = len(chern)
    if r < 1:
        raise ValueError("bundle rank must be >= 1")
    for i, c in enumerate(chern):
        if c.ambient != base:
            raise ValueError("Chern classes must live on the base")
        if any(base.codim(lab) != i + 1 for lab, _ in c.items):
            raise ValueError(f"c_{i + 1} has the wrong codimension")
    nb = len(base.generators)
    memo: dict[int, GradedClass] = {}

    def push_xi(j: int) -> GradedClass:
        if j in memo:
            return memo[j]
        if j < r - 1:
            out = GradedClass.zero(base)
        elif j == r - 1:
            out = GradedClass.one(base)
        else:
            out = GradedClass.zero(base)
            for i in range(1, r + 1):
                out = out + chern[i - 1] * push_xi(j - i) * ((-1) ** (i + 1))
        memo[j] = out
        return out

    def integral(exps):
        b, j = exps[:nb], exps[nb]
        return (GradedClass.basis(base, b) * push_xi(j)).degree()

    return ChowRing(name or f"P_{base}(E)", tuple(base.generators) + ("xi",), base.dim + r - 1, integral)


def line_bundle_sum_chern(base: _MonomialAmbient, summands: list[Iterable[Scalar]]) -> list[GradedClass]:
    """Chern classes c_1..c_r of a sum of line bundles given by divisor coefficients."""
    total = [GradedClass.one(base)]
    for s in summands:
        d = linear_form(base, s)
        nxt = [GradedClass.zero(base) for _ in range(len(total) + 1)]
        for i, c in enumerate(total):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] + c * d
        total = nxt
    return total[1:]


def monomials_of_codim(ambient: _MonomialAmbient, c: int) -> list[GradedClass]:
    """Basis monomials of codimension c, in canonical order."""
    n = len(ambient.generators)
    out = []
    for e in iproduct(range(c + 1), repeat=n):
        if sum(e) == c and ambient.valid(tuple(e)):
            out.append(GradedClass.basis(ambient, tuple(e)))
    out.sort(key=lambda g: _label_key(g.items[0][0]))
    return out
