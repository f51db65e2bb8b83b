"""Catalog of classified varieties and its verifier.

Entries live in ``data/catalog.json`` (format in docs/catalog_format.md).
Verification recomputes every witness and every verdict from the recipe;
nothing stored in the file is trusted except the expected values it is
compared against.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import classifier as C
from . import constructions as K
from .algebra import (
    GradedClass,
    Grassmannian,
    OGPlus,
    SG,
    G2P2,
    ProductProj,
    ProjSpace,
    RankOnePicBFour,
    WeightedProj,
    as_rational,
    generator,
    linear_form,
    monomials_of_codim,
)
from .chern import ChernCharacter, ch_ambient
from .classifier import FanoStatus, SurfaceWitness, Verdict
from .schubert import dual_class, schubert_class


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------- parameter substitution

_EXPR = re.compile(r"^\s*([a-z]+|\d+)\s*(?:([+-])\s*([a-z]+|\d+)\s*)?$")


def _term(tok: str, env: dict[str, int], expr: str) -> int:
    if tok.isdigit():
        return int(tok)
    if tok not in env:
        raise CatalogError(f"unbound parameter {tok!r} in {expr!r}")
    return env[tok]


def eval_expr(expr: str, env: dict[str, int]) -> int:
    """Evaluate ``a``, ``a+b`` or ``a-b`` with a, b integers or parameter names."""
    m = _EXPR.match(expr)
    if not m:
        raise CatalogError(f"bad parameter expression {expr!r}")
    a, op, b = m.groups()
    val = _term(a, env, expr)
    if op:
        val = val + _term(b, env, expr) if op == "+" else val - _term(b, env, expr)
    return val


def _mentions(expr: str, env: dict[str, int]) -> bool:
    m = _EXPR.match(expr)
    return bool(m) and any(g in env for g in (m.group(1), m.group(3)) if g)


def substitute(obj: Any, env: dict[str, int]) -> Any:
    """Replace parameter expressions, including those inside ``kind:a,b`` space strings."""
    if isinstance(obj, str) and env:
        if _mentions(obj, env):
            return eval_expr(obj, env)
        head, sep, rest = obj.partition(":")
        if sep and rest:
            parts = [str(eval_expr(x, env)) if _mentions(x, env) else x for x in rest.split(",")]
            return f"{head}:{','.join(parts)}"
        return obj
    if isinstance(obj, list):
        out = []
        for x in obj:
            if isinstance(x, dict) and set(x) == {"repeat", "times"}:
                out.extend([substitute(x["repeat"], env)] * substitute(x["times"], env))
            else:
                out.append(substitute(x, env))
        return out
    if isinstance(obj, dict):
        return {k: substitute(v, env) for k, v in obj.items()}
    return obj


# ---------------------------------------------------------------- spaces and cycles


def parse_ambient(spec: str):
    kind, _, rest = spec.partition(":")
    nums = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    if kind == "proj":
        return ProjSpace(nums[0])
    if kind == "product":
        return ProductProj(tuple(nums))
    if kind in ("grass", "grassmannian"):
        return Grassmannian(nums[0], nums[1])
    if kind == "wproj":
        return WeightedProj(tuple(nums))
    if kind == "ogplus":
        return OGPlus(nums[0])
    if kind == "sg":
        return SG(nums[0])
    if kind == "g2p2":
        return G2P2()
    raise CatalogError(f"unknown ambient {spec!r}")


def build_space(spec) -> K.Subvariety:
    if isinstance(spec, str):
        A = parse_ambient(spec)
        return K.ambient_space(A, ch_ambient(A))
    if not isinstance(spec, dict):
        raise CatalogError(f"bad space spec {spec!r}")
    if "blowup_points" in spec:
        return K.blowup_points(build_space(spec["blowup_points"]), int(spec.get("count", 1)))
    if "product_of" in spec:
        return K.product_space(*[build_space(s) for s in spec["product_of"]])
    if "bundle_over" in spec:
        return K.proj_bundle_space(build_space(spec["bundle_over"]), spec["summands"])
    if "space" in spec:
        X = build_space(spec["space"])
        for kind, copies in spec.get("bundles", []):
            if not isinstance(X.ambient, Grassmannian):
                raise CatalogError("tautological bundles need a Grassmannian ambient")
            E = K.tautological_bundle(X.ambient, kind)
            top = E.chern_classes()[int(E.rank)]
            for _ in range(int(copies)):
                X = K.zero_locus(X, E, top)
        divs = [form(X.ambient, d) for d in spec.get("divisors", [])]
        return K.complete_intersection(X, divs) if divs else X
    raise CatalogError(f"bad space spec {spec!r}")


def form(A, coeffs) -> GradedClass:
    if isinstance(coeffs, (int, str)):
        coeffs = [coeffs]
    return linear_form(A, [as_rational(c) for c in coeffs])


def cycle_factor(A, f) -> GradedClass:
    if isinstance(f, list):
        return form(A, f)
    if isinstance(f, dict):
        if "sigma" in f:
            return schubert_class(A, f["sigma"])
        if "dual" in f:
            return dual_class(A, f["dual"])
        if "mono" in f:
            return GradedClass.basis(A, tuple(f["mono"]))
        if "sum" in f:
            parts = [cycle_factor(A, g) for g in f["sum"]]
            return sum(parts[1:], parts[0])
        if "pow" in f:
            base, e = f["pow"]
            return cycle_factor(A, base) ** int(e)
    raise CatalogError(f"bad cycle factor {f!r}")


def cycle_factors(A, fs) -> list[GradedClass]:
    return [cycle_factor(A, f) for f in (fs or [])]


def poly(A, terms) -> GradedClass:
    out = GradedClass.zero(A)
    for coeff, exps in terms or []:
        out = out + GradedClass.basis(A, tuple(exps), as_rational(coeff))
    return out


# ---------------------------------------------------------------- witness functions


def _arg(args: dict, key: str, default=None):
    v = args.get(key, default)
    if isinstance(v, dict) and "fn" in v:
        return run_witness_fn(v["fn"], v.get("args", {}))
    return v


def _w_pairing(a):
    X = build_space(a["space"])
    fs = cycle_factors(X.ambient, a.get("with"))
    i = int(a.get("ch", 2))
    cls = X.ch.ch(i) if i else GradedClass.one(X.ambient)
    if a.get("restrict", True):
        return X.pair(cls, *fs)
    out = cls
    for f in fs:
        out = out * f
    return out.degree()


def _w_double_cover(a):
    Y = build_space(a["base"])
    dc = K.double_cover_ch2(Y, form(Y.ambient, a["branch"]))
    return dc.criterion_pair(*cycle_factors(Y.ambient, a.get("with")))


def _w_rank2(a):
    B = build_space(a["base"])
    crit = K.rank2_bundle_criterion(B.ch, form(B.ambient, a["c1"]), poly(B.ambient, a.get("c2")))
    return B.pair(crit, *cycle_factors(B.ambient, a.get("with")))


def _w_coefficient(a):
    X = build_space(a["space"])
    return X.ch.ch(int(a.get("ch", 2))).coefficient(tuple(a["label"]))


def _w_ruled(a):
    curve = K.BundleOnCurve(int(a["genus"]), tuple(a["degrees"]), a.get("minus_k"))
    return K.ruled_surface_ch2_dot(a["context"], curve, a["quotient"])


WITNESS_FNS: dict[str, Callable[[dict], Fraction]] = {
    "pairing": _w_pairing,
    "double_cover": _w_double_cover,
    "rank2_criterion": _w_rank2,
    "coefficient": _w_coefficient,
    "ruled_surface": _w_ruled,
    "blowup_curve_E": lambda a: K.blowup_curve_exceptional(int(a["genus"]), a["minus_k"]),
    "blowup_point_E": lambda a: K.blowup_point_exceptional(int(a.get("dim", 3))),
    "blowup_proper_transform": lambda a: K.blowup_curve_proper_transform(_arg(a, "base"), int(a["meets"])),
    "blowup_contained": lambda a: K.blowup_curve_contained(_arg(a, "base"), a["self_int"], int(a["genus"]), a["minus_k"]),
    "blowup_mixed": lambda a: K.blowup_mixed(_arg(a, "base"), int(a.get("curves", 0)), int(a.get("points", 0))),
    "del_pezzo": lambda a: K.del_pezzo_ch2(int(a["d"])),
}


def run_witness_fn(name: str, args: dict) -> Fraction:
    if name not in WITNESS_FNS:
        raise CatalogError(f"unknown witness function {name!r}")
    return as_rational(WITNESS_FNS[name](args))


# ---------------------------------------------------------------- entries


@dataclass(frozen=True)
class WitnessSpec:
    label: str
    fn: str
    args: dict
    expected: Fraction
    provenance: str
    certifies: bool = True
    note: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    location: str
    variety: str
    recipe: dict
    expected_status: FanoStatus | None
    witnesses: tuple[WitnessSpec, ...] = ()
    rules: tuple[dict, ...] = ()
    family: dict | None = None
    paper_claim: str = ""
    open_question: str = ""
    note: str = ""

    def witness(self, label: str) -> WitnessSpec:
        for w in self.witnesses:
            if w.label == label:
                return w
        raise CatalogError(f"{self.id} has no witness {label!r}")


def _entry_from_json(d: dict) -> CatalogEntry:
    for key in ("id", "location", "variety", "recipe"):
        if key not in d:
            raise CatalogError(f"entry missing {key!r}: {d.get('id', d)}")
    ws = []
    for w in d.get("witnesses", []):
        ws.append(WitnessSpec(w["label"], w["fn"], w.get("args", {}), as_rational(w["expected"]),
                              w.get("provenance", "DERIVED"), bool(w.get("certifies", True)), w.get("note", "")))
    st = d.get("expected_status")
    return CatalogEntry(
        id=d["id"], location=d["location"], variety=d["variety"], recipe=d["recipe"],
        expected_status=FanoStatus(st) if st else None, witnesses=tuple(ws), rules=tuple(d.get("rules", [])),
        family=d.get("family"), paper_claim=d.get("paper_claim", ""), open_question=d.get("open_question", ""),
        note=d.get("note", ""),
    )


class Catalog:
    def __init__(self, entries: list[CatalogEntry]):
        self.entries = entries
        self.by_id: dict[str, CatalogEntry] = {}
        for e in entries:
            if e.id in self.by_id:
                raise CatalogError(f"duplicate id {e.id}")
            self.by_id[e.id] = e
        self._status_memo: dict[tuple[str, int | None], Verdict] = {}
        self._witness_memo: dict[tuple[str, str], Fraction] = {}

    @classmethod
    def load(cls, path: str | Path | None = None) -> "Catalog":
        if path is None:
            text = resources.files("twofano").joinpath("data/catalog.json").read_text()
        else:
            text = Path(path).read_text()
        raw = json.loads(text)
        return cls([_entry_from_json(d) for d in raw["entries"]])

    def __getitem__(self, key: str) -> CatalogEntry:
        if key not in self.by_id:
            raise CatalogError(f"unknown catalog id {key!r}")
        return self.by_id[key]

    # -------------------------------------------------------- evaluation

    def witness_value(self, entry_id: str, label: str) -> Fraction:
        key = (entry_id, label)
        if key not in self._witness_memo:
            w = self[entry_id].witness(label)
            self._witness_memo[key] = run_witness_fn(w.fn, w.args)
        return self._witness_memo[key]

    def _factor_verdict(self, f: dict) -> Verdict:
        if "entry" in f:
            return self.verdict(f["entry"], f.get("n"))
        return self.recipe_verdict(f["recipe"])

    def recipe_verdict(self, r: dict) -> Verdict | None:
        kind = r["kind"]
        if kind == "proj-space":
            return C.classify_proj_space(int(r["n"]))
        if kind == "ci-proj":
            return C.classify_ci_proj(int(r["ambient_dim"]), r["degrees"])
        if kind == "ci-weighted":
            return C.classify_ci_weighted(r["weights"], r["degrees"])
        if kind == "grassmannian":
            return C.classify_grassmannian(int(r["k"]), int(r["n"]))
        if kind == "linear-grass":
            return C.classify_linear_section_grass(int(r["k"]), int(r["n"]), int(r["c"]))
        if kind == "ci-grass":
            return C.classify_ci_grass(int(r["k"]), int(r["n"]), r["degrees"])
        if kind == "ci-ogplus":
            return C.classify_ci_ogplus(int(r["k"]), r["degrees"])
        if kind == "ci-sg":
            return C.classify_ci_sg(int(r["k"]), r["degrees"])
        if kind == "ci-g2p2":
            return C.classify_ci_g2p2(r["degrees"])
        if kind == "ci-b4one":
            A = RankOnePicBFour(r["name"], int(r["dim"]), as_rational(r["a"]), int(r["index"]))
            return C.classify_ci_rank_one_b4(A, r["degrees"])
        if kind == "double-cover":
            Y = build_space(r["base"])
            cycles = [(_describe(c), _product(cycle_factors(Y.ambient, c), Y.ambient)) for c in r["cycles"]]
            return C.classify_double_cover(Y, form(Y.ambient, r["branch"]), cycles, bool(r.get("generating")), r.get("fano"))
        if kind == "rank-one-surfaces":
            X = build_space(r["space"])
            return C.classify_rank_one_surfaces(X, _product(cycle_factors(X.ambient, r["cycle"]), X.ambient), _describe(r["cycle"]))
        if kind == "rank2-bundle":
            B = build_space(r["base"])
            if r.get("cycles", "cone") == "cone":
                cycles = [(B.ambient.format_label(m.items[0][0]), m) for m in monomials_of_codim(B.ambient, B.dim - 2)]
            else:
                cycles = [(_describe(c), _product(cycle_factors(B.ambient, c), B.ambient)) for c in r["cycles"]]
            return C.classify_rank2_bundle(B, form(B.ambient, r["c1"]), poly(B.ambient, r.get("c2")), cycles,
                                           bool(r.get("generating", True)), bool(r.get("fano", True)))
        if kind == "o-plus-l":
            return C.classify_o_plus_l(r["dims"], r["degrees"])
        if kind == "product":
            return C.product_verdict(*[self._factor_verdict(f) for f in r["factors"]])
        if kind == "del-pezzo":
            return C.classify_del_pezzo_surface(int(r["d"]))
        if kind == "evidence":
            return None
        raise CatalogError(f"unknown recipe kind {kind!r}")

    def _rule_verdict(self, entry: CatalogEntry, rule: dict) -> Verdict | None:
        name = rule["rule"]
        if name == "double-cover-descent":
            base = self._factor_verdict(rule["base"])
            return C.double_cover_descent(base.status, bool(rule.get("branch_ample")))
        if name == "rho-one-blowup-descent":
            base = self._factor_verdict(rule["base"])
            return C.rho_one_blowup_descent(base.status, int(rule.get("base_picard_rank", 1)))
        if name == "semiample-descent":
            ref = rule["witness"]
            return C.semiample_descent(self.witness_value(ref["entry"], ref["label"]))
        if name == "double-cover-semiample-descent":
            return C.double_cover_semiample_descent(self.witness_value(entry.id, rule["witness"]), bool(rule.get("branch_ample")))
        raise CatalogError(f"unknown rule {name!r}")

    def verdict(self, entry_id: str, n: int | None = None) -> Verdict:
        key = (entry_id, n)
        if key in self._status_memo:
            return self._status_memo[key]
        e = self[entry_id]
        if e.family and n is None:
            raise CatalogError(f"{entry_id} is a family; pass a parameter value")
        env = {e.family["param"]: n} if e.family else {}
        recipe = substitute(e.recipe, env)
        crit = self.recipe_verdict(recipe)
        fired = [v for v in (self._rule_verdict(e, r) for r in e.rules) if v is not None]
        wits: list[SurfaceWitness] = []
        if not e.family:
            for w in e.witnesses:
                wits.append(SurfaceWitness(w.label, self.witness_value(e.id, w.label), w.certifies))
        negative = [w for w in wits if w.certifies and w.value < 0]
        decisive = crit is not None and crit.status is not FanoStatus.OPEN
        if decisive:
            v = Verdict(crit.status, crit.witnesses + tuple(wits), crit.rules, crit.note)
            if crit.status.is_weakly and (fired or negative):
                v = Verdict(crit.status, v.witnesses, v.rules + ("conflict",), "criterion and evidence disagree")
        elif fired or negative:
            rules = tuple(r for f in fired for r in f.rules)
            if negative:
                rules += ("negative-surface",)
            extra = tuple(w for f in fired for w in f.witnesses)
            v = Verdict(FanoStatus.NOT_WEAKLY, tuple(wits) + extra, rules)
        else:
            base = crit.witnesses if crit else ()
            rules = crit.rules if crit else ("undecided",)
            v = Verdict(FanoStatus.OPEN, base + tuple(wits), rules)
        self._status_memo[key] = v
        return v

    # -------------------------------------------------------- verification

    def family_points(self, e: CatalogEntry) -> list[int]:
        f = e.family
        if "values" in f:
            return sorted(int(x) for x in f["values"])
        lo, hi = int(f["min"]), f.get("max")
        pts = set()
        for t in (int(f["two_fano_from"]), int(f["weakly_from"])):
            pts.update({t - 1, t, t + 1})
        pts.add(lo)
        return sorted(p for p in pts if p >= lo and (hi is None or p <= int(hi)))

    @staticmethod
    def family_expected(e: CatalogEntry, n: int) -> FanoStatus:
        f = e.family
        if "values" in f:
            return e.expected_status
        if n >= int(f["two_fano_from"]):
            return FanoStatus.TWO_FANO
        if n >= int(f["weakly_from"]):
            return FanoStatus.WEAKLY
        return FanoStatus.NOT_WEAKLY

    def verify_entry(self, entry_id: str) -> "VerificationResult":
        e = self[entry_id]
        rows: list[Row] = []
        for w in e.witnesses:
            try:
                got = self.witness_value(e.id, w.label)
                rows.append(Row(e.id, w.label, str(w.expected), str(got), got == w.expected))
            except Exception as exc:  # surfaced as a failed row
                rows.append(Row(e.id, w.label, str(w.expected), f"error: {exc}", False))
        statuses: list[str] = []
        if e.family:
            for n in self.family_points(e):
                want = self.family_expected(e, n)
                label = f"status@{e.family['param']}={n}"
                try:
                    got = self.verdict(e.id, n).status
                    rows.append(Row(e.id, label, str(want), str(got), want is got))
                except Exception as exc:
                    rows.append(Row(e.id, label, str(want), f"error: {exc}", False))
            status = "family"
        else:
            try:
                v = self.verdict(e.id)
            except Exception as exc:
                rows.append(Row(e.id, "status", str(e.expected_status), f"error: {exc}", False))
                return VerificationResult(e.id, "error", tuple(rows))
            ok = v.status is e.expected_status and "conflict" not in v.rules
            if v.status is FanoStatus.OPEN and not e.open_question:
                ok = False
            rows.append(Row(e.id, "status", str(e.expected_status), str(v.status), ok))
            status = str(v.status)
        return VerificationResult(e.id, status, tuple(rows))

    def verify_all(self) -> list["VerificationResult"]:
        return [self.verify_entry(e.id) for e in self.entries]


@dataclass(frozen=True)
class Row:
    id: str
    witness: str
    expected: str
    got: str
    ok: bool


@dataclass(frozen=True)
class VerificationResult:
    id: str
    status: str
    rows: tuple[Row, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def _product(fs: list[GradedClass], A) -> GradedClass:
    out = GradedClass.one(A)
    for f in fs:
        out = out * f
    return out


def _describe(factors) -> str:
    return json.dumps(factors, separators=(",", ":"))


# ---------------------------------------------------------------- reports


def report_tsv(results: list[VerificationResult]) -> str:
    lines = ["id\tstatus\twitness\texpected\tgot\tpass"]
    for res in results:
        for r in res.rows:
            lines.append(f"{r.id}\t{res.status}\t{r.witness}\t{r.expected}\t{r.got}\t{'PASS' if r.ok else 'FAIL'}")
    return "\n".join(lines) + "\n"


def report_text(results: list[VerificationResult]) -> str:
    lines = []
    for res in results:
        flag = "PASS" if res.passed else "FAIL"
        lines.append(f"{flag}  {res.id}  {res.status}")
        for r in res.rows:
            if not r.ok:
                lines.append(f"      {r.witness}: expected {r.expected}, got {r.got}")
    n_pass = sum(r.passed for r in results)
    n_open = sum(r.status == "Open" for r in results)
    lines.append(f"entries: {len(results)}  pass: {n_pass}  fail: {len(results) - n_pass}  open: {n_open}")
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return Catalog.load()
