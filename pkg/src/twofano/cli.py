"""Command line entry point: verify, ch, classify, schubert.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import classifier as C
from .algebra import G2P2, Grassmannian, Partition, RankOnePicBFour
from .catalog import Catalog, CatalogError, parse_ambient, report_text, report_tsv
from .chern import ch_ambient, ch_og, ch_sg
from .schubert import degree, dual_class, lr_multiply, schubert_class


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _partition(text: str) -> Partition:
    parts = [p for p in _ints(text) if p]
    try:
        return Partition(parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- subcommands


def cmd_verify(args) -> int:
    try:
        cat = Catalog.load(args.catalog)
        if args.entry:
            results = [cat.verify_entry(i) for i in args.entry]
        else:
            results = cat.verify_all()
    except (CatalogError, OSError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    out = report_tsv(results) if args.format == "tsv" else report_text(results)
    sys.stdout.write(out)
    return 0 if all(r.passed for r in results) else 1


def space_character(spec: str):
    """Tangent character for ``ch --space``; og/sg with two numbers stay on G(k, n)."""
    kind, _, rest = spec.partition(":")
    nums = _ints(rest)
    if kind == "og":
        if len(nums) != 2:
            raise UsageError("og needs k,n")
        return ch_og(*nums)
    if kind == "sg" and len(nums) == 2:
        return ch_sg(*nums)
    if kind == "grassmannian":
        spec = "grass:" + rest
    try:
        return ch_ambient(parse_ambient(spec))
    except (CatalogError, ValueError, IndexError) as exc:
        raise UsageError(f"bad space {spec!r}: {exc}") from None


def cmd_ch(args) -> int:
    print(space_character(args.space))
    return 0


def cmd_classify(args) -> int:
    kind = args.kind
    degs = _ints(args.degrees or "")
    try:
        if kind == "ci-proj":
            v = C.classify_ci_proj(_need(args.ambient_dim, "--ambient-dim"), degs)
        elif kind == "ci-weighted":
            v = C.classify_ci_weighted(_ints(_need(args.weights, "--weights")), degs)
        elif kind == "ci-grass":
            v = C.classify_ci_grass(_need(args.k, "--k"), _need(args.n, "--n"), degs)
        elif kind == "linear-grass":
            v = C.classify_linear_section_grass(_need(args.k, "--k"), _need(args.n, "--n"), _need(args.c, "--c"))
        elif kind == "ci-ogplus":
            v = C.classify_ci_ogplus(args.k or 5, degs)
        elif kind == "ci-sg":
            v = C.classify_ci_sg(args.k or 3, degs)
        else:
            if args.name is None:
                A = G2P2()
            else:
                A = RankOnePicBFour(args.name, _need(args.dim, "--dim"), Fraction(_need(args.a, "--a")),
                                    _need(args.index, "--index"))
            v = C.classify_ci_rank_one_b4(A, degs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(v)
    return 0


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_schubert(args) -> int:
    try:
        G = Grassmannian(args.k, args.n)
        parts = [_partition(p) for p in args.partitions]
        if args.op == "dual":
            if len(parts) != 1:
                raise UsageError("dual takes exactly one partition")
            print(dual_class(G, parts[0]))
            return 0
        if not parts:
            raise UsageError(f"{args.op} needs at least one partition")
        prod = schubert_class(G, parts[0])
        for p in parts[1:]:
            prod = _mul(G, prod, p, args.route)
        print(prod if args.op == "mul" else degree(prod))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return 0


def _mul(G, x, p: Partition, route: str):
    out = None
    for lab, c in x.items:
        term = lr_multiply(G, lab, p, route=route) * c
        out = term if out is None else out + term
    return out if out is not None else x


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twofano", description="Second Chern character checks for Fano manifolds.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="recompute and check the catalog")
    v.add_argument("--catalog", help="catalog JSON (default: the packaged one)")
    v.add_argument("--entry", action="append", help="entry id; repeatable")
    v.add_argument("--format", choices=("text", "tsv"), default="text")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("ch", help="print the tangent Chern character of a space")
    c.add_argument("--space", required=True,
                   help="proj:n | wproj:a0,a1,... | grassmannian:k,n | og:k,n | ogplus:k | sg:k,n | sg:k | g2p2 | product:n1,n2,...")
    c.set_defaults(func=cmd_ch)

    k = sub.add_parser("classify", help="classify a complete intersection")
    k.add_argument("kind", choices=("ci-proj", "ci-weighted", "ci-grass", "linear-grass", "ci-ogplus", "ci-sg", "ci-b4one"))
    k.add_argument("--ambient-dim", type=int)
    k.add_argument("--weights")
    k.add_argument("--degrees", default="")
    k.add_argument("--k", type=int)
    k.add_argument("--n", type=int)
    k.add_argument("--c", type=int)
    k.add_argument("--name", help="ci-b4one ambient name (default: G2/P2)")
    k.add_argument("--dim", type=int)
    k.add_argument("--a", help="ci-b4one: ch2 = a H^2")
    k.add_argument("--index", type=int)
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("schubert", help="Schubert calculus on G(k, n)")
    ops = s.add_subparsers(dest="op", required=True)
    for op, text in (("mul", "product of the classes"), ("degree", "degree of the product"),
                     ("dual", "box-complement dual of one class")):
        o = ops.add_parser(op, help=text)
        o.add_argument("--k", type=int, required=True)
        o.add_argument("--n", type=int, required=True)
        o.add_argument("--route", choices=("pieri", "tableaux"), default="pieri")
        o.add_argument("partitions", nargs="+", help="partitions as comma lists, e.g. 2,1")
        o.set_defaults(func=cmd_schubert)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"twofano {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
