"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 validation failure, 3 law or expectation
failure.  All numbers are printed as exact fraction strings.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import ratmat
from .catcore import (InvalidCategory, InvalidFunctor, SourceTargetMismatch,
                      adjacency, check_adjunction_matrices, hom_count_witness)
from .constructions import (InvalidDiagram, chi_diagram_row, chi_inclusion_exclusion,
                            coproduct, grothendieck, product)
from .fileio import (ParseError, category_from_data, category_to_data, detect_kind,
                     diagram_from_data, dump, functor_from_data, load_category,
                     load_diagram, load_functor, matrix_from_data, read_json)
from .laws import LawRunConfig, run_laws
from .manifest import CORPUS_DIR, check_entry, load_manifest
from .weights import (PreconditionFailed, chi_adjunction_transport, coweighting,
                      matrix_report, weighting)

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class _Out:
    def __init__(self, pretty: bool):
        self.pretty = pretty

    def __call__(self, data) -> None:
        print(dump(data, self.pretty))


def _matrix_or_adjacency(path: str):
    """Load a matrix file, or a category file as its adjacency matrix."""
    data = read_json(path)
    if detect_kind(data) == "matrix":
        return matrix_from_data(data)
    if detect_kind(data) != "category":
        raise ParseError(f"{path}: expected a matrix or category file")
    return adjacency(category_from_data(data).require_valid())


def _vector(m):
    return None if m is None else [str(x) for x in m.entries]


def cmd_chi(args, out) -> int:
    out(matrix_report(_matrix_or_adjacency(args.file)).to_json())
    return EXIT_OK


def cmd_pinv(args, out) -> int:
    out(ratmat.to_json(ratmat.pinv(_matrix_or_adjacency(args.file))))
    return EXIT_OK


def cmd_weighting(args, out) -> int:
    m = _matrix_or_adjacency(args.file)
    if not m.is_square:
        raise ratmat.DimensionMismatch(f"expected a square matrix, got {m.shape}")
    w = weighting(m) if args.command == "weighting" else coweighting(m)
    out({"exists": w is not None, args.command: _vector(w)})
    return EXIT_OK


def cmd_product(args, out) -> int:
    a = load_category(args.a).require_valid()
    b = load_category(args.b).require_valid()
    out(category_to_data(product(a, b) if args.command == "product" else coproduct(a, b)))
    return EXIT_OK


def cmd_groth(args, out) -> int:
    d = load_diagram(args.diagram).require_valid()
    res = chi_inclusion_exclusion(d)
    total = grothendieck(d).total
    g = adjacency(total)
    out({
        "objects": list(total.objects),
        "adjacency": [[str(x) for x in g.row(i)] for i in range(g.rows)],
        "chi_row": _vector(chi_diagram_row(d)),
        "actual": str(res.actual),
        "predicted": str(res.predicted),
        "applies": res.applies,
    })
    return EXIT_OK


def cmd_check(args, out) -> int:
    data = read_json(args.file)
    kind = detect_kind(data)
    base = Path(args.file).parent
    if kind == "matrix":
        m = matrix_from_data(data)
        out({"kind": kind, "valid": True, "shape": list(m.shape)})
        return EXIT_OK
    if kind == "category":
        violations = category_from_data(data).violations
    elif kind == "functor":
        violations = functor_from_data(data, base).violations
    else:
        violations = diagram_from_data(data, base).violations
    out({"kind": kind, "valid": not violations,
         "violations": [v.to_json() for v in violations]})
    return EXIT_INVALID if violations else EXIT_OK


def cmd_adjoint(args, out) -> int:
    cache: dict = {}
    l = load_functor(args.left, cache).require_valid()
    r = load_functor(args.right, cache).require_valid()
    ok = check_adjunction_matrices(l, r)
    report = {"hom_counts": ok, "witness": None, "transport": None, "reason": None}
    if not ok:
        a, b, lhs, rhs = hom_count_witness(l, r)
        report["witness"] = {"a": a, "b": b, "hom_A(a,Rb)": lhs, "hom_B(La,b)": rhs}
    try:
        report["transport"] = chi_adjunction_transport(l.source, l.target, l, r)
    except PreconditionFailed as exc:
        report["reason"] = str(exc)
    out(report)
    return EXIT_OK


def cmd_verify_laws(args, out) -> int:
    cfg = LawRunConfig(seed=args.seed, count=args.count,
                       max_objects=args.max_objects, max_hom=args.max_hom)
    summary = run_laws(cfg)
    out(summary.to_json())
    return EXIT_OK if summary.ok else EXIT_FAILED


def cmd_corpus(args, out) -> int:
    manifest = Path(args.manifest) if args.manifest else CORPUS_DIR / "manifest.json"
    results, failed = [], False
    for entry in load_manifest(manifest):
        mism = check_entry(entry, manifest.parent)
        failed = failed or bool(mism)
        results.append({"name": entry.name, "ok": not mism, "mismatches": mism})
    out({"entries": results, "ok": not failed})
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def format_flags(default):
        parent = argparse.ArgumentParser(add_help=False)
        g = parent.add_mutually_exclusive_group()
        g.add_argument("--json", dest="pretty", action="store_false", default=default,
                       help="compact JSON (default)")
        g.add_argument("--pretty", dest="pretty", action="store_true", default=default,
                       help="indented JSON")
        return parent

    # subcommands must not reset a flag given before the subcommand name
    fmt = format_flags(argparse.SUPPRESS)

    p = _Parser(prog="eulercat", parents=[format_flags(False)],
                                description="Exact Euler measures of finite categories.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[fmt], help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("chi", cmd_chi, "Euler measure and (co)weightings").add_argument("file")
    add("pinv", cmd_pinv, "exact Moore-Penrose inverse").add_argument("file")
    add("weighting", cmd_weighting, "weighting M+1 if one exists").add_argument("file")
    add("coweighting", cmd_weighting, "coweighting 1*M+ if one exists").add_argument("file")
    for name in ("product", "coproduct"):
        sp = add(name, cmd_product, f"{name} of two categories")
        sp.add_argument("a")
        sp.add_argument("b")
    add("groth", cmd_groth, "Grothendieck construction and inclusion-exclusion").add_argument("diagram")
    add("check", cmd_check, "validate any supported file").add_argument("file")
    sp = add("adjoint", cmd_adjoint, "hom-count test and chi transport for L -| R")
    sp.add_argument("left")
    sp.add_argument("right")
    sp = add("verify-laws", cmd_verify_laws, "randomized law verification")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--count", type=int, default=50)
    sp.add_argument("--max-objects", type=int, default=4)
    sp.add_argument("--max-hom", type=int, default=3)
    sp = add("corpus", cmd_corpus, "check the bundled examples against their expected values")
    sp.add_argument("--manifest", help="alternative manifest.json")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.pretty)
    try:
        return args.func(args, out)
    except (InvalidCategory, InvalidFunctor, InvalidDiagram) as exc:
        out({"error": str(exc), "violations": [v.to_json() for v in exc.violations]})
        return EXIT_INVALID
    except (ParseError, ratmat.RatMatError, SourceTargetMismatch, ValueError, OSError) as exc:
        print(f"eulercat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
