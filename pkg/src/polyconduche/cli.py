"""Command-line surface.

Every command prints one JSON document (or DOT with --dot) and exits with
0 for Pass/success, 1 for Fail/NotBasis/Distinct, 2 for Unknown, and 3 for
usage or schema errors. Output is byte-identical across runs for identical
inputs and flags.
"""

from __future__ import annotations

import argparse
import sys

from .categories import validate_category, validate_functor
from .conduche import (
    ExtensionMorphism,
    FiberQuery,
    check_conduche,
    check_extension_morphism,
    check_fiber_bijection,
    fiber_conduche,
)
from .constructions import pullback, slice_1cat
from .errors import PolyconducheError, SchemaError
from .manifests import (
    CATEGORY,
    EXTENSION,
    FUNCTOR,
    category_to_json,
    dump_json,
    functor_to_json,
    load_document,
    save_document,
)
from .movements import (
    DISTINCT,
    UNKNOWN,
    WITNESS,
    SearchBounds,
    apply_movement,
    enumerate_movements,
    equivalent,
    movement_graph_dot,
)
from .polygraphs import (
    BasisBounds,
    check_basis,
    default_word_bound,
    indecomposables,
    transfer_basis,
)
from .terms import check_extension, check_term
from .words import serialize, tokenize

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

_VERDICT_EXIT = {
    WITNESS: EXIT_OK,
    "Pass": EXIT_OK,
    "Basis": EXIT_OK,
    DISTINCT: EXIT_FAIL,
    "Fail": EXIT_FAIL,
    "NotBasis": EXIT_FAIL,
    UNKNOWN: EXIT_UNKNOWN,
    "Unknown": EXIT_UNKNOWN,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here reserves 2 for
    Unknown, so usage errors exit 3 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc: dict) -> None:
    sys.stdout.write(dump_json(doc))


def _search_bounds(args) -> SearchBounds:
    return SearchBounds(
        size_slack=args.size_slack,
        max_steps=args.max_steps,
        max_visited=SearchBounds.from_env().max_visited,
    )


def _bounds_meta(bounds: SearchBounds) -> dict:
    return {
        "size_slack": bounds.size_slack,
        "max_steps": bounds.max_steps,
        "max_visited": bounds.max_visited,
    }


def _add_search_flags(sub) -> None:
    sub.add_argument(
        "--size-slack",
        type=int,
        default=SearchBounds.size_slack,
        help="extra word size the equivalence search may explore",
    )
    sub.add_argument(
        "--max-steps",
        type=int,
        default=SearchBounds.max_steps,
        help="movement steps allowed on a witness path",
    )


def _violations_json(report) -> list:
    return [[tag, list(detail)] for tag, detail in report.violations]


def cmd_validate(args) -> int:
    kind, obj = load_document(args.path)
    violations: list = []
    try:
        if kind == CATEGORY:
            report = validate_category(obj)
            violations = _violations_json(report)
        elif kind == EXTENSION:
            report = validate_category(obj.base)
            violations = _violations_json(report)
            if report.ok:
                check_extension(obj)
        elif isinstance(obj, ExtensionMorphism):
            for extension in (obj.source, obj.target):
                report = validate_category(extension.base)
                violations.extend(_violations_json(report))
                if report.ok:
                    check_extension(extension)
            if not violations:
                check_extension_morphism(obj)
        else:
            for category in (obj.source, obj.target):
                violations.extend(_violations_json(validate_category(category)))
            if not violations:
                violations.extend(_violations_json(validate_functor(obj)))
    except PolyconducheError as exc:
        _emit(
            {
                "kind": kind,
                "verdict": "Fail",
                "error": {"type": type(exc).__name__, "message": str(exc)},
            }
        )
        return EXIT_FAIL
    if violations:
        _emit({"kind": kind, "verdict": "Fail", "violations": violations})
        return EXIT_FAIL
    _emit({"kind": kind, "verdict": "Pass"})
    return EXIT_OK


def cmd_equiv(args) -> int:
    kind, extension = load_document(args.extension)
    if kind != EXTENSION:
        raise SchemaError("equiv needs an extension document")
    u = check_term(extension, tokenize(args.word1))
    v = check_term(extension, tokenize(args.word2))
    bounds = _search_bounds(args)
    outcome = equivalent(extension, u, v, bounds)
    report = {"verdict": outcome.verdict, "bounds": _bounds_meta(bounds)}
    if outcome.reason is not None:
        report["reason"] = outcome.reason
    if outcome.witness is not None:
        witness_doc = {
            "start": serialize(outcome.witness.start),
            "end": serialize(outcome.witness.end),
            "steps": outcome.witness.to_json(),
        }
        report["witness"] = witness_doc
        if args.witness_out:
            save_document(args.witness_out, witness_doc)
    _emit(report)
    return _VERDICT_EXIT[outcome.verdict]


def cmd_conduche(args) -> int:
    kind, obj = load_document(args.functor)
    if kind != FUNCTOR:
        raise SchemaError("conduche needs a functor document")
    if isinstance(obj, ExtensionMorphism):
        if args.mode != "fiber":
            raise SchemaError("table mode needs a functor between categories")
        if args.at is None:
            raise SchemaError("fiber mode on an extension morphism needs --at WORD")
        representative = check_term(obj.source, tokenize(args.at))
        sigma_d = sorted(obj.target.generators)
        chosen = set(sigma_d)
        sigma_c = sorted(
            g for g in obj.source.generators if obj.phi.get(g) in chosen
        )
        query = FiberQuery(representative, sigma_c, sigma_d, args.size_bound)
        fiber = check_fiber_bijection(obj, query, _search_bounds(args))
        report = fiber.to_json()
        report.update(
            {"mode": "fiber", "size_bound": args.size_bound, "at": args.at}
        )
        _emit(report)
        return _VERDICT_EXIT[fiber.verdict]
    if args.mode == "table":
        result = check_conduche(obj, up_to_dim=args.dim)
        report = result.to_json()
        report["mode"] = "table"
    else:
        result = fiber_conduche(obj, args.size_bound, up_to_dim=args.dim)
        report = result.to_json()
        report.update({"mode": "fiber", "size_bound": args.size_bound})
    if args.dim is not None:
        report["up_to_dim"] = args.dim
    _emit(report)
    return _VERDICT_EXIT[result.verdict]


def cmd_basis(args) -> int:
    kind, category = load_document(args.category)
    if kind != CATEGORY:
        raise SchemaError("basis needs a category document")
    if args.set is not None:
        sigma = [cell for cell in args.set.split(",") if cell]
    elif category.basis is not None and args.dim in category.basis:
        sigma = list(category.basis[args.dim])
    else:
        sigma = sorted(indecomposables(category, args.dim))
    search = _search_bounds(args)
    bounds = BasisBounds(
        word_size=args.word_size, max_terms=args.max_terms, search=search
    )
    verdict = check_basis(category, args.dim, sigma, bounds)
    report = verdict.to_json()
    effective = (
        args.word_size
        if args.word_size is not None
        else default_word_bound(category, args.dim)
    )
    report.update(
        {
            "dim": args.dim,
            "set": sigma,
            "bounds": dict(
                _bounds_meta(search),
                word_size=effective,
                max_terms=args.max_terms,
            ),
        }
    )
    _emit(report)
    return _VERDICT_EXIT[verdict.verdict]


def cmd_transfer(args) -> int:
    kind, obj = load_document(args.functor)
    if kind != FUNCTOR:
        raise SchemaError("transfer needs a functor document")
    if isinstance(obj, ExtensionMorphism):
        top = obj.source.base.dimension + 1
        chosen = set(obj.target.generators)
        out = {
            str(top): sorted(
                g for g in obj.source.generators if obj.phi.get(g) in chosen
            )
        }
    else:
        if obj.target.basis is not None:
            sigma_d = obj.target.basis
        else:
            sigma_d = {
                dim: sorted(indecomposables(obj.target, dim))
                for dim in range(obj.target.dimension + 1)
            }
        out = {
            str(dim): cells
            for dim, cells in sorted(transfer_basis(obj, sigma_d).items())
        }
    _emit(out)
    return EXIT_OK


def cmd_slice(args) -> int:
    kind, category = load_document(args.category)
    if kind != CATEGORY:
        raise SchemaError("slice needs a category document")
    sliced, projection = slice_1cat(category, args.object)
    if args.projection_out:
        save_document(args.projection_out, functor_to_json(projection))
    _emit(category_to_json(sliced))
    return EXIT_OK


def cmd_pullback(args) -> int:
    kind_f, f = load_document(args.f)
    kind_g, g = load_document(args.g)
    if kind_f != FUNCTOR or kind_g != FUNCTOR:
        raise SchemaError("pullback needs two functor documents")
    if isinstance(f, ExtensionMorphism) or isinstance(g, ExtensionMorphism):
        raise SchemaError("pullback needs functors between categories")
    result = pullback(f, g)
    doc = {
        "apex": category_to_json(result.apex),
        "proj1": functor_to_json(result.proj1),
        "proj2": functor_to_json(result.proj2),
    }
    if args.out:
        save_document(args.out, doc)
    _emit(doc)
    return EXIT_OK


def cmd_movements(args) -> int:
    kind, extension = load_document(args.extension)
    if kind != EXTENSION:
        raise SchemaError("movements needs an extension document")
    term = check_term(extension, tokenize(args.word))
    if args.dot:
        sys.stdout.write(movement_graph_dot(extension, term))
        return EXIT_OK
    listing = []
    for movement in enumerate_movements(extension, term, args.direction):
        entry = movement.to_json()
        entry["output"] = apply_movement(term, movement).serialize()
        listing.append(entry)
    _emit({"word": term.serialize(), "movements": listing})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="polyconduche",
        description="Finite strict higher categories: movements, lifting "
        "checks, bases, slices, and pullbacks.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "validate",
        help="schema and axiom check for a document",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser(
        "equiv",
        help="bounded equivalence of two words over an extension",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("extension")
    p.add_argument("word1")
    p.add_argument("word2")
    _add_search_flags(p)
    p.add_argument("--witness-out", default=None, help="write the witness here")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser(
        "conduche",
        help="lifting check for a functor document",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("functor")
    p.add_argument(
        "--mode",
        choices=["table", "fiber"],
        default="table",
        help="factorization tables or fiber bijections",
    )
    p.add_argument("--dim", type=int, default=None, help="check up to this level")
    p.add_argument(
        "--size-bound", type=int, default=4, help="word size cap for fiber words"
    )
    p.add_argument("--at", default=None, help="fiber representative word")
    _add_search_flags(p)
    p.set_defaults(func=cmd_conduche)

    p = sub.add_parser(
        "basis",
        help="is a cell set a basis at one level",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("category")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument(
        "--set", default=None, help="comma-separated cells; defaults to the "
        "declared basis or the indecomposables"
    )
    p.add_argument(
        "--word-size",
        type=int,
        default=None,
        help="word size cap; None means twice the level's cell count, up to 8",
    )
    p.add_argument(
        "--max-terms",
        type=int,
        default=BasisBounds.max_terms,
        help="enumeration cap before answering Unknown",
    )
    _add_search_flags(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser(
        "transfer",
        help="pull the target basis back along a functor",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("functor")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser(
        "slice",
        help="slice a dimension-1 category at an object",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("category")
    p.add_argument("object")
    p.add_argument(
        "--projection-out", default=None, help="write the projection functor here"
    )
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser(
        "pullback",
        help="pullback of two functors with a common target",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--out", default=None, help="write the result here")
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser(
        "movements",
        help="one-step movements of a word",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("extension")
    p.add_argument("word")
    p.add_argument(
        "--direction",
        choices=["both", "forward", "backward"],
        default="both",
        help="which movement directions to list",
    )
    p.add_argument("--dot", action="store_true", help="emit a DOT graph")
    p.set_defaults(func=cmd_movements)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PolyconducheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
