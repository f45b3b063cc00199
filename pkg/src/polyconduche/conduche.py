"""Unique-lifting checks for functors, two ways.

The table route inspects finite composition tables directly: a functor has
the lifting property at (n, k) when every factorization of every image cell
lifts uniquely (nabla) and degenerate images come from degenerate cells
(kappa). The fiber route compares term fibers through the induced word map
and also covers free, infinite targets at the price of a size bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .categories import (
    SRC,
    TGT,
    OmegaFunctor,
    PresentedCategory,
    truncate,
)
from .errors import NotLiftable, NotWellFormed, SchemaError
from .movements import (
    DISTINCT,
    ElementaryMovement,
    SearchBounds,
    WITNESS,
    equivalent,
)
from .terms import (
    CellularExtension,
    Term,
    analyze_term,
    check_term,
    enumerate_terms,
    evaluate,
    restriction_extension,
)
from .words import (
    COMP_KIND,
    GEN_KIND,
    ID_KIND,
    LPAREN_KIND,
    RPAREN_KIND,
    SymbolToken,
    Word,
    gen,
    ident_of,
)
from .words import serialize as w_serialize

PASS = "Pass"
FAIL = "Fail"
UNKNOWN = "Unknown"


@dataclass
class ConducheReport:
    verdict: str
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "failures": self.failures}


def _merge(reports: list[ConducheReport]) -> ConducheReport:
    failures = [f for r in reports for f in r.failures]
    if failures:
        return ConducheReport(FAIL, failures)
    if any(r.verdict == UNKNOWN for r in reports):
        return ConducheReport(UNKNOWN)
    return ConducheReport(PASS)


def check_nabla(functor: OmegaFunctor, n: int, k: int) -> ConducheReport:
    """Unique lifting of k-factorizations of n-cell images."""
    if not 0 <= k < n:
        raise SchemaError(f"need 0 <= k < n, got k={k}, n={n}")
    source, target = functor.source, functor.target
    failures: list[dict] = []
    for x in source.cells.get(n, []):
        fx = functor.apply(x)
        for (y1, y2) in target.factorizations(fx, n, k):
            lifts = sorted(
                pair
                for pair, res in source.comp.get((n, k), {}).items()
                if res == x
                and functor.apply(pair[0]) == y1
                and functor.apply(pair[1]) == y2
            )
            if not lifts:
                failures.append(
                    {
                        "x": x,
                        "n": n,
                        "k": k,
                        "factorization": [y1, y2],
                        "kind": "NoLift",
                    }
                )
            elif len(lifts) > 1:
                failures.append(
                    {
                        "x": x,
                        "n": n,
                        "k": k,
                        "factorization": [y1, y2],
                        "kind": "NonUniqueLift",
                        "lifts": [list(lifts[0]), list(lifts[1])],
                    }
                )
    return ConducheReport(FAIL if failures else PASS, failures)


def _degeneracy_at(category: PresentedCategory, cell: str, k: int) -> str | None:
    """The k-cell the given cell is an iterated identity of, if any."""
    return category.degeneracy_preimage(cell, k)


def check_kappa(functor: OmegaFunctor, n: int, k: int) -> ConducheReport:
    """Cells with k-degenerate images must be k-degenerate themselves.

    Uniqueness of the witness is automatic because identity maps are
    injective in a valid category.
    """
    if not 0 <= k < n:
        raise SchemaError(f"need 0 <= k < n, got k={k}, n={n}")
    source, target = functor.source, functor.target
    failures: list[dict] = []
    for x in source.cells.get(n, []):
        fx = functor.apply(x)
        if _degeneracy_at(target, fx, k) is None:
            continue
        if _degeneracy_at(source, x, k) is None:
            failures.append(
                {"x": x, "n": n, "k": k, "factorization": None, "kind": "KappaFail"}
            )
    return ConducheReport(FAIL if failures else PASS, failures)


def check_conduche(functor: OmegaFunctor, up_to_dim: int | None = None) -> ConducheReport:
    """Conjunction of the nabla and kappa checks for all k < n <= up_to_dim.

    The default ceiling is the source dimension; higher levels only hold
    identities and are settled by the top level.
    """
    if up_to_dim is None:
        up_to_dim = functor.source.dimension
    up_to_dim = min(up_to_dim, functor.source.dimension, functor.target.dimension)
    reports = []
    for n in range(1, up_to_dim + 1):
        for k in range(n):
            reports.append(check_nabla(functor, n, k))
            reports.append(check_kappa(functor, n, k))
    return _merge(reports)


def conduche_at_level(functor: OmegaFunctor, n: int) -> ConducheReport:
    """All (n, k) checks for one fixed n."""
    reports = []
    for k in range(n):
        reports.append(check_nabla(functor, n, k))
        reports.append(check_kappa(functor, n, k))
    return _merge(reports)


# -- the induced map on words ------------------------------------------------


@dataclass
class ExtensionMorphism:
    """A functor of bases plus a generator assignment between extensions."""

    source: CellularExtension
    target: CellularExtension
    base: OmegaFunctor
    phi: dict[str, str]


def check_extension_morphism(morphism: ExtensionMorphism) -> None:
    src_ext, tgt_ext = morphism.source, morphism.target
    n = src_ext.dimension
    if tgt_ext.dimension != n:
        raise SchemaError("extensions live over bases of different dimensions")
    for name, (s, t) in src_ext.generators.items():
        image = morphism.phi.get(name)
        if image is None:
            raise SchemaError(f"generator {name!r} has no image")
        if image not in tgt_ext.generators:
            raise SchemaError(f"image {image!r} is not a target generator")
        ts, tt = tgt_ext.generators[image]
        if (morphism.base.apply(s), morphism.base.apply(t)) != (ts, tt):
            raise SchemaError(f"generator {name!r} image breaks the boundary squares")


def full_extension(category: PresentedCategory, level: int) -> CellularExtension:
    """The extension of the (level-1)-truncation by every level-cell."""
    return restriction_extension(category, level, list(category.cells.get(level, [])))


def morphism_from_functor(functor: OmegaFunctor, level: int) -> ExtensionMorphism:
    """View a functor of finite categories as a morphism of full extensions."""
    base = OmegaFunctor(
        truncate(functor.source, level - 1),
        truncate(functor.target, level - 1),
        {l: dict(functor.maps.get(l, {})) for l in range(level)},
    )
    return ExtensionMorphism(
        full_extension(functor.source, level),
        full_extension(functor.target, level),
        base,
        dict(functor.maps.get(level, {})),
    )


def induced_word_map(morphism: ExtensionMorphism, word: Word) -> Word:
    """Token-wise relabeling of a word; preserves length and size."""
    out: list[SymbolToken] = []
    for pos, token in enumerate(word.tokens):
        if token.kind == GEN_KIND:
            image = morphism.phi.get(token.value)
            if image is None:
                raise NotWellFormed(pos, "UnknownGenerator", f"{token.value!r}")
            out.append(gen(image))
        elif token.kind == ID_KIND:
            if not morphism.source.base.has_cell(token.value):
                raise NotWellFormed(pos, "UnknownCell", f"{token.value!r}")
            out.append(ident_of(morphism.base.apply(token.value)))
        else:
            out.append(token)
    return Word(tuple(out))


def induced_term(morphism: ExtensionMorphism, term: Term) -> Term:
    return check_term(morphism.target, induced_word_map(morphism, term.word))


def induced_movement(
    morphism: ExtensionMorphism, movement: ElementaryMovement
) -> ElementaryMovement:
    """Relabel all four components of a movement through the morphism."""
    return ElementaryMovement(
        induced_word_map(morphism, movement.prefix),
        induced_word_map(morphism, movement.suffix),
        induced_term(morphism, movement.redex),
        induced_term(morphism, movement.contractum),
        movement.case,
        movement.direction,
    )


# -- fiber comparison --------------------------------------------------------


@dataclass
class FiberQuery:
    """One fiber to compare: `a` is a cell name (finite ambient route) or a
    representative Term (equivalence route)."""

    a: object
    sigma_c: list[str]
    sigma_d: list[str]
    size_bound: int


@dataclass
class FiberReport:
    verdict: str
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _restrict_generators(
    extension: CellularExtension, sigma: list[str]
) -> CellularExtension:
    missing = [g for g in sigma if g not in extension.generators]
    if missing:
        raise SchemaError(f"{missing[0]!r} is not a generator of the extension")
    return CellularExtension(
        extension.base, {g: extension.generators[g] for g in sigma}
    )


def check_fiber_bijection(
    morphism: ExtensionMorphism,
    query: FiberQuery,
    bounds: SearchBounds | None = None,
    source_category: PresentedCategory | None = None,
    target_category: PresentedCategory | None = None,
) -> FiberReport:
    """Is the induced word map a bijection on this fiber, up to the bound?

    Membership of a candidate word in the fiber is decided by evaluation
    when the ambient categories are finite and supplied, and by bounded
    equivalence search against the representative otherwise; in the latter
    case an Unknown membership contaminates the verdict unless a definite
    injectivity collision was already found.
    """
    sigma_d = set(query.sigma_d)
    preimage = sorted(
        g for g in morphism.source.generators if morphism.phi.get(g) in sigma_d
    )
    if preimage != sorted(set(query.sigma_c)):
        raise SchemaError("the source generator set is not the exact preimage")

    ext_c = _restrict_generators(morphism.source, sorted(set(query.sigma_c)))
    ext_d = _restrict_generators(morphism.target, sorted(sigma_d))
    finite = isinstance(query.a, str)
    if finite and (source_category is None or target_category is None):
        raise SchemaError("cell-name queries need the ambient categories")

    if finite:
        rep_image = None
        target_value = morphism.phi.get(query.a)
        if target_value is None:
            raise SchemaError(f"{query.a!r} has no image under the morphism")
    else:
        rep: Term = query.a
        rep_image = induced_term(morphism, rep)
        target_value = None

    def member_src(candidate: Term) -> bool | None:
        if finite:
            return evaluate(source_category, query.sigma_c, candidate) == query.a
        outcome = equivalent(morphism.source, candidate, rep, bounds)
        if outcome.verdict == WITNESS:
            return True
        if outcome.verdict == DISTINCT:
            return False
        return None

    def member_tgt(candidate: Term) -> bool | None:
        if finite:
            value = evaluate(target_category, query.sigma_d, candidate)
            return value == target_value
        outcome = equivalent(morphism.target, candidate, rep_image, bounds)
        if outcome.verdict == WITNESS:
            return True
        if outcome.verdict == DISTINCT:
            return False
        return None

    candidates_c, _ = enumerate_terms(ext_c, query.size_bound)
    unknown_src = False
    seen_images: dict[tuple, Term] = {}
    members_src: list[Term] = []
    for candidate in candidates_c:
        verdict = member_src(candidate)
        if verdict is None:
            unknown_src = True
            continue
        if not verdict:
            continue
        members_src.append(candidate)
        image = induced_word_map(morphism, candidate.word)
        key = image.tokens
        if key in seen_images:
            return FiberReport(
                FAIL,
                {
                    "kind": "injectivity",
                    "pair": [seen_images[key].serialize(), candidate.serialize()],
                    "image": w_serialize(image),
                },
            )
        seen_images[key] = candidate

    candidates_d, _ = enumerate_terms(ext_d, query.size_bound)
    unknown_tgt = False
    unhit: list[Term] = []
    for candidate in candidates_d:
        verdict = member_tgt(candidate)
        if verdict is None:
            unknown_tgt = True
            continue
        if verdict and candidate.word.tokens not in seen_images:
            unhit.append(candidate)

    if unhit and not unknown_src:
        return FiberReport(FAIL, {"kind": "surjectivity", "unhit": unhit[0].serialize()})
    if unknown_src or unknown_tgt:
        return FiberReport(UNKNOWN)
    return FiberReport(PASS)


def fiber_conduche(
    functor: OmegaFunctor, size_bound: int, up_to_dim: int | None = None
) -> ConducheReport:
    """Fiber-route verdict over every level and every fiber of a finite
    functor, with full generator sets.

    Terms are enumerated once per level and bucketed by their evaluation, so
    each fiber comparison is a dictionary pass.
    """
    if up_to_dim is None:
        up_to_dim = functor.source.dimension
    up_to_dim = min(up_to_dim, functor.source.dimension, functor.target.dimension)
    failures: list[dict] = []
    for level in range(1, up_to_dim + 1):
        morphism = morphism_from_functor(functor, level)
        src_buckets = _value_buckets(functor.source, level, size_bound)
        tgt_buckets = _value_buckets(functor.target, level, size_bound)
        for a in functor.source.cells.get(level, []):
            fa = functor.apply(a)
            seen: dict[tuple, Term] = {}
            fail = None
            for member in src_buckets.get(a, []):
                image = induced_word_map(morphism, member.word)
                key = image.tokens
                if key in seen:
                    fail = {
                        "x": a,
                        "level": level,
                        "kind": "injectivity",
                        "pair": [seen[key].serialize(), member.serialize()],
                    }
                    break
                seen[key] = member
            if fail is None:
                for target_member in tgt_buckets.get(fa, []):
                    if target_member.word.tokens not in seen:
                        fail = {
                            "x": a,
                            "level": level,
                            "kind": "surjectivity",
                            "unhit": target_member.serialize(),
                        }
                        break
            if fail is not None:
                failures.append(fail)
    return ConducheReport(FAIL if failures else PASS, failures)


def _value_buckets(
    category: PresentedCategory, level: int, size_bound: int
) -> dict[str, list[Term]]:
    extension = full_extension(category, level)
    sigma = list(category.cells.get(level, []))
    terms, _ = enumerate_terms(extension, size_bound)
    buckets: dict[str, list[Term]] = {}
    for term in terms:
        buckets.setdefault(evaluate(category, sigma, term), []).append(term)
    return buckets


# -- movement lifting --------------------------------------------------------


def lift_movement(
    morphism: ExtensionMorphism, movement: ElementaryMovement, lifted_input: Term
) -> tuple[ElementaryMovement, Term]:
    """Lift a downstairs movement along the morphism at a given preimage.

    The occurrence sits at the same token span upstairs because the induced
    word map preserves token structure. Cases 1 and 5 lift verbatim; unit
    and identity cases need degeneracy or factorization lifts in the source
    base and raise NotLiftable when none exists.
    """
    if induced_word_map(morphism, lifted_input.word).tokens != (
        movement.prefix.tokens + movement.redex.word.tokens + movement.suffix.tokens
    ):
        raise SchemaError("the lifted input does not map onto the movement's input")
    ext = morphism.source
    base = ext.base
    n = ext.dimension
    start = movement.prefix_len
    end = start + len(movement.redex.word)
    index = analyze_term(ext, lifted_input.word)
    node = index.nodes.get((start, end))
    if node is None:
        raise NotLiftable(f"case {movement.case}: no subterm at the occurrence")
    redex_up = Term(
        lifted_input.word.sub(start, end), ext, node.src, node.tgt, node.size
    )

    contractum_word = _lift_contractum(morphism, movement, index, node)
    try:
        contractum_up = check_term(ext, contractum_word)
    except NotWellFormed as exc:
        raise NotLiftable(f"case {movement.case}: lifted contractum is ill formed ({exc})")
    lifted = ElementaryMovement(
        lifted_input.word.sub(0, start),
        lifted_input.word.sub(end, len(lifted_input.word)),
        redex_up,
        contractum_up,
        movement.case,
        movement.direction,
    )
    output = Term(
        Word(
            lifted.prefix.tokens + contractum_up.word.tokens + lifted.suffix.tokens
        ),
        ext,
        lifted_input.src,
        lifted_input.tgt,
        lifted_input.size - redex_up.size + contractum_up.size,
    )
    return lifted, output


def _lift_contractum(morphism, movement, index, node):
    from .movements import FORWARD
    from .terms import atom_word, pair_word

    ext = morphism.source
    base = ext.base
    n = ext.dimension
    word = index.word
    case, direction = movement.case, movement.direction

    def child(span):
        return index.nodes[span]

    if case in (1, 5):
        if node.kind != "composite":
            raise NotLiftable(f"case {case}: occurrence is not a composite")
        k = node.level
        left = child(node.left)
        right = child(node.right)
        if case == 1 and direction == FORWARD:
            if left.kind != "composite" or left.level != k:
                raise NotLiftable("case 1: left factor shape mismatch")
            return pair_word(
                word.sub(*left.left),
                k,
                pair_word(word.sub(*left.right), k, word.sub(*node.right)),
            )
        if case == 1:
            if right.kind != "composite" or right.level != k:
                raise NotLiftable("case 1: right factor shape mismatch")
            return pair_word(
                pair_word(word.sub(*node.left), k, word.sub(*right.left)),
                k,
                word.sub(*right.right),
            )
        if left.kind != "composite" or right.kind != "composite":
            raise NotLiftable("case 5: factors are not composites")
        inner = left.level
        if right.level != inner:
            raise NotLiftable("case 5: factor levels disagree")
        x = word.sub(*left.left)
        y = word.sub(*left.right)
        z = word.sub(*right.left)
        t = word.sub(*right.right)
        return pair_word(pair_word(x, k, z), inner, pair_word(y, k, t))

    if case in (2, 3):
        if direction == FORWARD:
            if node.kind != "composite":
                raise NotLiftable(f"case {case}: occurrence is not a composite")
            keep = node.right if case == 2 else node.left
            drop = child(node.left if case == 2 else node.right)
            if drop.kind != "identity":
                raise NotLiftable(f"case {case}: no identity factor to erase")
            return word.sub(*keep)
        # Backward: insert the unit the downstairs insertion prescribes.
        k = _outer_level(movement)
        if k is None:
            raise NotLiftable(f"case {case}: malformed downstairs contractum")
        if case == 2:
            if k == n:
                unit = node.tgt
            else:
                unit = base.identity_to(base.boundary(node.tgt, k, TGT), n)
            return pair_word(atom_word("identity", unit), k, word.sub(node.start, node.end))
        if k == n:
            unit = node.src
        else:
            unit = base.identity_to(base.boundary(node.src, k, SRC), n)
        return pair_word(word.sub(node.start, node.end), k, atom_word("identity", unit))

    # case 4
    if direction == FORWARD:
        if node.kind != "composite":
            raise NotLiftable("case 4: occurrence is not a composite")
        left = child(node.left)
        right = child(node.right)
        if left.kind != "identity" or right.kind != "identity":
            raise NotLiftable("case 4: factors are not identity atoms")
        k = node.level
        if (left.name, right.name) not in base.comp.get((n, k), {}):
            raise NotLiftable("case 4: base composite missing")
        return atom_word("identity", base.compose(left.name, right.name, k))
    if node.kind != "identity":
        raise NotLiftable("case 4: occurrence is not an identity atom")
    k = _outer_level(movement)
    if k is None:
        raise NotLiftable("case 4: malformed downstairs contractum")
    want = _split_images(movement)
    for (c, d) in base.factorizations(node.name, n, k):
        if (morphism.base.apply(c), morphism.base.apply(d)) == want:
            return pair_word(atom_word("identity", c), k, atom_word("identity", d))
    raise NotLiftable("case 4: no factorization lifts the split")


def _outer_level(movement: ElementaryMovement) -> int | None:
    """The composition level of the downstairs contractum's top node."""
    depth = 0
    for token in movement.contractum.word.tokens:
        if token.kind == LPAREN_KIND:
            depth += 1
        elif token.kind == RPAREN_KIND:
            depth -= 1
        elif token.kind == COMP_KIND and depth == 1:
            return int(token.value)
    return None


def _split_images(movement: ElementaryMovement) -> tuple[str, str]:
    """The two identity-atom cells of a backward case-4 contractum."""
    cells = [t.value for t in movement.contractum.word.tokens if t.kind == ID_KIND]
    return (cells[0], cells[1])


def is_rigid(
    morphism_or_functor,
    sigma_c: dict[int, list[str]],
    sigma_d: dict[int, list[str]],
) -> bool:
    """Do chosen generators land in chosen generators at every dimension?"""
    for dim, cells in sigma_c.items():
        allowed = set(sigma_d.get(dim, []))
        for cell in cells:
            image = _apply_at(morphism_or_functor, dim, cell)
            if image not in allowed:
                return False
    return True


def _apply_at(morphism_or_functor, dim: int, cell: str) -> str:
    if isinstance(morphism_or_functor, ExtensionMorphism):
        morphism = morphism_or_functor
        if dim == morphism.source.dimension + 1:
            image = morphism.phi.get(cell)
            if image is None:
                raise SchemaError(f"{cell!r} has no image at dimension {dim}")
            return image
        return morphism.base.apply(cell)
    return morphism_or_functor.apply(cell)
