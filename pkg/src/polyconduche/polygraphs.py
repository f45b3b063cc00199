"""Generator bases of finite categories and their transfer along functors.

A set of level-cells is a basis when every level-cell is reached by some
word over it and all words reaching the same cell are equivalent. Existence
is decided exactly by closing the atom values under the composition tables;
the equivalence half is bounded and may answer Unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .categories import OmegaFunctor, PresentedCategory, SRC, TGT, is_degenerate
from .errors import NotSurjective, SchemaError
from .movements import DISTINCT, SearchBounds, WITNESS, _unit_on, equivalent
from .terms import (
    CellularExtension,
    Term,
    all_atoms,
    evaluate,
    pair_word,
    restriction_extension,
)
from .words import ID_KIND

BASIS = "Basis"
NOT_BASIS = "NotBasis"
UNKNOWN = "Unknown"

MAX_TERMS = 200_000
SIZE_CAP = 8


@dataclass
class BasisBounds:
    word_size: int | None = None  # None: derived from the level's cell count
    max_terms: int = MAX_TERMS
    search: SearchBounds = field(default_factory=SearchBounds)


@dataclass
class BasisVerdict:
    verdict: str
    witness: dict | None = None
    unresolved: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.unresolved:
            out["unresolved"] = self.unresolved
        return out


def indecomposables(category: PresentedCategory, n: int) -> set[str]:
    """Non-degenerate cells admitting only trivial factorizations.

    A factorization is trivial when one factor is the unit the other factor
    absorbs. Every 0-cell counts.
    """
    if n == 0:
        return set(category.cells.get(0, []))
    out: set[str] = set()
    for x in category.cells.get(n, []):
        if is_degenerate(category, x):
            continue
        decomposable = False
        for k in range(n):
            left_unit = category.identity_to(category.boundary(x, k, TGT), n)
            right_unit = category.identity_to(category.boundary(x, k, SRC), n)
            for (a, b) in category.factorizations(x, n, k):
                if a != left_unit and b != right_unit:
                    decomposable = True
                    break
            if decomposable:
                break
        if not decomposable:
            out.add(x)
    return out


def default_word_bound(category: PresentedCategory, level: int) -> int:
    plain = [
        x for x in category.cells.get(level, []) if not is_degenerate(category, x)
    ]
    return min(2 * len(plain), SIZE_CAP)


def _reachable_values(
    category: PresentedCategory, level: int, sigma: list[str]
) -> set[str]:
    """Exact closure of the atom values under the level's composition tables.

    A cell has a preimage word over sigma if and only if it lies here, with
    no word-size bound involved.
    """
    values = set(sigma)
    values.update(
        category.ids[level - 1][x] for x in category.cells.get(level - 1, [])
    )
    changed = True
    while changed:
        changed = False
        for (l, _k), table in category.comp.items():
            if l != level:
                continue
            for (p, q), r in table.items():
                if p in values and q in values and r not in values:
                    values.add(r)
                    changed = True
    return values


def _identity_atom_name(term: Term) -> str | None:
    if len(term.word) == 3 and term.word.tokens[1].kind == ID_KIND:
        return term.word.tokens[1].value
    return None


def _enumerate_reduced(
    extension: CellularExtension, max_size: int, max_count: int | None = None
) -> tuple[list[Term], bool]:
    """Terms with no removable unit factor and no mergeable identity pair.

    Every term is connected to such a representative of the same or smaller
    size, so checking connectivity on these alone decides it for the full
    set of preimage words within the bound, at a fraction of the cost.
    """
    base = extension.base
    n = extension.dimension
    by_size: list[list[Term]] = [all_atoms(extension)]
    total = len(by_size[0])
    truncated = False
    for size in range(1, max_size + 1):
        layer: list[Term] = []
        for k in range(n + 1):
            for left_size in range(size):
                right_size = size - 1 - left_size
                for left in by_size[left_size]:
                    lid = _identity_atom_name(left)
                    for right in by_size[right_size]:
                        if k == n:
                            if left.src != right.tgt:
                                continue
                        elif base.boundary(left.src, k, SRC) != base.boundary(
                            right.tgt, k, TGT
                        ):
                            continue
                        rid = _identity_atom_name(right)
                        if lid is not None and lid == _unit_on(
                            extension, right.tgt, k, TGT
                        ):
                            continue
                        if rid is not None and rid == _unit_on(
                            extension, left.src, k, SRC
                        ):
                            continue
                        if (
                            k < n
                            and lid is not None
                            and rid is not None
                            and (lid, rid) in base.comp.get((n, k), {})
                        ):
                            continue
                        word = pair_word(left.word, k, right.word)
                        if k == n:
                            src, tgt = right.src, left.tgt
                        else:
                            src = base.compose(left.src, right.src, k)
                            tgt = base.compose(left.tgt, right.tgt, k)
                        layer.append(Term(word, extension, src, tgt, size))
                        total += 1
                        if max_count is not None and total >= max_count:
                            truncated = True
                            by_size.append(layer)
                            return [t for lst in by_size for t in lst], truncated
        by_size.append(layer)
    return [t for lst in by_size for t in lst], truncated


def check_basis(
    category: PresentedCategory,
    level: int,
    sigma: list[str],
    bounds: BasisBounds | None = None,
) -> BasisVerdict:
    """Is sigma a basis for the category's level-cells?

    Missing preimages are proven via the exact closure. Connectivity of the
    preimage words of each cell is checked by merging components with the
    bounded equivalence search: a Distinct verdict between two preimages is
    a proven basis failure, an Unknown leaves the cell unresolved.
    """
    bounds = bounds or BasisBounds()
    if not 1 <= level <= category.dimension:
        raise SchemaError(f"level {level} out of range")
    for cell in sigma:
        if category.level_of(cell) != level:
            raise SchemaError(f"{cell!r} is not a level-{level} cell")

    reachable = _reachable_values(category, level, sigma)
    for a in category.cells.get(level, []):
        if a not in reachable:
            return BasisVerdict(NOT_BASIS, {"kind": "MissingPreimage", "cell": a})

    size_bound = (
        bounds.word_size
        if bounds.word_size is not None
        else default_word_bound(category, level)
    )
    extension = restriction_extension(category, level, sigma)
    terms, truncated = _enumerate_reduced(extension, size_bound, bounds.max_terms)
    buckets: dict[str, list[Term]] = {}
    for term in terms:
        buckets.setdefault(evaluate(category, sigma, term), []).append(term)

    unresolved: list[str] = []
    for a in category.cells.get(level, []):
        preimages = buckets.get(a, [])
        if not preimages:
            # Reachable by closure but not within the word-size bound.
            unresolved.append(a)
            continue
        representative = preimages[0]
        for candidate in preimages[1:]:
            outcome = equivalent(extension, candidate, representative, bounds.search)
            if outcome.verdict == DISTINCT:
                return BasisVerdict(
                    NOT_BASIS,
                    {
                        "kind": "DisconnectedPair",
                        "pair": [representative.serialize(), candidate.serialize()],
                        "cell": a,
                    },
                )
            if outcome.verdict != WITNESS and a not in unresolved:
                unresolved.append(a)

    if truncated and not unresolved:
        return BasisVerdict(UNKNOWN, None, ["<enumeration truncated>"])
    if unresolved:
        return BasisVerdict(UNKNOWN, None, unresolved)
    return BasisVerdict(BASIS)


@dataclass
class FreenessReport:
    per_dim: dict[int, BasisVerdict]
    basis_matches_indecomposables: dict[int, bool]

    @property
    def verdict(self) -> str:
        if any(v.verdict == NOT_BASIS for v in self.per_dim.values()):
            return NOT_BASIS
        if any(v.verdict == UNKNOWN for v in self.per_dim.values()):
            return UNKNOWN
        return BASIS

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "per_dim": {str(d): v.to_json() for d, v in self.per_dim.items()},
            "basis_matches_indecomposables": {
                str(d): m for d, m in self.basis_matches_indecomposables.items()
            },
        }


def check_free(
    category: PresentedCategory,
    sigma_per_dim: dict[int, list[str]],
    bounds: BasisBounds | None = None,
) -> FreenessReport:
    """Basis checks at every dimension, plus the indecomposability cross-check.

    At dimension 0 the only admissible generator set is all objects.
    """
    per_dim: dict[int, BasisVerdict] = {}
    matches: dict[int, bool] = {}
    sigma0 = set(sigma_per_dim.get(0, []))
    objects = set(category.cells.get(0, []))
    if sigma0 == objects:
        per_dim[0] = BasisVerdict(BASIS)
    else:
        missing = sorted(objects - sigma0) + sorted(sigma0 - objects)
        per_dim[0] = BasisVerdict(
            NOT_BASIS, {"kind": "MissingPreimage", "cell": missing[0]}
        )
    matches[0] = sigma0 == indecomposables(category, 0)
    for dim in range(1, category.dimension + 1):
        sigma = sigma_per_dim.get(dim, [])
        per_dim[dim] = check_basis(category, dim, sigma, bounds)
        matches[dim] = set(sigma) == indecomposables(category, dim)
    return FreenessReport(per_dim, matches)


def transfer_basis(
    functor: OmegaFunctor, sigma_d: dict[int, list[str]]
) -> dict[int, list[str]]:
    """Dimension-wise preimage of a target basis."""
    out: dict[int, list[str]] = {}
    for dim in range(functor.source.dimension + 1):
        chosen = set(sigma_d.get(dim, []))
        out[dim] = sorted(
            x
            for x in functor.source.cells.get(dim, [])
            if functor.apply(x) in chosen
        )
    return out


def image_basis(
    functor: OmegaFunctor, sigma_c: dict[int, list[str]]
) -> dict[int, list[str]]:
    """Dimension-wise image of a source basis; the functor must be onto."""
    for dim in range(functor.target.dimension + 1):
        hit = {
            functor.apply(x) for x in functor.source.cells.get(dim, [])
        }
        for cell in functor.target.cells.get(dim, []):
            if cell not in hit:
                raise NotSurjective(dim, cell)
    out: dict[int, list[str]] = {}
    for dim in range(functor.target.dimension + 1):
        out[dim] = sorted({functor.apply(x) for x in sigma_c.get(dim, [])})
    return out
