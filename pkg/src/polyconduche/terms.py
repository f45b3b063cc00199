"""Terms over a cellular extension: well-formedness, boundaries, evaluation.

A cellular extension hangs a set of formal (n+1)-generators on an n-category;
terms are the well-formed words built from generator atoms "(c:g)", identity
atoms "(i:x)" for top cells x of the base, and binary composition at levels
0..n. Checking is a single recursive-descent pass that computes top-level
boundaries as it goes and reports the leftmost failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .categories import SRC, TGT, PresentedCategory, truncate
from .errors import (
    BadOccurrence,
    BoundaryMismatch,
    LevelError,
    NotWellFormed,
    SchemaError,
    UndefinedComposite,
)
from .words import (
    COMP_KIND,
    GEN_KIND,
    ID_KIND,
    LPAREN,
    LPAREN_KIND,
    RPAREN,
    RPAREN_KIND,
    Word,
    comp,
    gen,
    ident_of,
    serialize,
)


@dataclass
class CellularExtension:
    """An n-category plus formal (n+1)-generators with parallel boundaries."""

    base: PresentedCategory
    generators: dict[str, tuple[str, str]]

    @property
    def dimension(self) -> int:
        return self.base.dimension


def check_extension(extension: CellularExtension) -> None:
    """Schema check plus the parallel-boundary condition on generators."""
    base = extension.base
    n = base.dimension
    for name, (src, tgt) in extension.generators.items():
        for cell in (src, tgt):
            if base.level_of(cell) != n:
                raise SchemaError(f"generator {name!r} boundary {cell!r} is not an {n}-cell")
        if n >= 1:
            if base.boundary(src, n - 1, SRC) != base.boundary(tgt, n - 1, SRC) or base.boundary(
                src, n - 1, TGT
            ) != base.boundary(tgt, n - 1, TGT):
                raise SchemaError(f"generator {name!r} boundaries {src!r}, {tgt!r} are not parallel")


@dataclass(eq=False)
class Term:
    """A checked word with its cached top-level boundaries."""

    word: Word
    extension: CellularExtension
    src: str
    tgt: str
    size: int

    def serialize(self) -> str:
        return serialize(self.word)


@dataclass(frozen=True, slots=True)
class TermNode:
    """One subterm occurrence: a half-open token span plus parsed shape.

    For atoms, name holds the generator or base cell; for composites, level
    holds k and left/right the child spans.
    """

    start: int
    end: int
    kind: str  # "generator" | "identity" | "composite"
    name: str | None
    level: int | None
    left: tuple[int, int] | None
    right: tuple[int, int] | None
    src: str
    tgt: str
    size: int


@dataclass
class TermIndex:
    word: Word
    nodes: dict[tuple[int, int], TermNode]
    root: tuple[int, int]


@dataclass(frozen=True, slots=True)
class AtomDecomposition:
    kind: str  # "generator" | "identity"
    name: str


@dataclass
class TermDecomposition:
    left: Term
    level: int
    right: Term


def analyze_term(extension: CellularExtension, word: Word) -> TermIndex:
    """Parse a word into its full subterm index; raises NotWellFormed."""
    base = extension.base
    n = base.dimension
    tokens = word.tokens
    nodes: dict[tuple[int, int], TermNode] = {}

    def parse(start: int) -> TermNode:
        if start >= len(tokens) or tokens[start].kind != LPAREN_KIND:
            raise NotWellFormed(start, "ShapeError", "expected '('")
        if start + 1 >= len(tokens):
            raise NotWellFormed(start + 1, "ShapeError", "unclosed '('")
        head = tokens[start + 1]
        if head.kind == GEN_KIND:
            if head.value not in extension.generators:
                raise NotWellFormed(start + 1, "UnknownGenerator", f"{head.value!r}")
            _expect_rparen(tokens, start + 2)
            src, tgt = extension.generators[head.value]
            node = TermNode(start, start + 3, "generator", head.value, None, None, None, src, tgt, 0)
        elif head.kind == ID_KIND:
            if not base.has_cell(head.value) or base.level_of(head.value) != n:
                raise NotWellFormed(start + 1, "UnknownCell", f"{head.value!r}")
            _expect_rparen(tokens, start + 2)
            node = TermNode(
                start, start + 3, "identity", head.value, None, None, None, head.value, head.value, 0
            )
        elif head.kind == LPAREN_KIND:
            left = parse(start + 1)
            pos = left.end
            if pos >= len(tokens) or tokens[pos].kind != COMP_KIND:
                raise NotWellFormed(pos, "ShapeError", "expected a composition symbol")
            k = int(tokens[pos].value)
            if k > n:
                raise NotWellFormed(pos, "LevelOutOfRange", f"*{k} in a dimension-{n} extension")
            right = parse(pos + 1)
            _expect_rparen(tokens, right.end)
            if k == n:
                if left.src != right.tgt:
                    raise NotWellFormed(
                        pos,
                        "BoundaryMismatch",
                        f"{left.src!r} != {right.tgt!r} at level {k}",
                        level=k,
                    )
                src, tgt = right.src, left.tgt
            else:
                if base.boundary(left.src, k, SRC) != base.boundary(right.tgt, k, TGT):
                    raise NotWellFormed(
                        pos, "BoundaryMismatch", f"factors do not meet at level {k}", level=k
                    )
                src = base.compose(left.src, right.src, k)
                tgt = base.compose(left.tgt, right.tgt, k)
            node = TermNode(
                start,
                right.end + 1,
                "composite",
                None,
                k,
                (left.start, left.end),
                (right.start, right.end),
                src,
                tgt,
                left.size + right.size + 1,
            )
        else:
            raise NotWellFormed(start + 1, "ShapeError", f"unexpected {tokens[start + 1].text()!r}")
        nodes[(node.start, node.end)] = node
        return node

    root = parse(0)
    if root.end != len(tokens):
        raise NotWellFormed(root.end, "ShapeError", "trailing tokens")
    return TermIndex(word, nodes, (root.start, root.end))


def _expect_rparen(tokens, pos: int) -> None:
    if pos >= len(tokens) or tokens[pos].kind != RPAREN_KIND:
        raise NotWellFormed(pos, "ShapeError", "expected ')'")


def check_term(extension: CellularExtension, word: Word) -> Term:
    index = analyze_term(extension, word)
    root = index.nodes[index.root]
    return Term(word, extension, root.src, root.tgt, root.size)


def term_boundary(term: Term, k: int, side: str) -> str:
    """s^k or t^k of a term; the top level is cached, lower ones computed."""
    n = term.extension.dimension
    if k > n:
        raise LevelError(f"boundary level {k} above extension dimension {n}")
    top = term.src if side == SRC else term.tgt
    if k == n:
        return top
    return term.extension.base.boundary(top, k, side)


def decompose(term: Term):
    """Top-level shape: an atom marker or (left, k, right) as checked terms."""
    index = analyze_term(term.extension, term.word)
    root = index.nodes[index.root]
    if root.kind != "composite":
        return AtomDecomposition(root.kind, root.name)
    left = _node_term(term.extension, index, root.left)
    right = _node_term(term.extension, index, root.right)
    return TermDecomposition(left, root.level, right)


def _node_term(extension: CellularExtension, index: TermIndex, span: tuple[int, int]) -> Term:
    node = index.nodes[span]
    return Term(index.word.sub(*span), extension, node.src, node.tgt, node.size)


def subterm_at(term: Term, start: int, end: int) -> Term:
    """The subterm occurrence at a token span; BadOccurrence otherwise."""
    index = analyze_term(term.extension, term.word)
    node = index.nodes.get((start, end))
    if node is None:
        raise BadOccurrence(f"({start}, {end}) is not a subterm occurrence")
    return _node_term(term.extension, index, (start, end))


def substitute(term: Term, start: int, end: int, replacement: Term) -> Term:
    """Replace the subterm at (start, end) by a term with the same boundaries."""
    old = subterm_at(term, start, end)
    if (old.src, old.tgt) != (replacement.src, replacement.tgt):
        raise BoundaryMismatch(
            f"replacement boundaries ({replacement.src!r}, {replacement.tgt!r}) "
            f"differ from ({old.src!r}, {old.tgt!r})"
        )
    spliced = Word(term.word.tokens[:start] + replacement.word.tokens + term.word.tokens[end:])
    return check_term(term.extension, spliced)


# -- evaluation into an ambient category ------------------------------------


def restriction_extension(
    category: PresentedCategory, level: int, sigma: list[str]
) -> CellularExtension:
    """The extension whose base is the truncation below `level` and whose
    generators are the chosen level-cells with their table boundaries."""
    if not 1 <= level <= category.dimension:
        raise LevelError(f"level {level} out of range")
    generators = {}
    for cell in sigma:
        if category.level_of(cell) != level:
            raise SchemaError(f"{cell!r} is not a {level}-cell")
        generators[cell] = (category.src[level][cell], category.tgt[level][cell])
    return CellularExtension(truncate(category, level - 1), generators)


def evaluate(category: PresentedCategory, sigma: list[str], term: Term) -> str:
    """Fold a term into a category that actually holds the composites.

    Generator atoms map to their named cells, identity atoms to identity
    cells, composition to table lookups (UndefinedComposite if missing).
    """
    n = term.extension.dimension
    sigma_set = set(sigma)
    index = analyze_term(term.extension, term.word)

    def fold(span: tuple[int, int]) -> str:
        node = index.nodes[span]
        if node.kind == "generator":
            if node.name not in sigma_set:
                raise UndefinedComposite(f"generator {node.name!r} outside the chosen set")
            return node.name
        if node.kind == "identity":
            return category.ids[n][node.name]
        left = fold(node.left)
        right = fold(node.right)
        return category.compose(left, right, node.level)

    return fold(index.root)


def generator_multiset(term: Term) -> dict[str, int]:
    counts: dict[str, int] = {}
    for token in term.word.tokens:
        if token.kind == GEN_KIND:
            counts[token.value] = counts.get(token.value, 0) + 1
    return counts


# -- construction helpers ---------------------------------------------------


def atom_word(kind: str, name: str) -> Word:
    tok = gen(name) if kind == "generator" else ident_of(name)
    return Word((LPAREN, tok, RPAREN))


def pair_word(left: Word, k: int, right: Word) -> Word:
    return Word((LPAREN,) + left.tokens + (comp(k),) + right.tokens + (RPAREN,))


def compose_terms(left: Term, k: int, right: Term) -> Term:
    """Form (left *k right), checking composability first."""
    extension = left.extension
    n = extension.dimension
    if not 0 <= k <= n:
        raise LevelError(f"composition level {k} out of range")
    if k == n:
        if left.src != right.tgt:
            raise BoundaryMismatch(f"{left.src!r} != {right.tgt!r} at level {k}")
    else:
        base = extension.base
        if base.boundary(left.src, k, SRC) != base.boundary(right.tgt, k, TGT):
            raise BoundaryMismatch(f"factors do not meet at level {k}")
    return check_term(extension, pair_word(left.word, k, right.word))


def all_atoms(extension: CellularExtension) -> list[Term]:
    """Every atom term, generators first, in declaration order."""
    out = []
    for name in extension.generators:
        out.append(check_term(extension, atom_word("generator", name)))
    for cell in extension.base.cells[extension.dimension]:
        out.append(check_term(extension, atom_word("identity", cell)))
    return out


def enumerate_terms(
    extension: CellularExtension, max_size: int, max_count: int | None = None
) -> tuple[list[Term], bool]:
    """All terms of size up to max_size, smallest first, deterministic order.

    Returns (terms, truncated); truncated is True when max_count stopped the
    enumeration early.
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
                    for right in by_size[right_size]:
                        if k == n:
                            if left.src != right.tgt:
                                continue
                        elif base.boundary(left.src, k, SRC) != base.boundary(
                            right.tgt, k, TGT
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


def random_term(extension: CellularExtension, rng: Random, max_size: int) -> Term:
    """Grow a random term bottom-up; composability holds by construction.

    Levels and factors are drawn uniformly; when no pool partner fits, an
    identity atom on the needed boundary always does.
    """
    base = extension.base
    n = extension.dimension
    pool = all_atoms(extension)
    if not pool:
        raise SchemaError("extension has no atoms to build from")
    current = rng.choice(pool)
    target = rng.randint(0, max_size)
    while current.size < target:
        left = rng.choice(pool + [current])
        k = rng.randint(0, n)
        if k == n:
            partners = [t for t in pool + [current] if t.tgt == left.src]
            right = rng.choice(partners) if partners else check_term(
                extension, atom_word("identity", left.src)
            )
        else:
            want = base.boundary(left.src, k, SRC)
            partners = [
                t for t in pool + [current] if base.boundary(t.tgt, k, TGT) == want
            ]
            if partners:
                right = rng.choice(partners)
            else:
                unit = base.identity_to(want, n)
                right = check_term(extension, atom_word("identity", unit))
        if left.size + right.size + 1 > max_size:
            break
        current = compose_terms(left, k, right)
        pool.append(current)
    return current
