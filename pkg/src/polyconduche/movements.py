"""Elementary movements between terms and the bounded equivalence search.

Five oriented rewrite shapes act on subterm occurrences:

  1  ((x *k y) *k z)        ->  (x *k (y *k z))
  2  ((i:c) *k x)           ->  x          when c is the k-unit on x's k-target
  3  (x *k (i:c))           ->  x          when c is the k-unit on x's k-source
  4  ((i:c) *k (i:d))       ->  (i:c*d)    for k < n, via the base table
  5  ((x *k y) *l (z *k t)) ->  ((x *l z) *k (y *l t))   for l < k

Two terms are equivalent when a chain of movements (in either direction)
connects them. Backward unit insertion makes every equivalence class
infinite, so the search is bounded and three-valued: Witness, Distinct
(only ever from proven invariants), or Unknown.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .categories import SRC, TGT, OmegaFunctor, PresentedCategory
from .errors import (
    BoundaryMismatch,
    LevelError,
    SchemaError,
    Stale,
)
from .terms import (
    CellularExtension,
    Term,
    analyze_term,
    atom_word,
    compose_terms,
    generator_multiset,
    pair_word,
    term_boundary,
)
from .words import Word, serialize

WITNESS = "witness"
DISTINCT = "distinct"
UNKNOWN = "unknown"
FORWARD = "forward"
BACKWARD = "backward"

MAX_VISITED_ENV = "POLYCONDUCHE_MAX_VISITED"


@dataclass
class ElementaryMovement:
    """One rewrite step u = v e w  ->  v e' w at a fixed occurrence.

    direction records the orientation of the underlying shape: a backward
    movement has the shape's right-hand side as its redex.
    """

    prefix: Word
    suffix: Word
    redex: Term
    contractum: Term
    case: int
    direction: str

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    def inverted(self) -> "ElementaryMovement":
        return ElementaryMovement(
            self.prefix,
            self.suffix,
            self.contractum,
            self.redex,
            self.case,
            FORWARD if self.direction == BACKWARD else BACKWARD,
        )

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "direction": self.direction,
            "prefix_len": self.prefix_len,
            "redex": self.redex.serialize(),
            "contractum": self.contractum.serialize(),
        }


@dataclass
class EquivalenceWitness:
    start: Word
    end: Word
    steps: list[ElementaryMovement]

    def to_json(self) -> list[dict]:
        return [step.to_json() for step in self.steps]


@dataclass
class EquivalenceOutcome:
    verdict: str  # witness | distinct | unknown
    witness: EquivalenceWitness | None = None
    reason: str | None = None


@dataclass(frozen=True)
class SearchBounds:
    size_slack: int = 3
    max_steps: int = 64
    max_visited: int = 200_000

    @staticmethod
    def from_env() -> "SearchBounds":
        cap = os.environ.get(MAX_VISITED_ENV)
        if cap is None:
            return SearchBounds()
        return SearchBounds(max_visited=int(cap))


def _unit_on(extension: CellularExtension, cell: str, k: int, side: str) -> str:
    """The k-level unit over the k-boundary of an n-cell, as an n-cell.

    At k = n this is the boundary cell itself.
    """
    base = extension.base
    n = extension.dimension
    if k == n:
        return cell
    return base.identity_to(base.boundary(cell, k, side), n)


def enumerate_movements(
    extension: CellularExtension, term: Term, direction: str = "both"
) -> list[ElementaryMovement]:
    """All movements rooted at some subterm occurrence, in deterministic
    (case, position, direction, level) order.

    Backward movements include unit insertion at every occurrence and every
    identity split the base composition tables support. Contracta are built
    by splicing, not re-parsing: the globularity and distribution axioms
    make every shape except backward interchange well formed outright, and
    that one is guarded by two boundary comparisons.
    """
    base = extension.base
    n = extension.dimension
    index = analyze_term(extension, term.word)
    want_fwd = direction in ("both", FORWARD)
    want_bwd = direction in ("both", BACKWARD)
    found: list[tuple[tuple, ElementaryMovement]] = []

    def emit(key: tuple, node, new_word: Word, new_size: int) -> None:
        case, start, dir_rank = key[0], key[1], key[2]
        redex = Term(
            term.word.sub(node.start, node.end), extension, node.src, node.tgt, node.size
        )
        contractum = Term(new_word, extension, node.src, node.tgt, new_size)
        movement = ElementaryMovement(
            term.word.sub(0, node.start),
            term.word.sub(node.end, len(term.word)),
            redex,
            contractum,
            case,
            FORWARD if dir_rank == 0 else BACKWARD,
        )
        found.append((key, movement))

    def meet(upper_src: str, upper_tgt: str, level: int) -> bool:
        """Can a term with n-source upper_src follow one with n-target
        upper_tgt at the given level?"""
        if level == n:
            return upper_src == upper_tgt
        return base.boundary(upper_src, level, SRC) == base.boundary(
            upper_tgt, level, TGT
        )

    for span in index.nodes:
        node = index.nodes[span]
        subword = term.word.sub(node.start, node.end)
        if node.kind == "composite":
            k = node.level
            left = index.nodes[node.left]
            right = index.nodes[node.right]
            lword = term.word.sub(*node.left)
            rword = term.word.sub(*node.right)
            if want_fwd:
                if left.kind == "composite" and left.level == k:
                    x = term.word.sub(*left.left)
                    y = term.word.sub(*left.right)
                    emit(
                        (1, node.start, 0, k),
                        node,
                        pair_word(x, k, pair_word(y, k, rword)),
                        node.size,
                    )
                if left.kind == "identity" and left.name == _unit_on(
                    extension, right.tgt, k, TGT
                ):
                    emit((2, node.start, 0, k), node, rword, right.size)
                if right.kind == "identity" and right.name == _unit_on(
                    extension, left.src, k, SRC
                ):
                    emit((3, node.start, 0, k), node, lword, left.size)
                if (
                    k < n
                    and left.kind == "identity"
                    and right.kind == "identity"
                    and (left.name, right.name) in base.comp.get((n, k), {})
                ):
                    merged = base.compose(left.name, right.name, k)
                    emit((4, node.start, 0, k), node, atom_word("identity", merged), 0)
                if (
                    left.kind == "composite"
                    and right.kind == "composite"
                    and left.level == right.level
                    and k < left.level
                ):
                    inner = left.level
                    x = term.word.sub(*left.left)
                    y = term.word.sub(*left.right)
                    z = term.word.sub(*right.left)
                    t = term.word.sub(*right.right)
                    emit(
                        (5, node.start, 0, k),
                        node,
                        pair_word(pair_word(x, k, z), inner, pair_word(y, k, t)),
                        node.size,
                    )
            if want_bwd:
                if right.kind == "composite" and right.level == k:
                    y = term.word.sub(*right.left)
                    z = term.word.sub(*right.right)
                    emit(
                        (1, node.start, 1, k),
                        node,
                        pair_word(pair_word(lword, k, y), k, z),
                        node.size,
                    )
                if (
                    left.kind == "composite"
                    and right.kind == "composite"
                    and left.level == right.level
                    and left.level < k
                ):
                    inner = left.level
                    p = index.nodes[left.left]
                    q = index.nodes[left.right]
                    r = index.nodes[right.left]
                    s = index.nodes[right.right]
                    if meet(p.src, r.tgt, k) and meet(q.src, s.tgt, k):
                        emit(
                            (5, node.start, 1, inner),
                            node,
                            pair_word(
                                pair_word(term.word.sub(*left.left), k, term.word.sub(*right.left)),
                                inner,
                                pair_word(term.word.sub(*left.right), k, term.word.sub(*right.right)),
                            ),
                            node.size,
                        )
        if want_bwd:
            for k in range(n + 1):
                unit_left = _unit_on(extension, node.tgt, k, TGT)
                emit(
                    (2, node.start, 1, k),
                    node,
                    pair_word(atom_word("identity", unit_left), k, subword),
                    node.size + 1,
                )
                unit_right = _unit_on(extension, node.src, k, SRC)
                emit(
                    (3, node.start, 1, k),
                    node,
                    pair_word(subword, k, atom_word("identity", unit_right)),
                    node.size + 1,
                )
            if node.kind == "identity":
                for k in range(n):
                    for (c, d) in base.factorizations(node.name, n, k):
                        emit(
                            (4, node.start, 1, k, c, d),
                            node,
                            pair_word(
                                atom_word("identity", c), k, atom_word("identity", d)
                            ),
                            1,
                        )

    found.sort(key=lambda pair: pair[0])
    return [movement for _, movement in found]


def apply_movement(term: Term, movement: ElementaryMovement) -> Term:
    """Splice the contractum in at the recorded occurrence."""
    expected = movement.prefix.tokens + movement.redex.word.tokens + movement.suffix.tokens
    if term.word.tokens != expected:
        raise Stale("movement does not match this word")
    return _splice(term, movement)


def _splice(term: Term, movement: ElementaryMovement) -> Term:
    word = Word(
        movement.prefix.tokens + movement.contractum.word.tokens + movement.suffix.tokens
    )
    size = term.size - movement.redex.size + movement.contractum.size
    # Movements preserve the boundaries of the occurrence, hence of the word.
    return Term(word, term.extension, term.src, term.tgt, size)


def reduce(extension: CellularExtension, term: Term) -> Term:
    return _reduce_with_path(extension, term)[0]


def _reduce_with_path(
    extension: CellularExtension, term: Term
) -> tuple[Term, list[ElementaryMovement]]:
    """Apply forward cases 2, 3, 4 leftmost-innermost to a fixed point.

    Every step removes a composition symbol, so this terminates in at most
    size(term) steps.
    """
    path: list[ElementaryMovement] = []
    current = term
    while True:
        movements = [
            m
            for m in enumerate_movements(extension, current, FORWARD)
            if m.case in (2, 3, 4)
        ]
        if not movements:
            return current, path
        movements.sort(key=lambda m: (m.prefix_len + len(m.redex.word), m.prefix_len))
        step = movements[0]
        path.append(step)
        current = _splice(current, step)


def equivalent(
    extension: CellularExtension, u: Term, v: Term, bounds: SearchBounds | None = None
) -> EquivalenceOutcome:
    """Decide u ~ v within bounds.

    Distinct only ever comes from the two proven movement invariants:
    mismatched top-level boundaries or mismatched generator multisets.
    Everything the bounded bidirectional search cannot connect is Unknown.
    """
    bounds = bounds or SearchBounds()
    if (u.src, u.tgt) != (v.src, v.tgt):
        return EquivalenceOutcome(DISTINCT, reason="boundary")
    if generator_multiset(u) != generator_multiset(v):
        return EquivalenceOutcome(DISTINCT, reason="generator-multiset")
    if u.word == v.word:
        return EquivalenceOutcome(WITNESS, EquivalenceWitness(u.word, v.word, []))

    ru, path_u = _reduce_with_path(extension, u)
    rv, path_v = _reduce_with_path(extension, v)
    if extension.dimension == 0:
        ru, rot_u = _associate_right(extension, ru)
        rv, rot_v = _associate_right(extension, rv)
        path_u += rot_u
        path_v += rot_v
    if ru.word == rv.word:
        steps = path_u + [m.inverted() for m in reversed(path_v)]
        return EquivalenceOutcome(WITNESS, EquivalenceWitness(u.word, v.word, steps))

    budget = bounds.max_steps - len(path_u) - len(path_v)
    if budget <= 0:
        return EquivalenceOutcome(UNKNOWN, reason="step-cap")
    size_cap = max(u.size, v.size) + bounds.size_slack
    middle = _bidirectional_search(extension, ru, rv, size_cap, budget, bounds.max_visited)
    if isinstance(middle, str):
        return EquivalenceOutcome(UNKNOWN, reason=middle)
    steps = path_u + middle + [m.inverted() for m in reversed(path_v)]
    return EquivalenceOutcome(WITNESS, EquivalenceWitness(u.word, v.word, steps))


def _associate_right(
    extension: CellularExtension, term: Term
) -> tuple[Term, list[ElementaryMovement]]:
    """Rotate with forward case 1 until fully right-associated.

    With unit elimination this is a complete normal form for extensions of
    0-categories, where no interchange or identity-split movements exist.
    """
    path: list[ElementaryMovement] = []
    current = term
    while True:
        movements = [
            m for m in enumerate_movements(extension, current, FORWARD) if m.case == 1
        ]
        if not movements:
            return current, path
        step = movements[0]
        path.append(step)
        current = _splice(current, step)


def _bidirectional_search(
    extension: CellularExtension,
    start: Term,
    goal: Term,
    size_cap: int,
    max_steps: int,
    max_visited: int,
):
    """Meet-in-the-middle breadth-first search over the movement graph.

    Frontiers expand level by level, smaller side first, nodes in
    (word length, serialization) order, movements in enumeration order; the
    first meeting point under that ordering is the witness, which makes
    repeated queries byte-stable. Returns the step list or an Unknown reason.
    """
    sides = {
        "u": {"visited": {start.word.tokens: (None, None, start)}, "frontier": [start], "depth": 0},
        "v": {"visited": {goal.word.tokens: (None, None, goal)}, "frontier": [goal], "depth": 0},
    }
    if goal.word.tokens in sides["u"]["visited"]:
        return []
    total_visited = 2

    def build_path(meet_tokens, landing_side: str, pending) -> list[ElementaryMovement]:
        chains = {"u": [], "v": []}
        for name in ("u", "v"):
            visited = sides[name]["visited"]
            cursor = meet_tokens
            if name == landing_side and pending is not None:
                parent_tokens, movement = pending
                chains[name].append(movement)
                cursor = parent_tokens
            while visited[cursor][0] is not None:
                parent_tokens, movement, _ = visited[cursor]
                chains[name].append(movement)
                cursor = parent_tokens
        forward = list(reversed(chains["u"]))
        backward = [m.inverted() for m in chains["v"]]
        return forward + backward

    while True:
        expandable = [
            name
            for name in ("u", "v")
            if sides[name]["frontier"]
            and sides[name]["depth"] + 1 + sides["v" if name == "u" else "u"]["depth"]
            <= max_steps
        ]
        if not expandable:
            reason = "step-cap" if sides["u"]["frontier"] or sides["v"]["frontier"] else "exhausted-under-cap"
            return reason
        name = min(expandable, key=lambda s: (len(sides[s]["frontier"]), s))
        side = sides[name]
        other = sides["v" if name == "u" else "u"]
        new_frontier: list[Term] = []
        for node in sorted(side["frontier"], key=lambda t: (len(t.word), serialize(t.word))):
            for movement in enumerate_movements(extension, node):
                child = _splice(node, movement)
                if child.size > size_cap:
                    continue
                key = child.word.tokens
                if key in side["visited"]:
                    continue
                if key in other["visited"]:
                    pending = (node.word.tokens, movement) if name == "u" else None
                    if name == "v":
                        # Hang the step on the v-chain before reconstruction.
                        side["visited"][key] = (node.word.tokens, movement, child)
                        return build_path(key, "v", None)
                    return build_path(key, "u", pending)
                side["visited"][key] = (node.word.tokens, movement, child)
                new_frontier.append(child)
                total_visited += 1
                if total_visited > max_visited:
                    return "visited-cap"
        side["frontier"] = new_frontier
        side["depth"] += 1


# -- class-level helpers ----------------------------------------------------


def class_boundary(term: Term, side: str, level: int | None = None) -> str:
    """Boundary of an equivalence class through any representative."""
    n = term.extension.dimension
    return term_boundary(term, n if level is None else level, side)


def compose_classes(left: Term, k: int, right: Term) -> Term:
    """Composite of class representatives; well-defined by congruence."""
    return compose_terms(left, k, right)


def extend_functor(
    extension: CellularExtension,
    target: PresentedCategory,
    base_functor: OmegaFunctor,
    phi: dict[str, str],
    term: Term,
) -> str:
    """Fold a term through a base functor and a generator assignment.

    Requires target dimension n+1 and, for every generator g, the boundary
    squares f(src g) = src phi(g), f(tgt g) = tgt phi(g).
    """
    n = extension.dimension
    if target.dimension < n + 1:
        raise LevelError("target category is too shallow to receive the extension")
    for name, (src, tgt) in extension.generators.items():
        image = phi.get(name)
        if image is None:
            raise SchemaError(f"assignment misses generator {name!r}")
        if target.src[n + 1][image] != base_functor.apply(src) or target.tgt[n + 1][
            image
        ] != base_functor.apply(tgt):
            raise BoundaryMismatch(f"assignment for {name!r} breaks the boundary squares")
    index = analyze_term(extension, term.word)

    def fold(span) -> str:
        node = index.nodes[span]
        if node.kind == "generator":
            return phi[node.name]
        if node.kind == "identity":
            return target.ids[n][base_functor.apply(node.name)]
        return target.compose(fold(node.left), fold(node.right), node.level)

    return fold(index.root)


def movement_graph_dot(extension: CellularExtension, term: Term) -> str:
    """The one-step neighborhood of a word as a DOT digraph.

    Forward movements point away from the word, backward movements into it;
    edges are labeled by case.
    """
    lines = ["digraph movements {", "  rankdir=LR;"]
    center = serialize(term.word)
    lines.append(f'  "{_dot_escape(center)}";')
    for movement in enumerate_movements(extension, term):
        neighbor = serialize(_splice(term, movement).word)
        label = f"case {movement.case}"
        if movement.direction == FORWARD:
            src, dst = center, neighbor
        else:
            src, dst = neighbor, center
        lines.append(
            f'  "{_dot_escape(src)}" -> "{_dot_escape(dst)}" [label="{label}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
