"""Pullbacks of category functors and slices of 1-categories."""

from __future__ import annotations

from dataclasses import dataclass

from .categories import OmegaFunctor, PresentedCategory
from .errors import SchemaError, UnknownObject


@dataclass
class PullbackResult:
    apex: PresentedCategory
    proj1: OmegaFunctor
    proj2: OmegaFunctor


def _pair(x: str, y: str) -> str:
    return f"{x}|{y}"


def pullback(f: OmegaFunctor, g: OmegaFunctor) -> PullbackResult:
    """Fibered product of two functors with a common target.

    Cells are the pairs agreeing in the target, named "x|y"; boundaries,
    identities and composition act componentwise. Both component tables are
    total on composable pairs, so the result's are as well.
    """
    if f.target is not g.target and f.target != g.target:
        raise SchemaError("pullback needs a common target category")
    if f.source.dimension != g.source.dimension:
        raise SchemaError("pullback sources must share a dimension")
    C, D = f.source, g.source
    dim = C.dimension

    cells: dict[int, list[str]] = {}
    pairs: dict[int, list[tuple[str, str]]] = {}
    for level in range(dim + 1):
        pairs[level] = [
            (x, y)
            for x in C.cells.get(level, [])
            for y in D.cells.get(level, [])
            if f.apply(x) == g.apply(y)
        ]
        cells[level] = [_pair(x, y) for x, y in pairs[level]]

    src = {
        level: {
            _pair(x, y): _pair(C.src[level][x], D.src[level][y])
            for x, y in pairs[level]
        }
        for level in range(1, dim + 1)
    }
    tgt = {
        level: {
            _pair(x, y): _pair(C.tgt[level][x], D.tgt[level][y])
            for x, y in pairs[level]
        }
        for level in range(1, dim + 1)
    }
    ids = {
        level: {
            _pair(x, y): _pair(C.ids[level][x], D.ids[level][y])
            for x, y in pairs[level]
        }
        for level in range(dim)
    }
    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for (level, k), table_c in C.comp.items():
        table_d = D.comp.get((level, k), {})
        entries: dict[tuple[str, str], str] = {}
        for (x1, y1) in pairs.get(level, []):
            for (x2, y2) in pairs.get(level, []):
                if (x1, x2) in table_c and (y1, y2) in table_d:
                    entries[(_pair(x1, y1), _pair(x2, y2))] = _pair(
                        table_c[(x1, x2)], table_d[(y1, y2)]
                    )
        comp[(level, k)] = entries

    apex = PresentedCategory(dim, cells, src, tgt, ids, comp)
    proj1 = OmegaFunctor(
        apex, C, {level: {_pair(x, y): x for x, y in pairs[level]} for level in pairs}
    )
    proj2 = OmegaFunctor(
        apex, D, {level: {_pair(x, y): y for x, y in pairs[level]} for level in pairs}
    )
    return PullbackResult(apex, proj1, proj2)


def slice_1cat(
    category: PresentedCategory, obj: str
) -> tuple[PresentedCategory, OmegaFunctor]:
    """The category of arrows into obj, with its forgetful projection.

    Objects are the arrows b with target obj; an arrow (m, b), written
    "m|b", runs from b composed with m to b. Only dimension-1 inputs are
    accepted; the construction has no higher analogue here.
    """
    if category.dimension != 1:
        raise SchemaError(
            f"slice is defined for dimension-1 categories, got dimension {category.dimension}"
        )
    if obj not in category.cells.get(0, []):
        raise UnknownObject(f"{obj!r} is not an object")

    objects = [b for b in category.cells.get(1, []) if category.tgt[1][b] == obj]
    arrows: list[tuple[str, str]] = []
    for b in objects:
        for m in category.cells.get(1, []):
            if category.tgt[1][m] != category.src[1][b]:
                continue
            arrows.append((m, b))

    names = {pair: _pair(*pair) for pair in arrows}
    src = {1: {}}
    tgt = {1: {}}
    for (m, b) in arrows:
        src[1][names[(m, b)]] = category.compose(b, m, 0)
        tgt[1][names[(m, b)]] = b
    ids = {
        0: {
            b: names[(category.ids[0][category.src[1][b]], b)]
            for b in objects
        }
    }
    comp_table: dict[tuple[str, str], str] = {}
    for (m2, b2) in arrows:
        left = names[(m2, b2)]
        for (m1, b1) in arrows:
            if src[1][left] != b1:
                continue
            composite = (category.compose(m2, m1, 0), b2)
            comp_table[(left, names[(m1, b1)])] = names[composite]

    sliced = PresentedCategory(
        1,
        {0: objects, 1: [names[pair] for pair in arrows]},
        src,
        tgt,
        ids,
        {(1, 0): comp_table},
    )
    projection = OmegaFunctor(
        sliced,
        category,
        {
            0: {b: category.src[1][b] for b in objects},
            1: {names[(m, b)]: m for (m, b) in arrows},
        },
    )
    return sliced, projection
