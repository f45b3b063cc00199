"""Regenerate everything under fixtures/ from the builders in
polyconduche.fixtures. Run from the repository root:

    python3 scripts/make_fixtures.py
"""

from pathlib import Path

from polyconduche import fixtures
from polyconduche.constructions import slice_1cat
from polyconduche.manifests import (
    category_to_json,
    functor_to_json,
    save_document,
)

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> None:
    OUT.mkdir(exist_ok=True)

    categories = {
        "terminal.cat.json": fixtures.terminal_category(),
        "arrow.cat.json": fixtures.arrow_category(),
        "loop.cat.json": fixtures.loop_category(),
        "path2.cat.json": fixtures.path2_category(),
        "idem.cat.json": fixtures.idem_category(),
        "parallel_pair.cat.json": fixtures.parallel_pair_category(),
    }
    for name, category in categories.items():
        save_document(OUT / name, category_to_json(category))
    save_document(
        OUT / "arrow2.cat.json",
        category_to_json(fixtures.parallel_pair_collapse().target),
    )

    save_document(
        OUT / "eh.ext.json",
        {
            "base": "terminal.cat.json",
            "generators": [
                {"name": "a", "src": "id_star", "tgt": "id_star"},
                {"name": "b", "src": "id_star", "tgt": "id_star"},
            ],
        },
    )
    save_document(
        OUT / "ehc.ext.json",
        {
            "base": "terminal.cat.json",
            "generators": [{"name": "c", "src": "id_star", "tgt": "id_star"}],
        },
    )
    chain3 = fixtures.chain3_extension()
    save_document(
        OUT / "chain3.ext.json",
        {
            "base": category_to_json(chain3.base),
            "generators": [
                {"name": name, "src": s, "tgt": t}
                for name, (s, t) in chain3.generators.items()
            ],
        },
    )

    save_document(
        OUT / "eh.fun.json",
        {
            "source": "eh.ext.json",
            "target": "ehc.ext.json",
            "map": {
                "0": {"star": "star"},
                "1": {"id_star": "id_star"},
                "2": {"a": "c", "b": "c"},
            },
        },
    )
    collapse = fixtures.collapse_functor()
    save_document(
        OUT / "collapse.fun.json",
        {
            "source": "arrow.cat.json",
            "target": "loop.cat.json",
            "map": {str(l): dict(v) for l, v in sorted(collapse.maps.items())},
        },
    )
    pp_collapse = fixtures.parallel_pair_collapse()
    save_document(
        OUT / "pp_collapse.fun.json",
        {
            "source": "parallel_pair.cat.json",
            "target": "arrow2.cat.json",
            "map": {str(l): dict(v) for l, v in sorted(pp_collapse.maps.items())},
        },
    )
    save_document(
        OUT / "identity_arrow.fun.json",
        {
            "source": "arrow.cat.json",
            "target": "arrow.cat.json",
            "map": {
                "0": {"x": "x", "y": "y"},
                "1": {"1x": "1x", "1y": "1y", "u": "u"},
            },
        },
    )
    _sliced, projection = slice_1cat(fixtures.path2_category(), "z")
    save_document(OUT / "slice_path2_z.fun.json", functor_to_json(projection))

    # Deliberately broken: the arrow's source points at a missing cell.
    save_document(
        OUT / "bad_dangling.cat.json",
        {
            "dimension": 1,
            "cells": {"0": ["x", "y"], "1": ["1x", "1y", "u"]},
            "src": {"1": {"1x": "x", "1y": "y", "u": "nope"}},
            "tgt": {"1": {"1x": "x", "1y": "y", "u": "y"}},
            "id": {"0": {"x": "1x", "y": "1y"}},
            "comp": {
                "1*0": [
                    ["1x", "1x", "1x"],
                    ["1y", "1y", "1y"],
                    ["1y", "u", "u"],
                    ["u", "1x", "u"],
                ]
            },
        },
    )


if __name__ == "__main__":
    main()
