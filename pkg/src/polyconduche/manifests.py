"""Load and save the JSON document formats.

Three document kinds, sniffed by their fields: a category carries "cells",
an extension carries "generators", a functor carries "map". Extension and
functor documents may inline their category payloads or reference them by
path, resolved relative to the referencing file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .categories import OmegaFunctor, PresentedCategory
from .conduche import ExtensionMorphism
from .errors import SchemaError
from .terms import CellularExtension

CATEGORY = "category"
EXTENSION = "extension"
FUNCTOR = "functor"


def sniff_kind(doc: dict) -> str:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if "cells" in doc:
        return CATEGORY
    if "generators" in doc:
        return EXTENSION
    if "map" in doc:
        return FUNCTOR
    raise SchemaError("unrecognized document: expected cells, generators, or map")


def _require(doc: dict, key: str):
    if key not in doc:
        raise SchemaError(f"missing {key!r}")
    return doc[key]


def category_from_json(doc: dict) -> PresentedCategory:
    dimension = _require(doc, "dimension")
    if not isinstance(dimension, int) or dimension < 0:
        raise SchemaError("dimension must be a non-negative integer")
    cells = {int(level): list(names) for level, names in _require(doc, "cells").items()}
    src = {int(level): dict(table) for level, table in doc.get("src", {}).items()}
    tgt = {int(level): dict(table) for level, table in doc.get("tgt", {}).items()}
    ids = {int(level): dict(table) for level, table in doc.get("id", {}).items()}
    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for key, triples in doc.get("comp", {}).items():
        try:
            level_text, k_text = key.split("*")
            level, k = int(level_text), int(k_text)
        except ValueError:
            raise SchemaError(f"bad composition key {key!r}, expected 'l*k'") from None
        table: dict[tuple[str, str], str] = {}
        for triple in triples:
            if len(triple) != 3:
                raise SchemaError(f"composition entries are triples, got {triple!r}")
            left, right, result = triple
            if (left, right) in table:
                raise SchemaError(f"duplicate composition entry {left!r}, {right!r}")
            table[(left, right)] = result
        comp[(level, k)] = table
    basis = None
    if "basis" in doc:
        basis = {int(level): list(names) for level, names in doc["basis"].items()}
    return PresentedCategory(dimension, cells, src, tgt, ids, comp, basis)


def category_to_json(category: PresentedCategory) -> dict:
    doc = {
        "dimension": category.dimension,
        "cells": {str(l): list(v) for l, v in sorted(category.cells.items())},
        "src": {str(l): dict(v) for l, v in sorted(category.src.items())},
        "tgt": {str(l): dict(v) for l, v in sorted(category.tgt.items())},
        "id": {str(l): dict(v) for l, v in sorted(category.ids.items())},
        "comp": {
            f"{l}*{k}": [[a, b, r] for (a, b), r in sorted(table.items())]
            for (l, k), table in sorted(category.comp.items())
        },
    }
    if category.basis is not None:
        doc["basis"] = {str(l): list(v) for l, v in sorted(category.basis.items())}
    return doc


def _resolve_category(payload, base_dir: Path) -> PresentedCategory:
    if isinstance(payload, str):
        nested_kind, nested = load_document(base_dir / payload)
        if nested_kind != CATEGORY:
            raise SchemaError(f"{payload!r} is not a category document")
        return nested
    return category_from_json(payload)


def extension_from_json(doc: dict, base_dir: Path) -> CellularExtension:
    base = _resolve_category(_require(doc, "base"), base_dir)
    generators: dict[str, tuple[str, str]] = {}
    for entry in _require(doc, "generators"):
        name = _require(entry, "name")
        if name in generators:
            raise SchemaError(f"duplicate generator {name!r}")
        generators[name] = (_require(entry, "src"), _require(entry, "tgt"))
    return CellularExtension(base, generators)


def extension_to_json(extension: CellularExtension) -> dict:
    return {
        "base": category_to_json(extension.base),
        "generators": [
            {"name": name, "src": s, "tgt": t}
            for name, (s, t) in extension.generators.items()
        ],
    }


def _resolve_side(payload, base_dir: Path):
    if isinstance(payload, str):
        kind, obj = load_document(base_dir / payload)
    else:
        kind = sniff_kind(payload)
        if kind == CATEGORY:
            obj = category_from_json(payload)
        elif kind == EXTENSION:
            obj = extension_from_json(payload, base_dir)
        else:
            raise SchemaError("source/target must be category or extension documents")
    if kind == FUNCTOR:
        raise SchemaError("source/target must be category or extension documents")
    return kind, obj


def functor_from_json(doc: dict, base_dir: Path):
    """A map between categories, or between extensions when both sides are
    extension documents; the top map level then sends generators."""
    src_kind, source = _resolve_side(_require(doc, "source"), base_dir)
    tgt_kind, target = _resolve_side(_require(doc, "target"), base_dir)
    if src_kind != tgt_kind:
        raise SchemaError("source and target documents must have the same kind")
    maps = {int(level): dict(table) for level, table in _require(doc, "map").items()}
    if src_kind == CATEGORY:
        return OmegaFunctor(source, target, maps)
    top = source.base.dimension + 1
    phi = maps.pop(top, None)
    if phi is None:
        raise SchemaError(f"extension morphism needs a level-{top} map for generators")
    return ExtensionMorphism(source, target, OmegaFunctor(source.base, target.base, maps), phi)


def functor_to_json(functor) -> dict:
    if isinstance(functor, ExtensionMorphism):
        maps = {str(l): dict(v) for l, v in sorted(functor.base.maps.items())}
        maps[str(functor.source.base.dimension + 1)] = dict(functor.phi)
        return {
            "source": extension_to_json(functor.source),
            "target": extension_to_json(functor.target),
            "map": maps,
        }
    return {
        "source": category_to_json(functor.source),
        "target": category_to_json(functor.target),
        "map": {str(l): dict(v) for l, v in sorted(functor.maps.items())},
    }


def load_document(path):
    """Read a document and build the matching object; returns (kind, object)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    kind = sniff_kind(doc)
    base_dir = path.parent
    if kind == CATEGORY:
        return kind, category_from_json(doc)
    if kind == EXTENSION:
        return kind, extension_from_json(doc, base_dir)
    return kind, functor_from_json(doc, base_dir)


def dump_json(doc: dict) -> str:
    """The one serialization used everywhere: sorted keys, two-space indent."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save_document(path, doc: dict) -> None:
    Path(path).write_text(dump_json(doc))
