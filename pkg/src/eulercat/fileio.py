"""JSON file formats for matrices, categories, functors and diagrams.

Matrix::

    {"rows": 2, "cols": 2, "entries": [[3, 2], ["1/2", 0]]}

Category::

    {"objects": ["a", "b"],
     "morphisms": [{"id": "1a", "src": "a", "dst": "a"}, ...],
     "identities": {"a": "1a", ...},
     "composition": [["g", "f", "gf"], ...]}      # g . f = gf

Functor (``source``/``target`` are paths relative to the functor file, or
inline category objects)::

    {"source": "a.json", "target": "b.json", "objects": {...}, "morphisms": {...}}

Diagram::

    {"index": "idx.json", "fibers": {"a": "fa.json", ...},
     "arrows": {"f": {"objects": {...}, "morphisms": {...}}, ...}}

Arrows for identity morphisms of the index may be omitted.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catcore import FinCategory, FunctorData
from .constructions import Diagram
from .ratmat import RatMatrix, from_json as matrix_from_json, to_json as matrix_to_json


class ParseError(ValueError):
    """Unreadable file or malformed JSON structure."""


def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def detect_kind(data: Any) -> str:
    if isinstance(data, dict):
        if "rows" in data and "entries" in data:
            return "matrix"
        if "index" in data and "fibers" in data:
            return "diagram"
        if "source" in data and "target" in data:
            return "functor"
        if "objects" in data and "morphisms" in data:
            return "category"
    raise ParseError("unrecognised JSON document (not a matrix, category, functor or diagram)")


# -- matrices ----------------------------------------------------------------

def matrix_from_data(data: Any) -> RatMatrix:
    try:
        return matrix_from_json(data)
    except (ValueError, TypeError) as exc:
        raise ParseError(str(exc)) from exc


def load_matrix(path: str | Path) -> RatMatrix:
    return matrix_from_data(read_json(path))


# -- categories --------------------------------------------------------------

def category_from_data(data: Any) -> FinCategory:
    if not isinstance(data, dict):
        raise ParseError("category JSON must be an object")
    try:
        objects = data["objects"]
        morphs = [(m["id"], m["src"], m["dst"]) for m in data["morphisms"]]
        identities = data.get("identities", {})
        comp = {}
        for entry in data.get("composition", []):
            g, f, gf = entry
            if (g, f) in comp and comp[g, f] != gf:
                raise ParseError(f"composition of ({g},{f}) given twice with different results")
            comp[g, f] = gf
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed category JSON: {exc!r}") from exc
    if not isinstance(identities, dict):
        raise ParseError("'identities' must map objects to morphism ids")
    strings = list(objects) + [x for m in morphs for x in m] + list(identities) + \
        list(identities.values()) + [x for k, v in comp.items() for x in (*k, v)]
    if not isinstance(objects, list) or not all(isinstance(s, str) for s in strings):
        raise ParseError("object and morphism ids must be strings")
    return FinCategory(objects, morphs, identities, comp)


def category_to_data(c: FinCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [{"id": m.id, "src": m.src, "dst": m.dst} for m in c.morphisms],
        "identities": dict(c.identities),
        "composition": [[g, f, gf] for (g, f), gf in c.compose.items()],
    }


def load_category(path: str | Path) -> FinCategory:
    return category_from_data(read_json(path))


def _category_ref(ref: Any, base: Path, cache: dict) -> FinCategory:
    if isinstance(ref, dict):
        return category_from_data(ref)
    if not isinstance(ref, str):
        raise ParseError(f"expected a path or inline category, got {ref!r}")
    p = (base / ref).resolve()
    if p not in cache:
        cache[p] = load_category(p)
    return cache[p]


# -- functors ----------------------------------------------------------------

def _maps(data: Any) -> tuple[dict, dict]:
    try:
        om, mm = data["objects"], data["morphisms"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"functor data needs 'objects' and 'morphisms': {exc!r}") from exc
    if not isinstance(om, dict) or not isinstance(mm, dict):
        raise ParseError("functor 'objects' and 'morphisms' must be JSON objects")
    return om, mm


def functor_from_data(data: Any, base: Path = Path("."), cache: dict | None = None) -> FunctorData:
    cache = {} if cache is None else cache
    if not isinstance(data, dict) or "source" not in data or "target" not in data:
        raise ParseError("functor JSON needs 'source' and 'target'")
    src = _category_ref(data["source"], base, cache)
    tgt = _category_ref(data["target"], base, cache)
    om, mm = _maps(data)
    return FunctorData(src, tgt, om, mm)


def load_functor(path: str | Path, cache: dict | None = None) -> FunctorData:
    path = Path(path)
    return functor_from_data(read_json(path), path.parent, cache)


def functor_to_data(f: FunctorData, source_ref: Any = None, target_ref: Any = None) -> dict:
    return {
        "source": source_ref if source_ref is not None else category_to_data(f.source),
        "target": target_ref if target_ref is not None else category_to_data(f.target),
        "objects": dict(f.object_map),
        "morphisms": dict(f.morphism_map),
    }


# -- diagrams ----------------------------------------------------------------

def diagram_from_data(data: Any, base: Path = Path(".")) -> Diagram:
    if not isinstance(data, dict):
        raise ParseError("diagram JSON must be an object")
    cache: dict = {}
    try:
        index = _category_ref(data["index"], base, cache)
        fibers = {a: _category_ref(ref, base, cache) for a, ref in data["fibers"].items()}
        arrows_data = data.get("arrows", {})
    except (KeyError, AttributeError) as exc:
        raise ParseError(f"diagram JSON needs 'index' and 'fibers': {exc!r}") from exc
    arrows = {}
    for m, spec in arrows_data.items():
        mm = index.by_id.get(m)
        if mm is None or mm.src not in fibers or mm.dst not in fibers:
            raise ParseError(f"arrow {m!r} does not name an index morphism between given fibers")
        om, mmap = _maps(spec)
        arrows[m] = FunctorData(fibers[mm.src], fibers[mm.dst], om, mmap)
    return Diagram(index, fibers, arrows)


def load_diagram(path: str | Path) -> Diagram:
    path = Path(path)
    return diagram_from_data(read_json(path), path.parent)


def diagram_to_data(d: Diagram, index_ref: Any = None, fiber_refs: dict | None = None,
                    include_identities: bool = False) -> dict:
    fiber_refs = fiber_refs or {}
    ids = set(d.index.identities.values())
    return {
        "index": index_ref if index_ref is not None else category_to_data(d.index),
        "fibers": {a: fiber_refs.get(a, category_to_data(c)) for a, c in d.fibers.items()},
        "arrows": {m: {"objects": dict(f.object_map), "morphisms": dict(f.morphism_map)}
                   for m, f in d.arrows.items() if include_identities or m not in ids},
    }


def dump(data: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(data, indent=2)
    return json.dumps(data, separators=(",", ":"))


__all__ = [
    "ParseError", "read_json", "detect_kind",
    "matrix_from_data", "load_matrix", "matrix_to_json",
    "category_from_data", "category_to_data", "load_category",
    "functor_from_data", "functor_to_data", "load_functor",
    "diagram_from_data", "diagram_to_data", "load_diagram", "dump",
]
