"""The bundled example corpus and its expected values.

``corpus/manifest.json`` lists :class:`CorpusEntry` records.  Each entry's
``expected`` map names checks (``chi``, ``pinv``, ``applies`` ...) whose exact
values are compared against what :func:`observe` computes for the file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import ratmat
from .catcore import adjacency, check_adjunction_matrices
from .constructions import chi_inclusion_exclusion
from .fileio import ParseError, load_category, load_diagram, load_functor, load_matrix
from .weights import PreconditionFailed, chi_adjunction_transport, matrix_report

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"
KINDS = ("matrix", "category", "functor-pair", "diagram")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str
    path: str | tuple[str, str]
    expected: dict[str, Any] = field(default_factory=dict)

    def paths(self, base: Path) -> list[Path]:
        parts = [self.path] if isinstance(self.path, str) else list(self.path)
        return [base / p for p in parts]


def load_manifest(path: str | Path | None = None) -> list[CorpusEntry]:
    path = Path(path) if path else CORPUS_DIR / "manifest.json"
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    entries = []
    for e in data["entries"]:
        if e["kind"] not in KINDS:
            raise ParseError(f"{e['name']}: unknown kind {e['kind']!r}")
        p = e["path"] if isinstance(e["path"], str) else tuple(e["path"])
        entries.append(CorpusEntry(e["name"], e["kind"], p, e.get("expected") or {}))
    return entries


def _strs(m):
    return None if m is None else [str(x) for x in m.entries]


def _matrix_observations(m) -> dict:
    rep = matrix_report(m)
    p = ratmat.pinv(m)
    return {
        "pinv": [[str(x) for x in p.row(i)] for i in range(p.rows)],
        "chi": str(rep.chi),
        "weighting": _strs(rep.weighting),
        "coweighting": _strs(rep.coweighting),
        "lein_defined": rep.lein_defined,
    }


def observe(entry: CorpusEntry, base: Path = CORPUS_DIR) -> dict:
    """Compute every check value available for ``entry``."""
    paths = entry.paths(base)
    if entry.kind == "matrix":
        return _matrix_observations(load_matrix(paths[0]))
    if entry.kind == "category":
        c = load_category(paths[0]).require_valid()
        return {"valid": True, **_matrix_observations(adjacency(c))}
    if entry.kind == "functor-pair":
        cache: dict = {}
        l, r = (load_functor(p, cache).require_valid() for p in paths)
        try:
            transport: Any = chi_adjunction_transport(l.source, l.target, l, r)
        except PreconditionFailed:
            transport = "precondition-failed"
        return {"hom_counts": check_adjunction_matrices(l, r), "transport": transport}
    res = chi_inclusion_exclusion(load_diagram(paths[0]))
    return {"actual": str(res.actual), "predicted": str(res.predicted), "applies": res.applies}


def check_entry(entry: CorpusEntry, base: Path = CORPUS_DIR) -> list[dict]:
    """Mismatches between the entry's expected map and the computed values."""
    seen = observe(entry, base)
    return [{"check": k, "expected": v, "actual": seen.get(k, "<unavailable>")}
            for k, v in entry.expected.items() if seen.get(k, "<unavailable>") != v]
