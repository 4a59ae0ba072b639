"""Randomized verification of the algebraic laws.

Each law draws ``count`` instances from its own deterministic stream
(seeded by ``"<seed>:<law>"``), so adding a law never perturbs the others and
identical configurations give byte-identical summaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import ratmat
from .catcore import adjacency, reorder
from .constructions import (Diagram, assembled_weighting, chi_inclusion_exclusion,
                            coproduct, decompose_L1_L2, grothendieck, is_poset, product)
from .fileio import category_to_data, diagram_to_data
from .randgen import (random_category, random_general_diagram, random_matrix,
                      random_permutation, random_poset_diagram)
from .ratmat import in_row_space, ones, rank
from .weights import MissingCoweighting, MissingWeighting, check_sls, chi


@dataclass(frozen=True)
class LawRunConfig:
    seed: int = 1
    count: int = 50
    max_objects: int = 4
    max_hom: int = 3
    max_matrix: int = 8

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.max_objects < 1 or self.max_hom < 1 or self.max_matrix < 1:
            raise ValueError("size bounds must be at least 1")
        if not -2**63 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass
class LawTally:
    passed: int = 0
    failed: int = 0
    skipped: int = 0


@dataclass
class LawSummary:
    config: LawRunConfig
    tallies: dict[str, LawTally] = field(default_factory=dict)
    first_failure: dict | None = None

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies.values())

    def to_json(self) -> dict:
        return {
            "seed": self.config.seed,
            "count": self.config.count,
            "max_objects": self.config.max_objects,
            "max_hom": self.config.max_hom,
            "laws": {k: vars(t) for k, t in self.tallies.items()},
            "ok": self.ok,
            "first_failure": self.first_failure,
        }


# Each check returns None (pass), "skip", or a witness dict (fail).

def _penrose(rng: random.Random, cfg: LawRunConfig):
    m = random_matrix(rng, rng.randint(1, cfg.max_matrix))
    p = ratmat.pinv(m)
    bad = ratmat.penrose_violations(m, p)
    if not bad and p != ratmat.pinv_full_rank(m):
        bad = ["full-rank oracle disagrees"]
    if bad:
        return {"matrix": ratmat.to_json(m), "pinv": ratmat.to_json(p), "violations": bad}
    return None


def _pair(rng, cfg):
    return (random_category(rng, cfg.max_objects, cfg.max_hom),
            random_category(rng, cfg.max_objects, cfg.max_hom))


def _additivity(rng, cfg):
    a, b = _pair(rng, cfg)
    lhs, rhs = chi(coproduct(a, b)), chi(a) + chi(b)
    if lhs != rhs:
        return {"a": category_to_data(a), "b": category_to_data(b),
                "chi(a+b)": str(lhs), "chi(a)+chi(b)": str(rhs)}
    return None


def _multiplicativity(rng, cfg):
    a, b = _pair(rng, cfg)
    lhs, rhs = chi(product(a, b)), chi(a) * chi(b)
    if lhs != rhs:
        return {"a": category_to_data(a), "b": category_to_data(b),
                "chi(axb)": str(lhs), "chi(a)chi(b)": str(rhs)}
    return None


def _permutation(rng, cfg):
    c = random_category(rng, cfg.max_objects, cfg.max_hom)
    order = random_permutation(rng, c.objects)
    before, after = chi(c), chi(reorder(c, order))
    if before != after:
        return {"category": category_to_data(c), "order": order,
                "chi": str(before), "chi_permuted": str(after)}
    return None


def _sls(rng, cfg):
    c = random_category(rng, cfg.max_objects, cfg.max_hom)
    try:
        good = check_sls(adjacency(c))
    except (MissingWeighting, MissingCoweighting):
        return "skip"
    return None if good else {"category": category_to_data(c)}


def _any_diagram(rng, cfg) -> Diagram:
    if rng.random() < 0.6:
        return random_poset_diagram(rng, cfg.max_objects, cfg.max_hom)
    return random_general_diagram(rng, min(3, cfg.max_objects), cfg.max_hom)


def _separation(rng, cfg):
    d = _any_diagram(rng, cfg)
    l1, l2 = decompose_L1_L2(d)
    g = adjacency(grothendieck(d).total)
    if l1 @ l2 != g:
        return {"diagram": diagram_to_data(d), "G": ratmat.to_json(g),
                "L1": ratmat.to_json(l1), "L2": ratmat.to_json(l2)}
    return None


def _weighting_assembly(rng, cfg):
    d = _any_diagram(rng, cfg)
    w = assembled_weighting(d)
    if w is None:
        return "skip"
    g = adjacency(grothendieck(d).total)
    if g @ w != ones(g.rows):
        return {"diagram": diagram_to_data(d), "weighting": [str(x) for x in w.entries]}
    return None


def _inclusion_exclusion(rng, cfg):
    d = random_poset_diagram(rng, cfg.max_objects, cfg.max_hom)
    res = chi_inclusion_exclusion(d)
    if not res.applies or res.predicted != res.actual:
        return {"diagram": diagram_to_data(d), "predicted": str(res.predicted),
                "actual": str(res.actual), "applies": res.applies}
    return None


def _row_space(rng, cfg):
    d = random_poset_diagram(rng, cfg.max_objects, cfg.max_hom)
    assert is_poset(d.index) is not None
    l1, l2 = decompose_L1_L2(d)
    g = l1 @ l2
    same_rank = rank(g) == rank(l2)
    inside = all(in_row_space(g, ratmat.RatMatrix(1, l2.cols, l2.row(i)))
                 for i in range(l2.rows))
    if not (same_rank and inside):
        return {"diagram": diagram_to_data(d), "rank_G": rank(g), "rank_L2": rank(l2)}
    return None


LAWS: dict[str, Callable] = {
    "penrose": _penrose,
    "additivity": _additivity,
    "multiplicativity": _multiplicativity,
    "permutation-invariance": _permutation,
    "sls": _sls,
    "separation": _separation,
    "weighting-assembly": _weighting_assembly,
    "inclusion-exclusion": _inclusion_exclusion,
    "row-space": _row_space,
}


def run_laws(config: LawRunConfig, laws: list[str] | None = None) -> LawSummary:
    summary = LawSummary(config)
    for name in laws or list(LAWS):
        check = LAWS[name]
        rng = random.Random(f"{config.seed}:{name}")
        tally = summary.tallies.setdefault(name, LawTally())
        for i in range(config.count):
            try:
                outcome = check(rng, config)
            except Exception as exc:  # a crash is a failed law, with the error as witness
                outcome = {"error": f"{type(exc).__name__}: {exc}"}
            if outcome is None:
                tally.passed += 1
            elif outcome == "skip":
                tally.skipped += 1
            else:
                tally.failed += 1
                if summary.first_failure is None:
                    summary.first_failure = {"law": name, "instance": i, "witness": outcome}
    return summary
