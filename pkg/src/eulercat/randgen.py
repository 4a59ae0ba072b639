"""Seeded generators of random matrices, categories and diagrams.

Categories come from families that are valid by construction (posets,
constant-composition categories on a transitive support, cyclic groups,
codiscrete categories, isomorphic-copy inflations and disjoint unions), so no
rejection sampling over the category axioms is needed.  Every generated
category is still validated before it is returned.
"""

from __future__ import annotations

import random

from . import builders
from .catcore import FinCategory, FunctorData, adjacency
from .constructions import Diagram, coproduct, product
from .ratmat import RatMatrix
from .weights import weighting


def random_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 5) -> RatMatrix:
    return RatMatrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], cols=n)


def _checked(c: FinCategory) -> FinCategory:
    return c.require_valid()


def random_dag_relations(rng: random.Random, objs: list[str], p: float = 0.45) -> list[tuple[str, str]]:
    return [(objs[i], objs[j]) for i in range(len(objs))
            for j in range(i + 1, len(objs)) if rng.random() < p]


def random_poset(rng: random.Random, max_objects: int, prefix: str = "p") -> FinCategory:
    n = rng.randint(1, max_objects)
    objs = [f"{prefix}{i}" for i in range(n)]
    c = builders.poset(objs, random_dag_relations(rng, objs))
    order = list(objs)
    rng.shuffle(order)
    return FinCategory(order, c.morphisms, c.identities, c.compose)


def _closure(n: int, rel: set[tuple[int, int]]) -> set[tuple[int, int]]:
    rel = set(rel) | {(i, i) for i in range(n)}
    for k in range(n):
        for i in range(n):
            if (i, k) in rel:
                for j in range(n):
                    if (k, j) in rel:
                        rel.add((i, j))
    return rel


def random_constant_composition(rng: random.Random, max_objects: int, max_hom: int,
                                cyclic: bool) -> FinCategory:
    n = rng.randint(1, max_objects)
    rel = {(i, j) for i in range(n) for j in range(n)
           if i != j and (cyclic or i < j) and rng.random() < 0.4}
    support = _closure(n, rel)
    counts = [[0] * n for _ in range(n)]
    for (i, j) in support:
        counts[i][j] = rng.randint(1, max_hom)
    for i in range(n):
        on_cycle = any((i, j) in support and (j, i) in support for j in range(n) if j != i)
        if on_cycle and counts[i][i] < 2:
            counts[i][i] = rng.randint(2, max(2, max_hom))
    return builders.constant_composition(counts, [f"c{i}" for i in range(n)])


def random_category(rng: random.Random, max_objects: int = 4, max_hom: int = 3,
                    depth: int = 0) -> FinCategory:
    kinds = ["poset", "cc-dag", "cc-cyclic", "group", "codiscrete", "inflated", "union"]
    if depth > 0 or max_objects < 2:
        kinds = kinds[:5]
    kind = rng.choice(kinds)
    if kind == "poset":
        c = random_poset(rng, max_objects)
    elif kind == "cc-dag":
        c = random_constant_composition(rng, max_objects, max_hom, cyclic=False)
    elif kind == "cc-cyclic":
        c = random_constant_composition(rng, max_objects, max_hom, cyclic=True)
    elif kind == "group":
        c = builders.cyclic_group(rng.randint(1, max(1, 2 * max_hom)))
    elif kind == "codiscrete":
        c = builders.codiscrete([f"k{i}" for i in range(rng.randint(1, max_objects))])
    elif kind == "inflated":
        base = random_category(rng, max_objects - 1, max_hom, depth + 1)
        extra = rng.randint(1, max_objects - len(base.objects)) if len(base.objects) < max_objects else 0
        copies = {}
        for i in range(extra):
            orig = rng.choice(base.objects)
            copies[f"{orig}'{i}"] = orig
        c = builders.add_isomorphic_copies(base, copies)[0] if copies else base
    else:
        left = random_category(rng, max(1, max_objects // 2), max_hom, depth + 1)
        right = random_category(rng, max(1, max_objects - len(left.objects)), max_hom, depth + 1)
        c = coproduct(left, right)
        c = FinCategory(c.objects, c.morphisms, c.identities, c.compose)
    return _checked(c)


def random_weighted_category(rng: random.Random, max_objects: int = 3, max_hom: int = 3,
                             attempts: int = 20) -> FinCategory:
    """A random category whose adjacency matrix has a weighting."""
    for _ in range(attempts):
        c = random_category(rng, max_objects, max_hom)
        if weighting(adjacency(c)) is not None:
            return c
    return random_poset(rng, max_objects)


def random_permutation(rng: random.Random, items) -> list:
    out = list(items)
    rng.shuffle(out)
    return out


# -- diagrams ----------------------------------------------------------------

def _constant_arrows(index: FinCategory, fibers: dict[str, FinCategory],
                     rng: random.Random) -> dict[str, FunctorData]:
    """F(f) = constant at a chosen object of F(dst f) for every non-identity f.

    Strict as long as no composite of non-identities is an identity.
    """
    anchor = {a: rng.choice(fibers[a].objects) for a in index.objects}
    ids = set(index.identities.values())
    return {m.id: builders.constant_functor(fibers[m.src], fibers[m.dst], anchor[m.dst])
            for m in index.morphisms if m.id not in ids}


def _random_partition(rng: random.Random, items: list[str]) -> dict[str, str]:
    """Map each item to a block label (the block's first member)."""
    labels = {}
    blocks: list[str] = []
    for x in items:
        if blocks and rng.random() < 0.5:
            labels[x] = rng.choice(blocks)
        else:
            labels[x] = x
            blocks.append(x)
    return labels


def _join(parts: list[dict[str, str]], items: list[str]) -> dict[str, str]:
    """Finest partition coarser than all of ``parts``; labels are block minima in item order."""
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in parts:
        for x, lab in p.items():
            rx, rl = find(x), find(lab)
            if rx != rl:
                parent[max(rx, rl, key=items.index)] = min(rx, rl, key=items.index)
    return {x: find(x) for x in items}


def equivalence_category(items: list[str], labels: dict[str, str]) -> FinCategory:
    """Objects ``items``; one morphism x -> y iff x and y share a block."""
    name = lambda x, y: f"id_{x}" if x == y else f"{x}>{y}"
    same = [(x, y) for x in items for y in items if labels[x] == labels[y]]
    comp = {(name(y, z), name(x, y)): name(x, z)
            for (x, y) in same for (y2, z) in same if y2 == y}
    return FinCategory(items, [(name(x, y), x, y) for x, y in same],
                       {x: name(x, x) for x in items}, comp)


def _eq_functor(src: FinCategory, tgt: FinCategory) -> FunctorData:
    return FunctorData(src, tgt, {x: x for x in src.objects},
                       {m.id: m.id for m in src.morphisms})


def _block_functor(src: FinCategory, tgt: FinCategory, tgt_labels: dict) -> FunctorData:
    om = {x: tgt_labels[x] for x in src.objects}
    return FunctorData(src, tgt, om, {m.id: tgt.identities[om[m.src]] for m in src.morphisms})


def _product_functor(k: FinCategory, f: FunctorData, src: FinCategory, tgt: FinCategory) -> FunctorData:
    """id_K x f between the products K x f.source and K x f.target."""
    pair = lambda x, y: f"({x},{y})"
    om = {pair(x, y): pair(x, f.object_map[y]) for x in k.objects for y in f.source.objects}
    mm = {pair(g.id, h.id): pair(g.id, f.morphism_map[h.id])
          for g in k.morphisms for h in f.source.morphisms}
    return FunctorData(src, tgt, om, mm)


def random_poset_diagram(rng: random.Random, max_objects: int = 4, max_hom: int = 3) -> Diagram:
    """A strict diagram over a random poset whose fibers all have weightings."""
    index = random_poset(rng, max_objects, prefix="a")
    order = index.objects
    family = rng.choice(["constant", "partition-eq", "partition-blocks"])
    if family == "constant":
        fibers = {a: random_weighted_category(rng, 3, max_hom) for a in order}
        return Diagram(index, fibers, _constant_arrows(index, fibers, rng))

    items = [f"x{i}" for i in range(rng.randint(1, 3))]
    topo = _topological(index)
    parts: dict[str, dict[str, str]] = {}
    for c in topo:
        below = [parts[a] for a in topo if a in parts and a != c and index.hom(a, c)]
        parts[c] = _join([_random_partition(rng, items)] + below, items)
    if family == "partition-eq":
        base = {a: equivalence_category(items, parts[a]) for a in order}
        arrow = lambda m: _eq_functor(base[m.src], base[m.dst])
    else:
        base = {a: builders.discrete(sorted(set(parts[a].values()), key=items.index)) for a in order}
        arrow = lambda m: _block_functor(base[m.src], base[m.dst], parts[m.dst])
    ids = set(index.identities.values())
    if rng.random() < 0.5:
        return Diagram(index, base, {m.id: arrow(m) for m in index.morphisms if m.id not in ids})
    k = random_weighted_category(rng, 2, max_hom)
    fibers = {a: _as_untrusted(product(k, base[a])) for a in order}
    arrows = {m.id: _product_functor(k, arrow(m), fibers[m.src], fibers[m.dst])
              for m in index.morphisms if m.id not in ids}
    return Diagram(index, fibers, arrows)


def _as_untrusted(c: FinCategory) -> FinCategory:
    return FinCategory(c.objects, c.morphisms, c.identities, c.compose)


def _topological(c: FinCategory) -> list[str]:
    from .constructions import is_poset
    order = is_poset(c)
    assert order is not None
    return order


def random_general_diagram(rng: random.Random, max_objects: int = 3, max_hom: int = 3) -> Diagram:
    """A strict diagram over a non-poset index (constant-composition or group action)."""
    if rng.random() < 0.5:
        k = rng.randint(2, 4)
        index = builders.cyclic_group(k, obj="g")
        fiber = builders.discrete([f"z{i}" for i in range(k)])
        arrows = {}
        for m in index.morphisms:
            shift = 0 if m.id == index.identities["g"] else int(m.id[1:])
            om = {f"z{i}": f"z{(i + shift) % k}" for i in range(k)}
            arrows[m.id] = FunctorData(fiber, fiber, om,
                                       {f"id_z{i}": f"id_{om[f'z{i}']}" for i in range(k)})
        return Diagram(index, {"g": fiber}, arrows)
    index = random_constant_composition(rng, max_objects, max_hom, cyclic=True)
    fibers = {a: random_weighted_category(rng, 2, max_hom) for a in index.objects}
    return Diagram(index, fibers, _constant_arrows(index, fibers, rng))

