"""Ready-made finite categories.

All builders return fully explicit :class:`FinCategory` values (every
composite tabulated) that pass :func:`validate`.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Sequence

from .catcore import FinCategory, FunctorData


def empty() -> FinCategory:
    return FinCategory((), (), {}, {})


def discrete(n: int | Sequence[str]) -> FinCategory:
    objs = [f"x{i}" for i in range(n)] if isinstance(n, int) else list(n)
    return FinCategory(objs, [(f"id_{a}", a, a) for a in objs],
                       {a: f"id_{a}" for a in objs},
                       {(f"id_{a}", f"id_{a}"): f"id_{a}" for a in objs})


def terminal() -> FinCategory:
    return discrete(["*"])


def codiscrete(n: int | Sequence[str]) -> FinCategory:
    """Exactly one morphism between any two objects (all objects isomorphic)."""
    objs = [f"x{i}" for i in range(n)] if isinstance(n, int) else list(n)
    name = lambda a, b: f"id_{a}" if a == b else f"{a}>{b}"
    morphs = [(name(a, b), a, b) for a in objs for b in objs]
    comp = {(name(b, c), name(a, b)): name(a, c)
            for a in objs for b in objs for c in objs}
    return FinCategory(objs, morphs, {a: name(a, a) for a in objs}, comp)


def poset(objects: Sequence[str], relations: Iterable[tuple[str, str]]) -> FinCategory:
    """The poset generated by ``relations`` (pairs a <= b), closed reflexively and transitively.

    Raises ``ValueError`` if the relations contain a cycle.
    """
    objs = list(objects)
    le = {(a, a) for a in objs} | {tuple(r) for r in relations}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (c, d) in list(le):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    for (a, b) in le:
        if a != b and (b, a) in le:
            raise ValueError(f"relations are cyclic through {a!r} and {b!r}")
    name = lambda a, b: f"id_{a}" if a == b else f"{a}<{b}"
    ordered = [(a, b) for a in objs for b in objs if (a, b) in le]
    comp = {(name(b, c), name(a, b)): name(a, c)
            for (a, b) in ordered for (b2, c) in ordered if b2 == b}
    return FinCategory(objs, [(name(a, b), a, b) for a, b in ordered],
                       {a: name(a, a) for a in objs}, comp)


def monoid_category(elements: Sequence[Hashable], op: Callable, unit: Hashable,
                    obj: str = "*", label: Callable[[Hashable], str] = str) -> FinCategory:
    """One-object category of a finite monoid; ``op(g, f)`` is the composite g . f."""
    names = {e: (f"id_{obj}" if e == unit else f"{label(e)}") for e in elements}
    comp = {(names[g], names[f]): names[op(g, f)] for g in elements for f in elements}
    return FinCategory([obj], [(names[e], obj, obj) for e in elements],
                       {obj: names[unit]}, comp)


def cyclic_group(k: int, obj: str = "*") -> FinCategory:
    return monoid_category(range(k), lambda g, f: (g + f) % k, 0, obj,
                           label=lambda e: f"g{e}")


def symmetric_group(n: int, obj: str = "*") -> FinCategory:
    from itertools import permutations
    elems = list(permutations(range(n)))
    return monoid_category(elems, lambda g, f: tuple(g[f[i]] for i in range(n)),
                           tuple(range(n)), obj,
                           label=lambda p: "s" + "".join(map(str, p)))


def constant_composition(counts: Sequence[Sequence[int]],
                         objects: Sequence[str] | None = None) -> FinCategory:
    """A category with the given hom counts whose non-identity composites are fixed.

    Each hom set C(i, j) holds ``counts[i][j]`` morphisms, one of which (the
    last) is designated ``d_ij``; composing two non-identity morphisms i -> j -> k
    always gives ``d_ik``.  This is associative as long as

    * the support is transitive (i -> j -> k forces C(i, k) nonempty), and
    * every object on a cycle i -> j -> i (i != j), or with a non-identity
      endomorphism, has at least two endomorphisms, so ``d_ii`` is not the identity.

    Raises ``ValueError`` otherwise.  Any square nonnegative integer matrix
    meeting these conditions is realized, which covers the rank-deficient
    examples such as [[3, 2], [3, 2]].
    """
    n = len(counts)
    objs = list(objects) if objects is not None else [f"o{i}" for i in range(n)]
    if len(objs) != n or any(len(r) != n for r in counts):
        raise ValueError("counts must be square and match the objects")
    for i in range(n):
        if counts[i][i] < 1:
            raise ValueError(f"object {objs[i]!r} needs at least its identity")
    for i, j, k in cartesian(range(n), repeat=3):
        if counts[i][j] and counts[j][k] and not counts[i][k]:
            raise ValueError(f"support is not transitive at {objs[i]}->{objs[j]}->{objs[k]}")
    for i in range(n):
        loops = any(counts[i][j] and counts[j][i] for j in range(n) if j != i)
        if loops and counts[i][i] < 2:
            raise ValueError(f"object {objs[i]!r} lies on a cycle but has no "
                             "non-identity endomorphism to absorb composites")

    def names(i, j):
        a, b = objs[i], objs[j]
        if i == j:
            return [f"id_{a}"] + [f"e{t}_{a}" for t in range(1, counts[i][i])]
        return [f"f{t}_{a}_{b}" for t in range(counts[i][j])]

    hom = {(i, j): names(i, j) for i in range(n) for j in range(n) if counts[i][j]}
    ident = {i: hom[i, i][0] for i in range(n)}
    morphs, comp = [], {}
    for (i, j), ms in hom.items():
        morphs += [(m, objs[i], objs[j]) for m in ms]
    for (i, j), fs in hom.items():
        for k in range(n):
            if (j, k) not in hom:
                continue
            dist = hom[i, k][-1]
            for f in fs:
                for g in hom[j, k]:
                    if f == ident[i] and i == j:
                        comp[g, f] = g
                    elif g == ident[k] and j == k:
                        comp[g, f] = f
                    else:
                        comp[g, f] = dist
    return FinCategory(objs, morphs, {objs[i]: ident[i] for i in range(n)}, comp)


def add_isomorphic_copies(c: FinCategory, copies: dict[str, str]
                          ) -> tuple[FinCategory, FunctorData, FunctorData]:
    """Add new objects isomorphic to existing ones.

    ``copies`` maps each new object name to the existing object it copies.
    Returns ``(bigger, include, collapse)``: the enlarged category, the
    inclusion ``c -> bigger`` and the functor ``bigger -> c`` sending each copy
    to its original.  The two functors form an equivalence, hence an
    adjunction in both directions.
    """
    base: dict[str, str] = {a: a for a in c.objects}
    for new, orig in copies.items():
        if new in base:
            raise ValueError(f"object {new!r} already exists")
        if orig not in c.object_index:
            raise ValueError(f"{orig!r} is not an object of the category")
        base[new] = orig
    objs = list(base)

    def tag(m: str, x: str, y: str) -> str:
        mm = c.by_id[m]
        return m if (x, y) == (mm.src, mm.dst) else f"{m}@{x}>{y}"

    morphs, comp, down = [], {}, {}
    for x in objs:
        for y in objs:
            for m in c.hom(base[x], base[y]):
                morphs.append((tag(m, x, y), x, y))
                down[tag(m, x, y)] = m
    for x in objs:
        for y in objs:
            for z in objs:
                for f in c.hom(base[x], base[y]):
                    for g in c.hom(base[y], base[z]):
                        comp[tag(g, y, z), tag(f, x, y)] = tag(c.compose[g, f], x, z)
    ids = {x: tag(c.identities[base[x]], x, x) for x in objs}
    bigger = FinCategory(objs, morphs, ids, comp)
    include = FunctorData(c, bigger, {a: a for a in c.objects},
                          {m.id: m.id for m in c.morphisms})
    collapse = FunctorData(bigger, c, base, down)
    return bigger, include, collapse


def terminal_functor(c: FinCategory, t: FinCategory | None = None) -> FunctorData:
    """The unique functor from ``c`` to the terminal category."""
    t = t or terminal()
    (star,) = t.objects
    return FunctorData(c, t, {a: star for a in c.objects},
                       {m.id: t.identities[star] for m in c.morphisms})


def constant_functor(c: FinCategory, target: FinCategory, obj: str) -> FunctorData:
    """Everything in ``c`` goes to ``obj`` and its identity."""
    return FunctorData(c, target, {a: obj for a in c.objects},
                       {m.id: target.identities[obj] for m in c.morphisms})


def point_functor(target: FinCategory, obj: str, source: FinCategory | None = None) -> FunctorData:
    """The functor from the terminal category picking ``obj``."""
    return constant_functor(source or terminal(), target, obj)
