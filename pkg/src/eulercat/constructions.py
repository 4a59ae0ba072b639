"""Building new categories from old ones.

Products and disjoint unions, poset detection, and the Grothendieck
construction of a diagram ``F: A -> Cat``.  Diagrams are strict functors:
``F(id_a)`` is the identity functor and ``F(g . f) = F(g) . F(f)`` on the nose.
A pseudofunctor with identity coherence isomorphisms is exactly such a
diagram; non-strict pseudofunctors cannot be represented.

The Grothendieck construction lists its objects fiber by fiber in index
order, ``(a1, x11), ..., (a1, x1n1), (a2, x21), ...``, so its adjacency
matrix lines up block-wise with ``diag([F(a1)], ..., [F(am)])``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple, Optional

from . import ratmat
from .catcore import (FinCategory, FunctorData, Violation,
                      adjacency, compose_functors, identity_functor)
from .ratmat import RatMatrix, block_diag, ones, stack_columns
from .weights import chi, coweighting, total, weighting


class InvalidDiagram(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(v.message for v in self.violations[:3])
        super().__init__(f"invalid diagram: {head}")


def _pair(x: str, y: str) -> str:
    return f"({x},{y})"


def product(a: FinCategory, b: FinCategory) -> FinCategory:
    """Objects and morphisms are pairs, composed componentwise.

    Object ``(x, y)`` sits at position ``i * |B| + k`` for ``x = a_i``,
    ``y = b_k``, so the adjacency matrix is the Kronecker product.
    """
    a.require_valid()
    b.require_valid()
    objs = [_pair(x, y) for x in a.objects for y in b.objects]
    morphs = [(_pair(f.id, g.id), _pair(f.src, g.src), _pair(f.dst, g.dst))
              for f in a.morphisms for g in b.morphisms]
    ids = {_pair(x, y): _pair(a.identities[x], b.identities[y])
           for x in a.objects for y in b.objects}
    comp = {(_pair(g1, g2), _pair(f1, f2)): _pair(h1, h2)
            for (g1, f1), h1 in a.compose.items()
            for (g2, f2), h2 in b.compose.items()}
    return FinCategory(objs, morphs, ids, comp, trusted=True)


def coproduct(a: FinCategory, b: FinCategory, tags: tuple[str, str] = ("0", "1")) -> FinCategory:
    """Disjoint union; ids of ``a`` get prefix ``"0:"`` and ids of ``b`` prefix ``"1:"``."""
    a.require_valid()
    b.require_valid()
    objs, morphs, ids, comp = [], [], {}, {}
    for tag, c in zip(tags, (a, b)):
        t = lambda s: f"{tag}:{s}"
        objs += [t(x) for x in c.objects]
        morphs += [(t(m.id), t(m.src), t(m.dst)) for m in c.morphisms]
        ids.update({t(x): t(i) for x, i in c.identities.items()})
        comp.update({(t(g), t(f)): t(h) for (g, f), h in c.compose.items()})
    return FinCategory(objs, morphs, ids, comp, trusted=True)


def is_poset(c: FinCategory) -> Optional[list[str]]:
    """A total order of the objects extending the partial order, or None.

    ``c`` is a poset when every hom set has at most one element and no two
    distinct objects have morphisms both ways.  Ties in the topological sort
    go to the object listed first.
    """
    c.require_valid()
    for (x, y), ms in c.homs.items():
        if len(ms) > 1:
            return None
        if x != y and c.hom(y, x):
            return None
    idx = c.object_index
    indeg = {x: 0 for x in c.objects}
    for (x, y) in c.homs:
        if x != y:
            indeg[y] += 1
    heap = [idx[x] for x, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = c.objects[heapq.heappop(heap)]
        order.append(x)
        for m in c.outgoing.get(x, ()):
            if m.dst != x:
                indeg[m.dst] -= 1
                if indeg[m.dst] == 0:
                    heapq.heappush(heap, idx[m.dst])
    return order


# -- diagrams ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Diagram:
    """A strict functor from ``index`` into finite categories.

    ``arrows`` may leave out identity morphisms of the index; they are filled
    in with identity functors.
    """

    index: FinCategory
    fibers: Mapping[str, FinCategory]
    arrows: Mapping[str, FunctorData] = field(default_factory=dict)

    def __post_init__(self):
        arrows = dict(self.arrows)
        for a, i in self.index.identities.items():
            if i not in arrows and a in self.fibers:
                arrows[i] = identity_functor(self.fibers[a])
        object.__setattr__(self, "fibers", dict(self.fibers))
        object.__setattr__(self, "arrows", arrows)

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(_check_diagram(self))

    def require_valid(self) -> Diagram:
        if self.violations:
            raise InvalidDiagram(self.violations)
        return self

    def fiber_list(self) -> list[FinCategory]:
        return [self.fibers[a] for a in self.index.objects]


def _same(x: FinCategory, y: FinCategory) -> bool:
    return x is y or x == y


def _check_diagram(d: Diagram) -> list[Violation]:
    out: list[Violation] = []
    add = lambda axiom, witness, msg: out.append(Violation(axiom, tuple(witness), msg))
    idx = d.index
    for v in idx.violations:
        add("index", v.witness, f"index: {v.message}")
    if out:
        return out
    for a in idx.objects:
        if a not in d.fibers:
            add("fiber", (a,), f"no fiber for index object {a!r}")
        else:
            for v in d.fibers[a].violations:
                add("fiber", (a,) + v.witness, f"fiber {a}: {v.message}")
    for a in d.fibers:
        if a not in idx.object_index:
            add("fiber", (a,), f"fiber given for unknown index object {a!r}")
    for m in idx.morphisms:
        if m.id not in d.arrows:
            add("arrow", (m.id,), f"no functor for index morphism {m.id!r}")
    for m in d.arrows:
        if m not in idx.by_id:
            add("arrow", (m,), f"functor given for unknown index morphism {m!r}")
    if out:
        return out
    for m in idx.morphisms:
        fun = d.arrows[m.id]
        if not _same(fun.source, d.fibers[m.src]) or not _same(fun.target, d.fibers[m.dst]):
            add("arrow", (m.id,), f"F({m.id}) does not go F({m.src}) -> F({m.dst})")
            continue
        for v in fun.violations:
            add("arrow", (m.id,) + v.witness, f"F({m.id}): {v.message}")
    if out:
        return out
    for a in idx.objects:
        fun = d.arrows[idx.identities[a]]
        ident = identity_functor(d.fibers[a])
        if fun.object_map != ident.object_map or fun.morphism_map != ident.morphism_map:
            add("strict-identity", (a,), f"F(id_{a}) is not the identity functor")
    for g, f in idx.composable_pairs():
        lhs = d.arrows[idx.compose[g, f]]
        rhs = compose_functors(d.arrows[g], d.arrows[f])
        if lhs.object_map != rhs.object_map or lhs.morphism_map != rhs.morphism_map:
            add("strict-composition", (g, f), f"F({g}.{f}) != F({g}).F({f})")
    return out


@dataclass(frozen=True)
class GrothendieckResult:
    total: FinCategory
    object_index: dict[str, tuple[str, str]]


def grothendieck(d: Diagram) -> GrothendieckResult:
    """The category of pairs (a, x), x in F(a).

    A morphism (a, x) -> (b, y) is a pair (f, z) with f: a -> b in the index
    and z: F(f)(x) -> y in F(b); its id is ``"(f,z)@x"``.  Composition is
    (g, w) . (f, z) = (g . f, w . F(g)(z)).  The result is validated again.
    """
    d.require_valid()
    idx = d.index
    obj_name = {}
    objects = []
    for a in idx.objects:
        for x in d.fibers[a].objects:
            obj_name[a, x] = _pair(a, x)
            objects.append(_pair(a, x))
    mid = lambda f, z, x: f"({f},{z})@{x}"

    outgoing: dict[tuple[str, str], list[tuple[str, str, str]]] = {k: [] for k in obj_name}
    morphs = []
    for f in idx.morphisms:
        ff = d.arrows[f.id]
        fb = d.fibers[f.dst]
        for x in d.fibers[f.src].objects:
            for z in fb.outgoing.get(ff.object_map[x], ()):
                morphs.append((mid(f.id, z.id, x), obj_name[f.src, x], obj_name[f.dst, z.dst]))
                outgoing[f.src, x].append((f.id, z.id, z.dst))

    comp = {}
    for (a, x), arrows_out in outgoing.items():
        for f, z, y in arrows_out:
            b = idx.dst(f)
            for g, w, _ in outgoing[b, y]:
                fg = d.arrows[g]
                c_fib = d.fibers[idx.dst(g)]
                h = idx.compose[g, f]
                zz = c_fib.compose[w, fg.morphism_map[z]]
                comp[mid(g, w, y), mid(f, z, x)] = mid(h, zz, x)

    ids = {obj_name[a, x]: mid(idx.identities[a], d.fibers[a].identities[x], x)
           for (a, x) in obj_name}
    tot = FinCategory(objects, morphs, ids, comp)
    if tot.violations:
        raise InvalidDiagram(tot.violations)
    return GrothendieckResult(tot, {v: k for k, v in obj_name.items()})


def decompose_L1_L2(d: Diagram) -> tuple[RatMatrix, RatMatrix]:
    """The factors ([G(L1 F)], [G(L2 F)]) of the Grothendieck adjacency matrix.

    The second is ``diag([F(a1)], ..., [F(am)])``.  The first has, at
    ((a, x), (b, y)), the number of f: a -> b with F(f)(x) = y.
    """
    d.require_valid()
    idx = d.index
    pos = {}
    for a in idx.objects:
        for x in d.fibers[a].objects:
            pos[a, x] = len(pos)
    n = len(pos)
    counts = [[0] * n for _ in range(n)]
    for f in idx.morphisms:
        om = d.arrows[f.id].object_map
        for x in d.fibers[f.src].objects:
            counts[pos[f.src, x]][pos[f.dst, om[x]]] += 1
    l1 = RatMatrix.from_rows(counts, cols=n)
    l2 = block_diag([adjacency(c) for c in d.fiber_list()])
    return l1, l2


def chi_diagram_row(d: Diagram) -> RatMatrix:
    """[chi(F(a1)) ... chi(F(am))] in index order."""
    d.require_valid()
    return RatMatrix.row_vector([chi(c) for c in d.fiber_list()])


def assembled_weighting(d: Diagram) -> Optional[RatMatrix]:
    """C(l1 v1, ..., lm vm) from the weighting (l_i) of [A] and weightings v_i of the fibers.

    None when any of those weightings is missing.
    """
    d.require_valid()
    lam = weighting(adjacency(d.index))
    if lam is None:
        return None
    parts = []
    for li, c in zip(lam.entries, d.fiber_list()):
        v = weighting(adjacency(c))
        if v is None:
            return None
        parts.append(v * li)
    return stack_columns(parts)


class InclusionExclusion(NamedTuple):
    predicted: Fraction
    actual: Fraction
    applies: bool


def chi_inclusion_exclusion(d: Diagram) -> InclusionExclusion:
    """Compare chi(G(F)) with chi(F) [A]+ 1.

    ``applies`` is true when a theorem guarantees equality: either the index
    is a poset and every fiber has a weighting, or [G(F)] has a coweighting,
    [A] has a weighting and every fiber has both.
    """
    d.require_valid()
    a_mat = adjacency(d.index)
    a_pinv = ratmat.pinv(a_mat)
    row = chi_diagram_row(d)
    predicted = (row @ a_pinv @ ones(a_mat.rows)).scalar() if a_mat.rows else Fraction(0)
    g_mat = adjacency(grothendieck(d).total)
    g_pinv = ratmat.pinv(g_mat)
    actual = total(g_mat, g_pinv)

    fiber_mats = [adjacency(c) for c in d.fiber_list()]
    all_weighted = all(weighting(m) is not None for m in fiber_mats)
    poset_case = all_weighted and is_poset(d.index) is not None
    coweighted_case = (
        all_weighted
        and coweighting(g_mat, g_pinv) is not None
        and weighting(a_mat, a_pinv) is not None
        and all(coweighting(m) is not None for m in fiber_mats)
    )
    return InclusionExclusion(predicted, actual, poset_case or coweighted_case)

