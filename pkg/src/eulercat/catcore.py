"""Finite categories given as explicit data, plus functors between them.

A category is stored exactly as written down: an ordered object list, a
morphism list with endpoints, an identity per object and a full composition
table keyed by ``(g, f)`` meaning ``g . f`` (first ``f``, then ``g``).  Nothing
is derived, so :func:`validate` can audit the data against the category axioms.

Object order matters: adjacency and functor matrices index rows and columns in
the stored order.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .ratmat import RatMatrix, transpose


class InvalidCategory(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(v.message for v in self.violations[:3])
        more = f" (+{len(self.violations) - 3} more)" if len(self.violations) > 3 else ""
        super().__init__(f"invalid category: {head}{more}")


class InvalidFunctor(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(v.message for v in self.violations[:3])
        super().__init__(f"invalid functor: {head}")


class SourceTargetMismatch(ValueError):
    pass


class Morphism(NamedTuple):
    id: str
    src: str
    dst: str


class Violation(NamedTuple):
    axiom: str
    witness: tuple
    message: str

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "witness": list(self.witness), "message": self.message}


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: tuple[str, ...]
    morphisms: tuple[Morphism, ...]
    identities: Mapping[str, str]
    compose: Mapping[tuple[str, str], str]
    # set by constructions whose output is valid by construction
    trusted: bool = field(default=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(Morphism(*m) for m in self.morphisms))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "compose", {tuple(k): v for k, v in self.compose.items()})

    @cached_property
    def by_id(self) -> dict[str, Morphism]:
        return {m.id: m for m in self.morphisms}

    @cached_property
    def object_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.objects)}

    @cached_property
    def homs(self) -> dict[tuple[str, str], list[str]]:
        out = defaultdict(list)
        for m in self.morphisms:
            out[m.src, m.dst].append(m.id)
        return dict(out)

    @cached_property
    def outgoing(self) -> dict[str, list[Morphism]]:
        out = defaultdict(list)
        for m in self.morphisms:
            out[m.src].append(m)
        return dict(out)

    def hom(self, a: str, b: str) -> list[str]:
        return self.homs.get((a, b), [])

    def src(self, f: str) -> str:
        return self.by_id[f].src

    def dst(self, f: str) -> str:
        return self.by_id[f].dst

    def comp(self, g: str, f: str) -> str:
        """``g . f``."""
        return self.compose[g, f]

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        for f in self.morphisms:
            for g in self.outgoing.get(f.dst, ()):
                yield g.id, f.id

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        if self.trusted:
            return ()
        return tuple(_check(self))

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def require_valid(self) -> FinCategory:
        if self.violations:
            raise InvalidCategory(self.violations)
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identities == other.identities and self.compose == other.compose)

    __hash__ = None

    def __len__(self) -> int:
        return len(self.objects)

    def __repr__(self) -> str:
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate(c: FinCategory) -> list[Violation]:
    """All violated category axioms with witnesses; empty iff ``c`` is a category."""
    return list(c.violations) if not c.trusted else list(_check(c))


def _check(c: FinCategory) -> list[Violation]:
    out: list[Violation] = []
    add = lambda axiom, witness, msg: out.append(Violation(axiom, tuple(witness), msg))

    obj_set = set()
    for a in c.objects:
        if a in obj_set:
            add("distinct-objects", (a,), f"object {a!r} listed twice")
        obj_set.add(a)
    seen = set()
    for m in c.morphisms:
        if m.id in seen:
            add("distinct-morphisms", (m.id,), f"morphism {m.id!r} listed twice")
        seen.add(m.id)
        for end in (m.src, m.dst):
            if end not in obj_set:
                add("endpoints", (m.id, end), f"morphism {m.id!r} has unknown endpoint {end!r}")
    if out:
        return out
    by_id = c.by_id

    for a in c.objects:
        i = c.identities.get(a)
        if i is None:
            add("identity", (a,), f"object {a!r} has no identity")
        elif i not in by_id:
            add("identity", (a, i), f"identity {i!r} of {a!r} is not a morphism")
        elif by_id[i].src != a or by_id[i].dst != a:
            add("identity", (a, i), f"identity {i!r} of {a!r} is not an endomorphism of {a!r}")
    for a in c.identities:
        if a not in obj_set:
            add("identity", (a,), f"identity given for unknown object {a!r}")

    for (g, f), gf in c.compose.items():
        if g not in by_id or f not in by_id or gf not in by_id:
            add("composition", (g, f, gf), f"composition entry ({g},{f})->{gf} names an unknown morphism")
            continue
        if by_id[f].dst != by_id[g].src:
            add("composition", (g, f), f"composition defined on non-composable pair ({g},{f})")
        elif by_id[gf].src != by_id[f].src or by_id[gf].dst != by_id[g].dst:
            add("composition", (g, f, gf), f"composite {g}.{f}={gf} has wrong endpoints")
    for g, f in c.composable_pairs():
        if (g, f) not in c.compose:
            add("composition", (g, f), f"composition not total at ({g},{f})")
    if out:
        return out

    ids = c.identities
    for m in c.morphisms:
        left = c.compose[m.id, ids[m.src]]
        right = c.compose[ids[m.dst], m.id]
        if left != m.id:
            add("unit", (m.id, ids[m.src]), f"{m.id}.id_{m.src} = {left}, not {m.id}")
        if right != m.id:
            add("unit", (ids[m.dst], m.id), f"id_{m.dst}.{m.id} = {right}, not {m.id}")

    comp = c.compose
    outgoing = c.outgoing
    for f in c.morphisms:
        for g in outgoing.get(f.dst, ()):
            gf = comp[g.id, f.id]
            for h in outgoing.get(g.dst, ()):
                a = comp[h.id, gf]
                b = comp[comp[h.id, g.id], f.id]
                if a != b:
                    add("associativity", (h.id, g.id, f.id),
                        f"{h.id}.({g.id}.{f.id}) = {a} but ({h.id}.{g.id}).{f.id} = {b}")
    return out


def adjacency(c: FinCategory) -> RatMatrix:
    """Hom-set cardinalities, entry (i, j) = |C(a_i, a_j)| in stored object order."""
    c.require_valid()
    n = len(c.objects)
    counts = [[0] * n for _ in range(n)]
    idx = c.object_index
    for m in c.morphisms:
        counts[idx[m.src]][idx[m.dst]] += 1
    return RatMatrix.from_rows(counts, cols=n)


def reorder(c: FinCategory, order: Iterable[str]) -> FinCategory:
    """The same category with its objects listed in ``order``."""
    order = tuple(order)
    if sorted(order) != sorted(c.objects):
        raise ValueError("new order must be a permutation of the objects")
    return FinCategory(order, c.morphisms, c.identities, c.compose, trusted=c.trusted)


# -- functors ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCategory
    target: FinCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "object_map", dict(self.object_map))
        object.__setattr__(self, "morphism_map", dict(self.morphism_map))

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(_check_functor(self))

    def require_valid(self) -> FunctorData:
        if self.violations:
            raise InvalidFunctor(self.violations)
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctorData):
            return NotImplemented
        return (self.object_map == other.object_map and self.morphism_map == other.morphism_map
                and self.source == other.source and self.target == other.target)

    __hash__ = None


def validate_functor(f: FunctorData) -> list[Violation]:
    return list(f.violations)


def _check_functor(fun: FunctorData) -> list[Violation]:
    out: list[Violation] = []
    add = lambda axiom, witness, msg: out.append(Violation(axiom, tuple(witness), msg))
    s, t = fun.source, fun.target
    for side, cat in (("source", s), ("target", t)):
        for v in cat.violations:
            add(f"{side}-category", v.witness, f"{side}: {v.message}")
    if out:
        return out
    om, mm = fun.object_map, fun.morphism_map
    tobjs = set(t.objects)
    for a in s.objects:
        if a not in om:
            add("object-map", (a,), f"object {a!r} is not mapped")
        elif om[a] not in tobjs:
            add("object-map", (a, om[a]), f"object {a!r} maps to unknown {om[a]!r}")
    for m in s.morphisms:
        if m.id not in mm:
            add("morphism-map", (m.id,), f"morphism {m.id!r} is not mapped")
        elif mm[m.id] not in t.by_id:
            add("morphism-map", (m.id, mm[m.id]), f"morphism {m.id!r} maps to unknown {mm[m.id]!r}")
    if out:
        return out
    for m in s.morphisms:
        fm = t.by_id[mm[m.id]]
        if fm.src != om[m.src] or fm.dst != om[m.dst]:
            add("endpoints", (m.id,), f"F({m.id}) = {fm.id} does not go F({m.src}) -> F({m.dst})")
    for a in s.objects:
        if mm[s.identities[a]] != t.identities[om[a]]:
            add("identity", (a,), f"F(id_{a}) is not id_F({a})")
    if out:
        return out
    for g, f in s.composable_pairs():
        lhs = mm[s.compose[g, f]]
        rhs = t.compose[mm[g], mm[f]]
        if lhs != rhs:
            add("composition", (g, f), f"F({g}.{f}) = {lhs} but F({g}).F({f}) = {rhs}")
    return out


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, {a: a for a in c.objects}, {m.id: m.id for m in c.morphisms})


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """``g . f`` as plain data (no validity check)."""
    return FunctorData(f.source, g.target,
                       {a: g.object_map[b] for a, b in f.object_map.items()},
                       {m: g.morphism_map[n] for m, n in f.morphism_map.items()})


def functor_matrix(f: FunctorData) -> RatMatrix:
    """|target| x |source| 0/1 matrix with a 1 at (i, j) iff F(a_j) = b_i."""
    f.require_valid()
    tidx = f.target.object_index
    rows = [[0] * len(f.source.objects) for _ in f.target.objects]
    for j, a in enumerate(f.source.objects):
        rows[tidx[f.object_map[a]]][j] = 1
    return RatMatrix.from_rows(rows, cols=len(f.source.objects))


def check_adjunction_matrices(l: FunctorData, r: FunctorData) -> bool:
    """Hom-count test for ``L -| R``: [A][R] == [L]*[B].

    Equivalent to |A(a, Rb)| == |B(La, b)| for all a, b.  Necessary for an
    adjunction, not sufficient.
    """
    if l.source != r.target or l.target != r.source:
        raise SourceTargetMismatch("need L: A -> B and R: B -> A")
    a, b = l.source, l.target
    return adjacency(a) @ functor_matrix(r) == transpose(functor_matrix(l)) @ adjacency(b)


def hom_count_witness(l: FunctorData, r: FunctorData) -> tuple[str, str, int, int] | None:
    """First (a, b) with |A(a, Rb)| != |B(La, b)|, with both counts, or None."""
    if l.source != r.target or l.target != r.source:
        raise SourceTargetMismatch("need L: A -> B and R: B -> A")
    a_cat, b_cat = l.source, l.target
    for a in a_cat.objects:
        for b in b_cat.objects:
            left = len(a_cat.hom(a, r.object_map[b]))
            right = len(b_cat.hom(l.object_map[a], b))
            if left != right:
                return a, b, left, right
    return None
