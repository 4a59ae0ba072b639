"""Euler measure, weightings and coweightings.

chi(C) = 1* [C]+ 1, where [C] is the adjacency matrix of C and + is the
Moore-Penrose inverse.  A weighting of M is a column w with M w = 1, a
coweighting a row v with v M = 1*.  M has a weighting iff M+ 1 is one (and
dually), so existence is decided by computing that one candidate and checking
it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .catcore import (FinCategory, FunctorData, adjacency,
                      check_adjunction_matrices)
from .ratmat import RatMatrix, ones, pinv, transpose


class MissingWeighting(ValueError):
    pass


class MissingCoweighting(ValueError):
    pass


class PreconditionFailed(ValueError):
    pass


def sum_entries(m: RatMatrix) -> Fraction:
    return sum(m.entries, Fraction(0))


def total(m: RatMatrix, mp: RatMatrix | None = None) -> Fraction:
    """1* M+ 1 for a square matrix (0 for the 0x0 matrix)."""
    n = m.rows
    if not n:
        return Fraction(0)
    mp = pinv(m) if mp is None else mp
    return (transpose(ones(n)) @ mp @ ones(n)).scalar()


def chi(c: FinCategory) -> Fraction:
    """Euler measure; 0 for the empty category."""
    return total(adjacency(c))


def weighting(m: RatMatrix, mp: RatMatrix | None = None) -> Optional[RatMatrix]:
    """M+ 1 if it is a weighting of ``m``, else None."""
    if not m.is_square:
        raise ValueError(f"weighting() takes a square matrix, got {m.shape}")
    mp = pinv(m) if mp is None else mp
    w = mp @ ones(m.rows)
    return w if m @ w == ones(m.rows) else None


def coweighting(m: RatMatrix, mp: RatMatrix | None = None) -> Optional[RatMatrix]:
    """1* M+ if it is a coweighting of ``m``, else None."""
    if not m.is_square:
        raise ValueError(f"coweighting() takes a square matrix, got {m.shape}")
    mp = pinv(m) if mp is None else mp
    one_t = transpose(ones(m.rows))
    v = one_t @ mp
    return v if v @ m == one_t else None


@dataclass(frozen=True)
class ChiReport:
    chi: Fraction
    weighting: Optional[RatMatrix]
    coweighting: Optional[RatMatrix]

    @property
    def has_weighting(self) -> bool:
        return self.weighting is not None

    @property
    def has_coweighting(self) -> bool:
        return self.coweighting is not None

    @property
    def lein_defined(self) -> bool:
        """Both exist, so chi agrees with Leinster's Euler characteristic."""
        return self.has_weighting and self.has_coweighting

    def to_json(self) -> dict:
        vec = lambda m: None if m is None else [str(x) for x in m.entries]
        return {
            "chi": str(self.chi),
            "has_weighting": self.has_weighting,
            "has_coweighting": self.has_coweighting,
            "weighting": vec(self.weighting),
            "coweighting": vec(self.coweighting),
            "lein_defined": self.lein_defined,
        }


def matrix_report(m: RatMatrix) -> ChiReport:
    mp = pinv(m)
    return ChiReport(total(m, mp), weighting(m, mp), coweighting(m, mp))


def chi_report(c: FinCategory) -> ChiReport:
    return matrix_report(adjacency(c))


def check_sls(m: RatMatrix) -> bool:
    """sum(w) == sum(v) == 1* M+ 1 for the weighting w and coweighting v of ``m``."""
    mp = pinv(m)
    w = weighting(m, mp)
    if w is None:
        raise MissingWeighting("matrix has no weighting")
    v = coweighting(m, mp)
    if v is None:
        raise MissingCoweighting("matrix has no coweighting")
    return sum_entries(w) == sum_entries(v) == total(m, mp)


def chi_adjunction_transport(a: FinCategory, b: FinCategory,
                             l: FunctorData, r: FunctorData) -> bool:
    """Check chi(A) == chi(B) for L: A -> B left adjoint to R: B -> A.

    Requires the hom-count identity [A][R] == [L]*[B], a coweighting of [A]
    and a weighting of [B]; raises :class:`PreconditionFailed` naming the
    first one missing.  Returns True iff chi agrees and [B] has a coweighting
    and [A] a weighting, which the adjunction theorem guarantees.
    """
    if l.source != a or l.target != b:
        raise PreconditionFailed("L must go from A to B")
    if not check_adjunction_matrices(l, r):
        raise PreconditionFailed("hom counts violate [A][R] = [L]*[B]; not an adjunction")
    ma, mb = adjacency(a), adjacency(b)
    pa, pb = pinv(ma), pinv(mb)
    if coweighting(ma, pa) is None:
        raise PreconditionFailed("[A] has no coweighting")
    if weighting(mb, pb) is None:
        raise PreconditionFailed("[B] has no weighting")
    return (total(ma, pa) == total(mb, pb)
            and coweighting(mb, pb) is not None
            and weighting(ma, pa) is not None)

