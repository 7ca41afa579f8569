"""Assign points of the torus quotient to strata from their weight support.

A point ``(X, Y)`` is represented only by which root components are nonzero
(plus whether the Cartan components are nonzero).  Both the stabilizer and the
polystability test depend on nothing else.  The classifier assumes the support
comes from an actual point of the variety; it does not check that.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from .exact_linalg import zero_in_relative_interior
from .root_systems import RootSystem
from .stratification import Atlas
from .subsystems import closure


class NotPolystableError(ValueError):
    pass


@dataclass(frozen=True)
class PointSupport:
    support: FrozenSet[int]
    has_zero_weight: bool = False

    @classmethod
    def of(cls, support: Iterable[int], has_zero_weight: bool = False) -> "PointSupport":
        return cls(frozenset(support), has_zero_weight)

    def validate(self, rs: RootSystem) -> None:
        bad = [i for i in self.support if not 0 <= i < len(rs.roots)]
        if bad:
            raise IndexError(f"root indices out of range for {rs.name}: {sorted(bad)}")


def support_subsystem(rs: RootSystem, p: PointSupport) -> int:
    """The stabilizer subsystem ``Phi ∩ Span_Z(support)``."""
    p.validate(rs)
    return closure(rs, sorted(p.support))


def weights(rs: RootSystem, p: PointSupport):
    pts = [rs.roots[i] for i in sorted(p.support)]
    if p.has_zero_weight:
        pts.append((0,) * rs.rank)
    return pts


def is_polystable(rs: RootSystem, p: PointSupport) -> bool:
    """Zero lies in the relative interior of the convex hull of the weights.

    A point with no weights at all is the origin, whose orbit is closed.
    """
    p.validate(rs)
    pts = weights(rs, p)
    if not pts:
        return True
    return zero_in_relative_interior(pts)


def stratum_of(atlas: Atlas, p: PointSupport) -> Tuple[int, int]:
    """``(class_id, fine subsystem mask)`` of a polystable point."""
    if not is_polystable(atlas.rs, p):
        raise NotPolystableError("point not polystable; no stratum assigned")
    psi = support_subsystem(atlas.rs, p)
    return atlas.class_of[psi], psi
