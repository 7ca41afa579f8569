"""Root subsystems, their Weyl orbits, conjugacy classes and embedding numbers.

A subsystem is an ``int`` bit mask over the root indices of its ambient
:class:`RootSystem`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set

from .exact_linalg import Lattice, integer_rank
from .root_systems import (
    RootSystem,
    TypeLabel,
    identify_type,
    mask_indices,
    mask_of,
    weyl_order,
)

DEFAULT_MAX_RANK = 4


class CapabilityError(RuntimeError):
    """Requested computation is beyond the configured rank limit."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def closure(rs: RootSystem, S: Iterable[int]) -> int:
    """``(Span_Z S) ∩ Phi``: the smallest root subsystem containing ``S``."""
    vecs = [rs.roots[i] for i in S]
    if not vecs:
        return 0
    return _lattice_mask(rs, Lattice(vecs))


def _lattice_mask(rs: RootSystem, lat: Lattice) -> int:
    npos = rs.n_positive
    mask = 0
    for i in range(npos):
        if rs.roots[i] in lat:
            mask |= (1 << i) | (1 << (i + npos))
    return mask


def subsystem_rank(rs: RootSystem, psi: int) -> int:
    return integer_rank([rs.roots[i] for i in mask_indices(psi)])


def enumerate_subsystems(rs: RootSystem, max_rank: Optional[int] = DEFAULT_MAX_RANK) -> List[int]:
    """Every root subsystem, as the closure of a linearly independent set of positive roots.

    Sorted by (size, sorted root indices).
    """
    if max_rank is not None and rs.rank > max_rank:
        raise CapabilityError(
            f"subsystem enumeration for {rs.name} (rank {rs.rank}) exceeds the configured rank limit {max_rank}"
        )
    pos = list(rs.positive_indices)
    found: Set[int] = {0}
    for k in range(1, rs.rank + 1):
        for B in combinations(pos, k):
            vecs = [rs.roots[i] for i in B]
            if k > 1 and integer_rank(vecs) < k:
                continue
            found.add(_lattice_mask(rs, Lattice(vecs)))
    return sorted(found, key=lambda m: (popcount(m), mask_indices(m)))


def apply_perm(perm, mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


def weyl_orbit(rs: RootSystem, psi: int) -> Set[int]:
    """Orbit of ``psi`` under the Weyl group, by breadth-first search over the simple reflections."""
    orbit = {psi}
    frontier = [psi]
    while frontier:
        nxt = []
        for m in frontier:
            for g in rs.weyl_gens:
                w = apply_perm(g, m)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
    return orbit


def weyl_index(rs: RootSystem, psi: int, label: Optional[TypeLabel] = None) -> int:
    """``|W_Phi : W_Psi|``."""
    if label is None:
        label = identify_type(rs, psi)
    q, r = divmod(rs.weyl_order(), weyl_order(label.components))
    if r:
        raise AssertionError(f"|W_Psi| = {weyl_order(label.components)} does not divide |W| = {rs.weyl_order()}")
    return q


def embedding_number(rs: RootSystem, psi: int) -> int:
    """``|W_Phi : W_Psi| * |W_Phi . Psi|``."""
    return weyl_index(rs, psi) * len(weyl_orbit(rs, psi))


def dim_top(rs: RootSystem, psi: int) -> int:
    """Real dimension ``4(|Psi| - rk Psi)`` of the top stratum of ``D(g_Psi)``."""
    return 4 * (popcount(psi) - subsystem_rank(rs, psi))


@dataclass
class SubsystemClass:
    class_id: int
    representative: int
    orbit_size: int
    weyl_index: int
    embedding_number: int
    label: TypeLabel
    dim_top: int
    rank: int
    size: int


def conjugacy_classes(rs: RootSystem, subsystems: Optional[List[int]] = None):
    """W-conjugacy classes of subsystems.

    Returns ``(classes, class_of)`` where ``class_of`` maps each subsystem
    mask to its class id.  Ids are ordered by (dim_top desc, label, smallest
    mask in the orbit).
    """
    if subsystems is None:
        subsystems = enumerate_subsystems(rs)
    known = set(subsystems)
    seen: Set[int] = set()
    orbits = []
    for psi in subsystems:
        if psi in seen:
            continue
        orb = weyl_orbit(rs, psi)
        if not orb <= known:
            raise AssertionError("Weyl orbit leaves the enumerated subsystems")
        seen |= orb
        orbits.append(orb)
    W = rs.weyl_order()
    records = []
    for orb in orbits:
        rep = min(orb)
        label = identify_type(rs, rep)
        idx = weyl_index(rs, rep, label)
        rk = subsystem_rank(rs, rep)
        size = popcount(rep)
        if W % len(orb):
            raise AssertionError(f"orbit size {len(orb)} does not divide |W| = {W}")
        records.append((orb, rep, label, idx, rk, size, 4 * (size - rk)))
    records.sort(key=lambda r: (-r[6], str(r[2]), r[1]))
    classes = []
    class_of: Dict[int, int] = {}
    for cid, (orb, rep, label, idx, rk, size, dim) in enumerate(records):
        classes.append(
            SubsystemClass(
                class_id=cid,
                representative=rep,
                orbit_size=len(orb),
                weyl_index=idx,
                embedding_number=idx * len(orb),
                label=label,
                dim_top=dim,
                rank=rk,
                size=size,
            )
        )
        for m in orb:
            class_of[m] = cid
    return classes, class_of


def is_symmetric(rs: RootSystem, psi: int) -> bool:
    return apply_perm(rs.negation, psi) == psi


def is_closed(rs: RootSystem, psi: int) -> bool:
    """Condition (1): sums of two members that are roots stay inside."""
    idx = mask_indices(psi)
    for a in idx:
        ra = rs.roots[a]
        for b in idx:
            j = rs.index.get(tuple(x + y for x, y in zip(ra, rs.roots[b])))
            if j is not None and not psi >> j & 1:
                return False
    return True


def is_saturated(rs: RootSystem, psi: int) -> bool:
    return closure(rs, mask_indices(psi)) == psi


def is_subsystem(rs: RootSystem, psi: int) -> bool:
    return is_symmetric(rs, psi) and is_closed(rs, psi) and is_saturated(rs, psi)


def root_lengths(rs: RootSystem, psi: int) -> str:
    """'long', 'short' or 'mixed' for subsystems of non-simply-laced types; '' otherwise."""
    idx = mask_indices(psi)
    if not idx or len(set(rs.norms)) == 1:
        return ""
    kinds = {rs.is_long(i) for i in idx}
    if len(kinds) == 2:
        return "mixed"
    return "long" if kinds.pop() else "short"


__all__ = [
    "CapabilityError",
    "DEFAULT_MAX_RANK",
    "SubsystemClass",
    "apply_perm",
    "closure",
    "conjugacy_classes",
    "dim_top",
    "embedding_number",
    "enumerate_subsystems",
    "is_closed",
    "is_saturated",
    "is_subsystem",
    "is_symmetric",
    "mask_of",
    "popcount",
    "root_lengths",
    "subsystem_rank",
    "weyl_index",
    "weyl_orbit",
]
