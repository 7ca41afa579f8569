"""Fine and coarse stratification posets, Hasse diagrams and consistency checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .root_systems import RootSystem, build_root_system, identify_type, mask_indices, weyl_order
from .subsystems import (
    DEFAULT_MAX_RANK,
    SubsystemClass,
    conjugacy_classes,
    dim_top,
    enumerate_subsystems,
    is_subsystem,
    popcount,
    weyl_index,
    weyl_orbit,
)


class CycleError(ValueError):
    """The relation handed to transitive_reduction is not antisymmetric."""


def _bits(x: int) -> List[int]:
    return mask_indices(x)


def transitive_reduction(leq: Sequence[Sequence[bool]]) -> List[Tuple[int, int]]:
    """Cover edges ``(i, j)``: ``i < j`` with no ``k`` strictly between."""
    n = len(leq)
    below = [0] * n  # strict down-sets as bitsets
    for j in range(n):
        b = 0
        for i in range(n):
            if i != j and leq[i][j]:
                if leq[j][i]:
                    raise CycleError(f"elements {i} and {j} are mutually below each other")
                b |= 1 << i
        below[j] = b
    return _reduce(below)


def _reduce(below: List[int]) -> List[Tuple[int, int]]:
    edges = []
    for j, b in enumerate(below):
        deep = 0
        for k in _bits(b):
            deep |= below[k]
        for i in _bits(b & ~deep):
            edges.append((i, j))
    edges.sort()
    return edges


@dataclass
class StratPoset:
    """A finite poset given by strict down-sets (bitsets), with its cover edges."""

    names: List[str]
    below: List[int]  # below[j] has bit i set iff i < j
    level: List[int]
    covers: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.covers:
            self.covers = _reduce(self.below)

    def __len__(self) -> int:
        return len(self.names)

    def leq(self, i: int, j: int) -> bool:
        return i == j or bool(self.below[j] >> i & 1)

    def leq_matrix(self) -> List[List[bool]]:
        n = len(self)
        return [[self.leq(i, j) for j in range(n)] for i in range(n)]

    def is_partial_order(self) -> bool:
        n = len(self)
        for j in range(n):
            if self.below[j] >> j & 1:
                return False
            for i in _bits(self.below[j]):
                if self.below[i] >> j & 1:
                    return False
                if self.below[i] & ~self.below[j]:
                    return False
        return True

    def maxima(self) -> List[int]:
        n = len(self)
        above = [0] * n
        for j in range(n):
            for i in _bits(self.below[j]):
                above[i] |= 1 << j
        return [i for i in range(n) if not above[i]]

    def minima(self) -> List[int]:
        return [j for j in range(len(self)) if not self.below[j]]


@dataclass
class Atlas:
    """Everything computed for one Lie type."""

    rs: RootSystem
    subsystems: List[int]
    classes: List[SubsystemClass]
    class_of: Dict[int, int]
    max_rank: Optional[int] = DEFAULT_MAX_RANK

    @property
    def spec(self):
        return self.rs.spec

    @property
    def name(self) -> str:
        return self.rs.name

    @cached_property
    def orbits(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in self.classes]
        for psi in self.subsystems:
            out[self.class_of[psi]].append(psi)
        return out

    @cached_property
    def fine(self) -> StratPoset:
        return fine_poset(self)

    @cached_property
    def coarse(self) -> StratPoset:
        return coarse_poset(self)

    def class_names(self) -> List[str]:
        """Node labels, disambiguated with ``#k`` (in class-id order) where they repeat."""
        base = [node_label(c) for c in self.classes]
        counts: Dict[str, int] = {}
        for b in base:
            counts[b] = counts.get(b, 0) + 1
        seen: Dict[str, int] = {}
        out = []
        for b in base:
            if counts[b] > 1:
                seen[b] = seen.get(b, 0) + 1
                out.append(f"{b}#{seen[b]}")
            else:
                out.append(b)
        return out


def build_atlas(spec, max_rank: Optional[int] = DEFAULT_MAX_RANK) -> Atlas:
    rs = spec if isinstance(spec, RootSystem) else build_root_system(spec)
    subs = enumerate_subsystems(rs, max_rank=max_rank)
    classes, class_of = conjugacy_classes(rs, subs)
    return Atlas(rs=rs, subsystems=subs, classes=classes, class_of=class_of, max_rank=max_rank)


def fine_poset(atlas: Atlas) -> StratPoset:
    """All subsystems, ordered by inclusion of masks."""
    subs = atlas.subsystems
    below = []
    for b in subs:
        x = 0
        for i, a in enumerate(subs):
            if a != b and a & b == a:
                x |= 1 << i
        below.append(x)
    names = [",".join(map(str, mask_indices(m))) or "{}" for m in subs]
    level = [4 * (popcount(m) - atlas.classes[atlas.class_of[m]].rank) for m in subs]
    return StratPoset(names=names, below=below, level=level)


def coarse_leq(atlas: Atlas, c1: int, c2: int) -> bool:
    """Some W-conjugate of the representative of ``c1`` lies inside the representative of ``c2``."""
    rep2 = atlas.classes[c2].representative
    return any(m & rep2 == m for m in atlas.orbits[c1])


def coarse_poset(atlas: Atlas) -> StratPoset:
    n = len(atlas.classes)
    below = []
    for j in range(n):
        x = 0
        for i in range(n):
            if i != j and coarse_leq(atlas, i, j):
                x |= 1 << i
        below.append(x)
    return StratPoset(names=atlas.class_names(), below=below, level=[c.dim_top for c in atlas.classes])


def node_label(cls: SubsystemClass) -> str:
    """``mL``; a bare ``L`` when ``m = 1`` and a bare ``m`` for the trivial subsystem."""
    if not cls.label.components:
        return str(cls.embedding_number)
    if cls.embedding_number == 1:
        return str(cls.label)
    return f"{cls.embedding_number}{cls.label}"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    type_name: str
    checks: List[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = [f"consistency {self.type_name}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def consistency_check(atlas: Atlas) -> Report:
    """Recompute the structural identities from the raw subsystems and compare with the stored classes."""
    rs = atlas.rs
    W = rs.weyl_order()
    classes = atlas.classes
    checks: List[Check] = []

    def add(name, passed, detail=""):
        checks.append(Check(name, bool(passed), detail))

    top = [c for c in classes if c.representative == rs.full_mask]
    bottom = [c for c in classes if c.representative == 0]
    add("unique top class [Phi]", len(top) == 1)
    add("unique bottom class [0]", len(bottom) == 1)
    if top:
        add("m_top = 1", top[0].embedding_number == 1, f"m_top = {top[0].embedding_number}")
    if bottom:
        add("m_bottom = |W|", bottom[0].embedding_number == W, f"m_bottom = {bottom[0].embedding_number}, |W| = {W}")

    sum_m = sum(c.embedding_number for c in classes)
    sum_idx = sum(weyl_index(rs, psi) for psi in atlas.subsystems)
    add("sum of m over classes = sum of |W:W_Psi| over subsystems", sum_m == sum_idx, f"{sum_m} vs {sum_idx}")

    add("every orbit size divides |W|", all(W % c.orbit_size == 0 for c in classes))
    add(
        "sum of orbit sizes = number of subsystems",
        sum(c.orbit_size for c in classes) == len(atlas.subsystems),
        f"{sum(c.orbit_size for c in classes)} vs {len(atlas.subsystems)}",
    )
    bad_m = [c.class_id for c in classes if c.embedding_number != c.weyl_index * c.orbit_size]
    add("m = weyl_index * orbit_size", not bad_m, f"classes {bad_m}" if bad_m else "")
    bad_idx = [
        c.class_id for c in classes if c.weyl_index * _weyl_order_of(c) != W
    ]
    add("weyl_index * |W_Psi| = |W|", not bad_idx, f"classes {bad_idx}" if bad_idx else "")
    bad_orbit = [c.class_id for c in classes if len(weyl_orbit(rs, c.representative)) != c.orbit_size]
    add("stored orbit sizes match a fresh orbit search", not bad_orbit, f"classes {bad_orbit}" if bad_orbit else "")
    bad_dim = [c.class_id for c in classes if c.dim_top != dim_top(rs, c.representative)]
    add("dim_top = 4(|Psi| - rk Psi)", not bad_dim, f"classes {bad_dim}" if bad_dim else "")
    bad_label = [c.class_id for c in classes if identify_type(rs, c.representative) != c.label]
    add("class labels match identify_type", not bad_label, f"classes {bad_label}" if bad_label else "")
    add("masks distinct", len(set(atlas.subsystems)) == len(atlas.subsystems))
    bad_sub = [psi for psi in atlas.subsystems if not is_subsystem(rs, psi)]
    add("every subsystem symmetric, closed and saturated", not bad_sub, f"{len(bad_sub)} bad" if bad_sub else "")

    fine = atlas.fine
    coarse = atlas.coarse
    add("fine order is a partial order", fine.is_partial_order())
    subs = atlas.subsystems
    incl_ok = all(
        fine.leq(i, j) == (subs[i] & subs[j] == subs[i]) for i in range(len(subs)) for j in range(len(subs))
    )
    add("fine order = mask inclusion", incl_ok)
    add(
        "fine poset has max Phi and min 0",
        [subs[i] for i in fine.maxima()] == [rs.full_mask] and [subs[i] for i in fine.minima()] == [0],
    )
    add("coarse order is a partial order", coarse.is_partial_order())
    add(
        "coarse poset has max [Phi] and min [0]",
        bool(top and bottom)
        and coarse.maxima() == [top[0].class_id]
        and coarse.minima() == [bottom[0].class_id],
    )
    unlifted = []
    for i, j in coarse.covers:
        rep_j = classes[j].representative
        if not any(m & rep_j == m for m in atlas.orbits[i]):
            unlifted.append((i, j))
    add("every coarse cover lifts to a fine inclusion", not unlifted, f"{unlifted}" if unlifted else "")
    # class map is order preserving: fine inclusion implies coarse order
    down_closed = all(
        coarse.leq(atlas.class_of[subs[i]], atlas.class_of[subs[j]]) for j in range(len(subs)) for i in _bits(fine.below[j])
    )
    add("fine inclusions map to coarse order (down-set closure)", down_closed)
    flat = [(i, j) for i, j in coarse.covers if coarse.level[i] >= coarse.level[j]]
    add("coarse covers strictly increase dim_top", not flat, f"{flat}" if flat else "")
    return Report(atlas.name, checks)


def _weyl_order_of(c: SubsystemClass) -> int:
    return weyl_order(c.label.components)
