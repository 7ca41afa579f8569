"""Root systems of the classical and exceptional types and their direct sums.

Roots are integer vectors in the basis of simple roots.  The invariant form is
only used through the Cartan integers ``n(beta, alpha) = 2(beta, alpha)/(alpha, alpha)``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterable, List, Sequence, Tuple

Component = Tuple[str, int]
TypeSpec = Tuple[Component, ...]

FAMILIES = "ABCDEFG"

# Orientation of the G2 Dynkin diagram: simple root 0 is long, simple root 1 is short.
G2_CONVENTION = "simple root 0 long, simple root 1 short (|long|^2 = 3|short|^2)"


class InvalidTypeError(ValueError):
    """Invalid Lie type (bad family/rank or unparseable type string)."""


def _check_component(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 1,
        "C": rank >= 1,
        "D": rank >= 2,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family)
    if not ok:
        raise InvalidTypeError(f"no root system of type {family}{rank}")


_TOKEN = re.compile(r"([A-Ga-g])(\d+)(?:\^(\d+))?")


def parse_type(text: str) -> TypeSpec:
    """Parse ``"G2"``, ``"A1A1"``, ``"A1^2B2"`` into a tuple of components."""
    s = text.replace(" ", "").replace("x", "").replace("+", "")
    if not s:
        raise InvalidTypeError("empty type string")
    comps: List[Component] = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise InvalidTypeError(f"cannot parse type string {text!r} at position {pos}")
        fam, rank = m.group(1).upper(), int(m.group(2))
        _check_component(fam, rank)
        comps.extend([(fam, rank)] * int(m.group(3) or 1))
        pos = m.end()
    return tuple(comps)


def fold_component(family: str, rank: int) -> Tuple[Component, ...]:
    """Canonical name of a simple type: rank one is A1, C2 is B2, D2 is A1A1, D3 is A3."""
    if rank == 1:
        return (("A", 1),)
    if (family, rank) == ("C", 2):
        return (("B", 2),)
    if (family, rank) == ("D", 2):
        return (("A", 1), ("A", 1))
    if (family, rank) == ("D", 3):
        return (("A", 3),)
    return ((family, rank),)


def canonical_spec(spec: Iterable[Component]) -> TypeSpec:
    out: List[Component] = []
    for fam, rank in spec:
        out.extend(fold_component(fam, rank))
    return tuple(sorted(out, key=lambda c: (FAMILIES.index(c[0]), c[1])))


@dataclass(frozen=True)
class TypeLabel:
    """Isomorphism type of a semisimple algebra, as a sorted multiset of simple types."""

    components: TypeSpec = ()

    @classmethod
    def of(cls, comps: Iterable[Component]) -> "TypeLabel":
        return cls(canonical_spec(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        i = 0
        comps = self.components
        while i < len(comps):
            j = i
            while j < len(comps) and comps[j] == comps[i]:
                j += 1
            fam, rank = comps[i]
            parts.append(f"{fam}{rank}" + (f"^{j - i}" if j - i > 1 else ""))
            i = j
        return "".join(parts)


def spec_name(spec: Iterable[Component]) -> str:
    return str(TypeLabel(tuple(spec))) if spec else "0"


def weyl_order(spec: Iterable[Component]) -> int:
    order = 1
    for fam, n in spec:
        if fam == "A":
            order *= factorial(n + 1)
        elif fam in "BC":
            order *= 2**n * factorial(n)
        elif fam == "D":
            order *= 2 ** (n - 1) * factorial(n)
        elif fam == "E":
            order *= {6: 51840, 7: 2903040, 8: 696729600}[n]
        elif fam == "F":
            order *= 1152
        elif fam == "G":
            order *= 12
        else:
            raise InvalidTypeError(f"unknown family {fam!r}")
    return order


def _dynkin(family: str, n: int) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Squared lengths of the simple roots and the bonds of the Dynkin diagram (Bourbaki numbering)."""
    path = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return [2] * n, path
    if family == "B":
        return [4] * (n - 1) + [2], path
    if family == "C":
        return [2] * (n - 1) + [4], path
    if family == "D":
        if n == 2:
            return [2, 2], []
        return [2] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        bonds = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return [2] * n, bonds
    if family == "F":
        return [4, 4, 2, 2], path
    if family == "G":
        return [6, 2], path
    raise InvalidTypeError(f"unknown family {family!r}")


def gram_matrix(spec: Sequence[Component]) -> List[List[int]]:
    """Integer Gram matrix of the simple roots (block diagonal over components)."""
    blocks = []
    for fam, n in spec:
        _check_component(fam, n)
        lengths, bonds = _dynkin(fam, n)
        B = [[0] * n for _ in range(n)]
        for i in range(n):
            B[i][i] = lengths[i]
        for i, j in bonds:
            B[i][j] = B[j][i] = -max(lengths[i], lengths[j]) // 2
        blocks.append(B)
    rank = sum(n for _, n in spec)
    G = [[0] * rank for _ in range(rank)]
    off = 0
    for B in blocks:
        k = len(B)
        for i in range(k):
            for j in range(k):
                G[off + i][off + j] = B[i][j]
        off += k
    return G


def cartan_matrix(spec: Sequence[Component]) -> List[List[int]]:
    """``C[i][j] = n(alpha_i, alpha_j)``."""
    G = gram_matrix(spec)
    return [[2 * G[i][j] // G[j][j] for j in range(len(G))] for i in range(len(G))]


@dataclass(frozen=True, eq=False)
class RootSystem:
    spec: TypeSpec
    rank: int
    gram: Tuple[Tuple[int, ...], ...]
    roots: Tuple[Tuple[int, ...], ...]
    simple_indices: Tuple[int, ...]
    pairing: Tuple[Tuple[int, ...], ...]
    weyl_gens: Tuple[Tuple[int, ...], ...]
    negation: Tuple[int, ...]
    index: Dict[Tuple[int, ...], int] = field(repr=False)
    norms: Tuple[int, ...] = field(repr=False)

    @property
    def name(self) -> str:
        return spec_name(self.spec)

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def positive_indices(self) -> range:
        return range(self.n_positive)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.roots)) - 1

    def inner(self, u: Sequence[int], v: Sequence[int]) -> int:
        G = self.gram
        return sum(u[i] * G[i][j] * v[j] for i in range(self.rank) if u[i] for j in range(self.rank) if v[j])

    def is_long(self, i: int) -> bool:
        """True when root ``i`` is of maximal length within its simple component."""
        comp = self.component_of(i)
        return self.norms[i] == max(self.norms[j] for j in range(len(self.roots)) if self.component_of(j) == comp)

    def component_of(self, i: int) -> int:
        v = self.roots[i]
        off = 0
        for c, (_, n) in enumerate(self.spec):
            if any(v[off:off + n]):
                return c
            off += n
        raise AssertionError("zero root")

    def weyl_order(self) -> int:
        return weyl_order(self.spec)


def positivity_functional(rs_rank: int, max_height: int) -> List[int]:
    """Coefficients ``(1, N, N^2, ...)`` with ``N = 1 + max height``; nonzero on every root."""
    N = 1 + max_height
    return [N**i for i in range(rs_rank)]


def build_root_system(spec: Iterable[Component] | str) -> RootSystem:
    """All roots, by closing the simple roots under the simple reflections."""
    if isinstance(spec, str):
        spec = parse_type(spec)
    spec = tuple(spec)
    if not spec:
        raise InvalidTypeError("empty type")
    for fam, n in spec:
        _check_component(fam, n)
    G = gram_matrix(spec)
    rank = len(G)
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]

    def pair(beta, i):
        # n(beta, alpha_i)
        return 2 * sum(beta[k] * G[k][i] for k in range(rank) if beta[k]) // G[i][i]

    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(rank):
            c = pair(beta, i)
            if c:
                gamma = tuple(b - c * int(k == i) for k, b in enumerate(beta))
                if gamma not in seen:
                    seen.add(gamma)
                    queue.append(gamma)
    for i in range(rank):
        if tuple(-x for x in simple[i]) not in seen:
            raise AssertionError("root closure missed a negative simple root")
    positives = sorted((r for r in seen if sum(r) > 0), key=lambda r: (sum(r), r[::-1]))
    roots = tuple(positives) + tuple(tuple(-x for x in r) for r in positives)
    index = {r: i for i, r in enumerate(roots)}
    npos = len(positives)
    norms = tuple(
        sum(r[a] * G[a][b] * r[b] for a in range(rank) if r[a] for b in range(rank) if r[b]) for r in roots
    )
    inner = [
        [sum(u[a] * G[a][b] * v[b] for a in range(rank) if u[a] for b in range(rank) if v[b]) for v in roots]
        for u in roots
    ]
    pairing = tuple(tuple(2 * inner[i][j] // norms[j] for j in range(len(roots))) for i in range(len(roots)))
    gens = []
    for s in range(rank):
        a = simple[s]
        perm = []
        for beta in roots:
            c = pair(beta, s)
            perm.append(index[tuple(b - c * x for b, x in zip(beta, a))])
        gens.append(tuple(perm))
    return RootSystem(
        spec=spec,
        rank=rank,
        gram=tuple(map(tuple, G)),
        roots=roots,
        simple_indices=tuple(index[a] for a in simple),
        pairing=pairing,
        weyl_gens=tuple(gens),
        negation=tuple((i + npos) % (2 * npos) for i in range(2 * npos)),
        index=index,
        norms=norms,
    )


def cartan_pairing(rs: RootSystem, beta: int, alpha: int) -> int:
    """``n(beta, alpha) = 2(beta, alpha)/(alpha, alpha)``."""
    return rs.pairing[beta][alpha]


def reflect(rs: RootSystem, alpha: int, beta: int) -> int:
    """Index of ``s_alpha(beta) = beta - n(beta, alpha) alpha``."""
    c = rs.pairing[beta][alpha]
    if not c:
        return beta
    a, b = rs.roots[alpha], rs.roots[beta]
    return rs.index[tuple(x - c * y for x, y in zip(b, a))]


def mask_indices(mask: int) -> List[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def simple_system(rs: RootSystem, psi: int) -> List[int]:
    """A base of the subsystem ``psi``: its indecomposable positive roots."""
    idx = mask_indices(psi)
    if not idx:
        return []
    height = max(sum(abs(x) for x in r) for r in rs.roots)
    f = positivity_functional(rs.rank, height)
    pos = [i for i in idx if sum(c * x for c, x in zip(f, rs.roots[i])) > 0]
    posset = set(pos)
    decomposable = set()
    for a in range(len(pos)):
        ra = rs.roots[pos[a]]
        for b in range(a, len(pos)):
            rb = rs.roots[pos[b]]
            j = rs.index.get(tuple(x + y for x, y in zip(ra, rb)))
            if j is not None and j in posset:
                decomposable.add(j)
    return [i for i in pos if i not in decomposable]


def classify_cartan(C: Sequence[Sequence[int]], norms: Sequence[int]) -> TypeLabel:
    """Dynkin type of a Cartan matrix whose vertices have the given squared lengths."""
    n = len(C)
    adj = [[j for j in range(n) if j != i and C[i][j]] for i in range(n)]
    seen = [False] * n
    comps: List[Component] = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(_classify_connected(C, norms, sorted(comp), adj))
    return TypeLabel.of(comps)


def _classify_connected(C, norms, comp, adj) -> Component:
    r = len(comp)
    if r == 1:
        return ("A", 1)
    edges = [(i, j) for i in comp for j in adj[i] if i < j]
    if len(edges) != r - 1:
        raise AssertionError(f"Dynkin diagram with a cycle: {edges}")
    mult = {(i, j): C[i][j] * C[j][i] for i, j in edges}
    if any(m not in (1, 2, 3) for m in mult.values()):
        raise AssertionError(f"invalid Cartan matrix bond {mult}")
    degree = {v: len(adj[v]) for v in comp}
    if any(m == 3 for m in mult.values()):
        if r != 2:
            raise AssertionError("triple bond outside G2")
        return ("G", 2)
    doubles = [e for e, m in mult.items() if m == 2]
    if len(doubles) > 1 or (doubles and max(degree.values()) > 2):
        raise AssertionError("unclassifiable Dynkin diagram")
    if doubles:
        i, j = doubles[0]
        if r == 2:
            return ("B", 2)
        ends = [v for v in comp if degree[v] == 1]
        if i in ends or j in ends:
            end = i if i in ends else j
            other = j if end == i else i
            return ("B", r) if norms[end] < norms[other] else ("C", r)
        if r == 4:
            return ("F", 4)
        raise AssertionError("double bond in the middle of a diagram other than F4")
    branch = [v for v in comp if degree[v] == 3]
    if not branch:
        if max(degree.values()) > 2:
            raise AssertionError("unclassifiable Dynkin diagram")
        return ("A", r)
    if len(branch) > 1 or max(degree.values()) > 3:
        raise AssertionError("unclassifiable Dynkin diagram")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while degree[cur] == 2:
            nxt = next(w for w in adj[cur] if w != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", r)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ("E", r)
    raise AssertionError(f"unclassifiable arms {arms}")


def identify_type(rs: RootSystem, psi: int) -> TypeLabel:
    """Isomorphism type of the subsystem ``psi``."""
    base = simple_system(rs, psi)
    C = [[rs.pairing[a][b] for b in base] for a in base]
    return classify_cartan(C, [rs.norms[a] for a in base])
