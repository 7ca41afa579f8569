"""Compare computed coarse Hasse diagrams against transcribed reference diagrams.

A reference file is JSON with ``type``, ``nodes`` (node keys: a label such as
``"9A1^2"``, suffixed ``#k`` when the label repeats) and ``edges`` (unordered
key pairs).  Computed and reference diagrams agree when their label multisets
coincide and some label-preserving bijection carries one edge set onto the
other.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .stratification import Atlas, consistency_check

Edge = FrozenSet[str]


def base_label(key: str) -> str:
    return key.split("#", 1)[0]


@dataclass
class ExpectedDiagram:
    type_name: str
    nodes: List[str]
    edges: List[Tuple[str, str]]

    @classmethod
    def from_file(cls, path) -> "ExpectedDiagram":
        data = json.loads(Path(path).read_text())
        diagram = cls(data["type"], list(data["nodes"]), [tuple(e) for e in data["edges"]])
        unknown = {k for e in diagram.edges for k in e} - set(diagram.nodes)
        if unknown:
            raise ValueError(f"{path}: edges mention unknown nodes {sorted(unknown)}")
        if len(set(diagram.nodes)) != len(diagram.nodes):
            raise ValueError(f"{path}: duplicate node keys")
        return diagram

    def label_counts(self) -> Counter:
        return Counter(base_label(n) for n in self.nodes)


def bundled_corpus() -> Path:
    return Path(str(resources.files("strata") / "corpus"))


def load_corpus(path=None, types: Optional[Sequence[str]] = None) -> List[ExpectedDiagram]:
    root = Path(path) if path is not None else bundled_corpus()
    out = [ExpectedDiagram.from_file(f) for f in sorted(root.glob("*.json"))]
    if types:
        wanted = set(types)
        out = [d for d in out if d.type_name in wanted]
        missing = wanted - {d.type_name for d in out}
        if missing:
            raise FileNotFoundError(f"no corpus entry for {sorted(missing)} in {root}")
    return out


@dataclass
class Comparison:
    type_name: str
    labels_equal: bool
    missing_labels: Counter = field(default_factory=Counter)  # in reference, not computed
    extra_labels: Counter = field(default_factory=Counter)  # computed, not in reference
    mapping: Dict[str, str] = field(default_factory=dict)  # reference key -> computed name
    missing_edges: List[Tuple[str, str]] = field(default_factory=list)
    extra_edges: List[Tuple[str, str]] = field(default_factory=list)
    consistency_ok: bool = True
    consistency_detail: str = ""

    @property
    def ok(self) -> bool:
        return self.labels_equal and not self.missing_edges and not self.extra_edges and self.consistency_ok

    def render(self) -> str:
        head = f"{self.type_name}: {'PASS' if self.ok else 'FAIL'}"
        lines = [head]
        for lab, k in sorted(self.missing_labels.items()):
            lines.append(f"  node {lab} x{k} in reference but not computed")
        for lab, k in sorted(self.extra_labels.items()):
            lines.append(f"  node {lab} x{k} computed but not in reference")
        for a, b in self.missing_edges:
            lines.append(f"  edge {a} -- {b} in reference but not computed")
        for a, b in self.extra_edges:
            lines.append(f"  edge {a} -- {b} computed but not in reference")
        if not self.consistency_ok:
            lines.append("  consistency check failed:")
            lines.append(self.consistency_detail)
        return "\n".join(lines)


def _match(ref_nodes: List[str], ref_edges: Set[Edge], comp_nodes: List[str], comp_edges: Set[Edge]):
    """Best label-preserving bijection reference -> computed, by backtracking.

    Returns ``(mapping, cost)`` where cost is the size of the symmetric
    difference of the edge sets under the mapping; zero means a match.
    """
    groups: Dict[str, List[str]] = defaultdict(list)
    for n in comp_nodes:
        groups[base_label(n)].append(n)
    adj_ref: Dict[str, Set[str]] = defaultdict(set)
    for e in ref_edges:
        a, b = tuple(e)
        adj_ref[a].add(b)
        adj_ref[b].add(a)
    adj_comp: Dict[str, Set[str]] = defaultdict(set)
    for e in comp_edges:
        a, b = tuple(e)
        adj_comp[a].add(b)
        adj_comp[b].add(a)
    # unique labels first so duplicates are pruned against a fixed frame
    order = sorted(ref_nodes, key=lambda n: (len(groups[base_label(n)]), ref_nodes.index(n)))
    best = [None, None]
    mapping: Dict[str, str] = {}
    used: Set[str] = set()

    def cost_of(node, image) -> int:
        c = 0
        for nb in adj_ref[node]:
            if nb in mapping and mapping[nb] not in adj_comp[image]:
                c += 1
        mapped_images = {mapping[m]: m for m in mapping}
        for nb in adj_comp[image]:
            if nb in mapped_images and mapped_images[nb] not in adj_ref[node]:
                c += 1
        return c

    def go(k, cost):
        if best[1] is not None and cost >= best[1]:
            return
        if k == len(order):
            best[0], best[1] = dict(mapping), cost
            return
        node = order[k]
        for image in groups[base_label(node)]:
            if image in used:
                continue
            extra = cost_of(node, image)
            mapping[node] = image
            used.add(image)
            go(k + 1, cost + extra)
            del mapping[node]
            used.discard(image)
            if best[1] == 0:
                return

    go(0, 0)
    return best[0], best[1]


def compare(atlas: Atlas, expected: ExpectedDiagram, run_consistency: bool = True) -> Comparison:
    names = atlas.coarse.names
    comp_edges = {frozenset((names[i], names[j])) for i, j in atlas.coarse.covers}
    ref_edges = {frozenset(e) for e in expected.edges}
    got = Counter(base_label(n) for n in names)
    want = expected.label_counts()
    result = Comparison(expected.type_name, labels_equal=(got == want))
    result.missing_labels = want - got
    result.extra_labels = got - want
    if result.labels_equal:
        mapping, _ = _match(expected.nodes, ref_edges, names, comp_edges)
        result.mapping = mapping
        mapped = {frozenset(mapping[x] for x in e) for e in ref_edges}
        inverse = {v: k for k, v in mapping.items()}
        result.missing_edges = sorted(tuple(sorted(e)) for e in ref_edges if frozenset(mapping[x] for x in e) not in comp_edges)
        result.extra_edges = sorted(tuple(sorted(inverse[x] for x in e)) for e in comp_edges - mapped)
    if run_consistency:
        report = consistency_check(atlas)
        result.consistency_ok = report.ok
        result.consistency_detail = report.render()
    return result
