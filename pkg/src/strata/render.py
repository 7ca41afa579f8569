"""DOT and plain-text renderings of stratification posets."""
from __future__ import annotations

from itertools import groupby
from typing import List

from .stratification import Atlas, StratPoset


def _levels(p: StratPoset):
    order = sorted(range(len(p)), key=lambda i: (-p.level[i], i))
    return [(lvl, list(grp)) for lvl, grp in groupby(order, key=lambda i: p.level[i])]


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(atlas: Atlas, fine: bool = False) -> str:
    """Directed graph with edges from lower to higher strata, one rank group per dimension."""
    p = atlas.fine if fine else atlas.coarse
    title = f"{atlas.name} {'fine' if fine else 'coarse'}"
    lines = [f"digraph {_quote(title)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, name in enumerate(p.names):
        lines.append(f"  n{i} [label={_quote(name)}];")
    for lvl, nodes in _levels(p):
        lines.append(f"  subgraph dim_{lvl} {{ rank=same; {' '.join(f'n{i};' for i in nodes)} }}")
    for i, j in p.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_ascii(atlas: Atlas, fine: bool = False) -> str:
    p = atlas.fine if fine else atlas.coarse
    kind = "fine" if fine else "coarse"
    out: List[str] = [f"{atlas.name} {kind} stratification: {len(p)} strata, {len(p.covers)} cover edges"]
    for lvl, nodes in _levels(p):
        out.append(f"dim {lvl:>3}: " + "  ".join(f"[{i}] {p.names[i]}" for i in nodes))
    out.append("covers (lower -> higher):")
    for i, j in sorted(p.covers, key=lambda e: (p.level[e[0]], e[0], e[1])):
        out.append(f"  {p.names[i]} -> {p.names[j]}")
    return "\n".join(out) + "\n"
