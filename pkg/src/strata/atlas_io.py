"""JSON persistence of atlases, checksums and the on-disk cache."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path
from typing import Any, Dict, Optional

from . import __version__
from .root_systems import G2_CONVENTION, TypeLabel, build_root_system, mask_indices, mask_of, spec_name
from .stratification import Atlas, StratPoset, build_atlas
from .subsystems import DEFAULT_MAX_RANK, SubsystemClass

SCHEMA_VERSION = 1
CACHE_ENV = "STRATA_ATLAS_CACHE"


class AtlasFormatError(ValueError):
    pass


def _poset_json(p: StratPoset, nodes) -> Dict[str, Any]:
    return {"nodes": nodes, "level": list(p.level), "covers": [list(e) for e in p.covers]}


def payload(atlas: Atlas) -> Dict[str, Any]:
    """The mathematical content of an atlas, as plain JSON data."""
    pos = {m: i for i, m in enumerate(atlas.subsystems)}
    classes = []
    for c, name, members in zip(atlas.classes, atlas.coarse.names, atlas.orbits):
        classes.append(
            {
                "class_id": c.class_id,
                "name": name,
                "label": str(c.label),
                "label_components": [list(x) for x in c.label.components],
                "representative": mask_indices(c.representative),
                "orbit_size": c.orbit_size,
                "weyl_index": c.weyl_index,
                "embedding_number": c.embedding_number,
                "dim_top": c.dim_top,
                "rank": c.rank,
                "size": c.size,
                "members": sorted(pos[m] for m in members),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "spec": {"name": atlas.name, "components": [list(x) for x in atlas.spec]},
        "roots": [list(r) for r in atlas.rs.roots],
        "subsystems": [mask_indices(m) for m in atlas.subsystems],
        "classes": classes,
        "fine_poset": _poset_json(atlas.fine, list(range(len(atlas.subsystems)))),
        "coarse_poset": _poset_json(atlas.coarse, atlas.coarse.names),
    }


def checksum_of(data: Dict[str, Any]) -> str:
    body = {k: v for k, v in data.items() if k not in ("metadata", "checksum")}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _timestamp() -> int:
    # SOURCE_DATE_EPOCH pins the timestamp for byte-reproducible output
    env = os.environ.get("SOURCE_DATE_EPOCH")
    return int(env) if env else int(time.time())


def to_json_data(atlas: Atlas) -> Dict[str, Any]:
    data = payload(atlas)
    data["metadata"] = {
        "tool": "strata",
        "tool_version": __version__,
        "g2_convention": G2_CONVENTION,
        "root_basis": "simple roots",
        "max_rank": atlas.max_rank,
        "timestamp": _timestamp(),
    }
    data["checksum"] = checksum_of(data)
    return data


def render_json(atlas: Atlas) -> str:
    return json.dumps(to_json_data(atlas), indent=1, sort_keys=True) + "\n"


def _closure_from_covers(n: int, covers) -> list:
    preds = [[] for _ in range(n)]
    for i, j in covers:
        preds[j].append(i)
    below: list = [None] * n

    def visit(j, stack=()):
        if below[j] is not None:
            return below[j]
        if j in stack:
            raise AtlasFormatError("cycle in stored cover edges")
        x = 0
        for i in preds[j]:
            x |= visit(i, stack + (j,)) | (1 << i)
        below[j] = x
        return x

    for j in range(n):
        visit(j)
    return below


def from_json_data(data: Dict[str, Any], verify_checksum: bool = True) -> Atlas:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise AtlasFormatError(f"unsupported schema_version {data.get('schema_version')!r}")
    if verify_checksum and checksum_of(data) != data.get("checksum"):
        raise AtlasFormatError("checksum mismatch")
    spec = tuple((f, int(r)) for f, r in data["spec"]["components"])
    rs = build_root_system(spec)
    if [list(r) for r in rs.roots] != data["roots"]:
        raise AtlasFormatError("stored roots differ from the rebuilt root system")
    subs = [mask_of(ix) for ix in data["subsystems"]]
    classes = []
    class_of = {}
    for rec in data["classes"]:
        label = TypeLabel(tuple((f, int(r)) for f, r in rec["label_components"]))
        classes.append(
            SubsystemClass(
                class_id=rec["class_id"],
                representative=mask_of(rec["representative"]),
                orbit_size=rec["orbit_size"],
                weyl_index=rec["weyl_index"],
                embedding_number=rec["embedding_number"],
                label=label,
                dim_top=rec["dim_top"],
                rank=rec["rank"],
                size=rec["size"],
            )
        )
        for i in rec["members"]:
            class_of[subs[i]] = rec["class_id"]
    max_rank = data.get("metadata", {}).get("max_rank", DEFAULT_MAX_RANK)
    atlas = Atlas(rs=rs, subsystems=subs, classes=classes, class_of=class_of, max_rank=max_rank)
    for key, attr, names in (
        ("fine_poset", "fine", None),
        ("coarse_poset", "coarse", [c["name"] for c in data["classes"]]),
    ):
        p = data[key]
        n = len(p["level"])
        covers = [tuple(e) for e in p["covers"]]
        poset = StratPoset(
            names=names if names is not None else [",".join(map(str, ix)) or "{}" for ix in data["subsystems"]],
            below=_closure_from_covers(n, covers),
            level=list(p["level"]),
            covers=covers,
        )
        atlas.__dict__[attr] = poset
    return atlas


def parse_json(text: str, verify_checksum: bool = True) -> Atlas:
    return from_json_data(json.loads(text), verify_checksum=verify_checksum)


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "strata"


def cache_path(spec, max_rank: Optional[int]) -> Path:
    return cache_dir() / f"{spec_name(spec)}-v{__version__}-r{max_rank}.json"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_atlas(spec, max_rank: Optional[int] = DEFAULT_MAX_RANK, use_cache: bool = True) -> Atlas:
    """Compute an atlas, going through the cache unless ``use_cache`` is false."""
    if not use_cache:
        return build_atlas(spec, max_rank=max_rank)
    path = cache_path(spec, max_rank)
    if path.exists():
        try:
            return parse_json(path.read_text())
        except (AtlasFormatError, ValueError, KeyError):
            pass  # stale or corrupt entry: recompute and overwrite
    atlas = build_atlas(spec, max_rank=max_rank)
    try:
        write_atomic(path, render_json(atlas))
    except OSError:
        pass  # an unwritable cache must not break the computation
    return atlas
