"""A directory of canonical JSON files plus an ``index.json``.

Entry ids are sha256 digests of the canonical payload, so adding the same
object twice is a no-op and ids agree across machines.
"""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .groups import FiniteGroup, closure, fingerprint
from .perm import all_permutations
from .serialize import content_id, load, read_json, to_json, write_json
from .ybe import IYBMap, map_from_solution

EXACT_DEDUP_MAX = 5


@dataclass
class CatalogEntry:
    id: str
    kind: str
    size: int
    closure_fingerprint: list
    provenance: dict
    file: str


def default_catalog_dir() -> Path:
    return Path(os.environ.get("YBFORGE_CATALOG", "ybforge-catalog"))


def closure_of(kind: str, obj) -> FiniteGroup:
    if kind == "map":
        return obj.closure()
    if kind == "solution":
        return closure([list(r) for r in obj.f], max(obj.size, 1))
    if kind in ("morphism", "generator_morphism", "cocycle"):
        return obj.group
    if kind == "group":
        return obj
    raise ValueError(f"no closure for kind {kind}")


def size_of(kind: str, obj) -> int:
    if kind in ("map", "solution"):
        return obj.size
    return closure_of(kind, obj).order


class Catalog:
    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_catalog_dir()
        self.index_path = self.root / "index.json"

    def _index(self) -> dict:
        if self.index_path.exists():
            return read_json(self.index_path)
        return {"entries": {}}

    def entries(self) -> list[CatalogEntry]:
        idx = self._index()["entries"]
        return [CatalogEntry(**idx[k]) for k in sorted(idx)]

    def add(self, path, provenance: dict | None = None) -> CatalogEntry:
        kind, obj = load(path)
        return self.add_object(kind, obj, provenance or {"source": os.path.basename(str(path))})

    def add_object(self, kind: str, obj, provenance: dict) -> CatalogEntry:
        payload = to_json(obj)
        eid = content_id(payload)
        fname = f"{eid}.json"
        fp = fingerprint(closure_of(kind, obj))
        entry = CatalogEntry(eid, kind, size_of(kind, obj), [fp[0], fp[1], fp[2], [list(p) for p in fp[3]]],
                             dict(provenance, tool_version=__version__), fname)
        self.root.mkdir(parents=True, exist_ok=True)
        write_json(self.root / fname, payload)
        idx = self._index()
        idx["entries"].setdefault(eid, asdict(entry))
        write_json(self.index_path, idx)
        return CatalogEntry(**idx["entries"][eid])

    def load_entry(self, entry: CatalogEntry):
        return load(self.root / entry.file)

    def verify(self) -> list[str]:
        """Ids whose payload hash or fingerprint no longer matches."""
        bad = []
        for e in self.entries():
            payload = read_json(self.root / e.file)
            if content_id(payload) != e.id:
                bad.append(e.id)
                continue
            kind, obj = self.load_entry(e)
            fp = fingerprint(closure_of(kind, obj))
            if [fp[0], fp[1], fp[2], [list(p) for p in fp[3]]] != e.closure_fingerprint:
                bad.append(e.id)
        return bad


def _as_map(kind: str, obj) -> IYBMap:
    return obj if kind == "map" else map_from_solution(obj)


def same_up_to_relabeling(m1: IYBMap, m2: IYBMap) -> bool:
    if m1.size != m2.size:
        return False
    return any(m1.relabel(pi).lam == m2.lam for pi in all_permutations(m1.size))


@dataclass
class DedupClass:
    members: list[str]
    exact: bool


def dedup_objects(items: list[tuple[str, str, object]]) -> list[DedupClass]:
    """Partition ``(id, kind, obj)`` triples of maps/solutions by relabeling.

    Sizes up to 5 are compared exactly by conjugation search; larger ones are
    grouped by size and closure fingerprint only and flagged as coarse.
    """
    classes: list[tuple[DedupClass, object]] = []
    for eid, kind, obj in items:
        if kind not in ("map", "solution"):
            raise ValueError(f"dedup handles maps and solutions, not {kind}")
        m = _as_map(kind, obj)
        if m.size <= EXACT_DEDUP_MAX:
            for cls, rep in classes:
                if cls.exact and isinstance(rep, IYBMap) and same_up_to_relabeling(rep, m):
                    cls.members.append(eid)
                    break
            else:
                classes.append((DedupClass([eid], True), m))
        else:
            key = (m.size, fingerprint(m.closure()))
            for cls, rep in classes:
                if not cls.exact and rep == key:
                    cls.members.append(eid)
                    break
            else:
                classes.append((DedupClass([eid], False), key))
    return [c for c, _ in classes]


def catalog_dedup(cat: Catalog) -> list[DedupClass]:
    items = []
    for e in cat.entries():
        if e.kind in ("map", "solution"):
            kind, obj = cat.load_entry(e)
            items.append((e.id, kind, obj))
    return dedup_objects(items)
