"""The identity catalog: entry tables, the checker engine and the suite runner."""
from __future__ import annotations

from . import blocks, pairs, triples
from .base import KINDS, Entry

ENTRIES: list[Entry] = [*blocks.ENTRIES, *pairs.ENTRIES, *triples.ENTRIES]
CATALOG: dict[str, Entry] = {}
for _e in ENTRIES:
    if _e.id in CATALOG:
        raise RuntimeError(f"duplicate catalog id {_e.id}")
    CATALOG[_e.id] = _e

# every annotated entry: printed reading differs from (or is ambiguous against) the checked one
ERRATA: tuple = tuple(e.id for e in ENTRIES if e.note is not None)


def catalog_index() -> dict:
    """Entry id -> label, checker kind, input class and annotations."""
    out = {}
    for e in ENTRIES:
        out[e.id] = {"label": e.label, "kind": e.kind, "inputs": e.inputs, "group": e.group,
                     "k": list(e.k) if e.k else None, "scalars": [s.name for s in e.scalars],
                     "category": e.category, "note": e.note}
    return out


from .suite import run_audit, run_suite  # noqa: E402

__all__ = ["ENTRIES", "CATALOG", "ERRATA", "KINDS", "catalog_index", "run_suite", "run_audit"]
