"""
Breadth-first exploration of a labelled mutation class.

States are deduplicated on the exact ``[B|C]`` matrix, so two quivers that
only differ by a relabelling are distinct nodes.  Every node keeps the
shortest sequence that reached it (shortest sequences are automatically
reduced).

A snapshot is a JSONL file: a header line with the root quiver, then one line
per node, with a ``level`` marker after each completed depth.  Resuming reads
the nodes up to the last complete level and keeps expanding from there.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .errors import QuiverError
from .quiver import ExtendedQuiver, mutate, mutate_seq

log = logging.getLogger(__name__)

Visit = Callable[[ExtendedQuiver, tuple], Optional[object]]

SNAPSHOT_VERSION = 1


@dataclass
class Exploration:
    root: ExtendedQuiver
    depth: int = 0
    nodes: dict = field(default_factory=dict)
    edges: int = 0
    hit: object = None
    hit_sequence: tuple | None = None
    truncated: bool = False
    exhausted: bool = False

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def summary(self) -> dict:
        return {
            "depth": self.depth,
            "nodes": self.node_count,
            "edges": self.edges,
            "truncated": self.truncated,
            "exhausted": self.exhausted,
        }


class _Snapshot:
    def __init__(self, path: Path):
        self.path = Path(path)
        self._fh = None

    def open(self, root: ExtendedQuiver, append: bool) -> None:
        from .formats import extended_to_json

        self._fh = self.path.open("a" if append else "w", encoding="utf-8")
        if not append:
            self._write({"type": "header", "version": SNAPSHOT_VERSION, "root": extended_to_json(root)})

    def _write(self, obj: dict) -> None:
        self._fh.write(json.dumps(obj, separators=(",", ":")) + "\n")

    def node(self, seq: tuple, depth: int) -> None:
        self._write({"type": "node", "seq": list(seq), "depth": depth})

    def level(self, depth: int, edges: int, count: int) -> None:
        self._write({"type": "level", "depth": depth, "edges": edges, "nodes": count})
        self._fh.flush()

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def load_snapshot(path) -> tuple[ExtendedQuiver, list[tuple[tuple, int]], int, int]:
    """Read a snapshot; returns ``(root, nodes, completed_depth, edges)``.

    Lines written after the last ``level`` marker belong to an interrupted
    level and are dropped.
    """
    from .formats import extended_from_json

    root = None
    pending: list[tuple[tuple, int]] = []
    nodes: list[tuple[tuple, int]] = []
    depth = -1
    edges = 0
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                log.warning("snapshot %s: ignoring truncated line %d", path, lineno)
                break
            kind = rec.get("type")
            if kind == "header":
                if rec.get("version") != SNAPSHOT_VERSION:
                    raise QuiverError(f"unsupported snapshot version {rec.get('version')}")
                root = extended_from_json(rec["root"])
            elif kind == "node":
                pending.append((tuple(rec["seq"]), rec["depth"]))
            elif kind == "level":
                nodes.extend(pending)
                pending = []
                depth = rec["depth"]
                edges = rec["edges"]
    if root is None:
        raise QuiverError(f"snapshot {path} has no header")
    return root, nodes, depth, edges


def explore(
    root: ExtendedQuiver,
    depth: int,
    visit: Visit | None = None,
    snapshot=None,
    resume: bool = False,
    max_nodes: int | None = None,
) -> Exploration:
    """Visit every state within ``depth`` mutations of ``root``.

    ``visit(quiver, sequence)`` runs once per node; a non-``None`` return stops
    the search and is stored in ``Exploration.hit``.  With ``resume=True`` the
    nodes stored in ``snapshot`` are replayed (and re-visited) before the
    search continues past the snapshot's depth.
    """
    if depth < 0:
        raise QuiverError("depth must be non-negative")
    result = Exploration(root)
    snap = _Snapshot(snapshot) if snapshot is not None else None
    expanded: set = set()
    frontier: list[tuple[ExtendedQuiver, tuple]] = []
    level = 0

    try:
        if resume:
            if snap is None:
                raise QuiverError("resume requires a snapshot path")
            saved_root, saved, done, edges = load_snapshot(snap.path)
            if done < 0:
                raise QuiverError(f"snapshot {snap.path} has no completed level to resume from")
            if saved_root.key() != root.key():
                raise QuiverError("snapshot was taken from a different root quiver")
            for seq, d in saved:
                q = mutate_seq(root, seq)
                result.nodes[q.key()] = seq
                if d < done:
                    expanded.add(q.key())
                else:
                    frontier.append((q, seq))
                if visit is not None and result.hit is None:
                    out = visit(q, seq)
                    if out is not None:
                        result.hit, result.hit_sequence = out, seq
            level = done
            result.edges = edges
            result.depth = level
            snap.open(root, append=True)
        else:
            if snap is not None:
                snap.open(root, append=False)
            result.nodes[root.key()] = ()
            frontier = [(root, ())]
            if snap is not None:
                snap.node((), 0)
                snap.level(0, 0, 1)
            if visit is not None:
                out = visit(root, ())
                if out is not None:
                    result.hit, result.hit_sequence = out, ()
                    return result

        while level < depth and frontier and result.hit is None:
            nxt: list[tuple[ExtendedQuiver, tuple]] = []
            for q, seq in frontier:
                expanded.add(q.key())
                for k in q.vertices:
                    p = mutate(q, k)
                    key = p.key()
                    if key in expanded:
                        continue
                    result.edges += 1
                    if key in result.nodes:
                        continue
                    pseq = seq + (k,)
                    result.nodes[key] = pseq
                    nxt.append((p, pseq))
                    if snap is not None:
                        snap.node(pseq, level + 1)
                    if visit is not None:
                        out = visit(p, pseq)
                        if out is not None:
                            result.hit, result.hit_sequence = out, pseq
                            break
                    if max_nodes is not None and len(result.nodes) >= max_nodes:
                        result.truncated = True
                        break
                if result.hit is not None or result.truncated:
                    break
            if result.hit is not None or result.truncated:
                result.depth = level
                return result
            level += 1
            result.depth = level
            frontier = nxt
            if snap is not None:
                snap.level(level, result.edges, len(result.nodes))
        if not frontier:
            result.exhausted = True
        return result
    finally:
        if snap is not None:
            snap.close()


def search(root: ExtendedQuiver, depth: int, goal: Callable[[ExtendedQuiver], bool], max_nodes: int | None = None):
    """Shortest sequence (within ``depth``) to a state satisfying ``goal``."""
    res = explore(root, depth, visit=lambda q, seq: True if goal(q) else None, max_nodes=max_nodes)
    return res.hit_sequence if res.hit is not None else None
