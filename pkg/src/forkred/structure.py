"""Acyclicity, abundance, acyclic orderings and fork detection."""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Iterable

from .errors import CyclicInputError, QuiverError
from .quiver import (
    ExtendedQuiver,
    QuiverMatrix,
    full_subquiver,
    mutate_matrix,
)

log = logging.getLogger(__name__)


def _matrix(q) -> QuiverMatrix:
    if isinstance(q, ExtendedQuiver):
        return q.mutable
    return q


def _sorter(q: QuiverMatrix, labels: list[int]) -> TopologicalSorter:
    ts = TopologicalSorter()
    for a, i in enumerate(labels):
        ts.add(i)
        for c, j in enumerate(labels):
            if q.b[a][c] > 0:
                ts.add(j, i)
    return ts


def is_acyclic(q) -> bool:
    q = _matrix(q)
    try:
        tuple(_sorter(q, list(q.vertices)).static_order())
    except CycleError:
        return False
    return True


def acyclic_ordering(q, labels: Iterable[int] | None = None) -> tuple[int, ...]:
    """Vertex order with every arrow pointing forward.

    ``labels`` renames the vertices of ``q`` (used for subquivers so the result
    speaks about the parent's labels).  Raises :class:`CyclicInputError`.
    """
    q = _matrix(q)
    labels = list(q.vertices) if labels is None else list(labels)
    if len(labels) != q.n:
        raise QuiverError("labels must name every vertex")
    try:
        return tuple(_sorter(q, labels).static_order())
    except CycleError as exc:
        raise CyclicInputError(f"quiver has a directed cycle through {exc.args[1]}") from None


def ordering_without(q, drop: Iterable[int]) -> tuple[int, ...]:
    """Acyclic ordering of the full subquiver ``q \\ drop`` in ``q``'s labels."""
    q = _matrix(q)
    drop = set(drop)
    keep = [v for v in q.vertices if v not in drop]
    return acyclic_ordering(full_subquiver(q, keep), keep)


def is_abundant(q) -> bool:
    q = _matrix(q)
    return all(abs(q.b[i][j]) >= 2 for i in range(q.n) for j in range(i + 1, q.n))


def sources_and_sinks(q) -> tuple[frozenset[int], frozenset[int]]:
    """Vertices without incoming arrows, and vertices without outgoing arrows.

    An isolated vertex lands in both sets.
    """
    q = _matrix(q)
    sources = frozenset(v for v in q.vertices if all(x >= 0 for x in q.b[v - 1]))
    sinks = frozenset(v for v in q.vertices if all(x <= 0 for x in q.b[v - 1]))
    return sources, sinks


def connected_components(q) -> list[tuple[int, ...]]:
    q = _matrix(q)
    seen: set[int] = set()
    parts = []
    for start in q.vertices:
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        todo = deque([start])
        while todo:
            v = todo.popleft()
            for u in q.vertices:
                if u not in seen and q.b[v - 1][u - 1] != 0:
                    seen.add(u)
                    comp.append(u)
                    todo.append(u)
        parts.append(tuple(sorted(comp)))
    return parts


def is_connected(q) -> bool:
    return len(connected_components(q)) <= 1


@dataclass(frozen=True)
class ForkWitness:
    """One checked pair ``(i, j)`` with ``i -> r -> j`` and the arrows ``j -> i``."""

    i: int
    j: int
    f_ji: int
    f_ir: int
    f_rj: int

    def holds(self) -> bool:
        return self.f_ji > self.f_ir and self.f_ji > self.f_rj

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "f_ji": self.f_ji, "f_ir": self.f_ir, "f_rj": self.f_rj}


@dataclass(frozen=True)
class ForkCertificate:
    r: int
    ordering: tuple[int, ...]
    witnesses: tuple[ForkWitness, ...]

    @property
    def in_return(self) -> frozenset[int]:
        """Vertices with arrows into the point of return."""
        return frozenset(w.i for w in self.witnesses)

    @property
    def out_return(self) -> frozenset[int]:
        return frozenset(w.j for w in self.witnesses)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "ordering": list(self.ordering),
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def fork_certificate(q, r: int) -> ForkCertificate | None:
    """Certificate that ``q`` is a fork with point of return ``r``, or ``None``."""
    q = _matrix(q)
    if not 1 <= r <= q.n or not is_abundant(q) or q.n < 3:
        return None
    b = q.b
    ri = r - 1
    into = [v for v in q.vertices if b[v - 1][ri] > 0]
    out = [v for v in q.vertices if b[ri][v - 1] > 0]
    # a quiver without arrows into or out of r cannot carry a cycle through r
    if not into or not out:
        return None
    witnesses = []
    for i in into:
        for j in out:
            w = ForkWitness(i, j, b[j - 1][i - 1], b[i - 1][ri], b[ri][j - 1])
            if not w.holds():
                return None
            witnesses.append(w)
    try:
        ordering = ordering_without(q, [r])
    except CyclicInputError:
        return None
    if is_acyclic(q):
        return None
    return ForkCertificate(r, ordering, tuple(witnesses))


def fork_returns(q) -> list[int]:
    """Every vertex that qualifies as a point of return."""
    q = _matrix(q)
    return [r for r in q.vertices if fork_certificate(q, r) is not None]


def detect_fork(q) -> ForkCertificate | None:
    """Fork certificate with the smallest qualifying point of return."""
    q = _matrix(q)
    if not is_abundant(q) or is_acyclic(q):
        return None
    found = None
    for r in q.vertices:
        cert = fork_certificate(q, r)
        if cert is None:
            continue
        if found is None:
            found = cert
        else:
            log.info("vertex %d is another point of return (reporting %d)", r, found.r)
    return found


@dataclass(frozen=True)
class StructureClass:
    """One of ``abundant-acyclic``, ``fork``, ``acyclic`` or ``other``."""

    kind: str
    ordering: tuple[int, ...] | None = None
    certificate: ForkCertificate | None = None

    def to_json(self) -> dict:
        out: dict = {"class": self.kind}
        if self.ordering is not None:
            out["ordering"] = list(self.ordering)
        if self.certificate is not None:
            out["fork"] = self.certificate.to_json()
        return out


def classify(q) -> StructureClass:
    q = _matrix(q)
    if is_acyclic(q):
        kind = "abundant-acyclic" if is_abundant(q) else "acyclic"
        return StructureClass(kind, ordering=acyclic_ordering(q))
    cert = detect_fork(q)
    if cert is not None:
        return StructureClass("fork", certificate=cert)
    return StructureClass("other")


def is_mutation_cyclic_rank3(q) -> bool:
    """Decide mutation-cyclicity of a 3-vertex quiver by greedy arrow descent.

    Mutate at whichever vertex lowers the total arrow count the most until an
    acyclic quiver appears (mutation-acyclic) or no mutation lowers the count
    (a cyclic local minimum, hence mutation-cyclic).
    """
    q = _matrix(q)
    if q.n != 3:
        raise QuiverError(f"rank-3 criterion needs exactly 3 vertices, got {q.n}")
    return descent_path(q)[1]


def descent_path(q) -> tuple[list[int], bool]:
    """Greedy descent; returns the path taken and whether it ended cyclic."""
    q = _matrix(q)
    path: list[int] = []
    while not is_acyclic(q):
        total = q.total_arrows()
        best = None
        for k in q.vertices:
            cand = mutate_matrix(q, k)
            t = cand.total_arrows()
            if t < total and (best is None or t < best[0]):
                best = (t, k, cand)
        if best is None:
            return path, True
        path.append(best[1])
        q = best[2]
    return path, False


@dataclass(frozen=True)
class FoundFork:
    sequence: tuple[int, ...]
    certificate: ForkCertificate
    quiver: QuiverMatrix


def _growth_step(q: QuiverMatrix, ret: int | None) -> int | None:
    """A vertex that is neither the point of return, a source nor a sink."""
    sources, sinks = sources_and_sinks(q)
    for k in q.vertices:
        if k != ret and k not in sources and k not in sinks:
            return k
    return None


def find_fork(q, budget: int = 1000, seed: int = 0, restart_every: int = 25) -> FoundFork | None:
    """Search for a mutation sequence turning ``q`` into a fork.

    Greedy on total arrow count with random restarts; each restart draws its
    first move from ``random.Random(seed + restart)``.  Returns ``None`` once
    ``budget`` mutations have been spent.
    """
    q = _matrix(q)
    if not is_connected(q):
        raise QuiverError("find_fork needs a connected quiver")
    cert = detect_fork(q)
    if cert is not None:
        return FoundFork((), cert, q)
    if q.n < 3:
        return None
    spent = 0
    restart = 0
    while spent < budget:
        rng = random.Random(seed + restart)
        cur = q
        seq: list[int] = []
        if restart > 0:
            first = rng.choice(list(cur.vertices))
            cur = mutate_matrix(cur, first)
            seq.append(first)
            spent += 1
        steps = 0
        while spent < budget and steps < restart_every:
            cert = detect_fork(cur)
            if cert is not None:
                return FoundFork(tuple(seq), cert, cur)
            last = seq[-1] if seq else None
            k = None
            if is_abundant(cur) and is_acyclic(cur):
                k = _growth_step(cur, None)
            if k is None:
                total = cur.total_arrows()
                best = None
                for v in cur.vertices:
                    if v == last:
                        continue
                    gain = mutate_matrix(cur, v).total_arrows() - total
                    if best is None or gain > best[0]:
                        best = (gain, v)
                if best is None:
                    break
                k = best[1]
            cur = mutate_matrix(cur, k)
            seq.append(k)
            spent += 1
            steps += 1
        cert = detect_fork(cur)
        if cert is not None:
            return FoundFork(tuple(seq), cert, cur)
        restart += 1
    return None
