"""
General reddening sequences for strictly sign-coherent forks and the
unrestricted red size of arbitrary quivers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BlueVertexError, NotAForkError, QuiverError, SinkNotRedError
from .quiver import (
    ExtendedQuiver,
    MutationSequence,
    QuiverMatrix,
    VertexColor,
    colors,
    frame,
    full_subquiver,
    mutate,
    mutate_seq,
    red_count,
)
from .structure import (
    acyclic_ordering,
    connected_components,
    fork_certificate,
    detect_fork,
    find_fork,
    is_abundant,
    is_acyclic,
    is_mutation_cyclic_rank3,
)

RED, GREEN, BLUE = VertexColor.RED, VertexColor.GREEN, VertexColor.BLUE

DEFAULT_DEPTH = 12


@dataclass(frozen=True)
class ReddeningResult:
    sequence: MutationSequence
    final: ExtendedQuiver
    red_count: int
    green_vertices: frozenset[int]
    length_bound: int

    def to_json(self) -> dict:
        from .formats import extended_to_json

        return {
            "sequence": list(self.sequence),
            "length": len(self.sequence),
            "length_bound": self.length_bound,
            "red_count": self.red_count,
            "green_vertices": sorted(self.green_vertices),
            "final": extended_to_json(self.final),
        }


@dataclass
class ForkState:
    """A quiver whose mutable part is a fork, with its tracked point of return."""

    quiver: ExtendedQuiver
    ret: int
    sequence: list[int] = field(default_factory=list)

    def mutate(self, k: int) -> None:
        if self.sequence and self.sequence[-1] == k:
            raise QuiverError("construction produced a non-reduced sequence")
        self.quiver = mutate(self.quiver, k)
        self.sequence.append(k)
        self.ret = k

    def ordering(self) -> tuple[int, ...]:
        cert = fork_certificate(self.quiver.mutable, self.ret)
        if cert is None:
            raise NotAForkError(f"lost the fork structure (expected point of return {self.ret})")
        return cert.ordering


def _strict_colors(q: ExtendedQuiver) -> dict[int, VertexColor]:
    cols = colors(q)  # raises MixedSignsError
    blue = [v for v, c in cols.items() if c is BLUE]
    if blue:
        raise BlueVertexError(f"vertices {blue} have zero c-vectors; strict sign-coherence required")
    return cols


def _start(f: ExtendedQuiver, ret: int | None) -> ForkState:
    cert = detect_fork(f.mutable) if ret is None else fork_certificate(f.mutable, ret)
    if cert is None:
        raise NotAForkError("mutable part is not a fork")
    _strict_colors(f)
    return ForkState(f, cert.r)


def to_green_point_of_return(f: ExtendedQuiver, ret: int | None = None) -> tuple[MutationSequence, ExtendedQuiver, int]:
    """Mutate a strictly sign-coherent fork until its point of return is green.

    Returns ``(sequence, quiver, point_of_return)``.  The result has at most one
    other green vertex and the sequence has length at most ``n + 2``.
    Blue vertices are rejected; allowing them would need up to ``n + 4`` steps.
    """
    state = _start(f, ret)
    _drive_to_green_return(state)
    return MutationSequence(tuple(state.sequence)), state.quiver, state.ret


def _drive_to_green_return(state: ForkState) -> None:
    n = state.quiver.n
    limit = n + 2 + len(state.sequence)
    while True:
        cols = _strict_colors(state.quiver)
        order = state.ordering()
        sink = order[-1]
        r = state.ret
        if cols[sink] is RED and cols[r] is GREEN:
            # red sink under a green return: run the source sequence of F \ {r}
            for v in order:
                state.mutate(v)
            break
        if cols[sink] is RED or cols[r] is RED:
            # sink red + return red, or sink green + return red
            state.mutate(sink)
        else:
            # both green: [sink, r] leaves a red return over a red sink
            state.mutate(sink)
            state.mutate(r)
        if len(state.sequence) > limit:
            raise QuiverError("stage-one construction exceeded its length bound")
    _strict_colors(state.quiver)


def finish_from_green_return(f: ExtendedQuiver, ret: int | None = None) -> tuple[MutationSequence, ExtendedQuiver, int]:
    """Turn a fork with green return and at most one other green vertex almost red.

    With ``v_j`` the other green vertex (position ``j`` in the ordering of
    ``F \\ {r}``) the sequence has length at most ``j + 2`` and ends with at
    least ``n - 1`` red vertices.
    """
    state = _start(f, ret)
    _finish(state)
    return MutationSequence(tuple(state.sequence)), state.quiver, state.ret


def _finish(state: ForkState) -> None:
    cols = _strict_colors(state.quiver)
    r = state.ret
    if cols[r] is not GREEN:
        raise QuiverError(f"point of return {r} must be green")
    order = state.ordering()
    greens = [v for v in order if cols[v] is GREEN]
    if len(greens) > 1:
        raise QuiverError(f"at most one green vertex besides the point of return allowed, found {greens}")
    if not greens:
        return
    vj = greens[0]
    j = order.index(vj) + 1
    if j == 1:
        state.mutate(vj)
        return
    for v in order[: j - 1]:
        state.mutate(v)
    state.mutate(r)
    if colors(state.quiver)[vj] is RED:
        return
    state.mutate(order[j - 2])
    state.mutate(vj)


def general_reddening_fork(f: ExtendedQuiver, ret: int | None = None) -> ReddeningResult:
    """Mutation sequence of length at most ``2n + 3`` leaving ``n - 1`` red vertices."""
    state = _start(f, ret)
    _drive_to_green_return(state)
    _finish(state)
    final = state.quiver
    cols = colors(final)
    return ReddeningResult(
        sequence=MutationSequence(tuple(state.sequence)),
        final=final,
        red_count=red_count(final),
        green_vertices=frozenset(v for v, c in cols.items() if c is GREEN),
        length_bound=2 * final.n + 3,
    )


def source_cycle_reddening(q: ExtendedQuiver) -> ReddeningResult:
    """Mutate along the acyclic ordering of an abundant acyclic quiver with red sink."""
    mat = q.mutable
    if not is_acyclic(mat) or not is_abundant(mat):
        raise QuiverError("source cycle reddening needs an abundant acyclic mutable part")
    order = acyclic_ordering(mat)
    if not order:
        return ReddeningResult(MutationSequence(), q, 0, frozenset(), 0)
    cols = colors(q)
    if cols[order[-1]] is not RED:
        raise SinkNotRedError(f"sink {order[-1]} is {cols[order[-1]]}, expected red")
    final = mutate_seq(q, order)
    fcols = colors(final)
    return ReddeningResult(
        sequence=MutationSequence(order),
        final=final,
        red_count=red_count(final),
        green_vertices=frozenset(v for v, c in fcols.items() if c is GREEN),
        length_bound=len(order),
    )


# -- unrestricted red size ---------------------------------------------------


@dataclass(frozen=True)
class ComponentStatus:
    """Reddening verdict for one connected component.

    ``status`` is ``"yes"`` (with a witness ``sequence`` in the component's own
    labels), ``"no"`` (with ``reason``) or ``"unknown"`` (search exhausted at
    ``depth``).  ``near_reddening`` optionally carries a fork-based sequence
    reaching ``size - 1`` red vertices.
    """

    vertices: tuple[int, ...]
    status: str
    sequence: tuple[int, ...] | None = None
    reason: str | None = None
    depth: int | None = None
    near_reddening: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"vertices": list(self.vertices), "status": self.status}
        if self.sequence is not None:
            out["sequence"] = list(self.sequence)
        if self.reason is not None:
            out["reason"] = self.reason
        if self.depth is not None:
            out["depth"] = self.depth
        if self.near_reddening is not None:
            out["near_reddening"] = list(self.near_reddening)
        return out


@dataclass(frozen=True)
class URedReport:
    n: int
    components: tuple[ComponentStatus, ...]
    ured_value: int
    certified: bool

    @property
    def non_reddening(self) -> int:
        return sum(1 for c in self.components if c.status == "no")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "ured": self.ured_value,
            "certified": self.certified,
            "kind": "exact" if self.certified else "lower-bound",
            "components": [c.to_json() for c in self.components],
        }


def _bfs_all_red(q: QuiverMatrix, depth: int, max_nodes: int) -> tuple[int, ...] | None:
    from .exploration import search

    hit = search(frame(q), depth, goal=lambda p: red_count(p) == p.n, max_nodes=max_nodes)
    return hit


def _component_status(sub: QuiverMatrix, labels: tuple[int, ...], depth: int, max_nodes: int, seed: int) -> ComponentStatus:
    if is_acyclic(sub):
        return ComponentStatus(labels, "yes", sequence=acyclic_ordering(sub))
    if sub.n == 3 and is_mutation_cyclic_rank3(sub):
        return ComponentStatus(labels, "no", reason="mutation-cyclic quiver on three vertices")
    hit = _bfs_all_red(sub, depth, max_nodes)
    if hit is not None:
        return ComponentStatus(labels, "yes", sequence=hit)
    near = None
    found = find_fork(sub, budget=200, seed=seed)
    if found is not None:
        start = mutate_seq(frame(sub), found.sequence)
        res = general_reddening_fork(start, found.certificate.r)
        near = tuple(found.sequence) + tuple(res.sequence)
    return ComponentStatus(labels, "unknown", depth=depth, near_reddening=near)


def compute_ured(q: QuiverMatrix, depth: int = DEFAULT_DEPTH, max_nodes: int = 200_000, seed: int = 0) -> URedReport:
    """Unrestricted red size from per-component reddening verdicts.

    Exact (``n - #no``) when every component is decided; otherwise the value
    counts undecided components as non-reddening and ``certified`` is False.
    """
    if isinstance(q, ExtendedQuiver):
        q = q.mutable
    comps = []
    for labels in connected_components(q):
        sub = full_subquiver(q, labels)
        status = _component_status(sub, labels, depth, max_nodes, seed)
        if status.sequence is not None:
            # witness sequences are reported in the parent's labels
            status = ComponentStatus(
                labels, status.status, tuple(labels[k - 1] for k in status.sequence),
                status.reason, status.depth, status.near_reddening,
            )
        if status.near_reddening is not None:
            status = ComponentStatus(
                labels, status.status, status.sequence, status.reason, status.depth,
                tuple(labels[k - 1] for k in status.near_reddening),
            )
        comps.append(status)
    no = sum(1 for c in comps if c.status == "no")
    unknown = sum(1 for c in comps if c.status == "unknown")
    return URedReport(q.n, tuple(comps), q.n - no - unknown, certified=unknown == 0)
