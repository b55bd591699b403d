"""
Predicted acyclic orderings and vertex colors after the mutation patterns
that the reddening construction relies on.

Everything here is computed from the combinatorics of the starting quiver
alone (its ordering, the point of return, the starting colors).  The
predictions are meant to be compared with what :func:`forkred.quiver.mutate_seq`
actually produces, so none of these functions mutates anything except
:func:`predict_colors_source_seq` in the blue-return case, which needs the
intermediate colors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import NotAForkError, QuiverError
from .quiver import ExtendedQuiver, VertexColor, colors, mutate, vertex_color
from .structure import (
    ForkCertificate,
    acyclic_ordering,
    fork_certificate,
    detect_fork,
    is_abundant,
    is_acyclic,
    ordering_without,
)

RED, GREEN, BLUE = VertexColor.RED, VertexColor.GREEN, VertexColor.BLUE


@dataclass(frozen=True)
class OrderingPrediction:
    """Predicted acyclic ordering of the quiver with ``removed`` deleted."""

    removed: int | None
    ordering: tuple[int, ...]

    def check(self, q) -> bool:
        drop = [] if self.removed is None else [self.removed]
        return ordering_without(q, drop) == self.ordering


@dataclass(frozen=True)
class ColorPrediction:
    """Per-vertex expected colors; vertices mapped to ``None`` are unconstrained."""

    colors: Mapping[int, VertexColor | None] = field(default_factory=dict)

    def constrained(self) -> dict[int, VertexColor]:
        return {v: c for v, c in self.colors.items() if c is not None}

    def mismatches(self, q: ExtendedQuiver) -> dict[int, tuple[VertexColor, VertexColor]]:
        out = {}
        for v, want in self.constrained().items():
            got = vertex_color(q, v)
            if got != want:
                out[v] = (want, got)
        return out

    def check(self, q: ExtendedQuiver) -> bool:
        return not self.mismatches(q)


def _fork(q, r: int | None = None) -> ForkCertificate:
    mat = q.mutable if isinstance(q, ExtendedQuiver) else q
    cert = detect_fork(mat) if r is None else fork_certificate(mat, r)
    if cert is None:
        raise NotAForkError("mutable part is not a fork" + ("" if r is None else f" with point of return {r}"))
    return cert


def predict_order_source_cycle(ordering: Sequence[int], j: int) -> OrderingPrediction:
    """Ordering after the source sequence ``[v_1, ..., v_j]``: rotate left by ``j``."""
    ordering = tuple(ordering)
    if not 0 <= j <= len(ordering):
        raise QuiverError(f"prefix length {j} outside 0..{len(ordering)}")
    return OrderingPrediction(None, ordering[j:] + ordering[:j])


def predict_order_fork_single(q, v: int, r: int | None = None) -> OrderingPrediction:
    """Ordering of ``mu_v(F) \\ {v}`` for a fork ``F`` and a vertex ``v != r``."""
    cert = _fork(q, r)
    if v == cert.r:
        raise QuiverError("cannot predict the ordering after mutating at the point of return")
    rest = tuple(x for x in cert.ordering if x != v)
    if v in cert.out_return:
        return OrderingPrediction(v, (cert.r,) + rest)
    return OrderingPrediction(v, rest + (cert.r,))


def predict_order_fork_source_seq(q, j: int, r: int | None = None) -> tuple[OrderingPrediction, OrderingPrediction]:
    """Orderings of ``F^j \\ {v_j}`` and ``F^j \\ {r}`` after ``[v_1, ..., v_j]``."""
    cert = _fork(q, r)
    v = cert.ordering
    if not 1 <= j <= len(v):
        raise QuiverError(f"prefix length {j} outside 1..{len(v)}")
    without_vj = OrderingPrediction(v[j - 1], (cert.r,) + v[j:] + v[: j - 1])
    without_r = OrderingPrediction(cert.r, v[j:] + v[:j])
    return without_vj, without_r


def predict_order_after_return_mutation(q, j: int, r: int | None = None) -> tuple[OrderingPrediction, OrderingPrediction]:
    """Orderings after ``[v_1, ..., v_j, r]``: without ``v_j`` and without ``r``."""
    cert = _fork(q, r)
    v = cert.ordering
    if not 1 <= j <= len(v):
        raise QuiverError(f"prefix length {j} outside 1..{len(v)}")
    without_vj = OrderingPrediction(v[j - 1], v[j:] + v[: j - 1] + (cert.r,))
    without_r = OrderingPrediction(cert.r, (v[j - 1],) + v[j:] + v[: j - 1])
    return without_vj, without_r


def source_sequence(q, j: int | None = None, r: int | None = None) -> tuple[int, ...]:
    """``[v_1, ..., v_j]`` along the acyclic ordering (of ``F \\ {r}`` for a fork)."""
    mat = q.mutable if isinstance(q, ExtendedQuiver) else q
    order = acyclic_ordering(mat) if is_acyclic(mat) else _fork(mat, r).ordering
    return order if j is None else order[:j]


def predict_colors_single(q: ExtendedQuiver, v: int, r: int | None = None) -> ColorPrediction:
    """Colors after mutating once at ``v``.

    Handles an abundant acyclic mutable part and forks (``v`` not the point of
    return).  Vertices the rules say nothing about are left unconstrained.
    """
    before = colors(q)
    mat = q.mutable
    if is_acyclic(mat):
        if not is_abundant(mat):
            raise QuiverError("color prediction needs an abundant acyclic mutable part")
        order = acyclic_ordering(mat)
        ret = None
    else:
        cert = _fork(mat, r)
        if v == cert.r:
            raise QuiverError("mutation at the point of return is not covered")
        order = cert.ordering
        ret = cert
    pos = order.index(v)
    pred: dict[int, VertexColor | None] = {x: None for x in q.vertices}
    cv = before[v]
    if cv is BLUE:
        return ColorPrediction(dict(before))
    if cv is GREEN:
        for x in order[pos + 1:]:
            pred[x] = before[x]
        pred[v] = RED
        if ret is not None and v in ret.in_return:
            pred[ret.r] = before[ret.r]
    else:
        for x in order[:pos]:
            pred[x] = before[x]
        pred[v] = GREEN
        if ret is not None and v in ret.out_return:
            pred[ret.r] = before[ret.r]
    return ColorPrediction(pred)


def predict_colors_source_seq(q: ExtendedQuiver, j: int, r: int | None = None) -> ColorPrediction:
    """Colors after the source sequence ``[v_1, ..., v_j]``.

    Abundant acyclic input: needs ``v_j`` red; predicts ``v_1..v_{j-1}`` red and
    ``v_j`` green.  Fork input: the same statement on ``F \\ {r}`` when ``v_j``
    is red, plus the color of the point of return (green stays green, red is
    unconstrained, blue turns green as soon as some ``v_i`` was green in
    ``F^{i-1}``).
    """
    before = colors(q)
    mat = q.mutable
    pred: dict[int, VertexColor | None] = {x: None for x in q.vertices}
    if is_acyclic(mat):
        if not is_abundant(mat):
            raise QuiverError("color prediction needs an abundant acyclic mutable part")
        order = acyclic_ordering(mat)
        if not 1 <= j <= len(order):
            raise QuiverError(f"prefix length {j} outside 1..{len(order)}")
        if before[order[j - 1]] is not RED:
            raise QuiverError(f"vertex v_{j} = {order[j - 1]} must be red")
        for x in order[: j - 1]:
            pred[x] = RED
        pred[order[j - 1]] = GREEN
        return ColorPrediction(pred)

    cert = _fork(mat, r)
    order = cert.ordering
    if not 1 <= j <= len(order):
        raise QuiverError(f"prefix length {j} outside 1..{len(order)}")
    if before[order[j - 1]] is RED:
        for x in order[: j - 1]:
            pred[x] = RED
        pred[order[j - 1]] = GREEN
    cr = before[cert.r]
    if cr is GREEN:
        pred[cert.r] = GREEN
    elif cr is BLUE:
        # needs the colors of v_i in F^{i-1}; only reachable with zero c-vectors
        cur = q
        saw_green = False
        for x in order[:j]:
            if vertex_color(cur, x) is GREEN:
                saw_green = True
            cur = mutate(cur, x)
        pred[cert.r] = GREEN if saw_green else BLUE
    return ColorPrediction(pred)
