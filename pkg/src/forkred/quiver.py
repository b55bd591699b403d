"""
Ice quivers as extended exchange matrices and their mutation.

Vertices are labelled 1..n (mutable) and n+1..n+m (frozen) throughout the
public API.  All entries are Python ints, so arrow multiplicities never
overflow however long a mutation sequence runs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MixedSignsError, NonReducedSequenceError, QuiverError

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = []
    for row in rows:
        vals = []
        for x in row:
            if isinstance(x, bool):
                raise QuiverError(f"matrix entries must be integers, got {x!r}")
            if not isinstance(x, int):
                if isinstance(x, str):
                    x = int(x)
                elif hasattr(x, "__index__"):
                    x = x.__index__()
                else:
                    raise QuiverError(f"matrix entries must be integers, got {x!r}")
            vals.append(int(x))
        out.append(tuple(vals))
    return tuple(out)


def _check_skew(b: Matrix) -> None:
    n = len(b)
    for i, row in enumerate(b):
        if len(row) != n:
            raise QuiverError(f"exchange matrix must be square; row {i + 1} has {len(row)} entries, expected {n}")
    for i in range(n):
        if b[i][i] != 0:
            raise QuiverError(f"diagonal entry b[{i + 1}][{i + 1}] = {b[i][i]} must be zero (no loops)")
        for j in range(i + 1, n):
            if b[i][j] != -b[j][i]:
                raise QuiverError(
                    f"matrix is not skew-symmetric at ({i + 1},{j + 1}): {b[i][j]} vs {b[j][i]}"
                )


@dataclass(frozen=True)
class QuiverMatrix:
    """Skew-symmetric exchange matrix of a quiver without frozen vertices.

    ``b[i][j] > 0`` counts arrows ``i+1 -> j+1`` (0-based storage).
    """

    b: Matrix

    def __post_init__(self):
        b = _as_matrix(self.b)
        _check_skew(b)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.b)

    def entry(self, i: int, j: int) -> int:
        """Signed multiplicity between 1-based vertices ``i`` and ``j``."""
        return self.b[i - 1][j - 1]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def total_arrows(self) -> int:
        return sum(x for row in self.b for x in row if x > 0)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.b)


@dataclass(frozen=True)
class ExtendedQuiver:
    """Extended exchange matrix ``[B | C]``: n mutable rows, m frozen columns."""

    b: Matrix
    c: Matrix

    def __post_init__(self):
        b = _as_matrix(self.b)
        c = _as_matrix(self.c)
        _check_skew(b)
        if len(c) != len(b):
            raise QuiverError(f"C must have one row per mutable vertex ({len(b)}), got {len(c)}")
        widths = {len(row) for row in c}
        if len(widths) > 1:
            raise QuiverError("all rows of C must have the same length")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def m(self) -> int:
        return len(self.c[0]) if self.c else 0

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def mutable(self) -> QuiverMatrix:
        return QuiverMatrix(self.b)

    def key(self) -> tuple[Matrix, Matrix]:
        """Exact hashable identity used for deduplicating labelled states."""
        return (self.b, self.c)

    def __str__(self) -> str:
        return "\n".join(
            " ".join(str(x) for x in brow + crow) for brow, crow in zip(self.b, self.c)
        )


class VertexColor(enum.Enum):
    RED = "red"
    GREEN = "green"
    BLUE = "blue"

    def __str__(self) -> str:
        return self.value


def _check_vertex(q, k: int) -> int:
    if isinstance(k, bool) or not isinstance(k, int):
        raise QuiverError(f"vertex index must be an integer, got {k!r}")
    if 1 <= k <= q.n:
        return k - 1
    m = getattr(q, "m", 0)
    if q.n < k <= q.n + m:
        raise QuiverError(f"vertex {k} is frozen and cannot be mutated")
    raise QuiverError(f"vertex {k} out of range 1..{q.n}")


def _mutate_rows(b: Matrix, c: Matrix, k: int) -> tuple[Matrix, Matrix]:
    # k is 0-based here
    n = len(b)
    bk = b[k]
    ck = c[k]
    new_b = []
    new_c = []
    for i in range(n):
        bi = b[i]
        ci = c[i]
        if i == k:
            new_b.append(tuple(-x for x in bi))
            new_c.append(tuple(-x for x in ci))
            continue
        bik = bi[k]
        if bik == 0:
            new_b.append(bi)
            new_c.append(ci)
            continue
        a = abs(bik)
        row = list(bi)
        for j in range(n):
            if j == k:
                row[j] = -bik
            else:
                bkj = bk[j]
                if bik * bkj > 0:
                    row[j] += a * bkj
        new_b.append(tuple(row))
        crow = list(ci)
        for j, ckj in enumerate(ck):
            if bik * ckj > 0:
                crow[j] += a * ckj
        new_c.append(tuple(crow))
    return tuple(new_b), tuple(new_c)


def mutate(q: ExtendedQuiver, k: int) -> ExtendedQuiver:
    """Mutate ``q`` at mutable vertex ``k`` (1-based) and return the new quiver."""
    idx = _check_vertex(q, k)
    b, c = _mutate_rows(q.b, q.c, idx)
    return ExtendedQuiver(b, c)


def mutate_matrix(q: QuiverMatrix, k: int) -> QuiverMatrix:
    """Mutation of a quiver without frozen part."""
    idx = _check_vertex(q, k)
    b, _ = _mutate_rows(q.b, tuple(() for _ in q.b), idx)
    return QuiverMatrix(b)


def reduce_check(w: Sequence[int]) -> bool:
    """True when no two consecutive entries of ``w`` coincide."""
    return all(a != b for a, b in zip(w, w[1:]))


@dataclass(frozen=True)
class MutationSequence:
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        if not reduce_check(entries):
            raise NonReducedSequenceError(f"mutation sequence {list(entries)} is not reduced")
        object.__setattr__(self, "entries", entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other) -> MutationSequence:
        return MutationSequence(self.entries + tuple(other))

    def __getitem__(self, item):
        return self.entries[item]


def mutate_seq(q, w: Iterable[int]):
    """Apply the mutations of ``w`` from left to right.

    Works for both :class:`ExtendedQuiver` and :class:`QuiverMatrix`.
    Raises :class:`NonReducedSequenceError` for sequences with immediate repeats.
    """
    w = tuple(w)
    if not reduce_check(w):
        raise NonReducedSequenceError(f"mutation sequence {list(w)} is not reduced")
    step = mutate if isinstance(q, ExtendedQuiver) else mutate_matrix
    for k in w:
        q = step(q, k)
    return q


def trajectory(q: ExtendedQuiver, w: Iterable[int]) -> list[ExtendedQuiver]:
    """All intermediate quivers ``[q, mu_w1(q), mu_w1w2(q), ...]``."""
    w = tuple(w)
    if not reduce_check(w):
        raise NonReducedSequenceError(f"mutation sequence {list(w)} is not reduced")
    states = [q]
    for k in w:
        states.append(mutate(states[-1], k))
    return states


def frame(q: QuiverMatrix) -> ExtendedQuiver:
    """Attach one frozen vertex per mutable vertex with a single arrow ``i -> i'``."""
    n = q.n
    return ExtendedQuiver(q.b, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def coframe(q: QuiverMatrix) -> ExtendedQuiver:
    n = q.n
    return ExtendedQuiver(q.b, tuple(tuple(-int(i == j) for j in range(n)) for i in range(n)))


def c_vector(q: ExtendedQuiver, v: int) -> tuple[int, ...]:
    return q.c[_check_vertex(q, v)]


def sign_of(row: Sequence[int]) -> int | None:
    """+1, -1 or 0 for a sign-coherent row; ``None`` when signs are mixed."""
    pos = any(x > 0 for x in row)
    neg = any(x < 0 for x in row)
    if pos and neg:
        return None
    return 1 if pos else -1 if neg else 0


_COLOR_OF_SIGN = {1: VertexColor.GREEN, -1: VertexColor.RED, 0: VertexColor.BLUE}


def vertex_color(q: ExtendedQuiver, v: int) -> VertexColor:
    row = c_vector(q, v)
    s = sign_of(row)
    if s is None:
        raise MixedSignsError(v, row)
    return _COLOR_OF_SIGN[s]


def colors(q: ExtendedQuiver) -> dict[int, VertexColor]:
    return {v: vertex_color(q, v) for v in q.vertices}


def red_count(q: ExtendedQuiver) -> int:
    return sum(1 for row in q.c if sign_of(row) == -1)


def full_subquiver(q: QuiverMatrix, keep: Iterable[int]) -> QuiverMatrix:
    """Principal submatrix on ``keep`` (vertices renumbered in increasing order)."""
    idx = sorted(set(keep))
    for v in idx:
        if not 1 <= v <= q.n:
            raise QuiverError(f"vertex {v} out of range 1..{q.n}")
    return QuiverMatrix(tuple(tuple(q.b[i - 1][j - 1] for j in idx) for i in idx))


def disjoint_union(*quivers: QuiverMatrix) -> QuiverMatrix:
    n = sum(q.n for q in quivers)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for q in quivers:
        for i in range(q.n):
            for j in range(q.n):
                rows[off + i][off + j] = q.b[i][j]
        off += q.n
    return QuiverMatrix(rows)


def quiver_from_arrows(n: int, arrows: Iterable[tuple[int, int, int]]) -> QuiverMatrix:
    """Build a quiver from ``(source, target, multiplicity)`` triples (1-based)."""
    rows = [[0] * n for _ in range(n)]
    for s, t, mult in arrows:
        if s == t:
            raise QuiverError("loops are not allowed")
        rows[s - 1][t - 1] += mult
        rows[t - 1][s - 1] -= mult
    return QuiverMatrix(rows)
