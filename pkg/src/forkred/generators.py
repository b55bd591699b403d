"""Seeded random quivers for tests and the ``gen`` command."""

from __future__ import annotations

import random

from .errors import QuiverError
from .quiver import ExtendedQuiver, QuiverMatrix, coframe, frame, mutate, mutate_matrix
from .structure import detect_fork, sources_and_sinks


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _check_range(lo: int, hi: int, minimum: int) -> None:
    if lo > hi:
        raise QuiverError(f"empty weight range {lo}..{hi}")
    if lo < minimum:
        raise QuiverError(f"weights must be at least {minimum}, got {lo}..{hi}")


def random_abundant_acyclic(n: int, lo: int = 2, hi: int = 5, seed=0) -> QuiverMatrix:
    """Abundant acyclic quiver whose acyclic ordering is a random permutation."""
    _check_range(lo, hi, 2)
    rng = _rng(seed)
    order = list(range(n))
    rng.shuffle(order)
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            w = rng.randint(lo, hi)
            i, j = order[a], order[b]
            rows[i][j] = w
            rows[j][i] = -w
    return QuiverMatrix(rows)


def random_cyclic_rank3(lo: int = 2, hi: int = 5, seed=0) -> QuiverMatrix:
    """Oriented 3-cycle with random weights (not necessarily mutation-cyclic)."""
    _check_range(lo, hi, 1)
    rng = _rng(seed)
    x, y, z = (rng.randint(lo, hi) for _ in range(3))
    return QuiverMatrix(((0, x, -z), (-x, 0, y), (z, -y, 0)))


def random_fork(n: int, lo: int = 2, hi: int = 5, seed=0, extra: int = 0) -> QuiverMatrix:
    """Fork obtained from a random abundant acyclic quiver.

    One mutation at a vertex that is neither source nor sink makes a fork;
    ``extra`` further mutations away from the current point of return keep it
    a fork while growing the weights.
    """
    if n < 3:
        raise QuiverError("forks need at least three vertices")
    rng = _rng(seed)
    q = random_abundant_acyclic(n, lo, hi, rng)
    sources, sinks = sources_and_sinks(q)
    k = rng.choice([v for v in q.vertices if v not in sources and v not in sinks])
    q = mutate_matrix(q, k)
    ret = k
    for _ in range(extra):
        k = rng.choice([v for v in q.vertices if v != ret])
        q = mutate_matrix(q, k)
        ret = k
    return q


def random_reduced_sequence(vertices, length: int, seed=0, first: int | None = None) -> tuple[int, ...]:
    rng = _rng(seed)
    verts = list(vertices)
    out: list[int] = []
    if first is not None and length > 0:
        out.append(first)
    while len(out) < length:
        choices = [v for v in verts if not out or v != out[-1]]
        out.append(rng.choice(choices))
    return tuple(out)


def random_sign_coherent_fork(n: int, lo: int = 2, hi: int = 5, seed=0, max_steps: int = 4, coframed: bool = False) -> tuple[ExtendedQuiver, int]:
    """An ice quiver mutation-equivalent to a (co)framing whose mutable part is a fork.

    Starts from the (co)framing of a random abundant acyclic quiver and mutates
    at a non-source, non-sink vertex, then at up to ``max_steps - 1`` further
    vertices away from the point of return.  Returns ``(quiver, point_of_return)``.
    """
    rng = _rng(seed)
    base = random_abundant_acyclic(n, lo, hi, rng)
    q = coframe(base) if coframed else frame(base)
    sources, sinks = sources_and_sinks(base)
    k = rng.choice([v for v in base.vertices if v not in sources and v not in sinks])
    q = mutate(q, k)
    ret = k
    for _ in range(rng.randint(0, max(0, max_steps - 1))):
        k = rng.choice([v for v in q.vertices if v != ret])
        q = mutate(q, k)
        ret = k
    return q, ret


def framed_fork_corpus(count: int, sizes=(3, 4, 5, 6), lo: int = 2, hi: int = 5, seed: int = 0, max_steps: int = 4):
    """Deterministic list of ``(quiver, point_of_return)`` strictly sign-coherent forks.

    Alternates between framings of forks themselves (all vertices green) and
    fork-shaped quivers further along the mutation class of a framing, with an
    occasional coframing so red-heavy starting colors show up too.
    """
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        n = sizes[idx % len(sizes)]
        flavour = idx % 4
        if flavour == 0:
            f = random_fork(n, lo, hi, rng)
            cert = detect_fork(f)
            out.append((frame(f), cert.r))
        else:
            out.append(random_sign_coherent_fork(n, lo, hi, rng, max_steps=max_steps, coframed=flavour == 3))
    return out
