"""Seeded corpora shared by the dynamics and acceptance tests."""

from __future__ import annotations

import random

from forkred.generators import random_abundant_acyclic, random_fork, random_sign_coherent_fork
from forkred.quiver import ExtendedQuiver, coframe, frame, mutate
from forkred.structure import acyclic_ordering, detect_fork


def acyclic_ice(rng: random.Random, n: int, hi: int = 6) -> ExtendedQuiver:
    """Framed or coframed abundant acyclic quiver pushed along a few source mutations.

    Source mutations keep the mutable part abundant acyclic and mix the colors.
    """
    base = random_abundant_acyclic(n, 2, hi, rng)
    q = frame(base) if rng.random() < 0.5 else coframe(base)
    for _ in range(rng.randint(0, n + 1)):
        q = mutate(q, acyclic_ordering(q.mutable)[0])
    return q


def fork_ice(rng: random.Random, n: int, hi: int = 6) -> tuple[ExtendedQuiver, int]:
    if rng.random() < 0.25:
        f = random_fork(n, 2, hi, rng)
        q = frame(f) if rng.random() < 0.5 else coframe(f)
        return q, detect_fork(f).r
    return random_sign_coherent_fork(n, 2, hi, rng, max_steps=3, coframed=rng.random() < 0.3)


def dynamics_corpus(count: int, seed: int = 0, max_n: int = 8, hi: int = 6):
    """``(kind, quiver, point_of_return)`` with kind ``acyclic`` or ``fork``."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        n = rng.randint(3, max_n)
        if idx % 2:
            out.append(("acyclic", acyclic_ice(rng, n, hi), None))
        else:
            q, r = fork_ice(rng, n, hi)
            out.append(("fork", q, r))
    return out
