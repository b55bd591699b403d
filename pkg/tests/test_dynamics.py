from __future__ import annotations

import random

import pytest

from cases import acyclic_ice, dynamics_corpus, fork_ice
from conftest import FORK_EXAMPLE
from forkred.errors import QuiverError
from forkred.dynamics import (
    predict_colors_single,
    predict_colors_source_seq,
    predict_order_after_return_mutation,
    predict_order_fork_single,
    predict_order_fork_source_seq,
    predict_order_source_cycle,
    source_sequence,
)
from forkred.quiver import ExtendedQuiver, VertexColor, coframe, colors, frame, mutate, mutate_matrix, mutate_seq
from forkred.structure import acyclic_ordering, detect_fork, ordering_without

CORPUS = dynamics_corpus(120, seed=11)


def test_source_cycle_shapes():
    order = (4, 1, 3, 2)
    assert predict_order_source_cycle(order, 4).ordering == order
    assert predict_order_source_cycle(order, 1).ordering == (1, 3, 2, 4)
    assert predict_order_source_cycle(order, 2).ordering == (3, 2, 4, 1)


def test_fork_example_single():
    # r = 1, i = 2 (i -> r), j = 3 (r -> j)
    pred = predict_order_fork_single(FORK_EXAMPLE, 3)
    assert pred.ordering == (1, 2) and pred.check(mutate_matrix(FORK_EXAMPLE, 3))
    pred = predict_order_fork_single(FORK_EXAMPLE, 2)
    assert pred.ordering == (3, 1) and pred.check(mutate_matrix(FORK_EXAMPLE, 2))
    with pytest.raises(QuiverError):
        predict_order_fork_single(FORK_EXAMPLE, 1)


@pytest.mark.parametrize("kind,q,r", CORPUS)
def test_ordering_predictions(kind, q, r):
    mat = q.mutable
    if kind == "acyclic":
        order = acyclic_ordering(mat)
        for j in range(len(order) + 1):
            assert predict_order_source_cycle(order, j).check(mutate_seq(mat, order[:j]))
        return
    order = detect_fork(mat).ordering
    for v in order:
        assert predict_order_fork_single(mat, v, r).check(mutate_matrix(mat, v))
    for j in range(1, len(order) + 1):
        fj = mutate_seq(mat, order[:j])
        for pred in predict_order_fork_source_seq(mat, j, r):
            assert pred.check(fj)
        fr = mutate_matrix(fj, r)
        for pred in predict_order_after_return_mutation(mat, j, r):
            assert pred.check(fr)


@pytest.mark.parametrize("kind,q,r", CORPUS)
def test_color_predictions(kind, q, r):
    for v in q.vertices:
        if v == r:
            continue
        assert predict_colors_single(q, v, r).mismatches(mutate(q, v)) == {}
    order = source_sequence(q, r=r)
    cols = colors(q)
    for j in range(1, len(order) + 1):
        if kind == "acyclic" and cols[order[j - 1]] is not VertexColor.RED:
            with pytest.raises(QuiverError):
                predict_colors_source_seq(q, j)
            continue
        pred = predict_colors_source_seq(q, j, r)
        assert pred.mismatches(mutate_seq(q, order[:j])) == {}


def test_blue_vertex_changes_nothing():
    q = ExtendedQuiver(((0, 2, 3), (-2, 0, 4), (-3, -4, 0)), ((0, 0), (1, 0), (0, -1)))
    pred = predict_colors_single(q, 1)
    assert pred.constrained() == colors(q)
    assert pred.check(mutate(q, 1))


def test_green_source_flips_alone():
    q = frame(acyclic_ice(random.Random(3), 4).mutable)
    src = acyclic_ordering(q.mutable)[0]
    pred = predict_colors_single(q, src)
    assert pred.colors[src] is VertexColor.RED
    assert all(pred.colors[x] is VertexColor.GREEN for x in q.vertices if x != src)


def test_coframed_almost_reddening():
    rng = random.Random(5)
    for _ in range(20):
        q = coframe(acyclic_ice(rng, rng.randint(2, 6)).mutable)
        n = q.n
        pred = predict_colors_source_seq(q, n)
        after = mutate_seq(q, acyclic_ordering(q.mutable))
        assert pred.check(after)
        assert sum(1 for c in colors(after).values() if c is VertexColor.RED) == n - 1


@pytest.mark.parametrize("seed", range(40))
def test_green_return_stays_green_along_source_prefixes(seed):
    rng = random.Random(seed)
    q, r = fork_ice(rng, rng.randint(3, 7))
    if colors(q)[r] is not VertexColor.GREEN:
        q = frame(q.mutable)
    cert = detect_fork(q.mutable)
    assert cert.r == r
    order = cert.ordering
    for j in range(1, len(order) + 1):
        assert colors(mutate_seq(q, order[:j]))[r] is VertexColor.GREEN


@pytest.mark.parametrize("a", range(2, 7))
@pytest.mark.parametrize("b", range(1, 6))
@pytest.mark.parametrize("c", range(0, 6))
def test_frozen_triangle_arithmetic(a, b, c):
    # v_i -> v_k (a arrows), w -> v_i (b), w -> v_k (c), w frozen
    q = ExtendedQuiver(((0, a), (-a, 0)), ((-b,), (-c,)))
    got = -mutate(q, 1).c[1][0]
    assert got == c + a * b
    assert got > b


def test_ordering_without_labels():
    assert ordering_without(FORK_EXAMPLE, [1]) == (3, 2)
