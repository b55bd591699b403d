from __future__ import annotations

import json

import pytest

from conftest import A2, FORK_EXAMPLE, MARKOV
from forkred.errors import QuiverError
from forkred.exploration import explore, load_snapshot, search
from forkred.quiver import coframe, frame, mutate, mutate_seq, red_count


def naive_levels(root, depth):
    """Plain BFS over sequences, keeping every state with its first depth."""
    seen = {root.key(): 0}
    frontier = [root]
    for d in range(1, depth + 1):
        nxt = []
        for q in frontier:
            for k in q.vertices:
                p = mutate(q, k)
                if p.key() not in seen:
                    seen[p.key()] = d
                    nxt.append(p)
        frontier = nxt
    return seen


@pytest.mark.parametrize("base,depth", [(A2, 6), (MARKOV, 5), (FORK_EXAMPLE, 4)])
def test_matches_naive_bfs(base, depth):
    root = frame(base)
    res = explore(root, depth)
    seen = naive_levels(root, depth)
    assert set(res.nodes) == set(seen)
    for key, seq in res.nodes.items():
        assert len(seq) == seen[key]
        assert mutate_seq(root, seq).key() == key


def test_a2_class_is_finite():
    res = explore(frame(A2), 20)
    assert res.exhausted
    assert res.node_count == 10  # pentagon, two labellings per cluster


def test_edge_counting():
    res = explore(frame(MARKOV), 1)
    assert res.edges == 3 and res.node_count == 4
    res = explore(frame(A2), 20)
    # exchange graph: each node has two neighbours
    assert res.edges == res.node_count


def test_visit_stops_search():
    res = explore(frame(A2), 10, visit=lambda q, seq: "hit" if red_count(q) == 2 else None)
    assert res.hit == "hit" and len(res.hit_sequence) == 2
    assert search(frame(A2), 10, lambda q: red_count(q) == 2) == res.hit_sequence
    assert search(frame(MARKOV), 4, lambda q: red_count(q) == 3) is None


def test_max_nodes_truncates():
    res = explore(frame(MARKOV), 10, max_nodes=30)
    assert res.truncated and res.node_count == 30


def test_negative_depth():
    with pytest.raises(QuiverError):
        explore(frame(A2), -1)


@pytest.mark.parametrize("base", [MARKOV, FORK_EXAMPLE])
def test_resume_equals_fresh(tmp_path, base):
    root = frame(base)
    snap = tmp_path / "snap.jsonl"
    explore(root, 3, snapshot=snap)
    resumed = explore(root, 6, snapshot=snap, resume=True)
    fresh = explore(root, 6)
    assert resumed.nodes == fresh.nodes
    assert resumed.edges == fresh.edges
    # snapshot now covers depth 6 and can be resumed again
    again = explore(root, 7, snapshot=snap, resume=True)
    assert again.nodes == explore(root, 7).nodes


def test_resume_revisits_saved_nodes(tmp_path):
    root = frame(MARKOV)
    snap = tmp_path / "s.jsonl"
    explore(root, 2, snapshot=snap)
    seen = []
    explore(root, 2, snapshot=snap, resume=True, visit=lambda q, s: seen.append(s))
    assert len(seen) == explore(root, 2).node_count


def test_partial_level_is_dropped(tmp_path):
    root = frame(MARKOV)
    snap = tmp_path / "s.jsonl"
    explore(root, 2, snapshot=snap)
    with open(snap, "a") as fh:
        fh.write(json.dumps({"type": "node", "seq": [1, 2, 3], "depth": 3}) + "\n")
    _, nodes, done, _ = load_snapshot(snap)
    assert done == 2 and all(d <= 2 for _, d in nodes)
    assert explore(root, 4, snapshot=snap, resume=True).nodes == explore(root, 4).nodes


def test_resume_rejects_other_root(tmp_path):
    snap = tmp_path / "s.jsonl"
    explore(frame(MARKOV), 2, snapshot=snap)
    with pytest.raises(QuiverError):
        explore(coframe(MARKOV), 3, snapshot=snap, resume=True)
    with pytest.raises(QuiverError):
        explore(frame(MARKOV), 3, resume=True)


def test_snapshot_lines_are_json(tmp_path):
    snap = tmp_path / "s.jsonl"
    explore(frame(A2), 3, snapshot=snap)
    kinds = [json.loads(line)["type"] for line in snap.read_text().splitlines()]
    assert kinds[0] == "header" and kinds[-1] == "level"
