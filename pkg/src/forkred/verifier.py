"""
Checks on the signs of c-vectors along mutation trajectories.

Notation: for an extended quiver ``P`` and a distinguished vertex ``r`` (the
last mutation), the four sign conditions are

1. ``every-red-or-green``: every c-vector is nonzero and sign-coherent;
2. ``same-or-dominant``: ``b_rj * c_j >= 0`` implies ``c_j`` has the sign of
   ``c_r`` or dominates it entrywise in absolute value;
3. ``opposite``: ``b_rj * c_j <= 0`` implies ``c_j`` and ``c_r`` have opposite
   signs;
4. ``same-sign``: for ``i, j != r``, ``b_ij * c_j >= 0`` implies ``c_i`` and
   ``c_j`` share a sign.

Products like ``b_rj * c_j >= 0`` are taken entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import NonReducedSequenceError, NotRank3CyclicError, QuiverError
from .exploration import explore
from .quiver import (
    ExtendedQuiver,
    frame,
    mutate,
    mutate_matrix,
    red_count,
    reduce_check,
    sign_of,
)
from .structure import (
    fork_certificate,
    is_abundant,
    is_acyclic,
    is_mutation_cyclic_rank3,
    sources_and_sinks,
)

BULLETS = ("every-red-or-green", "same-or-dominant", "opposite", "same-sign")


def _ge0(b: int, row: Sequence[int]) -> bool:
    return all(b * x >= 0 for x in row)


def _le0(b: int, row: Sequence[int]) -> bool:
    return all(b * x <= 0 for x in row)


def dominates(ci: Sequence[int], cj: Sequence[int]) -> bool:
    """Entrywise ``|ci| >= |cj|``; equals ``sgn(ci) ci >= sgn(cj) cj`` for coherent rows."""
    return all(abs(x) >= abs(y) for x, y in zip(ci, cj))


@dataclass(frozen=True)
class Witness:
    bullet: str
    i: int
    j: int | None
    detail: str

    def to_json(self) -> dict:
        return {"bullet": self.bullet, "i": self.i, "j": self.j, "detail": self.detail}


def sign_conditions(q: ExtendedQuiver, r: int, require_nonzero: bool = False) -> dict[str, list[Witness]]:
    """Failures of the four sign conditions at ``q`` relative to vertex ``r``.

    ``require_nonzero`` adds the side condition ``b_rj != 0`` to the premise of
    condition 2.
    """
    n = q.n
    b, c = q.b, q.c
    sg = [sign_of(row) for row in c]
    ri = r - 1
    fails: dict[str, list[Witness]] = {name: [] for name in BULLETS}
    for v in range(n):
        if sg[v] is None or sg[v] == 0:
            fails[BULLETS[0]].append(Witness(BULLETS[0], v + 1, None, f"c_{v + 1} = {list(c[v])}"))
    for j in range(n):
        if j == ri:
            continue
        brj = b[ri][j]
        if _ge0(brj, c[j]) and (brj != 0 or not require_nonzero):
            ok = (sg[j] is not None and sg[j] == sg[ri] and sg[j] != 0) or dominates(c[j], c[ri])
            if not ok:
                fails[BULLETS[1]].append(
                    Witness(BULLETS[1], r, j + 1, f"b_rj={brj}, c_j={list(c[j])}, c_r={list(c[ri])}")
                )
        if _le0(brj, c[j]):
            ok = sg[j] is not None and sg[ri] is not None and sg[j] == -sg[ri] and sg[j] != 0
            if not ok:
                fails[BULLETS[2]].append(
                    Witness(BULLETS[2], r, j + 1, f"b_rj={brj}, c_j={list(c[j])}, c_r={list(c[ri])}")
                )
    for i in range(n):
        if i == ri:
            continue
        for j in range(n):
            if j == ri or j == i:
                continue
            if _ge0(b[i][j], c[j]):
                ok = sg[i] is not None and sg[i] == sg[j]
                if not ok:
                    fails[BULLETS[3]].append(
                        Witness(BULLETS[3], i + 1, j + 1, f"b_ij={b[i][j]}, c_i={list(c[i])}, c_j={list(c[j])}")
                    )
    return fails


@dataclass(frozen=True)
class BaseConditionReport:
    """Sign conditions on ``mu_v(Q)``; condition 2 is reported under both readings."""

    vertex: int
    bullets: tuple[bool, bool, bool, bool]
    witnesses: tuple[Witness, ...]
    bullet2_with_nonzero: bool
    bullet2_without_nonzero: bool

    @property
    def ok(self) -> bool:
        return all(self.bullets)

    @property
    def readings_diverge(self) -> bool:
        return self.bullet2_with_nonzero != self.bullet2_without_nonzero

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "bullets": dict(zip(BULLETS, self.bullets)),
            "bullet2_with_nonzero": self.bullet2_with_nonzero,
            "bullet2_without_nonzero": self.bullet2_without_nonzero,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def check_base_conditions(q: ExtendedQuiver, v: int, require_nonzero: bool = True) -> BaseConditionReport:
    """Evaluate the four sign conditions on ``mu_v(q)`` relative to ``v``.

    ``require_nonzero`` selects which reading of condition 2 feeds ``bullets``;
    the other reading is still evaluated so disagreements can be reported.
    """
    p = mutate(q, v)
    fails = sign_conditions(p, v, require_nonzero=require_nonzero)
    other = not sign_conditions(p, v, require_nonzero=not require_nonzero)[BULLETS[1]]
    bullets = tuple(not fails[name] for name in BULLETS)
    with_nz, without_nz = (bullets[1], other) if require_nonzero else (other, bullets[1])
    witnesses = tuple(w for name in BULLETS for w in fails[name])
    return BaseConditionReport(v, bullets, witnesses, with_nz, without_nz)


@dataclass
class TrajectoryRecord:
    step: int
    r: int
    colors: dict[int, str]
    bullets: dict[str, bool]
    por: bool | None = None
    dominance: bool | None = None
    violations: list[Witness] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "r": self.r,
            "colors": {str(k): v for k, v in self.colors.items()},
            "bullets": self.bullets,
            "por": self.por,
            "dominance": self.dominance,
            "violations": [w.to_json() for w in self.violations],
        }


@dataclass
class TrajectoryReport:
    vertex: int
    sequence: tuple[int, ...]
    mode: str
    records: list[TrajectoryRecord] = field(default_factory=list)

    @property
    def violations(self) -> list[Witness]:
        return [w for rec in self.records for w in rec.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "sequence": list(self.sequence),
            "mode": self.mode,
            "ok": self.ok,
            "records": [r.to_json() for r in self.records],
        }


def _color_name(row) -> str:
    s = sign_of(row)
    return {1: "green", -1: "red", 0: "blue", None: "mixed"}[s]


MODES = ("fork", "acyclic", "rank3")


def trajectory_precondition(q: ExtendedQuiver, v: int, mode: str) -> str | None:
    """Reason why ``(q, v)`` is outside ``mode``, or ``None`` when it qualifies."""
    if mode not in MODES:
        raise QuiverError(f"unknown mode {mode!r}; expected one of {MODES}")
    p = mutate(q, v).mutable
    if mode == "fork":
        if fork_certificate(p, v) is None:
            return f"mutable part of mu_{v}(Q) is not a fork with point of return {v}"
    elif mode == "acyclic":
        if fork_certificate(p, v) is None:
            sources, sinks = sources_and_sinks(p)
            if not (is_acyclic(p) and is_abundant(p) and (v in sources or v in sinks)):
                return f"mu_{v}(Q) is neither a fork returning to {v} nor abundant acyclic with {v} a source or sink"
    else:
        if p.n != 3 or not is_mutation_cyclic_rank3(p):
            return f"mutable part of mu_{v}(Q) is not a mutation-cyclic quiver on three vertices"
    base = check_base_conditions(q, v, require_nonzero=False)
    if not base.ok:
        return f"sign conditions fail on mu_{v}(Q): {[w.detail for w in base.witnesses][:3]}"
    return None


def verify_trajectory(q: ExtendedQuiver, v: int, w: Sequence[int], mode: str = "fork") -> TrajectoryReport:
    """Check the four sign conditions after every prefix of ``w``.

    ``w`` must be reduced and start with ``v``.  In fork mode the condition on
    the point of return (``b_ir c_r >= 0`` forces opposite signs and
    domination by ``c_i``) is checked as well.  After each step past the first,
    the entrywise domination ``|c_i| >= |c_k|`` is checked for
    every ``i`` outside ``{k, r}`` with ``b_ik c_k >= 0`` before the step.
    Violations are recorded, not raised.
    """
    w = tuple(w)
    if not w or w[0] != v:
        raise QuiverError(f"sequence must start with {v}")
    if not reduce_check(w):
        raise NonReducedSequenceError(f"mutation sequence {list(w)} is not reduced")
    reason = trajectory_precondition(q, v, mode)
    if reason is not None:
        raise QuiverError(reason)
    report = TrajectoryReport(v, w, mode)
    prev = q
    prev_r = None
    for step, k in enumerate(w, 1):
        cur = mutate(prev, k)
        fails = sign_conditions(cur, k)
        viol = [x for name in BULLETS for x in fails[name]]
        rec = TrajectoryRecord(
            step,
            k,
            {i + 1: _color_name(row) for i, row in enumerate(cur.c)},
            {name: not fails[name] for name in BULLETS},
        )
        if mode == "fork":
            rec.por = True
            ki = k - 1
            for i in range(cur.n):
                if i == ki:
                    continue
                if _ge0(cur.b[i][ki], cur.c[ki]):
                    si, sr = sign_of(cur.c[i]), sign_of(cur.c[ki])
                    if not (si is not None and sr is not None and si == -sr != 0 and dominates(cur.c[i], cur.c[ki])):
                        rec.por = False
                        viol.append(Witness("point-of-return", i + 1, k, f"c_i={list(cur.c[i])}, c_r={list(cur.c[ki])}"))
        if prev_r is not None:
            rec.dominance = True
            ki = k - 1
            for i in range(cur.n):
                if i + 1 in (k, prev_r):
                    continue
                if _ge0(prev.b[i][ki], prev.c[ki]) and not dominates(cur.c[i], cur.c[ki]):
                    rec.dominance = False
                    viol.append(Witness("dominance", i + 1, k, f"c_i={list(cur.c[i])}, c_k={list(cur.c[ki])}"))
        rec.violations = viol
        report.records.append(rec)
        prev, prev_r = cur, k
    return report


# -- bounded exploration verdicts ----------------------------------------------


@dataclass(frozen=True)
class SignCoherenceVerdict:
    """``strict``, ``uniform``, ``trivial``, ``violated`` or ``undecided``."""

    kind: str
    depth: int
    nodes: int
    edges: int
    witness: tuple[int, ...] | None = None
    exhausted: bool = False

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "depth": self.depth, "nodes": self.nodes, "edges": self.edges, "exhausted": self.exhausted}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


def bfs_sign_coherence(
    q: ExtendedQuiver,
    depth: int,
    snapshot=None,
    resume: bool = False,
    max_nodes: int | None = None,
) -> SignCoherenceVerdict:
    """Explore the labelled class of ``q`` up to ``depth`` and classify its c-vectors."""
    saw_zero = [False]
    all_zero = [True]

    def visit(p: ExtendedQuiver, seq):
        for row in p.c:
            s = sign_of(row)
            if s is None:
                return "mixed"
            if s == 0:
                saw_zero[0] = True
            else:
                all_zero[0] = False
        return None

    res = explore(q, depth, visit=visit, snapshot=snapshot, resume=resume, max_nodes=max_nodes)
    common = dict(depth=res.depth, nodes=res.node_count, edges=res.edges, exhausted=res.exhausted)
    if res.hit is not None:
        return SignCoherenceVerdict("violated", witness=res.hit_sequence, **common)
    if res.truncated:
        return SignCoherenceVerdict("undecided", **common)
    if q.n > 0 and all_zero[0]:
        return SignCoherenceVerdict("trivial", **common)
    return SignCoherenceVerdict("uniform" if saw_zero[0] else "strict", **common)


@dataclass(frozen=True)
class NoAllRedVerdict:
    """``no-all-red`` (none within ``depth``) or ``all-red`` with a witness sequence."""

    kind: str
    depth: int
    nodes: int
    witness: tuple[int, ...] | None = None
    obstruction_checks: int = 0
    violations: tuple[tuple[tuple[int, ...], Witness], ...] = ()

    def to_json(self) -> dict:
        return {
            "verdict": self.kind,
            "depth": self.depth,
            "nodes": self.nodes,
            "witness": None if self.witness is None else list(self.witness),
            "obstruction_checks": self.obstruction_checks,
            "violations": [{"sequence": list(s), **w.to_json()} for s, w in self.violations],
        }


def check_no_all_red(q, depth: int, check_precondition: bool = True) -> NoAllRedVerdict:
    """Search the framing of a rank-3 mutation-cyclic quiver for an all-red state.

    At every node the four sign conditions are checked relative to the last
    mutation ``r``, together with the obstruction: when the two other vertices
    satisfy ``b_ri c_i >= 0`` and ``b_rj c_j <= 0``, ``c_r`` and ``c_j`` have
    opposite signs (so the node is not all red).  Finding an all-red state
    would contradict the theory and points at a bug.
    """
    mat = q.mutable if isinstance(q, ExtendedQuiver) else q
    if check_precondition and (mat.n != 3 or not is_mutation_cyclic_rank3(mat)):
        raise NotRank3CyclicError("input is not a mutation-cyclic quiver on three vertices")
    root = frame(mat)
    checks = [0]
    violations: list = []

    def visit(p: ExtendedQuiver, seq):
        if red_count(p) == p.n:
            return "all-red"
        if not seq:
            return None
        r = seq[-1]
        fails = sign_conditions(p, r)
        for name in BULLETS:
            violations.extend((seq, x) for x in fails[name])
        ri = r - 1
        others = [x for x in range(p.n) if x != ri]
        for i in others:
            for j in others:
                if i == j:
                    continue
                if _ge0(p.b[ri][i], p.c[i]) and _le0(p.b[ri][j], p.c[j]):
                    checks[0] += 1
                    sj, sr = sign_of(p.c[j]), sign_of(p.c[ri])
                    if not (sj is not None and sr is not None and sj == -sr != 0):
                        violations.append((seq, Witness("obstruction", r, j + 1, f"c_r={list(p.c[ri])}, c_j={list(p.c[j])}")))
        return None

    res = explore(root, depth, visit=visit)
    if res.hit is not None:
        return NoAllRedVerdict("all-red", res.depth, res.node_count, res.hit_sequence, checks[0], tuple(violations))
    return NoAllRedVerdict("no-all-red", res.depth, res.node_count, None, checks[0], tuple(violations))


def max_red_search(q: ExtendedQuiver, depth: int, max_nodes: int | None = None) -> tuple[int, tuple[int, ...], int]:
    """Largest red count seen within ``depth``: ``(count, witness, nodes)``."""
    best = [-1, ()]

    def visit(p, seq):
        k = red_count(p)
        if k > best[0]:
            best[0], best[1] = k, seq
        return None

    res = explore(q, depth, visit=visit, max_nodes=max_nodes)
    return best[0], best[1], res.node_count


def all_red_states(q: ExtendedQuiver, depth: int) -> list[tuple[int, ...]]:
    """Shortest sequences reaching each all-red state within ``depth``."""
    hits: list[tuple[int, ...]] = []

    def visit(p, seq):
        if p.n and red_count(p) == p.n:
            hits.append(seq)
        return None

    explore(q, depth, visit=visit)
    return hits


def is_source_sequence(q, w: Sequence[int]) -> bool:
    """True when every mutation in ``w`` happens at a source of the current quiver."""
    mat = q.mutable if isinstance(q, ExtendedQuiver) else q
    for k in w:
        sources, _ = sources_and_sinks(mat)
        if k not in sources:
            return False
        mat = mutate_matrix(mat, k)
    return True
