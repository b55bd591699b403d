"""Graphviz DOT rendering with one labelled edge per vertex pair."""

from __future__ import annotations

from .quiver import ExtendedQuiver, QuiverMatrix, sign_of

_FILL = {1: "palegreen", -1: "lightcoral", 0: "lightblue", None: "gray"}


def to_dot(q, name: str = "quiver") -> str:
    if isinstance(q, QuiverMatrix):
        q = ExtendedQuiver(q.b, tuple(() for _ in q.b))
    lines = [f"digraph {name} {{"]
    for i in range(q.n):
        fill = _FILL[sign_of(q.c[i])] if q.m else "white"
        lines.append(f'  v{i + 1} [label="{i + 1}", shape=circle, style=filled, fillcolor="{fill}"];')
    for j in range(q.m):
        lines.append(f'  f{j + 1} [label="{j + 1}\'", shape=square];')
    for i in range(q.n):
        for j in range(q.n):
            if q.b[i][j] > 0:
                lines.append(f'  v{i + 1} -> v{j + 1} [label="{q.b[i][j]}"];')
    for i in range(q.n):
        for j in range(q.m):
            x = q.c[i][j]
            if x > 0:
                lines.append(f'  v{i + 1} -> f{j + 1} [label="{x}"];')
            elif x < 0:
                lines.append(f'  f{j + 1} -> v{i + 1} [label="{-x}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
