"""
Reading and writing quivers.

JSON: ``{"n": 2, "m": 2, "b": [[0, 1], [-1, 0]], "c": [[1, 0], [0, 1]]}``.
Entries beyond the 53-bit safe integer range are written as decimal strings;
either form is accepted on input.

Text: first line ``n m``, then n rows of ``n + m`` integers (``[B|C]``).
Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError, QuiverError
from .quiver import ExtendedQuiver, QuiverMatrix

SAFE_INT = 2**53 - 1


def _out(x: int):
    return x if -SAFE_INT <= x <= SAFE_INT else str(x)


def _in(x, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and re.fullmatch(r"\s*[+-]?\d+\s*", x):
        return int(x)
    raise ParseError(f"{where}: expected an integer or decimal string, got {x!r}")


def extended_to_json(q: ExtendedQuiver) -> dict:
    return {
        "n": q.n,
        "m": q.m,
        "b": [[_out(x) for x in row] for row in q.b],
        "c": [[_out(x) for x in row] for row in q.c],
    }


def extended_from_json(obj) -> ExtendedQuiver:
    if not isinstance(obj, dict):
        raise ParseError("quiver JSON must be an object")
    try:
        n = _in(obj["n"], "n")
        b = obj["b"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    m = _in(obj.get("m", 0), "m")
    c = obj.get("c")
    if c is None:
        c = [[] for _ in range(n)] if m == 0 else None
        if c is None:
            raise ParseError("missing field 'c'")
    if len(b) != n or len(c) != n:
        raise ParseError(f"expected {n} rows in b and c, got {len(b)} and {len(c)}")
    rows_b = []
    rows_c = []
    for i in range(n):
        if len(b[i]) != n:
            raise ParseError(f"b row {i + 1}: expected {n} entries, got {len(b[i])}")
        if len(c[i]) != m:
            raise ParseError(f"c row {i + 1}: expected {m} entries, got {len(c[i])}")
        rows_b.append([_in(x, f"b[{i + 1}][{j + 1}]") for j, x in enumerate(b[i])])
        rows_c.append([_in(x, f"c[{i + 1}][{j + 1}]") for j, x in enumerate(c[i])])
    try:
        return ExtendedQuiver(rows_b, rows_c)
    except ParseError:
        raise
    except QuiverError as exc:
        raise ParseError(str(exc)) from None


def dumps_json(q: ExtendedQuiver, indent: int | None = None) -> str:
    return json.dumps(extended_to_json(q), indent=indent)


def loads_json(text: str) -> ExtendedQuiver:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return extended_from_json(obj)


def dumps_text(q: ExtendedQuiver) -> str:
    lines = [f"{q.n} {q.m}"]
    for brow, crow in zip(q.b, q.c):
        lines.append(" ".join(str(x) for x in brow + crow))
    return "\n".join(lines) + "\n"


def loads_text(text: str) -> ExtendedQuiver:
    rows: list[tuple[int, list[tuple[int, str]]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if tokens:
            rows.append((lineno, tokens))
    if not rows:
        raise ParseError("empty input", 1, 1)

    def num(lineno: int, col: int, tok: str) -> int:
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col)
        return int(tok)

    head_line, head = rows[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", head_line, 1)
    n, m = (num(head_line, col, tok) for col, tok in head)
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", head_line, 1)
    body = rows[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else head_line)
        raise ParseError(f"expected {n} matrix rows, got {len(body)}", where, 1)
    b = []
    c = []
    for lineno, toks in body:
        if len(toks) != n + m:
            col = toks[min(len(toks), n + m) - 1][0] if toks else 1
            raise ParseError(f"expected {n + m} entries, got {len(toks)}", lineno, col)
        vals = [num(lineno, col, tok) for col, tok in toks]
        b.append(vals[:n])
        c.append(vals[n:])
    try:
        return ExtendedQuiver(b, c)
    except QuiverError as exc:
        raise ParseError(str(exc)) from None


def loads(text: str) -> ExtendedQuiver:
    """Parse either format, picking JSON when the text starts with ``{``."""
    if text.lstrip().startswith("{"):
        return loads_json(text)
    return loads_text(text)


def read_quiver(path) -> ExtendedQuiver:
    return loads(Path(path).read_text(encoding="utf-8"))


def parse_inline_matrix(text: str) -> QuiverMatrix:
    """Parse ``"0 2 -2; -2 0 2; 2 -2 0"`` (rows separated by ``;``)."""
    rows = [r for r in text.split(";") if r.strip()]
    out = []
    for i, row in enumerate(rows, 1):
        vals = []
        for tok in re.split(r"[\s,]+", row.strip()):
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise ParseError(f"row {i}: expected an integer, got {tok!r}")
            vals.append(int(tok))
        out.append(vals)
    try:
        return QuiverMatrix(out)
    except QuiverError as exc:
        raise ParseError(str(exc)) from None


def parse_sequence(text: str) -> tuple[int, ...]:
    """Parse ``"1,2,1"`` / ``"1 2 1"`` / ``"[1, 2, 1]"``."""
    text = text.strip().strip("[]")
    if not text:
        return ()
    toks = [t for t in re.split(r"[\s,]+", text) if t]
    for t in toks:
        if not re.fullmatch(r"\d+", t):
            raise ParseError(f"sequence entries must be positive integers, got {t!r}")
    return tuple(int(t) for t in toks)
