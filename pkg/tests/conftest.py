from __future__ import annotations

from hypothesis import settings, strategies as st

from forkred.quiver import ExtendedQuiver, QuiverMatrix

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# r = 1, i = 2, j = 3: r -> j (4), j -> i (5), i -> r (3)
FORK_EXAMPLE = QuiverMatrix(((0, -3, 4), (3, 0, -5), (-4, 5, 0)))
MARKOV = QuiverMatrix(((0, 2, -2), (-2, 0, 2), (2, -2, 0)))
A2 = QuiverMatrix(((0, 1), (-1, 0)))


@st.composite
def skew_matrices(draw, min_n=1, max_n=5, bound=4):
    n = draw(st.integers(min_n, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = draw(st.integers(-bound, bound))
            rows[i][j] = x
            rows[j][i] = -x
    return QuiverMatrix(rows)


@st.composite
def ice_quivers(draw, min_n=1, max_n=5, max_m=4, bound=4):
    q = draw(skew_matrices(min_n, max_n, bound))
    m = draw(st.integers(0, max_m))
    c = [[draw(st.integers(-bound, bound)) for _ in range(m)] for _ in range(q.n)]
    return ExtendedQuiver(q.b, c)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
