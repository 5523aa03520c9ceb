"""Heuristic hyperfinite decomposition of Schreier graphs, with an exact
certificate checker.

`decompose` removes at most an epsilon-fraction of vertices so that the
components left after deleting all edges incident to the removed set are
small; the budget is a hard guarantee, the component bound K is whatever
the strategy achieves and is reported exactly.  `check` recomputes both
sides of the certificate from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .actions import FiniteAction


@dataclass(frozen=True, slots=True)
class Decomposition:
    """Certificate: removed vertex set, exact largest remaining component
    size, and the epsilon the budget was measured against."""

    removed: frozenset[int]
    K: int
    epsilon_used: Fraction


def _neighbor_tables(X: FiniteAction) -> list[tuple[int, ...]]:
    tables = []
    for g in X.gens:
        tables.append(g.images)
        tables.append(g.inverse().images)
    return tables


def largest_component(X: FiniteAction, removed: frozenset[int]) -> int:
    """Largest component after deleting all edges incident to `removed`
    (removed vertices stay as isolated points)."""
    if X.n == 0:
        return 0
    tables = _neighbor_tables(X)
    seen = [False] * X.n
    best = 1 if removed else 0
    for start in range(X.n):
        if seen[start] or start in removed:
            continue
        size = 0
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            size += 1
            for imgs in tables:
                y = imgs[x]
                if not seen[y] and y not in removed:
                    seen[y] = True
                    stack.append(y)
        best = max(best, size)
    return best


def _growth_chains(X: FiniteAction) -> list[list[int]]:
    """Deterministic cover of the vertex set by greedy growth chains.

    Starting from the lowest unvisited vertex, repeatedly absorb the
    smallest-index unvisited neighbor of the region grown so far; a chain
    closes when its region has no unvisited neighbor.  Independent of any
    epsilon, which keeps coarser decompositions comparable to finer ones.
    """
    tables = _neighbor_tables(X)
    visited = [False] * X.n
    chains: list[list[int]] = []
    for seed in range(X.n):
        if visited[seed]:
            continue
        chain = [seed]
        visited[seed] = True
        frontier: set[int] = set()
        for imgs in tables:
            y = imgs[seed]
            if not visited[y]:
                frontier.add(y)
        while frontier:
            x = min(frontier)
            frontier.discard(x)
            visited[x] = True
            chain.append(x)
            for imgs in tables:
                y = imgs[x]
                if not visited[y]:
                    frontier.add(y)
        chains.append(chain)
    return chains


def decompose(
    X: FiniteAction, epsilon: Fraction, strategy: str = "bfs-tiling"
) -> Decomposition:
    """Remove at most epsilon*n vertices, tiling the graph into blocks of
    target size ceil(1/epsilon).

    Each growth chain of length L is cut into floor(L/t) near-equal blocks
    (t the target size) and the last vertex of every block is removed, so
    the budget |Z| <= epsilon*n holds unconditionally.  K is computed
    exactly afterwards; no optimality is claimed.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    if strategy != "bfs-tiling":
        raise ValueError(f"unknown strategy {strategy!r}")
    target = ceil(1 / epsilon)
    removed: set[int] = set()
    for chain in _growth_chains(X):
        blocks = len(chain) // target
        if blocks == 0:
            continue
        base, extra = divmod(len(chain), blocks)
        pos = 0
        for b in range(blocks):
            pos += base + (1 if b < extra else 0)
            removed.add(chain[pos - 1])
    assert len(removed) <= epsilon * X.n
    return Decomposition(
        frozenset(removed), largest_component(X, frozenset(removed)), epsilon
    )


def check(X: FiniteAction, d: Decomposition) -> bool:
    """Recompute the certificate: budget respected and K exact."""
    if any(not 0 <= x < X.n for x in d.removed):
        return False
    if len(d.removed) > d.epsilon_used * X.n:
        return False
    return largest_component(X, d.removed) == d.K
