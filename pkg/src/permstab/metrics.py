"""The generator-metric and the truncated statistical metric.

`d_gen_exact` minimizes the per-generator mismatch fraction over all
bijections by branch-and-bound; `d_gen_upper` is a seeded heuristic upper
bound on the same minimum.  `local_profile` collects the empirical
distribution of stabilizer traces per radius, and `d_stat_trunc` compares
two actions through those distributions with radius-major weights 2^-r.

Trace keys are sorted index tuples into the canonical ball enumeration,
so profiles from different actions over the same basis are comparable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ._rand import stream
from .actions import FiniteAction, Permutation, all_traces
from .words import ball_sizes

DEFAULT_EXACT_LIMIT = 8


class Bijection(Permutation):
    """A bijection between two equal-size point sets, stored as images."""


@dataclass(frozen=True, slots=True)
class TraceProfile:
    """Per-radius distributions of stabilizer traces.

    levels[r] maps a trace (sorted tuple of ball indices) to its
    probability; radii run from 1 to radius and each level sums to 1.
    """

    radius: int
    levels: tuple[dict[tuple[int, ...], Fraction], ...]

    def __post_init__(self) -> None:
        if self.radius < 1 or len(self.levels) != self.radius:
            raise ValueError("profile must carry levels for radii 1..radius")
        for level in self.levels:
            if sum(level.values(), start=Fraction(0)) != 1:
                raise ValueError("trace probabilities must sum to 1")

    def level(self, r: int) -> dict[tuple[int, ...], Fraction]:
        if not 1 <= r <= self.radius:
            raise ValueError(f"radius {r} outside 1..{self.radius}")
        return self.levels[r - 1]


def gen_norm(f: Bijection | Permutation, X: FiniteAction, Y: FiniteAction) -> Fraction:
    """Average over generators of the fraction of points where f fails to
    intertwine: f(s.x) != s.f(x)."""
    if X.n != Y.n or f.n != X.n or X.m != Y.m:
        raise ValueError("size mismatch")
    if X.n == 0 or X.m == 0:
        return Fraction(0)
    mism = 0
    fi = f.images
    for gx, gy in zip(X.gens, Y.gens):
        a, b = gx.images, gy.images
        mism += sum(1 for x in range(X.n) if fi[a[x]] != b[fi[x]])
    return Fraction(mism, X.n * X.m)


def _mismatch_count(f: list[int], X: FiniteAction, Y: FiniteAction) -> int:
    count = 0
    for gx, gy in zip(X.gens, Y.gens):
        a, b = gx.images, gy.images
        count += sum(1 for x in range(X.n) if f[a[x]] != b[f[x]])
    return count


def d_gen_exact(
    X: FiniteAction, Y: FiniteAction, limit: int = DEFAULT_EXACT_LIMIT
) -> Fraction:
    """Exact minimum of gen_norm over all bijections, for n <= limit.

    Branch-and-bound over partial assignments; the count of mismatches
    already forced is an admissible lower bound, so the result equals
    exhaustive enumeration.
    """
    value, _ = d_gen_exact_witness(X, Y, limit)
    return value


def d_gen_exact_witness(
    X: FiniteAction, Y: FiniteAction, limit: int = DEFAULT_EXACT_LIMIT
) -> tuple[Fraction, Bijection]:
    if X.n != Y.n or X.m != Y.m:
        raise ValueError("size mismatch")
    n, m = X.n, X.m
    if n > limit:
        raise ValueError(f"exact search capped at n <= {limit}")
    if n == 0 or m == 0:
        return Fraction(0), Bijection(tuple(range(n)))

    xg = [g.images for g in X.gens]
    yg = [g.images for g in Y.gens]
    xg_inv = [g.inverse().images for g in X.gens]

    identity = list(range(n))
    best_count = _mismatch_count(identity, X, Y)
    best_f = list(identity)

    f: list[int] = [-1] * n
    used = [False] * n

    def added_mismatches(x: int, y: int) -> int:
        # checks decided by assigning f[x] = y: pairs (s, u) with u and s.u
        # both assigned, where u = x or s.u = x
        added = 0
        for s in range(m):
            v = xg[s][x]
            if v == x:
                added += yg[s][y] != y
                continue
            if f[v] >= 0:
                added += f[v] != yg[s][y]
            u = xg_inv[s][x]
            if u != x and f[u] >= 0:
                added += y != yg[s][f[u]]
        return added

    def search(x: int, count: int) -> None:
        nonlocal best_count, best_f
        if count >= best_count:
            return
        if x == n:
            best_count = count
            best_f = list(f)
            return
        for y in range(n):
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            search(x + 1, count + added_mismatches(x, y))
            used[y] = False
            f[x] = -1

    search(0, 0)
    return Fraction(best_count, n * m), Bijection(tuple(best_f))


def d_gen_upper(
    X: FiniteAction,
    Y: FiniteAction,
    restarts: int = 8,
    seed: int = 0,
    trace_radius: int = 2,
) -> tuple[Fraction, Bijection]:
    """Heuristic upper bound on the generator-metric, with witness.

    Each restart seeds a greedy matching of points by radius-`trace_radius`
    stabilizer trace (most-constrained trace class first), then runs
    2-point-swap steepest descent to a local minimum.  Deterministic given
    the seed; the best restart wins, lowest restart index breaking ties.
    """
    if X.n != Y.n or X.m != Y.m:
        raise ValueError("size mismatch")
    n, m = X.n, X.m
    if n == 0 or m == 0:
        return Fraction(0), Bijection(tuple(range(n)))

    tx = all_traces(X, trace_radius)
    ty = all_traces(Y, trace_radius)
    y_by_trace: dict[tuple[int, ...], list[int]] = {}
    for y in range(n):
        y_by_trace.setdefault(ty[y], []).append(y)

    xg = [g.images for g in X.gens]
    yg = [g.images for g in Y.gens]
    xg_inv = [g.inverse().images for g in X.gens]

    def norm_count(f: list[int]) -> int:
        return _mismatch_count(f, X, Y)

    def local_count(f: list[int], x: int) -> int:
        # mismatches of the checks involving position x as source or target
        y = f[x]
        c = 0
        for s in range(m):
            v = xg[s][x]
            c += f[v] != yg[s][y]
            u = xg_inv[s][x]
            if u != x:
                c += f[x] != yg[s][f[u]]
        return c

    best: tuple[int, list[int]] | None = None
    for restart in range(max(1, restarts)):
        rng = stream(seed, "dgen-upper", restart)
        # greedy seeding: rarest trace classes first, random tie order
        pool = {t: list(ys) for t, ys in y_by_trace.items()}
        order = sorted(
            range(n), key=lambda x: (len(pool.get(tx[x], ())), tx[x], x)
        )
        f = [-1] * n
        leftovers_x = []
        used = [False] * n
        for x in order:
            cands = [y for y in pool.get(tx[x], ()) if not used[y]]
            if cands:
                y = cands[rng.randrange(len(cands))]
                f[x] = y
                used[y] = True
            else:
                leftovers_x.append(x)
        free_y = [y for y in range(n) if not used[y]]
        rng.shuffle(free_y)
        for x, y in zip(leftovers_x, free_y):
            f[x] = y

        count = norm_count(f)
        improved = True
        while improved and count > 0:
            improved = False
            best_delta, best_pair = 0, None
            for i in range(n):
                for j in range(i + 1, n):
                    before = local_count(f, i) + local_count(f, j)
                    f[i], f[j] = f[j], f[i]
                    after = local_count(f, i) + local_count(f, j)
                    f[i], f[j] = f[j], f[i]
                    delta = after - before
                    if delta < best_delta:
                        best_delta, best_pair = delta, (i, j)
            if best_pair is not None:
                i, j = best_pair
                f[i], f[j] = f[j], f[i]
                count = norm_count(f)
                improved = True
        if best is None or count < best[0]:
            best = (count, list(f))

    assert best is not None
    return Fraction(best[0], n * m), Bijection(tuple(best[1]))


def local_profile(X: FiniteAction, radius: int) -> TraceProfile:
    """Empirical distribution of stabilizer traces at each radius <= radius."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    if X.n == 0:
        raise ValueError("profile of the empty action is undefined")
    sizes = ball_sizes(X.m, radius)
    traces = all_traces(X, radius)
    levels = []
    for r in range(1, radius + 1):
        cut = sizes[r]
        level: dict[tuple[int, ...], Fraction] = {}
        for t in traces:
            key = tuple(i for i in t if i < cut)
            level[key] = level.get(key, Fraction(0)) + Fraction(1, X.n)
        levels.append(level)
    return TraceProfile(radius, tuple(levels))


def tv_distance(
    p: dict[tuple[int, ...], Fraction], q: dict[tuple[int, ...], Fraction]
) -> Fraction:
    """Total-variation distance between two trace distributions."""
    keys = set(p) | set(q)
    total = sum(
        (abs(p.get(k, Fraction(0)) - q.get(k, Fraction(0))) for k in keys),
        start=Fraction(0),
    )
    return total / 2


def profile_distance(a: TraceProfile, b: TraceProfile, radius: int) -> Fraction:
    if radius < 1 or radius > min(a.radius, b.radius):
        raise ValueError("radius outside the profiles' common range")
    return sum(
        (Fraction(1, 2**r) * tv_distance(a.level(r), b.level(r)) for r in range(1, radius + 1)),
        start=Fraction(0),
    )


def d_stat_trunc(X: FiniteAction, Y: FiniteAction, radius: int) -> Fraction:
    """Truncated statistical distance: sum over r <= radius of 2^-r times
    the total-variation distance between radius-r trace distributions.

    A pseudometric; 0 exactly when the profiles agree to the radius.  Any
    deeper truncation differs by at most 2^-radius (geometric tail).
    """
    return profile_distance(
        local_profile(X, radius), local_profile(Y, radius), radius
    )
