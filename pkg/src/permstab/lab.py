"""Stability challenges and repair at desk scale.

A challenge perturbs an exact action by composing random transpositions
into random generators, keeping the original as the planted baseline.
Repair strategies return honest reports: `succeeded` is set only when the
returned action satisfies every relator exactly, and a report can always
be re-validated by `validate_report`, which relies on nothing beyond the
action primitives.

The existence theory behind repair is non-constructive, so "descent"
claims no optimality; it reports an upper bound or fails.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from ._rand import stream
from .rationals import format_fraction
from .actions import (
    FiniteAction,
    Permutation,
    defect,
    is_solution,
    tuple_distance,
)
from .cosets import GroupDoc, Presentation, catalog, todd_coxeter
from .metrics import Bijection, d_gen_exact_witness, d_stat_trunc, gen_norm
from .words import Word, from_str


@dataclass(frozen=True, slots=True)
class Challenge:
    """A perturbed action, its relator set, and the perturbation record."""

    action: FiniteAction
    relator_set: frozenset[Word]
    planted: FiniteAction | None
    perturbation_log: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.planted is not None:
            if not is_solution(self.planted, self.relator_set):
                raise ValueError("planted action must satisfy the relators")
            if self.planted.n != self.action.n or self.planted.m != self.action.m:
                raise ValueError("planted/action size mismatch")


@dataclass(frozen=True, slots=True)
class RepairReport:
    solution: FiniteAction
    witness: Bijection
    distance: Fraction
    strategy: str
    succeeded: bool


def make_challenge(
    Y: FiniteAction,
    relators: Sequence[Word],
    k: int,
    seed: int,
) -> Challenge:
    """Compose k random transpositions into random generators of an exact
    action.

    Each transposition changes one generator's images at two points, so
    the defect is at most sum over relators of 2k|w|/n.
    """
    relator_set = frozenset(relators)
    if not is_solution(Y, relator_set):
        raise ValueError("the starting action must satisfy the relators")
    if k < 0:
        raise ValueError("swap count must be >= 0")
    if k > 0 and Y.n < 2:
        raise ValueError("need at least two points to perturb")
    rng = stream(seed, "challenge")
    gens = list(Y.gens)
    log = []
    for _ in range(k):
        g = rng.randrange(Y.m)
        i = rng.randrange(Y.n)
        j = rng.randrange(Y.n - 1)
        if j >= i:
            j += 1
        i, j = min(i, j), max(i, j)
        gens[g] = gens[g].swap_images(i, j)
        log.append((g, i, j))
    return Challenge(
        FiniteAction(Y.n, tuple(gens)), relator_set, Y, tuple(log)
    )


def _relator_arrays(X: FiniteAction) -> list[list[np.ndarray]]:
    """Per signed letter, image arrays indexed for numpy gathers."""
    out = []
    for g in X.gens:
        fwd = np.array(g.images, dtype=np.int64)
        inv = np.empty_like(fwd)
        inv[fwd] = np.arange(len(fwd))
        out.append([fwd, inv])
    return out


def _word_perm(tables: list[list[np.ndarray]], w: Word, n: int) -> np.ndarray:
    arr = np.arange(n)
    for v in reversed(w.letters):
        table = tables[abs(v) - 1][0 if v > 0 else 1]
        arr = table[arr]
    return arr


def _defect_count(tables, relators: Sequence[Word], n: int) -> int:
    pts = np.arange(n)
    return int(sum((_word_perm(tables, w, n) != pts).sum() for w in relators))


def _violated_points(tables, relators: Sequence[Word], n: int) -> set[int]:
    """Candidate points for defect-decreasing swaps.

    A swap of generator g's images at (i, j) reroutes a relator walk only
    where the walk applies g at i or j, or applies g^-1 at their images;
    so every decreasing move touches a violated walk's stage point or a
    generator-preimage of one.
    """
    pts = np.arange(n)
    on_path: set[int] = set()
    for w in relators:
        arr = pts
        path = [arr]
        for v in reversed(w.letters):
            table = tables[abs(v) - 1][0 if v > 0 else 1]
            arr = table[arr]
            path.append(arr)
        violated = path[-1] != pts
        if violated.any():
            for stage in path:
                on_path.update(int(x) for x in stage[violated])
    bad = set(on_path)
    for fwd, inv in tables:
        bad.update(int(inv[p]) for p in on_path)
    return bad


def _descent(
    c: Challenge, budget: int
) -> tuple[FiniteAction, bool]:
    """Steepest descent on the defect over single-generator image swaps.

    Only strictly decreasing moves are taken (ties resolved by lowest
    (generator, i, j)); stops at defect zero, at a local minimum, or when
    the accepted-move budget runs out.
    """
    X = c.action
    n = X.n
    relators = sorted(c.relator_set, key=lambda w: (len(w), w.letters))
    tables = _relator_arrays(X)
    count = _defect_count(tables, relators, n)
    steps = 0
    while count > 0 and steps < budget:
        bad_set = _violated_points(tables, relators, n)
        bad = sorted(bad_set)
        best_count, best_move = count, None
        for g in range(X.m):
            fwd = tables[g][0]
            for i in bad:
                for j in range(n):
                    if j == i:
                        continue
                    a, b = (i, j) if i < j else (j, i)
                    if j < i and j in bad_set:
                        continue  # pair already enumerated from j's side
                    fwd[[a, b]] = fwd[[b, a]]
                    inv = tables[g][1]
                    tables[g][1] = np.argsort(fwd)
                    trial = _defect_count(tables, relators, n)
                    tables[g][1] = inv
                    fwd[[a, b]] = fwd[[b, a]]
                    if trial < best_count:
                        best_count, best_move = trial, (g, a, b)
        if best_move is None:
            break
        g, a, b = best_move
        tables[g][0][[a, b]] = tables[g][0][[b, a]]
        tables[g][1] = np.argsort(tables[g][0])
        count = best_count
        steps += 1
    gens = tuple(
        Permutation(tuple(int(y) for y in fwd)) for fwd, _ in tables
    )
    return FiniteAction(n, gens), count == 0


def _all_solutions(n: int, m: int, relators: Sequence[Word]) -> list[FiniteAction]:
    from itertools import permutations, product

    perms = list(permutations(range(n)))
    inverses = {p: tuple(sorted(range(n), key=lambda x: p[x])) for p in perms}
    word_letters = [w.letters for w in relators]

    def solves(combo: tuple[tuple[int, ...], ...]) -> bool:
        for letters in word_letters:
            for x in range(n):
                y = x
                for v in reversed(letters):
                    table = combo[v - 1] if v > 0 else inverses[combo[-v - 1]]
                    y = table[y]
                if y != x:
                    break
            else:
                continue
            return False
        return True

    return [
        FiniteAction(n, tuple(Permutation(p) for p in combo))
        for combo in product(perms, repeat=m)
        if solves(combo)
    ]


BRUTE_LIMIT = 6


def repair(c: Challenge, strategy: str = "descent", budget: int = 100_000) -> RepairReport:
    """Repair a challenge to an exact solution, if the strategy can.

    "descent" runs the steepest-descent editor; "brute" (n <= 6)
    enumerates every exact solution and minimizes the exact
    generator-metric; "planted" returns the stored baseline.  A report
    with succeeded=False never presents its action as a solution.
    """
    if strategy == "descent":
        solution, ok = _descent(c, budget)
        ident = Bijection(tuple(range(c.action.n)))
        return RepairReport(
            solution, ident, gen_norm(ident, c.action, solution), strategy, ok
        )
    if strategy == "planted":
        if c.planted is None:
            raise ValueError("challenge has no planted baseline")
        ident = Bijection(tuple(range(c.action.n)))
        return RepairReport(
            c.planted,
            ident,
            gen_norm(ident, c.action, c.planted),
            strategy,
            True,
        )
    if strategy == "brute":
        if c.action.n > BRUTE_LIMIT:
            raise ValueError(f"brute strategy capped at n <= {BRUTE_LIMIT}")
        best: tuple[Fraction, Bijection, FiniteAction] | None = None
        for Y in _all_solutions(c.action.n, c.action.m, sorted(c.relator_set, key=str)):
            value, witness = d_gen_exact_witness(c.action, Y, limit=BRUTE_LIMIT)
            if best is None or value < best[0]:
                best = (value, witness, Y)
        if best is None:
            raise ValueError("no exact solution exists at this size")
        return RepairReport(best[2], best[1], best[0], strategy, True)
    raise ValueError(f"unknown strategy {strategy!r}")


def validate_report(c: Challenge, report: RepairReport) -> bool:
    """Independent re-validation using only action primitives: a succeeded
    report must solve the relators exactly and state its exact witness
    distance."""
    if report.succeeded:
        if defect(report.solution, c.relator_set) != 0:
            return False
    f = report.witness.images
    n = c.action.n
    if sorted(f) != list(range(n)):
        return False
    mismatches = 0
    for gx, gy in zip(c.action.gens, report.solution.gens):
        for x in range(n):
            if f[gx.images[x]] != gy.images[f[x]]:
                mismatches += 1
    return report.distance == Fraction(mismatches, max(1, n * c.action.m))


def _near_square_factors(size: int, parts: int) -> list[int]:
    """Split `size` into `parts` factors, as balanced as the divisors allow."""
    if parts == 1:
        return [size]
    best = 1
    root = round(size ** (1 / parts))
    for d in range(1, size + 1):
        if size % d == 0 and abs(d - root) < abs(best - root):
            best = d
    return [best] + _near_square_factors(size // best, parts - 1)


def torus_action(cycles: Sequence[int]) -> FiniteAction:
    """Commuting cyclic shifts on a product of cycles (one generator per
    axis), the standard exact model for free-abelian groups."""
    n = 1
    for c in cycles:
        if c < 1:
            raise ValueError("cycle lengths must be >= 1")
        n *= c
    strides = []
    acc = 1
    for c in reversed(cycles):
        strides.append(acc)
        acc *= c
    strides.reverse()

    def coords(x: int) -> list[int]:
        return [(x // s) % c for s, c in zip(strides, cycles)]

    gens = []
    for axis in range(len(cycles)):
        images = []
        for x in range(n):
            cs = coords(x)
            cs[axis] = (cs[axis] + 1) % cycles[axis]
            images.append(sum(c * s for c, s in zip(cs, strides)))
        gens.append(Permutation(tuple(images)))
    return FiniteAction(n, tuple(gens))


def parse_group(name: str) -> tuple[str, Presentation]:
    """Accept compact group names: z2, z3, f2, d3, bs12, heis."""
    if name.startswith("z") and name[1:].isdigit():
        return name, catalog("zn", int(name[1:]))
    if name.startswith("f") and name[1:].isdigit():
        return name, catalog("free", int(name[1:]))
    if name.startswith("d") and name[1:].isdigit():
        return name, catalog("dihedral", int(name[1:]))
    if name.startswith("bs") and len(name) == 4 and name[2:].isdigit():
        return name, catalog("bs", int(name[2]), int(name[3]))
    if name == "heis":
        return name, catalog("heisenberg")
    raise ValueError(f"unknown group name {name!r}")


def standard_action(name: str, size: int) -> tuple[FiniteAction, Presentation]:
    """An exact action of the named group with exactly `size` points.

    Free-abelian and free groups get tori; dihedral groups get the
    amplified reflection-coset action; bs(1,n) and the Heisenberg group
    get coset actions of subgroups chosen so the index is exactly `size`.
    """
    from .irs import amplify

    if size < 1:
        raise ValueError("size must be >= 1")
    name, pres = parse_group(name)
    if name.startswith(("z", "f")):
        return torus_action(_near_square_factors(size, pres.m)), pres
    if name.startswith("d"):
        base = todd_coxeter(pres, (Word((2,)),))
        if size < base.action.n:
            raise ValueError(f"minimum size for {name} is {base.action.n}")
        return amplify(base.action, size), pres
    if name.startswith("bs"):
        # <y, x^size> contains the normal closure of y, so the index is size
        gens = (Word((2,)), Word(tuple([1] * size)))
        return todd_coxeter(pres, gens).action, pres
    if name == "heis":
        gens = (Word((2,)), Word((3,)), Word(tuple([1] * size)))
        return todd_coxeter(pres, gens).action, pres
    raise ValueError(f"no standard action catalogued for {name!r}")


EXPERIMENT_COLUMNS = [
    "group", "size", "k", "seed", "strategy",
    "defect", "distance", "dstat", "succeeded", "ms",
]


def run_experiment(
    group: str,
    sizes: Sequence[int],
    k_schedule: Sequence[int],
    strategies: Sequence[str],
    seed: int,
    radius: int = 3,
    budget: int = 100_000,
) -> list[dict[str, object]]:
    """One row per (size, k, strategy): challenge defect, repair distance,
    statistical distance to the repaired action, and wall time.

    Deterministic given the seed (wall time excepted); rows are emitted in
    instance order, never completion order.
    """
    rows: list[dict[str, object]] = []
    for size in sizes:
        action, pres = standard_action(group, size)
        for k in k_schedule:
            sub = stream(seed, "experiment", size, k).randrange(2**63)
            challenge = make_challenge(action, pres.relators, k, sub)
            base_defect = defect(challenge.action, challenge.relator_set)
            for strategy in strategies:
                start = time.perf_counter()
                report = repair(challenge, strategy, budget)
                ms = int(1000 * (time.perf_counter() - start))
                dstat = d_stat_trunc(challenge.action, report.solution, radius)
                rows.append(
                    {
                        "group": group,
                        "size": size,
                        "k": k,
                        "seed": seed,
                        "strategy": strategy,
                        "defect": format_fraction(base_defect),
                        "distance": format_fraction(report.distance),
                        "dstat": format_fraction(dstat),
                        "succeeded": report.succeeded,
                        "ms": ms,
                    }
                )
    return rows


def rows_to_csv(rows: Sequence[dict[str, object]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=EXPERIMENT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
