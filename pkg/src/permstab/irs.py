"""Atomic finite-index invariant random subgroups and their finite models.

An `AtomicIRS` stores one coset table per conjugacy class together with
the class's total weight; within a class every conjugate implicitly
carries weight/class_size, which makes conjugation-invariance structural.
An `EmpiricalIRS` is the radius-truncated shadow of the stabilizer
pushforward of a finite action.  Recovering a subgroup from a finite
trace is impossible in general, so all comparisons happen at a declared
radius.

`cylinder_measure` walks distinct conjugates (grouping coset-space points
by actual stabilizer equality), while action profiles walk points; the
two routes must agree exactly wherever both are defined, and the test
suite holds them to that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .actions import (
    FiniteAction,
    apply_word,
    canonical_from,
    disjoint_union,
    power,
    stabilizer_trace,
    trivial_action,
)
from .cosets import CosetTable, class_data, tables_conjugate
from .metrics import TraceProfile, local_profile, profile_distance, tv_distance
from .words import Word, ball_sizes


@dataclass(frozen=True, slots=True)
class AtomicIRS:
    """Finitely many conjugacy classes of finite-index subgroups with
    positive weights summing to 1."""

    classes: tuple[tuple[CosetTable, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.classes:
            raise ValueError("an atomic IRS needs at least one class")
        total = Fraction(0)
        for _, weight in self.classes:
            if weight <= 0:
                raise ValueError("class weights must be positive")
            total += weight
        if total != 1:
            raise ValueError("class weights must sum to 1")
        for i, (t1, _) in enumerate(self.classes):
            for t2, _ in self.classes[i + 1 :]:
                if tables_conjugate(t1, t2):
                    raise ValueError("class representatives must be non-conjugate")

    @property
    def m(self) -> int:
        return self.classes[0][0].action.m


@dataclass(frozen=True, slots=True)
class EmpiricalIRS:
    """The radius-truncated trace profile of a finite action's stabilizer
    pushforward."""

    profile: TraceProfile


def irs_of_action(X: FiniteAction, radius: int) -> EmpiricalIRS:
    """Stabilizer pushforward of the uniform point measure, truncated to
    the given radius."""
    return EmpiricalIRS(local_profile(X, radius))


def conjugate_traces(T: CosetTable, radius: int) -> list[tuple[int, ...]]:
    """Radius-`radius` traces of the distinct conjugates of the base
    stabilizer, one entry per conjugate.

    Points of the coset space are grouped by stabilizer equality (equal
    BFS-canonical relabelings); each group is one conjugate and any of its
    points yields that conjugate's trace.
    """
    groups: dict[tuple, int] = {}
    reps: list[int] = []
    for x in range(T.action.n):
        key = tuple(g.images for g in canonical_from(T.action, x).gens)
        if key not in groups:
            groups[key] = x
            reps.append(x)
    return [stabilizer_trace(T.action, x, radius) for x in reps]


def cylinder_measure(
    mu: AtomicIRS, radius: int, trace: Sequence[int]
) -> Fraction:
    """Total weight of the conjugates whose radius-`radius` trace equals
    the given subset of the ball (as sorted indices)."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    want = tuple(sorted(trace))
    total = Fraction(0)
    for table, weight in mu.classes:
        traces = conjugate_traces(table, radius)
        matches = sum(1 for t in traces if t == want)
        if matches:
            total += weight * Fraction(matches, len(traces))
    return total


def _atomic_level(
    mu: AtomicIRS, r: int
) -> dict[tuple[int, ...], Fraction]:
    level: dict[tuple[int, ...], Fraction] = {}
    for table, weight in mu.classes:
        traces = conjugate_traces(table, r)
        share = weight / len(traces)
        for t in traces:
            level[t] = level.get(t, Fraction(0)) + share
    return level


def shadow_profile(mu: AtomicIRS, radius: int) -> TraceProfile:
    """The cylinder measures of an atomic IRS, organized per radius as a
    trace distribution (its radius-`radius` shadow)."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    return TraceProfile(
        radius, tuple(_atomic_level(mu, r) for r in range(1, radius + 1))
    )


def _as_profile(obj: AtomicIRS | EmpiricalIRS, radius: int) -> TraceProfile:
    if isinstance(obj, AtomicIRS):
        return shadow_profile(obj, radius)
    if obj.profile.radius < radius:
        raise ValueError("empirical IRS truncated below the requested radius")
    return obj.profile


def weakstar_dist_trunc(
    mu: AtomicIRS | EmpiricalIRS, nu: AtomicIRS | EmpiricalIRS, radius: int
) -> Fraction:
    """Radius-truncated cylinder distance: sum over r <= radius of 2^-r
    times the total-variation distance between radius-r shadows; zero
    exactly when the shadows agree to the radius."""
    return profile_distance(_as_profile(mu, radius), _as_profile(nu, radius), radius)


def build_cosofic_action(mu: AtomicIRS, n: int) -> FiniteAction:
    """A finite action whose stabilizer statistics approximate the IRS.

    Takes l_i copies of each class's coset space with the point-mass
    fractions l_i*n_i / N matching the class weights to within 1/(kn)
    each, which bounds every cylinder deviation by 1/n.  The smallest
    integer scale meeting the bound (with every l_i >= 1) is used, so
    coarse precision yields small actions and exact proportions are
    reached at the class sizes' common denominator.
    """
    if n < 1:
        raise ValueError("precision parameter must be >= 1")
    k = len(mu.classes)
    sizes = [t.action.n for t, _ in mu.classes]
    quotas = [w / s for (_, w), s in zip(mu.classes, sizes)]
    bound = Fraction(1, k * n)
    half = Fraction(1, 2)

    denom = 1
    for q in quotas:
        denom = denom * q.denominator // gcd(denom, q.denominator)

    copies: list[int] | None = None
    for scale in range(1, denom + 1):
        trial = [max(1, int(scale * q + half)) for q in quotas]
        total = sum(l * s for l, s in zip(trial, sizes))
        if all(
            abs(Fraction(l * s, total) - w) <= bound
            for l, s, (_, w) in zip(trial, sizes, mu.classes)
        ):
            copies = trial
            break
    assert copies is not None  # scale = denom gives exact proportions

    out: FiniteAction | None = None
    for (table, _), l in zip(mu.classes, copies):
        block = power(table.action, l)
        out = block if out is None else disjoint_union(out, block)
    assert out is not None
    return out


def amplify(X: FiniteAction, target: int) -> FiniteAction:
    """Pad X to exactly `target` points: floor(target/|X|) copies plus a
    trivially-acted remainder.

    Every cylinder of the result differs from X's by at most
    2*|X|/target, since only the remainder points (fewer than |X|) carry
    different statistics.
    """
    if X.n == 0:
        raise ValueError("cannot amplify the empty action")
    if target < X.n:
        raise ValueError("target must be at least |X|")
    q, r = divmod(target, X.n)
    return disjoint_union(power(X, q), trivial_action(X.m, r))


def normal_chain_irs(
    H_table: CosetTable,
    chain_tables: Sequence[CosetTable],
    coset_reps: Sequence[Word],
) -> list[AtomicIRS]:
    """Uniform-conjugate IRSs from a chain of normal subgroups of the
    normalizer.

    For each chain member, the conjugates by the given normalizer coset
    representatives carry weight 1/k each; the result is packaged as the
    class-uniform atomic IRS of that member.  Validation checks that the
    representatives enumerate the normalizer's cosets exactly once (via
    the stabilizer classes of the base coset space) and that conjugating
    by each basis generator permutes the chain member's conjugates, which
    is what conjugation-invariance of the uniform measure needs.
    """
    X = H_table.action
    class_size, _ = class_data(H_table)
    if len(coset_reps) != class_size:
        raise ValueError(
            f"need exactly {class_size} coset representatives, got {len(coset_reps)}"
        )

    def stab_class(x: int) -> tuple:
        return tuple(g.images for g in canonical_from(X, x).gens)

    rep_points = [apply_word(X, g, H_table.base) for g in coset_reps]
    rep_classes = [stab_class(x) for x in rep_points]
    if len(set(rep_classes)) != class_size:
        raise ValueError("coset representatives repeat a normalizer coset")
    class_index = {c: i for i, c in enumerate(rep_classes)}

    out = []
    for T in chain_tables:
        if T.presentation != H_table.presentation:
            raise ValueError("chain tables must share the presentation")
        Y = T.action

        def conj_class(x: int) -> tuple:
            return tuple(g.images for g in canonical_from(Y, x).gens)

        conj_points = [apply_word(Y, g, T.base) for g in coset_reps]
        conj_keys = [conj_class(x) for x in conj_points]
        for s in range(1, X.m + 1):
            letter = Word((s,))
            # sigma: where conjugation by the generator sends each rep coset
            for i, g in enumerate(coset_reps):
                moved = apply_word(X, letter, rep_points[i])
                key = stab_class(moved)
                if key not in class_index:
                    raise ValueError("generator action leaves the rep classes")
                j = class_index[key]
                if conj_class(apply_word(Y, letter, conj_points[i])) != conj_keys[j]:
                    raise ValueError(
                        "conjugates are not permuted: the chain member is "
                        "not normal in the normalizer or the reps are wrong"
                    )
        out.append(AtomicIRS(((T, Fraction(1)),)))
    return out
