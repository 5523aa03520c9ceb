"""Finitely presented groups and coset enumeration.

`todd_coxeter` runs an HLT-style relator-tracing enumeration with
in-place coincidence merging and produces the transitive action on the
cosets of the given subgroup, renumbered canonically (breadth-first from
the base coset, scanning generators in basis order then inverses) so
repeated runs yield byte-identical tables.

Enumeration that exceeds its coset budget raises `BudgetExhausted`; a
too-small budget and an infinite index are deliberately indistinguishable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import words as W
from .actions import FiniteAction, Permutation, canonical_from, evaluate, is_solution
from .words import Word

DEFAULT_MAX_COSETS = 10**6


class BudgetExhausted(Exception):
    """Enumeration did not complete within the coset budget."""


@dataclass(frozen=True, slots=True)
class Presentation:
    """Generator count plus a finite set of reduced, nonempty relators."""

    m: int
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("presentation needs at least one generator")
        for w in self.relators:
            if len(w) == 0:
                raise ValueError("relators must be nonempty")
            if w.max_index > self.m:
                raise ValueError(f"relator {w} uses letters beyond m={self.m}")


@dataclass(frozen=True, slots=True)
class GroupDoc:
    """Documentation-only catalog entry: a group recorded without a
    relator list, so it cannot feed the enumerator."""

    name: str
    params: tuple[int, ...]
    description: str
    enumerable: bool = False


@dataclass(frozen=True, slots=True)
class CosetTable:
    """A transitive pointed action realizing the group on a coset space.

    The base coset is always point 0 under the canonical numbering; every
    relator acts trivially and every subgroup generator fixes the base.
    """

    presentation: Presentation
    action: FiniteAction
    subgroup_gens: tuple[Word, ...]
    base: int = 0

    @property
    def index(self) -> int:
        return self.action.n


def _columns(m: int) -> int:
    return 2 * m


def _col(v: int) -> int:
    # letter +i -> 2(i-1), letter -i -> 2(i-1)+1
    return 2 * (abs(v) - 1) + (0 if v > 0 else 1)


def _inv_col(c: int) -> int:
    return c ^ 1


class _Enumerator:
    """Mutable working table for one enumeration run."""

    def __init__(self, m: int, max_cosets: int):
        self.m = m
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * _columns(m)]
        self.p: list[int] = [0]

    def rep(self, k: int) -> int:
        # path-compressed class representative (lowest index survives)
        root = k
        while self.p[root] != root:
            root = self.p[root]
        while self.p[k] != root:
            self.p[k], k = root, self.p[k]
        return root

    def define(self, alpha: int, c: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise BudgetExhausted(
                f"enumeration not completed within {self.max_cosets} cosets"
            )
        beta = len(self.table)
        self.table.append([None] * _columns(self.m))
        self.p.append(beta)
        self.table[alpha][c] = beta
        self.table[beta][_inv_col(c)] = alpha

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        ra, rb = self.rep(a), self.rep(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        while queue:
            gamma = queue.pop(0)
            for c in range(_columns(self.m)):
                delta = self.table[gamma][c]
                if delta is None:
                    continue
                self.table[delta][_inv_col(c)] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                if self.table[mu][c] is not None:
                    self.merge(nu, self.table[mu][c], queue)
                elif self.table[nu][_inv_col(c)] is not None:
                    self.merge(mu, self.table[nu][_inv_col(c)], queue)
                else:
                    self.table[mu][c] = nu
                    self.table[nu][_inv_col(c)] = mu

    def scan_and_fill(self, alpha: int, cols: Sequence[int]) -> None:
        f, i = alpha, 0
        b, j = alpha, len(cols) - 1
        while True:
            while i <= j and self.table[f][cols[i]] is not None:
                f = self.table[f][cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][_inv_col(cols[j])] is not None:
                b = self.table[b][_inv_col(cols[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][cols[i]] = b
                self.table[b][_inv_col(cols[i])] = f
                return
            self.define(f, cols[i])

    def live(self) -> list[int]:
        return [k for k in range(len(self.p)) if self.p[k] == k]


def _word_cols(w: Word) -> list[int]:
    # the scan applies letters right to left, matching (uv).x = u.(v.x)
    return [_col(v) for v in reversed(w.letters)]


def todd_coxeter(
    P: Presentation,
    subgroup_gens: Sequence[Word],
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by `subgroup_gens`.

    Returns the canonical coset table when the enumeration completes within
    `max_cosets` working cosets (live plus dead); otherwise raises
    `BudgetExhausted`.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    for w in subgroup_gens:
        if w.max_index > P.m:
            raise ValueError(f"subgroup word {w} uses letters beyond m={P.m}")
    enum = _Enumerator(P.m, max_cosets)
    relator_cols = [_word_cols(w) for w in P.relators]
    for w in subgroup_gens:
        enum.scan_and_fill(0, _word_cols(w))
    alpha = 0
    while alpha < len(enum.table):
        if enum.p[alpha] == alpha:
            for cols in relator_cols:
                enum.scan_and_fill(alpha, cols)
                if enum.p[alpha] < alpha:
                    break
            if enum.p[alpha] == alpha:
                for c in range(_columns(P.m)):
                    if enum.table[alpha][c] is None:
                        enum.define(alpha, c)
        alpha += 1

    live = enum.live()
    renum = {old: new for new, old in enumerate(live)}
    n = len(live)
    gens = []
    for i in range(1, P.m + 1):
        c = _col(i)
        images = []
        for old in live:
            target = enum.table[old][c]
            assert target is not None
            images.append(renum[enum.rep(target)])
        gens.append(Permutation(tuple(images)))
    action = canonical_from(FiniteAction(n, tuple(gens)), renum[enum.rep(0)])
    return CosetTable(P, action, tuple(subgroup_gens))


def conjugate_table(T: CosetTable, g: Word) -> CosetTable:
    """The same action re-based at g.base and renumbered canonically.

    The new base's stabilizer is g H g^-1, i.e. the conjugate subgroup of
    the element acting by g.
    """
    from .actions import apply_word

    new_base = apply_word(T.action, g, T.base)
    action = canonical_from(T.action, new_base)
    g_inv = g.inverse()
    new_gens = tuple(g * h * g_inv for h in T.subgroup_gens)
    return CosetTable(T.presentation, action, new_gens)


def class_data(T: CosetTable) -> tuple[int, int]:
    """(normalizer_index, class_size) of the base stabilizer.

    Two points have equal stabilizers iff their BFS-canonical relabelings
    agree, so the class size is n divided by the number of such points;
    it also equals the index of the normalizer.
    """
    base_form = canonical_from(T.action, T.base)
    fixed = sum(
        1 for x in range(T.action.n) if canonical_from(T.action, x) == base_form
    )
    class_size = T.action.n // fixed
    assert class_size * fixed == T.action.n
    return class_size, class_size


def subgroup_contains(T: CosetTable, w: Word) -> bool:
    """Membership in the base stabilizer: w is in H iff w fixes the base."""
    from .actions import apply_word

    return apply_word(T.action, w, T.base) == T.base


def tables_conjugate(T1: CosetTable, T2: CosetTable) -> bool:
    """Whether the two base stabilizers are conjugate, i.e. the coset
    actions are isomorphic after some re-basing."""
    if T1.action.n != T2.action.n or T1.action.m != T2.action.m:
        return False
    base_form = canonical_from(T1.action, T1.base)
    return any(
        canonical_from(T2.action, x) == base_form for x in range(T2.action.n)
    )


def validate_table(T: CosetTable) -> None:
    """Raise unless the table satisfies its structural invariants."""
    from .actions import orbits

    if len(orbits(T.action)) != 1:
        raise ValueError("coset action is not transitive")
    if not is_solution(T.action, T.presentation.relators):
        raise ValueError("a relator does not act trivially")
    for w in T.subgroup_gens:
        if not subgroup_contains(T, w):
            raise ValueError(f"subgroup generator {w} does not fix the base")
    if T.base != 0:
        raise ValueError("canonical tables are based at 0")


def _commutator(i: int, j: int) -> Word:
    return Word((i, j, -i, -j))


def catalog(name: str, *params: int) -> Presentation | GroupDoc:
    """Standard presentations used throughout the test catalog.

    free(m); zn(m) (free abelian, all pairwise commutators); bs(1, n);
    dihedral(k); heisenberg (integer Heisenberg group); abels_doc(p)
    (documentation only: no presentation is recorded, so it cannot be
    enumerated).  Letters are positional: the first generator is "a",
    the second "b", and so on.
    """
    if name == "free":
        (m,) = params
        return Presentation(m, ())
    if name == "zn":
        (m,) = params
        rels = tuple(
            _commutator(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)
        )
        return Presentation(m, rels)
    if name == "bs":
        one, n = params
        if one != 1:
            raise ValueError("only bs(1, n) presentations are catalogued")
        # x y x^-1 y^-n, letters x = a, y = b
        tail = [-2] * n if n >= 0 else [2] * (-n)
        return Presentation(2, (W.reduce([1, 2, -1] + tail),))
    if name == "dihedral":
        (k,) = params
        if k < 1:
            raise ValueError("dihedral(k) needs k >= 1")
        return Presentation(
            2, (Word(tuple([1] * k)), Word((2, 2)), Word((1, 2, 1, 2)))
        )
    if name == "heisenberg":
        return Presentation(
            3,
            (
                W.reduce([1, 2, -1, -2, -3]),
                _commutator(1, 3),
                _commutator(2, 3),
            ),
        )
    if name == "abels_doc":
        (p,) = params
        return GroupDoc(
            name="abels_doc",
            params=(p,),
            description=(
                "Upper-triangular 4x4 matrices over Z[1/p] with diagonal "
                f"(1, p^m, p^n, 1), m, n integers, for p = {p}.  Finitely "
                "presented, solvable, residually finite; no finite "
                "presentation is recorded here, so this entry cannot be "
                "enumerated."
            ),
        )
    raise ValueError(f"unknown catalog name {name!r}")
