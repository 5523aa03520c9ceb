"""Finite sets acted on by the free group: permutation tuples, word
evaluation, Hamming defects, and the disjoint-union algebra.

Points are 0-based dense integers.  Word evaluation uses the left-action
convention (uv).x = u.(v.x); all ratios are exact fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .words import Word, ball


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {0..n-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        seen = [False] * n
        for y in self.images:
            if not isinstance(y, int) or not 0 <= y < n or seen[y]:
                raise ValueError("images do not form a bijection of {0..n-1}")
            seen[y] = True

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(self.images[y] for y in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images))

    def swap_images(self, i: int, j: int) -> "Permutation":
        """New permutation with the images at points i and j exchanged."""
        imgs = list(self.images)
        imgs[i], imgs[j] = imgs[j], imgs[i]
        return Permutation(tuple(imgs))


@dataclass(frozen=True, slots=True)
class FiniteAction:
    """An action of the free group on n points: one permutation per letter."""

    n: int
    gens: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        for g in self.gens:
            if g.n != self.n:
                raise ValueError("generator degree differs from point count")

    @property
    def m(self) -> int:
        return len(self.gens)

    def letter_perm(self, v: int) -> Permutation:
        """Permutation of the signed letter v (negative = inverse)."""
        if not 1 <= abs(v) <= self.m:
            raise ValueError(f"letter index {v} out of range for m={self.m}")
        g = self.gens[abs(v) - 1]
        return g if v > 0 else g.inverse()


def evaluate(X: FiniteAction, w: Word) -> Permutation:
    """The substitution homomorphism: w.x applies w's letters right to left."""
    perm = Permutation.identity(X.n)
    for v in w:
        perm = perm.compose(X.letter_perm(v))
    return perm


def apply_word(X: FiniteAction, w: Word, x: int) -> int:
    """w.x for a single point, without building the full permutation."""
    for v in reversed(w.letters):
        x = X.letter_perm(v).images[x]
    return x


def hamming(p: Permutation, q: Permutation) -> Fraction:
    """Normalized Hamming distance: fraction of points where p and q differ."""
    if p.n != q.n:
        raise ValueError("size mismatch")
    if p.n == 0:
        return Fraction(0)
    moved = sum(1 for a, b in zip(p.images, q.images) if a != b)
    return Fraction(moved, p.n)


def tuple_distance(X: FiniteAction, Y: FiniteAction) -> Fraction:
    """Sum of per-generator Hamming distances; range [0, m]."""
    if X.n != Y.n or X.m != Y.m:
        raise ValueError("size mismatch")
    return sum(
        (hamming(a, b) for a, b in zip(X.gens, Y.gens)), start=Fraction(0)
    )


def defect(X: FiniteAction, relators: Iterable[Word]) -> Fraction:
    """Summed Hamming distance of each relator's action from the identity.

    X is a delta-solution for the relator system iff defect(X, E) <= delta.
    """
    ident = Permutation.identity(X.n)
    total = Fraction(0)
    for w in set(relators):
        total += hamming(evaluate(X, w), ident)
    return total


def fixed_fraction(X: FiniteAction, w: Word) -> Fraction:
    """Fraction of points fixed by the word's permutation."""
    if X.n == 0:
        return Fraction(1)
    perm = evaluate(X, w)
    return Fraction(sum(1 for x, y in enumerate(perm.images) if x == y), X.n)


def is_solution(X: FiniteAction, relators: Iterable[Word]) -> bool:
    return defect(X, relators) == 0


def disjoint_union(X: FiniteAction, Y: FiniteAction) -> FiniteAction:
    """Concatenate point sets, X's points first."""
    if X.m != Y.m:
        raise ValueError("generator count mismatch")
    gens = tuple(
        Permutation(a.images + tuple(y + X.n for y in b.images))
        for a, b in zip(X.gens, Y.gens)
    )
    return FiniteAction(X.n + Y.n, gens)


def power(X: FiniteAction, k: int) -> FiniteAction:
    """Disjoint union of k copies of X."""
    if k < 0:
        raise ValueError("k must be >= 0")
    gens = tuple(
        Permutation(tuple(c * X.n + y for c in range(k) for y in g.images))
        for g in X.gens
    )
    return FiniteAction(k * X.n, gens)


def trivial_action(m: int, r: int) -> FiniteAction:
    """r points fixed by every generator."""
    if r < 0:
        raise ValueError("r must be >= 0")
    ident = Permutation.identity(r)
    return FiniteAction(r, tuple(ident for _ in range(m)))


def orbits(X: FiniteAction) -> tuple[tuple[int, ...], ...]:
    """Connected components under all generators, each sorted, ordered by
    smallest member."""
    seen = [False] * X.n
    out = []
    images = [g.images for g in X.gens] + [g.inverse().images for g in X.gens]
    for start in range(X.n):
        if seen[start]:
            continue
        comp = []
        stack = [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for imgs in images:
                y = imgs[x]
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    return tuple(out)


def ball_images(X: FiniteAction, r: int) -> list[tuple[int, ...]]:
    """Image arrays of every ball(r) word, in ball order.

    Computed incrementally: each nonempty ball word is prefix + letter, and
    appending a letter on the right composes on the point side first.
    """
    bwords = ball(X.m, r)
    index: dict[tuple[int, ...], int] = {w.letters: i for i, w in enumerate(bwords)}
    letter_images = {
        v: X.letter_perm(v).images for i in range(1, X.m + 1) for v in (i, -i)
    }
    tables: list[tuple[int, ...]] = [tuple(range(X.n))]
    for w in bwords[1:]:
        prefix = tables[index[w.letters[:-1]]]
        last = letter_images[w.letters[-1]]
        tables.append(tuple(prefix[y] for y in last))
    return tables


def stabilizer_trace(X: FiniteAction, x: int, r: int) -> tuple[int, ...]:
    """Indices into ball(r) of the words fixing the point x.

    Always contains index 0 (the identity word).
    """
    if not 0 <= x < X.n:
        raise ValueError(f"point {x} out of range")
    return tuple(
        i for i, images in enumerate(ball_images(X, r)) if images[x] == x
    )


def all_traces(X: FiniteAction, r: int) -> list[tuple[int, ...]]:
    """stabilizer_trace for every point, sharing one ball evaluation."""
    tables = ball_images(X, r)
    traces: list[list[int]] = [[] for _ in range(X.n)]
    for i, images in enumerate(tables):
        for x in range(X.n):
            if images[x] == x:
                traces[x].append(i)
    return [tuple(t) for t in traces]


def bfs_order(X: FiniteAction, root: int) -> list[int]:
    """Breadth-first point order from root, edges scanned s1, s1^-1, s2, ...

    Covers only the root's orbit; the canonical numbering used by coset
    tables and pointed-isomorphism tests.
    """
    images = []
    for g in X.gens:
        images.append(g.images)
        images.append(g.inverse().images)
    order = [root]
    seen = [False] * X.n
    seen[root] = True
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for imgs in images:
            y = imgs[x]
            if not seen[y]:
                seen[y] = True
                order.append(y)
    return order


def relabel(X: FiniteAction, order: Sequence[int]) -> FiniteAction:
    """Rename points so order[k] becomes k; order must list every point."""
    if len(order) != X.n:
        raise ValueError("order must enumerate all points")
    new_index = [0] * X.n
    for k, x in enumerate(order):
        new_index[x] = k
    gens = tuple(
        Permutation(tuple(new_index[g.images[x]] for x in order)) for g in X.gens
    )
    return FiniteAction(X.n, gens)


def canonical_from(X: FiniteAction, root: int) -> FiniteAction:
    """The action relabeled by BFS from root; equal outputs characterize
    pointed isomorphism (and hence point-stabilizer equality within one
    transitive action)."""
    return relabel(X, bfs_order(X, root))
