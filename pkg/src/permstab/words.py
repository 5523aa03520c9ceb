"""Reduced words over a fixed free basis.

Letters are signed 1-based generator indices: ``+i`` is the i-th basis
letter, ``-i`` its inverse.  Words serialize as strings with lowercase
letters for generators and uppercase for their inverses ("abAB" is
letter1 letter2 inverse1 inverse2), which caps the basis size at 26.

The ball enumeration is shortlex: length-major, and within a length
lexicographic with the letter order s1 < s1^-1 < s2 < s2^-1 < ...  Every
trace and cylinder computation indexes into this one enumeration, so the
order is part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

MAX_BASIS = 26


def _letter_rank(v: int) -> int:
    # s1 < s1^-1 < s2 < s2^-1 < ...
    return 2 * (abs(v) - 1) + (0 if v > 0 else 1)


@dataclass(frozen=True, slots=True)
class Word:
    """A reduced word; the empty tuple is the identity."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for v in self.letters:
            if not isinstance(v, int) or v == 0:
                raise ValueError("letters are nonzero signed integers")
        for u, v in zip(self.letters, self.letters[1:]):
            if u == -v:
                raise ValueError("word is not reduced")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return reduce(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-v for v in reversed(self.letters)))

    @property
    def max_index(self) -> int:
        """Largest generator index used; 0 for the identity word."""
        return max((abs(v) for v in self.letters), default=0)

    def __str__(self) -> str:
        return to_str(self)

    def __repr__(self) -> str:
        return f"Word({to_str(self)!r})"


IDENTITY = Word()


def reduce(letters: Sequence[int], m: int | None = None) -> Word:
    """Freely reduce a raw signed-index sequence.

    Idempotent and length-nonincreasing; raises on indices outside
    1..m when ``m`` is given.
    """
    stack: list[int] = []
    for v in letters:
        if v == 0:
            raise ValueError("letter index 0 is invalid")
        if m is not None and abs(v) > m:
            raise ValueError(f"letter index {v} out of range for basis size {m}")
        if stack and stack[-1] == -v:
            stack.pop()
        else:
            stack.append(v)
    return Word(tuple(stack))


def from_str(s: str) -> Word:
    """Parse "abAB"-style notation, reducing the result."""
    letters = []
    for ch in s:
        if ch.islower():
            letters.append(ord(ch) - ord("a") + 1)
        elif ch.isupper():
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise ValueError(f"invalid word character {ch!r}")
    return reduce(letters)


def to_str(w: Word) -> str:
    out = []
    for v in w.letters:
        i = abs(v)
        if i > MAX_BASIS:
            raise ValueError(f"letter index {i} exceeds the 26-letter string format")
        out.append(chr(ord("a") + i - 1) if v > 0 else chr(ord("A") + i - 1))
    return "".join(out)


def ball_sizes(m: int, r: int) -> list[int]:
    """Cumulative sizes |ball(k)| for k = 0..r."""
    sizes = [1]
    count = 1
    layer = 1
    for k in range(1, r + 1):
        layer = 2 * m if k == 1 else layer * (2 * m - 1)
        count += layer
        sizes.append(count)
    return sizes


def ball(m: int, r: int) -> list[Word]:
    """All reduced words of length <= r over m letters, in shortlex order.

    ball(r) is a prefix of ball(r+1); index 0 is always the identity.
    """
    if m < 1:
        raise ValueError("basis size must be >= 1")
    if r < 0:
        raise ValueError("radius must be >= 0")
    letters = sorted(
        [v for i in range(1, m + 1) for v in (i, -i)], key=_letter_rank
    )
    out: list[Word] = [IDENTITY]
    prev: list[tuple[int, ...]] = [()]
    for _ in range(r):
        layer: list[tuple[int, ...]] = []
        for stem in prev:
            for v in letters:
                if stem and stem[-1] == -v:
                    continue
                layer.append(stem + (v,))
        out.extend(Word(t) for t in layer)
        prev = layer
    return out


@dataclass(frozen=True, slots=True)
class ConjugacyDecomposition:
    """A product expression target = prod_i t_i q_i^{e_i} t_i^{-1}."""

    target: Word
    terms: tuple[tuple[Word, Word, int], ...]

    def __post_init__(self) -> None:
        for _, _, eps in self.terms:
            if eps not in (1, -1):
                raise ValueError("term exponent must be +1 or -1")


def verify_decomposition(d: ConjugacyDecomposition) -> bool:
    """True iff the reduced product of the terms equals the target."""
    prod = IDENTITY
    for t, q, eps in d.terms:
        factor = q if eps == 1 else q.inverse()
        prod = prod * t * factor * t.inverse()
    return prod == d.target


def transfer_delta(
    decomps: Iterable[ConjugacyDecomposition], delta_tilde: Fraction
) -> tuple[Fraction, frozenset[Word]]:
    """Scale a defect tolerance through conjugacy decompositions.

    With C the total number of terms across all decompositions, returns
    delta = delta_tilde / C and the set of q-words.  Any finite action
    whose defect on the q-words is <= delta has defect <= delta_tilde on
    the targets.  C = 0 returns (delta_tilde, empty set).
    """
    delta_tilde = Fraction(delta_tilde)
    if delta_tilde <= 0:
        raise ValueError("delta_tilde must be positive")
    total_terms = 0
    q_words: set[Word] = set()
    for d in decomps:
        if not verify_decomposition(d):
            raise ValueError(f"decomposition for {to_str(d.target)!r} does not verify")
        total_terms += len(d.terms)
        q_words.update(q for _, q, _ in d.terms)
    if total_terms == 0:
        return delta_tilde, frozenset()
    return delta_tilde / total_terms, frozenset(q_words)
