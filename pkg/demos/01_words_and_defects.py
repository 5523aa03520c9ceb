#!/usr/bin/env python3
"""Words, balls, and relator defects.

Free-group words are written "abAB": lowercase letters are generators,
uppercase their inverses.  A finite action is one permutation per letter;
its defect on a relator set measures how far it is from satisfying the
relations exactly.
"""

from fractions import Fraction

from permstab import (
    ConjugacyDecomposition,
    FiniteAction,
    Permutation,
    ball,
    defect,
    evaluate,
    fixed_fraction,
    from_str,
    is_solution,
    reduce,
    transfer_delta,
    verify_decomposition,
)

# free reduction removes cancelling adjacent pairs
w = reduce([1, 2, -2, -1, 1])
print("reduce(a b B A a) =", w)  # -> a

# the shortlex ball: identity first, then s1, s1^-1, s2, s2^-1, ...
print("ball(m=2, r=1):", [str(x) or "1" for x in ball(2, 1)])
print("|ball(m=2, r=2)| =", len(ball(2, 2)))  # 1 + 4 + 12 = 17

# two permutations that do not commute: the commutator moves every point
X = FiniteAction(3, (Permutation((1, 0, 2)), Permutation((0, 2, 1))))
commutator = from_str("abAB")
print("\ncommutator acts as", evaluate(X, commutator).images)
print("defect =", defect(X, [commutator]))
print("fixed fraction =", fixed_fraction(X, commutator))
print("is_solution:", is_solution(X, [commutator]))

# equal transpositions commute
Y = FiniteAction(2, (Permutation((1, 0)), Permutation((1, 0))))
print("equal swaps solve the commutator:", is_solution(Y, [commutator]))

# a tolerance transfers through conjugacy decompositions: writing a target
# word as a product of conjugated relators scales delta by the term count
target = from_str("a") * from_str("b") * from_str("A")
d = ConjugacyDecomposition(target, ((from_str("a"), from_str("b"), 1),))
assert verify_decomposition(d)
delta, e0 = transfer_delta([d], Fraction(3, 10))
print("\ntransfer: delta_tilde=3/10 with C=1 term ->", delta, "on", sorted(map(str, e0)))
