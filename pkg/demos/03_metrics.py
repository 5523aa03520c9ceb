#!/usr/bin/env python3
"""Two ways of comparing finite actions.

The generator-metric minimizes, over all bijections between the point
sets, the average fraction of points where the bijection fails to
intertwine a generator.  The statistical metric ignores bijections and
compares the empirical distributions of stabilizer traces (which words of
each length fix a point), weighted 2^-r per radius.
"""

from fractions import Fraction

from permstab import (
    FiniteAction,
    Permutation,
    d_gen_exact,
    d_gen_upper,
    d_stat_trunc,
    gen_norm,
    local_profile,
    power,
    trivial_action,
)
from permstab.metrics import Bijection


def act(n, *gens):
    return FiniteAction(n, tuple(Permutation(tuple(g)) for g in gens))


# a double swap versus a single swap on four points
X = act(4, [1, 0, 3, 2])
Y = act(4, [1, 0, 2, 3])
print("gen_norm under the identity:", gen_norm(Bijection.identity(4), X, Y))
print("d_gen (exact, branch and bound):", d_gen_exact(X, Y))
value, witness = d_gen_upper(X, Y, restarts=8, seed=0)
print("d_gen upper bound (heuristic):", value, "witness", witness.images)

# the exact solver is a small quadratic-assignment search, capped by size
big = act(9, list(range(1, 9)) + [0])
try:
    d_gen_exact(big, big)
except ValueError as e:
    print("size cap:", e)

# trace profiles: the trivial action is fixed by every word, a swap only
# by the identity at radius 1
swap = act(2, [1, 0])
print("\nswap profile at r=1:", dict(local_profile(swap, 1).level(1)))
print("trivial profile at r=1:", dict(local_profile(trivial_action(1, 2), 1).level(1)))
print("d_stat(swap, trivial, R=1) =", d_stat_trunc(swap, trivial_action(1, 2), 1))

# statistics cannot see multiplicity: an action and its disjoint powers
# are statistically identical
X = act(3, [1, 2, 0])
print("d_stat(X, 4 disjoint copies of X) =", d_stat_trunc(X, power(X, 4), 3))
