#!/usr/bin/env python3
"""Hyperfinite decompositions of Schreier graphs.

Removing an epsilon-fraction of vertices should shatter the graph into
small components.  The tiler guarantees the budget unconditionally and
reports the exact largest component; the checker recomputes everything
from scratch, so the certificate is honest even when K is poor.
"""

from fractions import Fraction

from permstab import check, decompose, torus_action, trivial_action

# a 100-cycle at epsilon = 1/10: every tenth vertex is removed
cycle = torus_action([100])
d = decompose(cycle, Fraction(1, 10))
print("cycle of 100, epsilon 1/10:")
print("  removed", sorted(d.removed))
print("  largest component", d.K)
print("  checker:", check(cycle, d))

# tighter epsilon on a long cycle
long_cycle = torus_action([1000])
d = decompose(long_cycle, Fraction(1, 20))
print(f"\ncycle of 1000, epsilon 1/20: |Z|={len(d.removed)}, K={d.K}")

# a torus needs to cut in both directions; the budget still holds and the
# certificate reports exactly what was achieved
torus = torus_action([12, 12])
for denom in (4, 8, 16):
    d = decompose(torus, Fraction(1, denom))
    print(f"12x12 torus, epsilon 1/{denom}: |Z|={len(d.removed)}, K={d.K}, "
          f"ok={check(torus, d)}")

# graphs that are already shattered need no removals at all
d = decompose(trivial_action(2, 50), Fraction(1, 7))
print("\ntrivial action:", f"|Z|={len(d.removed)}, K={d.K}")

# a tampered certificate is rejected
from permstab import Decomposition

honest = decompose(cycle, Fraction(1, 10))
forged = Decomposition(honest.removed, honest.K - 1, honest.epsilon_used)
print("forged K rejected:", not check(cycle, forged))
