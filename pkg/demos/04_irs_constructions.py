#!/usr/bin/env python3
"""Atomic invariant random subgroups and their finite models.

An atomic IRS is a weighted set of conjugacy classes of finite-index
subgroups; conjugation-invariance is built in because each class spreads
its weight uniformly over its conjugates.  Finite actions shadow an IRS
through their stabilizer-trace statistics, and the two representations
must agree exactly wherever both are defined.
"""

from fractions import Fraction

from permstab import (
    AtomicIRS,
    amplify,
    build_cosofic_action,
    catalog,
    cylinder_measure,
    from_str,
    irs_of_action,
    local_profile,
    normal_chain_irs,
    shadow_profile,
    stabilizer_trace,
    todd_coxeter,
    weakstar_dist_trunc,
)
from permstab.words import Word

# the class of the reflection subgroup <s> in the dihedral group D3
d3 = todd_coxeter(catalog("dihedral", 3), (from_str("b"),))
mu = AtomicIRS(((d3, Fraction(1)),))

# of the three conjugates, exactly one contains the reflection itself
base_trace = stabilizer_trace(d3.action, 0, 1)
print("trace of the base stabilizer at r=1:", base_trace)
print("cylinder measure of that trace:", cylinder_measure(mu, 1, base_trace))

# both IRS representations agree: per-point statistics versus
# per-conjugate cylinder measures
assert irs_of_action(d3.action, 3).profile == shadow_profile(mu, 3)
print("action profile == cylinder shadow: True")

# a mixed IRS over the free group on one letter: the index-2 and index-3
# subgroup classes, half weight each
z2 = todd_coxeter(catalog("free", 1), (from_str("aa"),))
z3 = todd_coxeter(catalog("free", 1), (from_str("aaa"),))
mixed = AtomicIRS(((z2, Fraction(1, 2)), (z3, Fraction(1, 2))))

# finite models: coarse precision gives a small action, finer precision
# shrinks every cylinder deviation below 1/n
for n in (1, 5, 25):
    X = build_cosofic_action(mixed, n)
    dist = weakstar_dist_trunc(irs_of_action(X, 2), mixed, 2)
    print(f"precision n={n:2d}: model on {X.n:2d} points, cylinder distance {dist}")

# amplification pads a model to any larger size with trivially-acted
# points, moving each cylinder by less than 2|X|/target
X = build_cosofic_action(mixed, 5)
for target in (17, 100, 1001):
    Y = amplify(X, target)
    worst = weakstar_dist_trunc(irs_of_action(Y, 2), irs_of_action(X, 2), 2)
    print(f"amplify to {target}: cylinder distance {worst} (bound {Fraction(2 * X.n, target)})")

# a chain of normal subgroups of the normalizer yields finite-index IRSs
# converging to the class-uniform IRS; here the chain is <s> itself
reps = [Word(), from_str("a"), from_str("aa")]
(nu,) = normal_chain_irs(d3, [d3], reps)
print("\nchain IRS matches the class-uniform IRS:",
      weakstar_dist_trunc(nu, mu, 3) == 0)
