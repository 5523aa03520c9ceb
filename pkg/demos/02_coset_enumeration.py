#!/usr/bin/env python3
"""Coset enumeration and conjugacy statistics.

Todd-Coxeter turns a presentation plus subgroup generators into the
transitive coset action, canonically numbered so runs are reproducible.
"""

from permstab import (
    BudgetExhausted,
    catalog,
    class_data,
    conjugate_table,
    from_str,
    todd_coxeter,
)

# the dihedral group of order 6, modulo the reflection subgroup <s>
P = catalog("dihedral", 3)
print("relators:", [str(w) for w in P.relators])
T = todd_coxeter(P, (from_str("b"),))
print("index of <s> in D3:", T.index)
for i, g in enumerate(T.action.gens):
    print(f"  generator {chr(ord('a') + i)} acts as {g.images}")

size, norm_index = class_data(T)
print("conjugates of <s>:", size, "(self-normalizing)", "normalizer index:", norm_index)

# re-basing at r.H represents the conjugate subgroup r<s>r^-1
C = conjugate_table(T, from_str("a"))
print("conjugate subgroup generators:", [str(w) for w in C.subgroup_gens])

# free abelian rank 2 modulo <a, b^3>: a three-point rotation
T = todd_coxeter(catalog("zn", 2), (from_str("a"), from_str("bbb")))
print("\nzn(2) mod <a, b^3>: index", T.index, "class size", class_data(T)[1])

# bs(1,2) = <x, y | x y x^-1 = y^2> modulo <y, x^3>; the subgroup contains
# the normal closure of y, so the quotient is the 3-cycle on x
T = todd_coxeter(catalog("bs", 1, 2), (from_str("b"), from_str("aaa")))
print("bs(1,2) mod <y, x^3>: index", T.index)

# an infinite-index target exhausts its budget instead of finishing;
# too-small budgets and infinite indexes are indistinguishable by design
try:
    todd_coxeter(catalog("free", 2), (), max_cosets=100)
except BudgetExhausted as e:
    print("\nfree group, trivial subgroup:", e)

# the Abels entry is documentation only: no presentation is recorded
doc = catalog("abels_doc", 5)
print("\nabels_doc(5) enumerable?", doc.enumerable)
print(doc.description)
