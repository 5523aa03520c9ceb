"""Acceptance suite: one test per criterion, each printing a pass/fail
line with its runtime against the stated budget.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete.  Every numeric check is exact rational arithmetic; the stated
wall-clock budgets are asserted too.
"""

import itertools
import random
import time
from fractions import Fraction
from math import ceil

import pytest

from permstab import actions as A
from permstab import words as W
from permstab.actions import FiniteAction, Permutation, canonical_from
from permstab.cosets import catalog, class_data, todd_coxeter, validate_table
from permstab.hyperfinite import check as hf_check, decompose
from permstab.irs import (
    AtomicIRS,
    amplify,
    build_cosofic_action,
    irs_of_action,
    shadow_profile,
)
from permstab.lab import make_challenge, repair, torus_action, validate_report
from permstab.metrics import (
    Bijection,
    d_gen_exact,
    d_gen_upper,
    gen_norm,
    local_profile,
    tv_distance,
)
from permstab.words import ConjugacyDecomposition, transfer_delta


def _rand_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def _rand_action(rng, n, m):
    return FiniteAction(n, tuple(_rand_perm(rng, n) for _ in range(m)))


def _rand_word(rng, m, length):
    return W.reduce(
        [rng.choice([i, -i]) for i in (rng.randint(1, m) for _ in range(length))]
    )


def _report(num: int, name: str, start: float, budget: float) -> None:
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {num:02d} {name}: PASS ({elapsed:.2f}s < {budget:g}s)")
    assert elapsed < budget, f"criterion {num} exceeded its {budget}s budget"


def test_c01_hamming_bi_invariant_metric():
    """1000 random triples in Sym(12): exact bi-invariance and metric
    axioms."""
    start = time.perf_counter()
    rng = random.Random(101)
    n = 12
    for _ in range(1000):
        s, t, u = (_rand_perm(rng, n) for _ in range(3))
        d = A.hamming(s, t)
        assert A.hamming(u.compose(s), u.compose(t)) == d
        assert A.hamming(s.compose(u), t.compose(u)) == d
        assert A.hamming(t, s) == d
        assert (d == 0) == (s == t)
        assert A.hamming(s, s) == 0
        assert A.hamming(s, u) <= d + A.hamming(t, u)
        assert 0 <= d <= 1
    _report(1, "hamming-bi-invariant-metric", start, 1.0)


def test_c02_evaluation_homomorphism():
    """500 random word pairs (length <= 8) on random actions n <= 20:
    evaluate(reduce(uv)) equals evaluate(u) composed with evaluate(v)."""
    start = time.perf_counter()
    rng = random.Random(102)
    for _ in range(500):
        n = rng.randint(1, 20)
        m = rng.randint(1, 2)
        X = _rand_action(rng, n, m)
        u = _rand_word(rng, m, rng.randint(0, 8))
        v = _rand_word(rng, m, rng.randint(0, 8))
        assert A.evaluate(X, u * v) == A.evaluate(X, u).compose(A.evaluate(X, v))
    _report(2, "evaluation-homomorphism", start, 1.0)


def test_c03_defect_transfer():
    """200 random decomposition sets with random actions n <= 50: whenever
    the q-word defect is within delta = delta_tilde / C, the target defect
    is within delta_tilde, exactly."""
    start = time.perf_counter()
    rng = random.Random(103)
    hits = 0
    for trial in range(200):
        decomps = []
        for _ in range(rng.randint(1, 2)):
            terms = []
            for _ in range(rng.randint(1, 3)):
                t = _rand_word(rng, 2, rng.randint(0, 3))
                q = _rand_word(rng, 2, rng.randint(1, 3))
                terms.append((t, q, rng.choice([1, -1])))
            target = W.Word()
            for t, q, eps in terms:
                qq = q if eps == 1 else q.inverse()
                target = target * t * qq * t.inverse()
            decomps.append(ConjugacyDecomposition(target, tuple(terms)))
        delta_tilde = Fraction(rng.randint(1, 10), rng.randint(10, 30))
        delta, e0 = transfer_delta(decomps, delta_tilde)
        n = rng.randint(2, 50)
        if trial % 3 == 0:
            X = A.trivial_action(2, n)  # exact, so the hypothesis holds
        elif trial % 3 == 1:
            gens = [list(range(n)), list(range(n))]
            g = rng.randrange(2)
            i, j = rng.sample(range(n), 2)
            gens[g][i], gens[g][j] = gens[g][j], gens[g][i]
            X = FiniteAction(n, tuple(Permutation(tuple(p)) for p in gens))
        else:
            X = _rand_action(rng, n, 2)
        if A.defect(X, e0) <= delta:
            hits += 1
            targets = {d.target for d in decomps}
            assert A.defect(X, targets) <= delta_tilde
    assert hits >= 60, f"only {hits} non-vacuous instances"
    _report(3, "defect-transfer", start, 5.0)


def test_c04_dgen_oracle_equivalence():
    """100 random pairs n <= 6, m <= 2: branch-and-bound equals exhaustive
    enumeration over all bijections, and the heuristic upper bound
    dominates."""
    start = time.perf_counter()
    rng = random.Random(104)
    for _ in range(100):
        n = rng.randint(1, 6)
        m = rng.randint(1, 2)
        X, Y = _rand_action(rng, n, m), _rand_action(rng, n, m)
        exact = d_gen_exact(X, Y)
        brute = min(
            gen_norm(Bijection(p), X, Y)
            for p in itertools.permutations(range(n))
        )
        assert exact == brute
        upper, witness = d_gen_upper(X, Y, restarts=3, seed=7)
        assert upper == gen_norm(witness, X, Y)
        assert upper >= exact
    _report(4, "dgen-oracle-equivalence", start, 30.0)


def test_c05_locality_bound():
    """100 random pairs n <= 60, m = 2, random bijections: the radius-r
    total variation is bounded by (2m)^(r+1) * m * gen_norm(f), exactly,
    for r <= 3."""
    start = time.perf_counter()
    rng = random.Random(105)
    m = 2
    for trial in range(100):
        n = rng.randint(2, 60)
        X = _rand_action(rng, n, m)
        gens = [list(g.images) for g in X.gens]
        for _ in range(rng.randint(0, 4)):
            g = rng.randrange(m)
            i, j = rng.sample(range(n), 2)
            gens[g][i], gens[g][j] = gens[g][j], gens[g][i]
        Y = FiniteAction(n, tuple(Permutation(tuple(p)) for p in gens))
        images = list(range(n))
        if trial % 4 == 0:
            rng.shuffle(images)
        f = Bijection(tuple(images))
        norm = gen_norm(f, X, Y)
        px, py = local_profile(X, 3), local_profile(Y, 3)
        for r in (1, 2, 3):
            tv = tv_distance(px.level(r), py.level(r))
            assert tv <= (2 * m) ** (r + 1) * m * norm
    _report(5, "locality-bound", start, 10.0)


def _mulclose(gens):
    els = set(gens)
    frontier = list(els)
    while frontier:
        nxt = []
        for a in gens:
            for b in frontier:
                c = a.compose(b)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return els


def _coset_oracle(group, subgroup_gens, gen_perms):
    H = _mulclose(list(subgroup_gens) + [Permutation.identity(gen_perms[0].n)])
    cosets, seen = [], set()
    for g in sorted(group, key=lambda p: p.images):
        key = frozenset(g.compose(h) for h in H)
        if key not in seen:
            seen.add(key)
            cosets.append(key)
    index = {c: i for i, c in enumerate(cosets)}

    def left(perm):
        images = []
        for c in cosets:
            rep = next(iter(c))
            target = perm.compose(rep)
            images.append(index[next(k for k in cosets if target in k)])
        return Permutation(tuple(images))

    return FiniteAction(len(cosets), tuple(left(p) for p in gen_perms))


def test_c06_coset_enumeration_goldens():
    """Three enumerations against independent brute-force closures."""
    start = time.perf_counter()

    # dihedral group of order 6 built explicitly inside Sym(3)
    r, s = Permutation((1, 2, 0)), Permutation((1, 0, 2))
    group = _mulclose([r, s])
    assert len(group) == 6
    expected = _coset_oracle(group, [s], [r, s])
    T = todd_coxeter(catalog("dihedral", 3), (W.from_str("b"),))
    validate_table(T)
    assert T.index == 3
    assert any(
        canonical_from(T.action, 0) == canonical_from(expected, x)
        for x in range(3)
    )
    assert class_data(T) == (3, 3)

    # free abelian on two letters mod <a, b^3>: the quotient is Z/3
    expected = FiniteAction(3, (Permutation((0, 1, 2)), Permutation((1, 2, 0))))
    T = todd_coxeter(catalog("zn", 2), (W.from_str("a"), W.from_str("bbb")))
    validate_table(T)
    assert T.index == 3
    assert canonical_from(T.action, 0) == canonical_from(expected, 0)
    assert class_data(T) == (1, 1)

    # bs(1,2) mod <y, x^3>: x -> +1 mod 3, y -> 0 kills the subgroup, so
    # the index is at least 3; completion at 3 cosets certifies equality
    expected = FiniteAction(3, (Permutation((1, 2, 0)), Permutation((0, 1, 2))))
    T = todd_coxeter(catalog("bs", 1, 2), (W.from_str("b"), W.from_str("aaa")))
    validate_table(T)
    assert T.index == 3
    assert canonical_from(T.action, 0) == canonical_from(expected, 0)

    _report(6, "coset-enumeration-goldens", start, 3.0)


def _profile_close(prof, shadow, radius, bound):
    for r in range(1, radius + 1):
        keys = set(prof.level(r)) | set(shadow.level(r))
        for key in keys:
            a = prof.level(r).get(key, Fraction(0))
            b = shadow.level(r).get(key, Fraction(0))
            assert abs(a - b) <= bound, (r, key, a, b, bound)


def test_c07_construction_bounds():
    """Cylinder bounds for the finite IRS models: 1/n after building at
    precision n, and 2|X|/target after amplifying to each target."""
    start = time.perf_counter()
    d3 = todd_coxeter(catalog("dihedral", 3), (W.from_str("b"),))
    z2 = todd_coxeter(catalog("free", 1), (W.from_str("aa"),))
    z3 = todd_coxeter(catalog("free", 1), (W.from_str("aaa"),))
    examples = [
        AtomicIRS(((d3, Fraction(1)),)),
        AtomicIRS(((z2, Fraction(1, 2)), (z3, Fraction(1, 2)))),
    ]
    for mu in examples:
        shadow = shadow_profile(mu, 2)
        for n in (1, 5, 25):
            X = build_cosofic_action(mu, n)
            _profile_close(local_profile(X, 2), shadow, 2, Fraction(1, n))
            for target in (17, 100, 1001):
                Y = amplify(X, target)
                _profile_close(
                    local_profile(Y, 2),
                    local_profile(X, 2),
                    2,
                    Fraction(2 * X.n, target),
                )
    _report(7, "construction-bounds", start, 5.0)


def test_c08_hyperfinite_cycle_certificate():
    """1000-cycle at epsilon 1/20: at most 50 removals, components at most
    20, checker passes."""
    start = time.perf_counter()
    X = torus_action([1000])
    eps = Fraction(1, 20)
    d = decompose(X, eps)
    assert len(d.removed) <= 50
    assert d.K <= 20
    assert hf_check(X, d)
    assert d.K <= ceil(1 / eps)
    _report(8, "hyperfinite-cycle-certificate", start, 1.0)


def test_c09_end_to_end_repair():
    """8x8 torus, k in {1,2}, 50 seeds each: descent reaches an exact
    solution no farther than the planted baseline on at least 80% of
    seeds, and no report ever claims an unchecked success."""
    start = time.perf_counter()
    X = torus_action([8, 8])
    relators = [W.from_str("abAB")]
    for k in (1, 2):
        good = 0
        for seed in range(50):
            c = make_challenge(X, relators, k, seed=seed)
            report = repair(c, "descent")
            assert validate_report(c, report)  # hard criterion
            if report.succeeded:
                assert A.is_solution(report.solution, c.relator_set)
                baseline = repair(c, "planted")
                assert validate_report(c, baseline)
                if report.distance <= baseline.distance:
                    good += 1
        assert good >= 40, f"k={k}: only {good}/50 within the planted baseline"
    _report(9, "end-to-end-repair", start, 60.0)


def test_c10_irs_representation_coherence():
    """For every catalog coset action used above, the action's trace
    profile at radius 3 equals the atomic IRS's cylinder shadow exactly."""
    start = time.perf_counter()
    tables = [
        todd_coxeter(catalog("dihedral", 3), (W.from_str("b"),)),
        todd_coxeter(catalog("zn", 2), (W.from_str("a"), W.from_str("bbb"))),
        todd_coxeter(catalog("bs", 1, 2), (W.from_str("b"), W.from_str("aaa"))),
        todd_coxeter(catalog("free", 1), (W.from_str("aa"),)),
        todd_coxeter(catalog("free", 1), (W.from_str("aaa"),)),
    ]
    for T in tables:
        mu = AtomicIRS(((T, Fraction(1)),))
        assert irs_of_action(T.action, 3).profile == shadow_profile(mu, 3)
    _report(10, "irs-representation-coherence", start, 5.0)
