import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_action, random_word
from permstab import actions as A
from permstab import words as W
from permstab.actions import FiniteAction, Permutation
from permstab.metrics import (
    Bijection,
    d_gen_exact,
    d_gen_exact_witness,
    d_gen_upper,
    d_stat_trunc,
    gen_norm,
    local_profile,
    profile_distance,
    tv_distance,
)


def act(n, *gens):
    return FiniteAction(n, tuple(Permutation(tuple(g)) for g in gens))


def exhaustive_d_gen(X, Y):
    """Oracle: minimum of gen_norm over every bijection."""
    return min(
        gen_norm(Bijection(p), X, Y)
        for p in itertools.permutations(range(X.n))
    )


class TestGenNorm:
    def test_identity_on_equal_actions(self, rng):
        X = random_action(rng, 5, 2)
        assert gen_norm(Bijection.identity(5), X, X) == 0

    def test_full_mismatch(self):
        X = act(2, [1, 0])
        Y = act(2, [0, 1])
        assert gen_norm(Bijection.identity(2), X, Y) == 1

    def test_half_mismatch(self):
        X = act(4, [1, 0, 3, 2])
        Y = act(4, [1, 0, 2, 3])
        assert gen_norm(Bijection.identity(4), X, Y) == Fraction(1, 2)

    def test_inverse_symmetry(self, rng):
        for _ in range(40):
            n = rng.randint(1, 7)
            X, Y = random_action(rng, n, 2), random_action(rng, n, 2)
            images = list(range(n))
            rng.shuffle(images)
            f = Bijection(tuple(images))
            assert gen_norm(f, X, Y) == gen_norm(f.inverse(), Y, X)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            gen_norm(Bijection.identity(2), act(2, [0, 1]), act(3, [0, 1, 2]))


class TestDGenExact:
    def test_equal_actions(self, rng):
        X = random_action(rng, 6, 2)
        assert d_gen_exact(X, X) == 0

    def test_swap_vs_trivial(self):
        assert d_gen_exact(act(2, [1, 0]), act(2, [0, 1])) == 1

    def test_double_swap_vs_single(self):
        assert d_gen_exact(act(4, [1, 0, 3, 2]), act(4, [1, 0, 2, 3])) == Fraction(1, 2)

    def test_matches_exhaustive(self, rng):
        for _ in range(60):
            n = rng.randint(1, 5)
            m = rng.randint(1, 2)
            X, Y = random_action(rng, n, m), random_action(rng, n, m)
            value, witness = d_gen_exact_witness(X, Y)
            assert value == exhaustive_d_gen(X, Y)
            assert value == gen_norm(witness, X, Y)

    def test_zero_iff_isomorphic(self, rng):
        X = random_action(rng, 5, 2)
        images = list(range(5))
        rng.shuffle(images)
        pi = Permutation(tuple(images))
        Y = FiniteAction(5, tuple(
            pi.compose(g).compose(pi.inverse()) for g in X.gens
        ))
        assert d_gen_exact(X, Y) == 0

    def test_metric_axioms_small(self, rng):
        for _ in range(15):
            n = 4
            X, Y, Z = (random_action(rng, n, 2) for _ in range(3))
            dxy = d_gen_exact(X, Y)
            assert dxy == d_gen_exact(Y, X)
            assert dxy <= d_gen_exact(X, Z) + d_gen_exact(Z, Y)

    def test_size_cap(self, rng):
        X = random_action(rng, 9, 1)
        with pytest.raises(ValueError):
            d_gen_exact(X, X)


class TestDGenUpper:
    def test_equal_actions_reach_zero(self, rng):
        X = random_action(rng, 8, 2)
        value, witness = d_gen_upper(X, X, restarts=4, seed=1)
        assert value == 0
        assert gen_norm(witness, X, X) == 0

    def test_upper_bound_contract(self, rng):
        for _ in range(30):
            n = rng.randint(1, 6)
            X, Y = random_action(rng, n, 2), random_action(rng, n, 2)
            value, witness = d_gen_upper(X, Y, restarts=4, seed=7)
            assert value == gen_norm(witness, X, Y)
            assert value >= d_gen_exact(X, Y)

    def test_reaches_optimum_on_small_example(self):
        X = act(4, [1, 0, 3, 2])
        Y = act(4, [1, 0, 2, 3])
        value, _ = d_gen_upper(X, Y, restarts=8, seed=0)
        assert value == Fraction(1, 2)

    def test_deterministic_given_seed(self, rng):
        X, Y = random_action(rng, 7, 2), random_action(rng, 7, 2)
        assert d_gen_upper(X, Y, 6, seed=3) == d_gen_upper(X, Y, 6, seed=3)


class TestLocalProfile:
    def test_trivial_action_single_trace(self):
        Z = A.trivial_action(2, 4)
        p = local_profile(Z, 2)
        for r in (1, 2):
            full = tuple(range(len(W.ball(2, r))))
            assert p.level(r) == {full: Fraction(1)}

    def test_swap_identity_trace(self):
        X = act(2, [1, 0])
        p = local_profile(X, 1)
        assert p.level(1) == {(0,): Fraction(1)}

    def test_mixture_law(self, rng):
        X, Y = random_action(rng, 3, 2), random_action(rng, 5, 2)
        U = A.disjoint_union(X, Y)
        pu = local_profile(U, 2)
        px, py = local_profile(X, 2), local_profile(Y, 2)
        for r in (1, 2):
            mixed = {}
            for t, v in px.level(r).items():
                mixed[t] = mixed.get(t, Fraction(0)) + v * Fraction(3, 8)
            for t, v in py.level(r).items():
                mixed[t] = mixed.get(t, Fraction(0)) + v * Fraction(5, 8)
            assert pu.level(r) == mixed

    def test_levels_restrict_consistently(self, rng):
        X = random_action(rng, 6, 2)
        p = local_profile(X, 3)
        cut = len(W.ball(2, 2))
        coarse = {}
        for t, v in p.level(3).items():
            key = tuple(i for i in t if i < cut)
            coarse[key] = coarse.get(key, Fraction(0)) + v
        assert coarse == p.level(2)


class TestDStat:
    def test_equal(self, rng):
        X = random_action(rng, 5, 2)
        assert d_stat_trunc(X, X, 3) == 0

    def test_swap_vs_trivial(self):
        X = act(2, [1, 0])
        Z = A.trivial_action(1, 2)
        assert d_stat_trunc(X, Z, 1) == Fraction(1, 2)

    def test_power_invariance(self, rng):
        X = random_action(rng, 4, 2)
        assert d_stat_trunc(X, A.power(X, 3), 3) == 0

    def test_truncation_tail_bound(self, rng):
        for _ in range(10):
            X, Y = random_action(rng, 5, 2), random_action(rng, 5, 2)
            shallow = d_stat_trunc(X, Y, 2)
            deep = d_stat_trunc(X, Y, 4)
            assert abs(deep - shallow) <= Fraction(1, 2**2)


class TestLocalityBound:
    def test_trace_tv_bounded_by_mismatch(self, rng):
        # total variation at radius r is controlled by the bijection's
        # mismatch fraction through (2m)^(r+1) * m, exact on every instance
        for trial in range(40):
            n = rng.randint(2, 30)
            m = 2
            X = random_action(rng, n, m)
            gens = [list(g.images) for g in X.gens]
            for _ in range(rng.randint(0, 3)):
                g = rng.randrange(m)
                i, j = rng.sample(range(n), 2)
                gens[g][i], gens[g][j] = gens[g][j], gens[g][i]
            Y = FiniteAction(n, tuple(Permutation(tuple(g)) for g in gens))
            images = list(range(n))
            if trial % 3 == 0:
                rng.shuffle(images)
            f = Bijection(tuple(images))
            norm = gen_norm(f, X, Y)
            px, py = local_profile(X, 3), local_profile(Y, 3)
            for r in (1, 2, 3):
                tv = tv_distance(px.level(r), py.level(r))
                assert tv <= (2 * m) ** (r + 1) * m * norm
