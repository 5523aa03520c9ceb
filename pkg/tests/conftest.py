import random

import pytest
from hypothesis import strategies as st

from permstab.actions import FiniteAction, Permutation
from permstab.words import Word, reduce


def raw_letters(m: int, max_len: int):
    return st.lists(
        st.integers(1, m).flatmap(lambda i: st.sampled_from([i, -i])),
        max_size=max_len,
    )


def random_word(rng: random.Random, m: int, length: int) -> Word:
    return reduce([rng.choice([i, -i]) for i in
                   (rng.randint(1, m) for _ in range(length))])


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_action(rng: random.Random, n: int, m: int) -> FiniteAction:
    return FiniteAction(n, tuple(random_permutation(rng, n) for _ in range(m)))


@pytest.fixture
def rng():
    return random.Random(20240811)
