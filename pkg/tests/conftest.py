import random

import pytest
from hypothesis import strategies as st

from blockedbraid.words import BraidWord


def random_word(rng: random.Random, n: int, max_len: int) -> BraidWord:
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


@st.composite
def braid_words(draw, n=None, max_len=12):
    n = n if n is not None else draw(st.integers(2, 6))
    letters = draw(
        st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from((k, -k))), max_size=max_len)
    )
    return BraidWord(n, tuple(letters))


@pytest.fixture
def rng():
    return random.Random(20121)
