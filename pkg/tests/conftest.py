import pytest
from hypothesis import strategies as st

from mtorus import words
from mtorus.endo import Endomorphism

ACCEPTANCE_LINES: list[str] = []


@st.composite
def reduced_words(draw, rank=3, max_len=8):
    if rank == 0:
        return words.EMPTY
    letters = draw(
        st.lists(
            st.integers(1, rank).flatmap(lambda i: st.sampled_from([i, -i])),
            max_size=max_len,
        )
    )
    return words.reduce(letters)


@st.composite
def endomorphisms(draw, min_rank=1, max_rank=3, max_len=4):
    rank = draw(st.integers(min_rank, max_rank))
    images = tuple(draw(reduced_words(rank, max_len)) for _ in range(rank))
    return Endomorphism(rank, images)


@pytest.fixture
def P():
    return words.parse_word


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
