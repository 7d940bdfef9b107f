import pytest
from hypothesis import given
from hypothesis import strategies as st

from mtorus import words
from mtorus.endo import (
    BudgetExceededError,
    Endomorphism,
    RankMismatchError,
    apply,
    compose,
    in_kernel,
    power,
)
from mtorus.words import concat, parse_word as P

from conftest import endomorphisms, reduced_words

E = Endomorphism.from_strings
CHAIN = E(["b", "c", "c"])


def test_apply_examples():
    assert apply(E(["ab", "B"]), P("ab")) == P("a")
    assert apply(Endomorphism.identity(3), P("abCa")) == P("abCa")
    assert apply(CHAIN, P("aC")) == P("bC")


def test_apply_rank_mismatch():
    with pytest.raises(RankMismatchError):
        apply(E(["a", "b"]), P("c"))
    with pytest.raises(RankMismatchError):
        compose(E(["a"]), E(["a", "b"]))


def test_compose_and_power_examples():
    phi = CHAIN
    ident = Endomorphism.identity(3)
    assert compose(ident, phi) == phi == compose(phi, ident)
    assert compose(phi, phi) == E(["c", "c", "c"])
    assert power(phi, 0) == ident
    assert power(phi, 1) == phi
    assert power(phi, 2) == E(["c", "c", "c"])


def test_compose_order():
    phi, chi = E(["b", "a"]), E(["ab", "b"])
    # phi(chi(a)) = phi(ab) = ba
    assert compose(phi, chi).images[0] == P("ba")


def test_in_kernel_examples():
    assert in_kernel(E(["a", "1"]), 1, P("b"))
    assert in_kernel(CHAIN, 3, ())
    assert in_kernel(E(["aa", "a"]), 1, P("bbA"))
    assert not in_kernel(E(["aa", "a"]), 1, P("bA"))


def test_power_budget():
    with pytest.raises(BudgetExceededError):
        power(E(["aa"]), 12, budget=1000)
    assert power(E(["aa"]), 9, budget=1000).images == (P("a" * 512),)


@given(endomorphisms(), st.data())
def test_apply_is_homomorphism(phi, data):
    u = data.draw(reduced_words(phi.rank))
    v = data.draw(reduced_words(phi.rank))
    assert apply(phi, concat(u, v)) == concat(apply(phi, u), apply(phi, v))
    assert apply(phi, words.invert(u)) == words.invert(apply(phi, u))


@given(endomorphisms(max_len=3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_power_laws(phi, m, n, data):
    assert power(phi, m + n) == compose(power(phi, m), power(phi, n))
    w = data.draw(reduced_words(phi.rank, 5))
    iterated = w
    for _ in range(n):
        iterated = apply(phi, iterated)
    assert apply(power(phi, n), w) == iterated
    assert in_kernel(phi, n, w) == (iterated == ())


def test_endomorphism_is_immutable():
    phi = E(["ab", "B"])
    with pytest.raises(AttributeError):
        phi.rank = 3
    assert hash(phi) == hash(E(["ab", "B"]))
