"""Brute-force reference algorithms.

These exist to check the graph-based algorithms from an independent
direction: Nielsen reduction for ranks, breadth-first products for
membership, and exhaustive enumeration for kernel elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import words
from .endo import Endomorphism, power
from .words import Word

DEFAULT_MAX_FACTORS = 6
DEFAULT_MAX_LEN = 6


# -- Nielsen reduction -----------------------------------------------------


def _half(w: Word) -> tuple:
    return tuple(words.letter_key(x) for x in w[: (len(w) + 1) // 2])


def nielsen_key(w: Word) -> tuple:
    """Well-order on words up to inversion: length, then the two left halves."""
    a, b = _half(w), _half(words.invert(w))
    return (len(w), min(a, b), max(a, b))


@dataclass(frozen=True)
class Move:
    """One elementary transformation of a tuple.

    ``kind`` is ``"right"`` (u_i <- u_i u_j^e), ``"left"`` (u_i <- u_j^e u_i)
    or ``"drop"`` (delete the trivial entry u_i).
    """

    kind: str
    i: int
    j: int = -1
    e: int = 1


def apply_move(tup: list[Word], move: Move) -> None:
    if move.kind == "drop":
        del tup[move.i]
        return
    other = tup[move.j] if move.e > 0 else words.invert(tup[move.j])
    if move.kind == "right":
        tup[move.i] = words.concat(tup[move.i], other)
    elif move.kind == "left":
        tup[move.i] = words.concat(other, tup[move.i])
    else:
        raise ValueError(f"unknown move {move.kind!r}")


def replay(moves: Sequence[Move], tup: Sequence[Word]) -> tuple[Word, ...]:
    out = list(tup)
    for m in moves:
        apply_move(out, m)
    return tuple(out)


@dataclass(frozen=True)
class NielsenHistory:
    original: tuple[Word, ...]
    reduced_tuple: tuple[Word, ...]
    moves: tuple[Move, ...] = field(repr=False)


def _find_move(tup: list[Word]) -> Move | None:
    for i, u in enumerate(tup):
        if not u:
            return Move("drop", i)
    for i, u in enumerate(tup):
        ku = nielsen_key(u)
        for j, v in enumerate(tup):
            if i == j:
                continue
            for e in (1, -1):
                ve = v if e > 0 else words.invert(v)
                if nielsen_key(words.concat(u, ve)) < ku:
                    return Move("right", i, j, e)
                if nielsen_key(words.concat(ve, u)) < ku:
                    return Move("left", i, j, e)
    return None


def nielsen_reduce(
    generators: Sequence[Sequence[int]], max_moves: int | None = None
) -> NielsenHistory | None:
    """Nielsen-reduce a tuple, recording every move.

    Each move strictly lowers one entry in the :func:`nielsen_key` order, so
    the loop terminates.  Returns None only if ``max_moves`` runs out.
    """
    original = tuple(tuple(g) for g in generators)
    tup = list(original)
    moves: list[Move] = []
    while True:
        move = _find_move(tup)
        if move is None:
            break
        if max_moves is not None and len(moves) >= max_moves:
            return None
        apply_move(tup, move)
        moves.append(move)
    return NielsenHistory(original, tuple(tup), tuple(moves))


def nielsen_rank(generators: Sequence[Sequence[int]]) -> tuple[int, NielsenHistory]:
    history = nielsen_reduce(generators)
    return len(history.reduced_tuple), history


def is_nielsen_reduced(tup: Sequence[Word]) -> bool:
    """Direct check of the three Nielsen conditions over all of tup^{+-1}."""
    if any(not u for u in tup):
        return False
    elems = [u for u in tup] + [words.invert(u) for u in tup]
    for u in elems:
        for v in elems:
            uv = words.concat(u, v)
            if not uv:
                continue
            if len(uv) < len(u) or len(uv) < len(v):
                return False
            for w in elems:
                if not words.concat(v, w):
                    continue
                if len(words.concat(uv, w)) <= len(u) - len(v) + len(w):
                    return False
    return True


# -- membership by enumeration ---------------------------------------------


def iter_products(
    generators: Sequence[Sequence[int]], max_factors: int
) -> Iterator[tuple[Word, Word]]:
    """Yield (element, factor word) for every distinct product of at most
    ``max_factors`` generators or inverses, breadth first.

    Factor words use symbol i (1-based) for generators[i - 1].
    """
    gens = [tuple(g) for g in generators]
    symbols = words.alphabet(len(gens))
    seen: dict[Word, Word] = {words.EMPTY: words.EMPTY}
    yield words.EMPTY, words.EMPTY
    frontier = [(words.EMPTY, words.EMPTY)]
    for _ in range(max_factors):
        nxt = []
        for elem, factors in frontier:
            for s in symbols:
                g = gens[s - 1] if s > 0 else words.invert(gens[-s - 1])
                prod = words.concat(elem, g)
                if prod in seen:
                    continue
                seen[prod] = factors + (s,)
                nxt.append((prod, seen[prod]))
                yield prod, seen[prod]
        frontier = nxt


def product_ball(
    generators: Sequence[Sequence[int]], max_factors: int = DEFAULT_MAX_FACTORS
) -> dict[Word, Word]:
    return dict(iter_products(generators, max_factors))


def enum_membership(
    generators: Sequence[Sequence[int]],
    target: Sequence[int],
    max_factors: int = DEFAULT_MAX_FACTORS,
) -> Word | None:
    """Factor word expressing target, or None (UNKNOWN) within the budget."""
    target = tuple(target)
    for elem, factors in iter_products(generators, max_factors):
        if elem == target:
            return factors
    return None


def evaluate(factors: Sequence[int], generators: Sequence[Sequence[int]]) -> Word:
    return words.substitute(factors, generators)


# -- kernel elements by collision ------------------------------------------


def image_collisions(
    phi: Endomorphism, k: int, max_len: int = DEFAULT_MAX_LEN
) -> Iterator[tuple[Word, Word]]:
    """Pairs (u, v) of distinct reduced words of length <= max_len with
    phi^k(u) == phi^k(v).  v always precedes u in length-lex order.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    phi_k = power(phi, k)
    groups: dict[Word, list[Word]] = {}
    for u in words.iter_words(phi.rank, max_len):
        group = groups.setdefault(phi_k(u), [])
        for v in group:
            yield u, v
        group.append(u)
