"""Endomorphisms of free groups of finite rank."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import words
from .words import Word

DEFAULT_LETTER_BUDGET = 10**6


class RankMismatchError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    """Image words grew past the configured total-letter budget."""


@dataclass(frozen=True)
class Endomorphism:
    """Endomorphism of the free group of the given rank.

    ``images[i]`` is the reduced image of generator ``i + 1``.
    """

    rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if len(self.images) != self.rank:
            raise RankMismatchError(
                f"expected {self.rank} images, got {len(self.images)}"
            )
        object.__setattr__(
            self, "images", tuple(words.reduce(w, self.rank) for w in self.images)
        )

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, tuple((i,) for i in range(1, rank + 1)))

    @classmethod
    def from_strings(cls, images: Sequence[str]) -> "Endomorphism":
        """``Endomorphism.from_strings(["ab", "B"])`` is a -> ab, b -> b^-1."""
        rank = len(images)
        return cls(rank, tuple(words.parse_word(s, rank) for s in images))

    def __call__(self, w: Sequence[int]) -> Word:
        return apply(self, w)

    def __str__(self):
        names = words.letter_names(self.rank)
        return ", ".join(
            f"{n} -> {words.format_word(w)}" for n, w in zip(names, self.images)
        )


def apply(phi: Endomorphism, w: Sequence[int]) -> Word:
    for x in w:
        if x == 0 or abs(x) > phi.rank:
            raise RankMismatchError(f"letter {x} outside rank {phi.rank}")
    return words.substitute(w, phi.images)


def compose(phi: Endomorphism, chi: Endomorphism) -> Endomorphism:
    """phi after chi: g -> phi(chi(g))."""
    if phi.rank != chi.rank:
        raise RankMismatchError(f"ranks {phi.rank} and {chi.rank} differ")
    return Endomorphism(phi.rank, tuple(apply(phi, w) for w in chi.images))


def power(phi: Endomorphism, n: int, budget: int | None = None) -> Endomorphism:
    if n < 0:
        raise ValueError("power must be non-negative")
    result = Endomorphism.identity(phi.rank)
    for _ in range(n):
        result = compose(phi, result)
        check_budget(result.images, budget)
    return result


def iterate_images(
    phi: Endomorphism, budget: int | None = None
) -> Iterable[tuple[Word, ...]]:
    """Yield the generator images of phi^0, phi^1, phi^2, ... forever."""
    images = Endomorphism.identity(phi.rank).images
    while True:
        yield images
        images = tuple(apply(phi, w) for w in images)
        check_budget(images, budget)


def check_budget(images: Iterable[Word], budget: int | None) -> None:
    if budget is None:
        return
    total = sum(len(w) for w in images)
    if total > budget:
        raise BudgetExceededError(
            f"image words total {total} letters, budget is {budget}"
        )


def in_kernel(phi: Endomorphism, k: int, w: Sequence[int]) -> bool:
    """Whether phi^k kills w; membership test for ker(phi^k)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    w = tuple(w)
    for _ in range(k):
        if not w:
            return True
        w = apply(phi, w)
    return not w
