"""Free group words.

A word is an immutable tuple of nonzero ints: ``i`` stands for the i-th
generator (1-based) and ``-i`` for its inverse.  The empty tuple is the
identity.  Text form uses ``a..z`` for generators and ``A..Z`` for their
inverses, so ``"abA"`` is ``(1, 2, -1)``.
"""

from __future__ import annotations

import string
from typing import Iterable, Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()
MAX_TEXT_RANK = 26


class MalformedWordError(ValueError):
    pass


def reduce(raw: Iterable[int], rank: int | None = None) -> Word:
    """Freely reduce a letter sequence (single stack pass)."""
    out: list[int] = []
    for x in raw:
        if not isinstance(x, int) or x == 0:
            raise MalformedWordError(f"invalid letter {x!r}")
        if rank is not None and abs(x) > rank:
            raise MalformedWordError(f"letter {x} out of range for rank {rank}")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def concat(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(invert(w), -n)
    return concat(*([w] * n))


def exponent_sums(w: Iterable[int], rank: int) -> list[int]:
    sums = [0] * rank
    for x in w:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums


def substitute(w: Iterable[int], images: Sequence[Sequence[int]]) -> Word:
    """Image of ``w`` under the homomorphism sending generator i to images[i-1]."""
    out: list[int] = []
    for x in w:
        img = images[x - 1] if x > 0 else [-y for y in reversed(images[-x - 1])]
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


# -- letter ordering and enumeration ---------------------------------------


def letter_key(x: int) -> tuple[int, int]:
    """Order a < A < b < B < ..."""
    return (abs(x), 0 if x > 0 else 1)


def alphabet(rank: int) -> list[int]:
    return sorted((s * i for i in range(1, rank + 1) for s in (1, -1)), key=letter_key)


def iter_words(rank: int, max_len: int) -> Iterator[Word]:
    """All reduced words of length <= max_len, length-lexicographically."""
    letters = alphabet(rank)
    layer: list[Word] = [EMPTY]
    yield EMPTY
    for _ in range(max_len):
        layer = [w + (x,) for w in layer for x in letters if not w or w[-1] != -x]
        yield from layer


def count_words(rank: int, length: int) -> int:
    if length == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (length - 1)


# -- text forms ------------------------------------------------------------


def letter_names(rank: int) -> list[str]:
    if rank <= MAX_TEXT_RANK:
        return list(string.ascii_lowercase[:rank])
    return [f"x{i}" for i in range(1, rank + 1)]


def basis_names(rank: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i}" for i in range(1, rank + 1)]


def inverse_name(name: str) -> str:
    return name.upper() if name != name.upper() else name + "^-1"


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse compact letter syntax; ``"1"`` and ``""`` are the identity."""
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    raw = []
    for ch in text:
        if ch.isspace():
            continue
        if ch in string.ascii_lowercase:
            raw.append(ord(ch) - ord("a") + 1)
        elif ch in string.ascii_uppercase:
            raw.append(-(ord(ch) - ord("A") + 1))
        else:
            raise MalformedWordError(f"unknown letter {ch!r} in {text!r}")
    return reduce(raw, rank)


def format_word(w: Sequence[int], empty: str = "1") -> str:
    """Compact letter form; ranks above 26 fall back to spaced tokens."""
    if not w:
        return empty
    if max(abs(x) for x in w) > MAX_TEXT_RANK:
        return format_tokens(w, basis_names(max(abs(x) for x in w)), empty)
    return "".join(
        chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1) for x in w
    )


def word_tokens(w: Sequence[int], names: Sequence[str]) -> list[str]:
    return [names[x - 1] if x > 0 else inverse_name(names[-x - 1]) for x in w]


def format_tokens(w: Sequence[int], names: Sequence[str], empty: str = "1") -> str:
    return " ".join(word_tokens(w, names)) if w else empty


def parse_tokens(text: str, names: Sequence[str]) -> Word:
    """Inverse of :func:`format_tokens`."""
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    lookup = {}
    for i, name in enumerate(names, 1):
        lookup[name] = i
        lookup[inverse_name(name)] = -i
    try:
        return reduce(lookup[tok] for tok in text.split())
    except KeyError as exc:
        raise MalformedWordError(f"unknown token {exc.args[0]!r}") from None


def random_word(rng, rank: int, max_len: int, min_len: int = 0) -> Word:
    """Uniform length in [min_len, max_len], then a random reduced word."""
    if rank == 0:
        return EMPTY
    n = rng.randint(min_len, max_len)
    out: list[int] = []
    letters = alphabet(rank)
    while len(out) < n:
        x = rng.choice(letters)
        if out and out[-1] == -x:
            continue
        out.append(x)
    return tuple(out)
