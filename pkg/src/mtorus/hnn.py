"""Mapping tori and Britton reduction for ascending HNN extensions.

M(phi) = < F, t | t^-1 g t = phi(g) >.  When phi is injective the stable
letter t conjugates F onto phi(F), and a word is trivial iff repeatedly
removing pinches t^-1 g t (always possible) and t g t^-1 (possible when
g lies in phi(F)) empties it.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Sequence, Union

from . import folding, words
from .endo import Endomorphism
from .torus import InjectivizationResult, kernel_witnesses, quotient_image
from .words import Word

Block = Union[int, Word]


class UnsupportedPresentationError(ValueError):
    """Word problem requested for a non-injective mapping torus."""


@dataclass(frozen=True)
class MixedWord:
    """Word in base letters and the stable letter.

    ``blocks`` alternates nonempty reduced base words (tuples) and nonzero
    powers of t (ints).  Construct through :meth:`of` to normalize.
    """

    blocks: tuple[Block, ...] = ()

    @classmethod
    def of(cls, *parts: Block) -> "MixedWord":
        out: list[Block] = []
        for part in parts:
            if isinstance(part, int):
                if part == 0:
                    continue
                if out and isinstance(out[-1], int):
                    e = out.pop() + part
                    if e:
                        out.append(e)
                else:
                    out.append(part)
            else:
                part = words.reduce(part)
                if not part:
                    continue
                if out and not isinstance(out[-1], int):
                    merged = words.concat(out.pop(), part)
                    if merged:
                        out.append(merged)
                else:
                    out.append(part)
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str, rank: int | None = None, stable: str = "t") -> "MixedWord":
        """``"TatAA"`` is t^-1 a t a^-2; ``"1"`` is the identity."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        parts: list[Block] = []
        for ch in text:
            if ch.isspace():
                continue
            if ch == stable:
                parts.append(1)
            elif ch == stable.upper():
                parts.append(-1)
            elif ch in string.ascii_lowercase:
                parts.append((ord(ch) - ord("a") + 1,))
            elif ch in string.ascii_uppercase:
                parts.append((-(ord(ch) - ord("A") + 1),))
            else:
                raise words.MalformedWordError(f"unknown letter {ch!r}")
        if rank is not None:
            for part in parts:
                if not isinstance(part, int) and abs(part[0]) > rank:
                    raise words.MalformedWordError(
                        f"letter {part[0]} out of range for rank {rank}"
                    )
        return cls.of(*parts)

    def __mul__(self, other: "MixedWord") -> "MixedWord":
        return MixedWord.of(*self.blocks, *other.blocks)

    def inverse(self) -> "MixedWord":
        return MixedWord.of(
            *(-b if isinstance(b, int) else words.invert(b) for b in reversed(self.blocks))
        )

    def t_exponent(self) -> int:
        return sum(b for b in self.blocks if isinstance(b, int))

    def t_count(self) -> int:
        return sum(abs(b) for b in self.blocks if isinstance(b, int))

    def __bool__(self):
        return bool(self.blocks)

    def format(self, names: Sequence[str] | None = None, stable: str = "t") -> str:
        if not self.blocks:
            return "1"
        tokens = []
        for b in self.blocks:
            if isinstance(b, int):
                tokens += [stable if b > 0 else stable.upper()] * abs(b)
            elif names is None:
                tokens.append(words.format_word(b))
            else:
                tokens += words.word_tokens(b, names)
        return ("" if names is None else " ").join(tokens)

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class HnnPresentation:
    """< x_1..x_m, t | t^-1 x_i t = map(x_i) >."""

    map: Endomorphism
    injective: bool
    stable_letter: str = "t"
    names: tuple[str, ...] = ()
    # pieces for inverting the map on its image, filled when injective
    image_basis: folding.SubgroupBasis | None = field(
        default=None, compare=False, repr=False
    )
    inverse_table: tuple[Word, ...] = field(default=(), compare=False, repr=False)

    @property
    def base_rank(self) -> int:
        return self.map.rank

    def relators(self) -> list[MixedWord]:
        """t^-1 x_i t map(x_i)^-1 for each base generator."""
        return [
            MixedWord.of(-1, (i,), 1, words.invert(img))
            for i, img in enumerate(self.map.images, 1)
        ]

    def __str__(self):
        gens = ", ".join([*self.names, self.stable_letter])
        t, T = self.stable_letter, self.stable_letter.upper()
        rels = ", ".join(
            f"{T} {name} {t} = {words.format_tokens(img, self.names)}"
            for name, img in zip(self.names, self.map.images)
        )
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def present_mapping_torus(
    phi: Endomorphism,
    names: Sequence[str] | None = None,
    stable_letter: str = "t",
) -> HnnPresentation:
    """Mapping torus presentation, with the word-problem data attached when
    the image has full rank (which certifies injectivity)."""
    names = tuple(names) if names is not None else tuple(words.letter_names(phi.rank))
    if len(names) != phi.rank:
        raise ValueError(f"need {phi.rank} generator names, got {len(names)}")
    if stable_letter in names:
        raise ValueError(f"stable letter {stable_letter!r} clashes with a generator")
    graph = folding.build(phi.images, phi.rank)
    if folding.rank(graph) != phi.rank:
        return HnnPresentation(phi, False, stable_letter, names)
    basis = folding.extract_basis(graph)
    table = []
    for c in basis.basis:
        expr = folding.express_in_generators(phi.images, c, phi.rank)
        if expr is None:
            raise RuntimeError("could not invert the map on its image")
        table.append(expr)
    return HnnPresentation(phi, True, stable_letter, names, basis, tuple(table))


def preimage(p: HnnPresentation, g: Sequence[int]) -> Word | None:
    """The unique h with map(h) = g, or None when g is not in the image."""
    if not p.injective:
        raise UnsupportedPresentationError("map is not injective")
    try:
        in_basis = folding.rewrite_in_basis(p.image_basis, g)
    except folding.NotAMemberError:
        return None
    return words.substitute(in_basis, p.inverse_table)


def britton_reduce(p: HnnPresentation, w: MixedWord, return_steps: bool = False):
    """Remove pinches until none remain.

    Each pinch removes two stable letters, so at most t_count / 2 pinches
    happen.  With ``return_steps`` the pinch count is returned as well.
    """
    if not p.injective:
        raise UnsupportedPresentationError(
            "Britton reduction needs an injective map; pass the injectivized one"
        )
    blocks = list(w.blocks)
    steps = 0
    i = 0
    while i + 2 < len(blocks):
        left, mid, right = blocks[i], blocks[i + 1], blocks[i + 2]
        if not (isinstance(left, int) and isinstance(right, int)):
            i += 1
            continue
        if left < 0 < right:
            replacement = p.map(mid)
        elif right < 0 < left:
            replacement = preimage(p, mid)
        else:
            replacement = None
        if replacement is None:
            i += 1
            continue
        sign = 1 if left > 0 else -1
        new = MixedWord.of(*blocks[:i], left - sign, replacement, right + sign, *blocks[i + 3 :])
        blocks = list(new.blocks)
        steps += 1
        i = 0
    result = MixedWord(tuple(blocks))
    return (result, steps) if return_steps else result


def is_trivial(p: HnnPresentation, w: MixedWord) -> bool:
    return not britton_reduce(p, w)


@dataclass
class VerificationReport:
    injectivity_certificate: bool
    relator_images: list[MixedWord]
    relators_trivial: bool
    kernel_witnesses: list[Word]
    kernel_ok: bool
    # one entry per F1 basis word: word over y_1..y_r (y_i -> phi^k(x_i)),
    # None where the search gave up; the whole list is None when skipped
    surjectivity_witnesses: list[Word | None] | None
    surjectivity_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.injectivity_certificate
            and self.relators_trivial
            and self.kernel_ok
            and self.surjectivity_ok
        )


def verify_isomorphism(
    phi: Endomorphism,
    result: InjectivizationResult,
    *,
    max_wit_len: int = 6,
    max_witnesses: int = 20,
    surjectivity: bool = True,
    budget: int | None = None,
    presentation: HnnPresentation | None = None,
) -> VerificationReport:
    """Check the map M(phi) -> M(psi), x_i -> Phi(x_i), t -> t.

    Relators of M(phi) must map to trivial words of M(psi), kernel elements
    of phi^k must die under Phi, and each basis word of F1 must be a product
    of the phi^k(x_i).
    """
    if presentation is None:
        presentation = present_mapping_torus(result.psi, words.basis_names(result.m))
    certificate = folding.rank(result.psi_image_graph) == result.m

    relator_images = []
    for i, img in enumerate(phi.images, 1):
        relator_images.append(
            MixedWord.of(
                -1,
                quotient_image(result, (i,)),
                1,
                words.invert(quotient_image(result, img)),
            )
        )
    relators_ok = all(is_trivial(presentation, r) for r in relator_images)

    witnesses = kernel_witnesses(phi, result.k, max_wit_len, max_witnesses)
    kernel_ok = all(not quotient_image(result, w) for w in witnesses)

    surj: list[Word | None] | None = None
    surj_ok = True
    if surjectivity:
        gens = result.power_k.images
        surj = []
        for b in result.f1_basis.basis:
            expr = folding.express_in_generators(gens, b, phi.rank, budget=budget)
            if expr is not None and words.substitute(expr, gens) != b:
                surj_ok = False
            surj.append(expr)

    return VerificationReport(
        injectivity_certificate=certificate,
        relator_images=relator_images,
        relators_trivial=relators_ok,
        kernel_witnesses=witnesses,
        kernel_ok=kernel_ok,
        surjectivity_witnesses=surj,
        surjectivity_ok=surj_ok,
    )
