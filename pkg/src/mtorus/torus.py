"""Replace an arbitrary free group endomorphism by an injective one with the
same mapping torus.

The image ranks rank(phi^n(F)) can only drop, so they settle after at most
rank(F) steps.  At the first n = k where rank(phi^k(F)) = rank(phi^(k+1)(F)),
phi maps the free group phi^k(F) onto a free group of the same rank, which is
an isomorphism because finitely generated free groups are Hopfian.  Hence
ker(phi^n) = ker(phi^k) for n >= k, and phi restricts to an injective
endomorphism psi of F1 = phi^k(F), which is isomorphic to F / ker(phi^k).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import folding, oracle, words
from .endo import Endomorphism, iterate_images
from .folding import StallingsGraph, SubgroupBasis
from .words import Word

DEFAULT_WITNESS_LEN = 6
DEFAULT_WITNESS_COUNT = 20


class PipelineError(RuntimeError):
    """An internal certificate failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class InjectivizationResult:
    phi: Endomorphism
    k: int
    # rank(phi^n(F)) for n = 0..k+1
    trace: tuple[int, ...]
    power_k: Endomorphism
    f1_basis: SubgroupBasis
    psi: Endomorphism
    psi_image_graph: StallingsGraph

    @property
    def m(self) -> int:
        return self.psi.rank

    def quotient(self, f: Sequence[int]) -> Word:
        return quotient_image(self, f)


def _stabilize(phi: Endomorphism, budget: int | None):
    ranks = []
    previous = None
    for n, images in enumerate(iterate_images(phi, budget)):
        graph = folding.build(images, phi.rank)
        ranks.append(folding.rank(graph))
        if n > 0 and ranks[-1] == ranks[-2]:
            return n - 1, tuple(ranks), previous
        previous = (images, graph)
        if n > phi.rank + 1:
            raise PipelineError("image ranks failed to stabilize")


def stabilization_index(
    phi: Endomorphism, budget: int | None = None
) -> tuple[int, tuple[int, ...]]:
    """Least k >= 0 with rank(phi^k(F)) == rank(phi^(k+1)(F)), and the ranks."""
    k, ranks, _ = _stabilize(phi, budget)
    return k, ranks


def injectivize(phi: Endomorphism, budget: int | None = None) -> InjectivizationResult:
    k, ranks, (images_k, graph_k) = _stabilize(phi, budget)
    basis = folding.extract_basis(graph_k)
    m = len(basis)
    try:
        psi_images = tuple(
            folding.rewrite_in_basis(basis, phi(b)) for b in basis.basis
        )
    except folding.NotAMemberError as exc:
        raise PipelineError(f"phi does not preserve phi^k(F): {exc}") from exc
    psi = Endomorphism(m, psi_images)
    image_graph = folding.build(psi_images, m)
    if folding.rank(image_graph) != m:
        raise PipelineError(
            f"injectivity certificate failed: rank {folding.rank(image_graph)} != {m}"
        )
    return InjectivizationResult(
        phi=phi,
        k=k,
        trace=ranks,
        power_k=Endomorphism(phi.rank, images_k),
        f1_basis=basis,
        psi=psi,
        psi_image_graph=image_graph,
    )


def quotient_image(result: InjectivizationResult, f: Sequence[int]) -> Word:
    """The map F -> F1 with kernel ker(phi^k): phi^k(f) in the F1 basis."""
    return folding.rewrite_in_basis(result.f1_basis, result.power_k(f))


def kernel_witnesses(
    phi: Endomorphism,
    k: int,
    max_len: int = DEFAULT_WITNESS_LEN,
    max_count: int = DEFAULT_WITNESS_COUNT,
) -> list[Word]:
    """Nontrivial elements of ker(phi^k) of length <= max_len.

    Found as u v^-1 for words u, v of length <= max_len // 2 with the same
    image under phi^k.
    """
    found: list[Word] = []
    seen = set()
    if max_count <= 0:
        return found
    for u, v in oracle.image_collisions(phi, k, max_len // 2):
        w = words.concat(u, words.invert(v))
        if w and w not in seen:
            seen.add(w)
            found.append(w)
            if len(found) >= max_count:
                break
    return found
