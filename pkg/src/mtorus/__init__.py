"""Mapping tori of free group endomorphisms.

Any endomorphism phi of a finitely generated free group F can be traded for
an injective endomorphism psi of a free group F1 = phi^k(F) without changing
the mapping torus.  This package computes k, F1 and psi, writes down both
presentations and checks the comparison map with a Britton-reduction word
problem solver.
"""

from .endo import Endomorphism, apply, compose, in_kernel, power
from .folding import (
    StallingsGraph,
    SubgroupBasis,
    build,
    contains,
    express_in_generators,
    extract_basis,
    rank,
    rewrite_in_basis,
)
from .hnn import (
    HnnPresentation,
    MixedWord,
    britton_reduce,
    is_trivial,
    present_mapping_torus,
    verify_isomorphism,
)
from .torus import (
    InjectivizationResult,
    injectivize,
    kernel_witnesses,
    quotient_image,
    stabilization_index,
)
from .words import concat, format_word, invert, parse_word, reduce

__version__ = "0.1.0"
