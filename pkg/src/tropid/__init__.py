"""Exact max-plus (tropical) algebra and semigroup identity verification.

The scalar layer works over Q with -inf adjoined, polynomials are exact
tropical polynomials with an LP-backed notion of essential monomials, and the
identity engine proves or refutes word identities in tropical matrix monoids.
"""

from .scalar import NEG_INF, ZERO, format_scalar, parse_scalar, scalar
from .matrix import (TropMatrix, adjoint, format_matrix, generalized_inverse, mmul, mpow,
                     mtrace, nabla, permanent, is_singular)
from .poly import Region, TropPoly, e_equivalent, essential_part, is_essential
from .symbolic import Identity, Word, parse_identity, parse_word
from .identities import (ProofReport, adjan_identity, falsify_random, global_identity,
                         verify_identity)
from .bicyclic import BicyclicElem, reduce_word, represent, star

__version__ = "0.1.0"

__all__ = [
    "NEG_INF", "ZERO", "format_scalar", "parse_scalar", "scalar",
    "TropMatrix", "adjoint", "format_matrix", "generalized_inverse", "mmul", "mpow",
    "mtrace", "nabla", "permanent", "is_singular",
    "Region", "TropPoly", "e_equivalent", "essential_part", "is_essential",
    "Identity", "Word", "parse_identity", "parse_word",
    "ProofReport", "adjan_identity", "falsify_random", "global_identity", "verify_identity",
    "BicyclicElem", "reduce_word", "represent", "star",
]
