"""oqkit: combinatorics of category O for quantum groups at odd roots of unity.

Library layers, bottom up: root data and the weight lattice, finite/affine
Weyl groups, the Kazhdan-Lusztig engine with its persistent cache, classical
category-O data, truncated characters, and the quantum multiplicity
pipelines.  A FastAPI service wraps the library; the command-line tool is a
thin client of that service.
"""

from .rootdata import (
    LAdicPair,
    RootDatum,
    build_root_datum,
    dominance_leq,
    l_adic_decompose,
    pairing,
    parse_type,
    weight_predicates,
)
from .weyl import AlcovePosition, WeylElement, affine_weyl, finite_weyl
from .klpoly import KLPolynomial
from .kl import CacheError, KLEngine, cache_load, cache_stats, cache_store, engine_for
from .chars import (
    TruncatedCharacter,
    Window,
    baby_verma_character,
    frobenius_twist,
    multiply,
    restricted_simple_character,
    simple_character,
    steinberg_character,
    verma_character,
    weyl_character,
)
from .oq import (
    DecompositionRecord,
    InconsistencyError,
    MultiplicityTable,
    RegularityError,
    baby_verma_simple_multiplicity,
    decompose,
    generic_verma_simple_multiplicity,
    large_l_comparison,
    p_q_coefficient,
    projective_verma_multiplicity,
    projective_verma_table,
    quantum_verma_factor_table,
    quantum_verma_simple_multiplicity,
    special_block,
    structural_predicates,
    tilting_verma_multiplicity,
    tilting_verma_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
