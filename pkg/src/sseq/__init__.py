"""Exact Strong S-equivalence calculus on ordered Seifert matrices."""

from .errors import *  # noqa: F401,F403
from .linalg import (
    IntMatrix,
    LaurentPoly,
    det,
    inverse_unimodular,
    is_symplectic,
    is_unimodular,
    laurent_det,
    signature,
    standard_sym,
)
from .seifert import (
    LinkingTable,
    OrderedSeifertMatrix,
    ValidationReport,
    intersection_form,
    is_semi_symplectic,
    lambda_from_linking,
    linking_numbers,
    random_osm,
    validate,
)
from .moves import (
    ClassicalCongruence,
    Enlarge,
    MoveSequence,
    Reduce,
    StrongCongruence,
    apply_classical_congruence,
    apply_move,
    apply_sequence,
    apply_strong_congruence,
    enlarge,
    random_sequence,
    reduce,
)
from .normalize import (
    AnnotatedSequence,
    annotate,
    common_matrix,
    normalize_sequence,
    swap_congruence_enlarge,
    swap_reduce_enlarge,
)
from .invariants import (
    ConwayPolynomial,
    InvariantFingerprint,
    conway,
    determinant_invariant,
    distinguishes,
    fingerprint,
    signature_invariant,
)
from .factorize import (
    ChangeOfBasis,
    ElementaryFactor,
    elementary_factorization,
    factor_DE,
    split_blocks,
    stabilizes_X,
)
from .search import (
    Distinguished,
    Equivalent,
    Inconclusive,
    SearchConfig,
    canonical_key,
    classical_equiv_bounded,
    search_report,
    strong_equiv_bounded,
)

from .documents import (
    parse_matrix,
    parse_moves,
    persist_report,
    read_report,
    serialize_matrix,
    serialize_moves,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
