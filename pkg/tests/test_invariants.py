import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M0, M1, leibniz_det, numpy_signature, osm_from_seed, sympy_conway_laurent
from sseq import IntMatrix, OrderedSeifertMatrix
from sseq.errors import ComponentCountMismatch, InvalidMatrix, NotAConwayPolynomial
from sseq.invariants import (
    ConwayPolynomial,
    InvariantFingerprint,
    classical_fingerprint,
    conway,
    conway_of_matrix,
    determinant_invariant,
    distinguishes,
    distinguishes_classical,
    fingerprint,
    laurent_to_conway,
    signature_invariant,
)
from sseq.linalg import LaurentPoly
from sseq.moves import apply_sequence, random_sequence, random_strong_unimodular

seeds = st.integers(0, 2 ** 32)
TREFOIL = OrderedSeifertMatrix(1, 1, IntMatrix([[-1, 1], [0, -1]]))


def test_conway_sanity_values():
    assert conway(OrderedSeifertMatrix(1, 0, IntMatrix([]))).coeffs == (1,)
    assert conway(OrderedSeifertMatrix(1, 1, IntMatrix([[0, 1], [0, 0]]))).coeffs == (1,)
    c = conway(TREFOIL)
    assert c.coeffs == (1, 0, 1)
    assert str(c) == "z^2 + 1"


def test_counterexample_pair_has_vanishing_conway():
    assert conway(M0).coeffs == () and conway(M1).coeffs == ()
    assert str(conway(M0)) == "0"


@given(seeds)
def test_conway_matches_sympy_determinant(seed):
    S = osm_from_seed(seed, max_m=3, max_g=2)
    ref = sympy_conway_laurent(S.matrix.tolist())
    assert conway(S).to_laurent() == LaurentPoly(ref)


def test_laurent_to_conway_rejects_non_conway_input():
    with pytest.raises(NotAConwayPolynomial):
        laurent_to_conway(LaurentPoly({1: 1}))
    with pytest.raises(NotAConwayPolynomial):
        laurent_to_conway(LaurentPoly({-2: 1}))


def test_conway_polynomial_str():
    assert str(ConwayPolynomial((0, -1, 0, 3))) == "3z^3 - z"
    assert str(ConwayPolynomial((-2,))) == "-2"
    assert ConwayPolynomial((1, 0, 0)).degree == 0


@given(seeds)
def test_signature_and_determinant_match_oracles(seed):
    S = osm_from_seed(seed)
    sym = (S.matrix + S.matrix.T).tolist()
    assert signature_invariant(S) == numpy_signature(sym)
    if S.dim <= 6:
        assert determinant_invariant(S) == abs(leibniz_det(sym))


def test_trefoil_invariants():
    fp = fingerprint(TREFOIL)
    assert (fp.signature, fp.determinant) == (-2, 3)
    assert fp.linking.as_dict() == {}


def test_counterexample_fingerprints():
    f0, f1 = fingerprint(M0), fingerprint(M1)
    assert sorted(f0.linking.values()) == [-1, 2, 2]
    assert sorted(f1.linking.values()) == [0, 0, 1]
    assert (f0.signature, f0.determinant) == (f1.signature, f1.determinant)
    assert distinguishes(M0, M1) == ["linking"]
    assert distinguishes_classical(M0, M1) == []
    assert classical_fingerprint(M0) == classical_fingerprint(M1.matrix)


def test_distinguishes_requires_same_component_count():
    with pytest.raises(ComponentCountMismatch):
        distinguishes(M0, TREFOIL)


def test_fingerprint_requires_strict_validity():
    with pytest.raises(InvalidMatrix):
        fingerprint(OrderedSeifertMatrix(1, 1, IntMatrix([[0, 0], [2, 0]])))


@given(seeds)
def test_fingerprint_dict_and_bytes_round_trip(seed):
    fp = fingerprint(osm_from_seed(seed))
    assert InvariantFingerprint.from_dict(fp.to_dict()) == fp
    again = InvariantFingerprint.from_dict(fp.to_dict())
    assert again.to_bytes() == fp.to_bytes()


def test_to_bytes_layout():
    assert fingerprint(M0).to_bytes() == b"[3,[[1,2,-1],[1,3,2],[2,3,2]],[],-1,0]"
    assert fingerprint(TREFOIL).to_bytes() == b"[1,[],[1,0,1],-2,3]"


@given(seeds, st.integers(0, 6))
def test_fingerprint_invariant_under_moves(seed, length):
    S = osm_from_seed(seed)
    final, _ = apply_sequence(random_sequence(S, length, 3, seed))
    assert fingerprint(final) == fingerprint(S)
    assert fingerprint(final).to_bytes() == fingerprint(S).to_bytes()


def test_conway_of_matrix_is_classical_invariant():
    rng = random.Random(5)
    for _ in range(20):
        S = osm_from_seed(rng.random())
        P = random_strong_unimodular(S.dim, 0, rng, 4, 2)
        assert conway_of_matrix(S.matrix.congruence(P)) == conway_of_matrix(S.matrix)
