import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M0, M1, osm_from_seed, plant_strong
from sseq import IntMatrix, OrderedSeifertMatrix
from sseq.errors import ComponentCountMismatch, DimensionMismatch
from sseq.moves import apply_sequence, enlarge, random_sequence
from sseq.search import (
    Distinguished,
    Equivalent,
    Inconclusive,
    SearchConfig,
    canonical_key,
    classical_equiv_bounded,
    search_report,
    strong_equiv_bounded,
)

TREFOIL = OrderedSeifertMatrix(1, 1, IntMatrix([[-1, 1], [0, -1]]))
FIGURE_EIGHT = OrderedSeifertMatrix(1, 1, IntMatrix([[1, 1], [0, -1]]))


# -- canonical keys ---------------------------------------------------------------------

def test_canonical_key_golden():
    key = canonical_key(IntMatrix([[1, -1], [256, 0]]))
    assert key.hex() == "00000002" "00000002" "000101" "0001ff" "00020100" "000100"


def test_canonical_key_distinguishes_shape_and_transpose():
    A = IntMatrix([[1, 2], [3, 4]])
    assert canonical_key(A) == canonical_key(IntMatrix([[1, 2], [3, 4]]))
    assert canonical_key(A) != canonical_key(A.T)
    assert canonical_key(IntMatrix.zeros(1, 0)) != canonical_key(IntMatrix.zeros(0, 1))


square = st.integers(0, 3).flatmap(lambda n: st.lists(
    st.lists(st.integers(-2 ** 70, 2 ** 70), min_size=n, max_size=n), min_size=n, max_size=n))


@given(square, square)
def test_canonical_key_is_injective(a, b):
    assert (canonical_key(IntMatrix(a)) == canonical_key(IntMatrix(b))) == (a == b)


# -- the counterexample pair ------------------------------------------------------------------

def test_classical_search_finds_single_transvection():
    out = classical_equiv_bounded(M1.matrix, M0.matrix, SearchConfig(max_depth=2, entry_bound=1,
                                                                     mode="classical"))
    assert isinstance(out, Equivalent)
    assert len(out.witness) <= 2
    assert apply_sequence(out.witness)[0] == M0.matrix


def test_strong_search_distinguishes_by_linking():
    out = strong_equiv_bounded(M0, M1, SearchConfig(max_depth=2))
    assert isinstance(out, Distinguished)
    assert out.invariant == "linking"
    assert sorted(out.first.linking.values()) == [-1, 2, 2]
    assert sorted(out.second.linking.values()) == [0, 0, 1]


def test_distinguished_pair_is_never_connected_by_random_moves():
    target = M1.matrix
    for seed in range(200):
        final, trace = apply_sequence(random_sequence(M0, 6, 2, seed))
        assert all(t.matrix != target for t in trace)


# -- trivial and error cases ---------------------------------------------------------------

def test_same_matrix_gives_empty_witness():
    S = osm_from_seed(2)
    out = strong_equiv_bounded(S, S)
    assert isinstance(out, Equivalent) and len(out.witness) == 0
    out = classical_equiv_bounded(S.matrix, S.matrix)
    assert isinstance(out, Equivalent) and len(out.witness) == 0


def test_conway_distinguishes_knots():
    out = strong_equiv_bounded(TREFOIL, FIGURE_EIGHT)
    assert isinstance(out, Distinguished)
    assert "conway" in out.differing


def test_search_errors():
    with pytest.raises(ComponentCountMismatch):
        strong_equiv_bounded(M0, TREFOIL)
    with pytest.raises(DimensionMismatch):
        classical_equiv_bounded(IntMatrix.identity(2), IntMatrix.identity(3))
    with pytest.raises(ValueError):
        strong_equiv_bounded(TREFOIL, TREFOIL, SearchConfig(max_genus=0))
    with pytest.raises(ValueError):
        SearchConfig(max_depth=-1)


def test_inconclusive_reports_bound():
    S = osm_from_seed(31, max_m=2, max_g=1)
    T = enlarge(S, "B", [0] * S.dim, [0] * S.dim, 1)
    out = strong_equiv_bounded(S, T, SearchConfig(max_depth=0, max_genus=S.g + 1))
    assert isinstance(out, Inconclusive) and out.bound_hit == "max_depth"
    out = strong_equiv_bounded(S, T, SearchConfig(max_depth=5, max_nodes=3, max_genus=S.g + 1))
    assert isinstance(out, Inconclusive) and out.bound_hit == "max_nodes"


# -- plant and recover ---------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(12))
def test_plant_and_recover_strong(seed):
    rng = random.Random(seed)
    S = osm_from_seed(rng.random(), max_m=3, max_g=1, bound=2)
    T, moves = plant_strong(S, 3, 2, S.g + 2, rng)
    cfg = SearchConfig(max_depth=3, entry_bound=2, max_genus=S.g + 2)
    out = strong_equiv_bounded(S, T, cfg)
    assert isinstance(out, Equivalent), [mv.kind for mv in moves]
    assert apply_sequence(out.witness)[0] == T
    # a deeper search still succeeds
    deeper = strong_equiv_bounded(S, T, SearchConfig(max_depth=4, entry_bound=2, max_genus=S.g + 2))
    assert isinstance(deeper, Equivalent)


@pytest.mark.parametrize("seed", range(10))
def test_plant_and_recover_classical(seed):
    rng = random.Random(seed)
    V = osm_from_seed(rng.random(), max_m=3, max_g=1).matrix
    n = V.nrows
    P = IntMatrix.identity(n)
    for _ in range(2):
        if n >= 2:
            i, j = rng.sample(range(n), 2)
            P = P @ IntMatrix.elementary(n, i, j, rng.choice([-1, 1]))
    W = V.congruence(P)
    out = classical_equiv_bounded(V, W, SearchConfig(max_depth=2, mode="classical"))
    assert isinstance(out, Equivalent)
    assert apply_sequence(out.witness)[0] == W


def test_search_is_deterministic():
    rng = random.Random(17)
    S = osm_from_seed(17, max_m=2, max_g=1)
    T, _ = plant_strong(S, 3, 1, S.g + 1, rng)
    cfg = SearchConfig(max_depth=3, entry_bound=1, max_genus=S.g + 1, seed=5)
    a, b = strong_equiv_bounded(S, T, cfg), strong_equiv_bounded(S, T, cfg)
    assert a == b


# -- reports -------------------------------------------------------------------------

def test_reports_for_each_outcome():
    eq = classical_equiv_bounded(M1.matrix, M0.matrix, SearchConfig(mode="classical"))
    data, text = search_report(eq)
    assert data["replay"] == "pass" and data["move_count"] == len(eq.witness)
    assert "replay check = pass" in text

    dist = strong_equiv_bounded(M0, M1)
    data, text = search_report(dist)
    assert data["invariant"] == "linking"
    assert "lk(1,2)=-1" in text and "lk(1,3)=1" in text

    S = osm_from_seed(31, max_m=2, max_g=1)
    T = enlarge(S, "A", [0] * S.dim, [0] * S.dim, -1)
    inc = strong_equiv_bounded(S, T, SearchConfig(max_depth=0, max_genus=T.g))
    data, text = search_report(inc)
    assert data["bound_hit"] == "max_depth" and "nodes" in text
