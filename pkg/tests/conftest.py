import itertools
import random

import pytest
from hypothesis import settings

from sseq import IntMatrix, OrderedSeifertMatrix
from sseq.seifert import random_osm

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

M0 = OrderedSeifertMatrix(3, 0, IntMatrix([[-1, -1], [-1, -1]]))
M1 = OrderedSeifertMatrix(3, 0, IntMatrix([[-1, 0], [0, 0]]))


# -- independent oracles --------------------------------------------------------

def leibniz_det(rows):
    """Permutation-sum determinant; exponential, for small matrices only."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
            if not term:
                break
        total += term
    return total


def naive_congruence(M, P):
    """P^t M P by explicit triple sums over plain lists."""
    M = M.tolist() if hasattr(M, "tolist") else M
    P = P.tolist() if hasattr(P, "tolist") else P
    n, k = len(P), len(P[0]) if P else 0
    out = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            s = 0
            for i in range(n):
                for j in range(n):
                    s += P[i][a] * M[i][j] * P[j][b]
            out[a][b] = s
    return out


def numpy_signature(rows):
    import numpy as np

    if not rows:
        return 0
    eig = np.linalg.eigvalsh(np.array(rows, dtype=float))
    tol = 1e-9 * max(1.0, float(np.abs(eig).max()))
    return int((eig > tol).sum() - (eig < -tol).sum())


def sympy_conway_laurent(rows):
    """det(t M - M^t / t) expanded by sympy, as {exponent: coefficient}."""
    import sympy

    t = sympy.Symbol("t")
    n = len(rows)
    if n == 0:
        return {0: 1}
    A = sympy.Matrix(n, n, lambda i, j: t * rows[i][j] - rows[j][i] / t)
    expr = sympy.expand(A.det(method="berkowitz") * t ** n)
    poly = sympy.Poly(expr, t)
    return {e[0] - n: int(c) for e, c in zip(poly.monoms(), poly.coeffs()) if c}


# -- shared builders ----------------------------------------------------------------

def osm_from_seed(seed, max_m=4, max_g=2, bound=3):
    rng = random.Random(seed)
    return random_osm(rng.randint(1, max_m), rng.randint(0, max_g), bound, rng)


@pytest.fixture
def rng():
    return random.Random(12345)


# -- acceptance summary -----------------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# -- planted search instances -------------------------------------------------------

def _random_generator_congruence(n, b, bound, rng):
    """One block-shaped generator: a transvection, a sign flip or a swap."""
    from sseq.moves import StrongCongruence

    j = rng.randrange(b, n)
    kind = rng.choice("TFS" if n - b >= 2 else "TF")
    if kind == "T" and n >= 2:
        i = rng.choice([k for k in range(n) if k != j])
        c = rng.choice([v for v in range(-bound, bound + 1) if v])
        return StrongCongruence(IntMatrix.elementary(n, i, j, c))
    if kind == "S":
        i = rng.choice([k for k in range(b, n) if k != j])
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return StrongCongruence(IntMatrix([[int(perm[c] == r) for c in range(n)] for r in range(n)]))
    rows = IntMatrix.identity(n).tolist()
    rows[j][j] = -1
    return StrongCongruence(IntMatrix(rows))


def _random_sparse_enlarge(n, b, bound, rng):
    """Enlargement data with at most one nonzero slot; a boundary slot sets x and y."""
    from sseq.moves import Enlarge

    x, y = [0] * n, [0] * n
    slots = [("xy", i) for i in range(b)] + [(s, i) for i in range(b, n) for s in "xy"]
    if slots and bound and rng.random() < 0.7:
        s, i = rng.choice(slots)
        v = rng.choice([w for w in range(-bound, bound + 1) if w])
        if "x" in s:
            x[i] = v
        if "y" in s:
            y[i] = v
    return Enlarge(rng.choice("AB"), x, y, rng.randint(-bound, bound))


def plant_strong(S, depth, bound, max_genus, rng):
    """Walk ``depth`` random moves from S inside the search's generator set.

    Each step picks a move category uniformly (congruence, enlargement when
    below ``max_genus``, reduction when the trailing block allows it).
    """
    from sseq.moves import Reduce, apply_move, reduce_with_data

    cur, moves = S, []
    b = S.m - 1
    for _ in range(depth):
        options = ["congruence"] if cur.dim > b else []
        if cur.g < max_genus:
            options.append("enlarge")
        try:
            reduce_with_data(cur)
            options.append("reduce")
        except ValueError:
            pass
        if not options:
            break
        pick = rng.choice(options)
        if pick == "congruence":
            mv = _random_generator_congruence(cur.dim, b, bound, rng)
        elif pick == "enlarge":
            mv = _random_sparse_enlarge(cur.dim, b, bound, rng)
        else:
            mv = Reduce()
        cur = apply_move(cur, mv)
        moves.append(mv)
    return cur, moves
