"""The Strong S-equivalence move alphabet and sequence replay.

Four moves act on ordered Seifert matrices:

* ``StrongCongruence(A)``: ``A^t M A`` with ``A = (I *; 0 *)`` unimodular,
  ``I`` the (m-1)x(m-1) identity, so the boundary basis is fixed.
* ``ClassicalCongruence(P)``: ``P^t M P`` for any unimodular ``P``.
* ``Enlarge(form, x, y, z)``: append two rows and columns.  The A-form is
  ``(V y^t 0; x z 1; 0 0 0)`` and the B-form ``(V y^t 0; x z 0; 0 1 0)``.
  In strong mode x and y must agree on their first m-1 entries.
* ``Reduce()``: delete a trailing A- or B-form block.

When the current value is a bare :class:`IntMatrix` instead of an
:class:`OrderedSeifertMatrix`, moves follow classical semantics: no fixed
block, no boundary-prefix condition, reductions down to the empty matrix.
"""

import random
from dataclasses import dataclass, field
from operator import index

from .errors import (
    BoundaryEntriesDiffer,
    DimensionMismatch,
    NotBlockShaped,
    NotUnimodular,
    PatternMismatch,
    ReplayError,
    SizeUnderflow,
    VectorLengthMismatch,
)
from .linalg import IntMatrix, det, inverse_unimodular
from .seifert import OrderedSeifertMatrix

ENLARGE = "↗"
REDUCE = "↘"
CONGRUENCE = "≅"

__all__ = [
    "StrongCongruence",
    "ClassicalCongruence",
    "Enlarge",
    "Reduce",
    "MoveSequence",
    "ENLARGE",
    "REDUCE",
    "CONGRUENCE",
    "is_block_shaped",
    "enlarge_matrix",
    "reduce_matrix",
    "apply_strong_congruence",
    "apply_classical_congruence",
    "enlarge",
    "reduce",
    "reduce_with_data",
    "apply_move",
    "apply_sequence",
    "inverse_move",
    "random_strong_unimodular",
    "random_enlarge",
    "random_sequence",
]


@dataclass(frozen=True)
class StrongCongruence:
    A: IntMatrix
    kind = CONGRUENCE

    def __post_init__(self):
        if not isinstance(self.A, IntMatrix):
            object.__setattr__(self, "A", IntMatrix(self.A))


@dataclass(frozen=True)
class ClassicalCongruence:
    P: IntMatrix
    kind = CONGRUENCE

    def __post_init__(self):
        if not isinstance(self.P, IntMatrix):
            object.__setattr__(self, "P", IntMatrix(self.P))


@dataclass(frozen=True)
class Enlarge:
    form: str
    x: tuple
    y: tuple
    z: int
    kind = ENLARGE

    def __post_init__(self):
        if self.form not in ("A", "B"):
            raise ValueError(f"enlargement form must be 'A' or 'B', not {self.form!r}")
        object.__setattr__(self, "x", tuple(index(v) for v in self.x))
        object.__setattr__(self, "y", tuple(index(v) for v in self.y))
        object.__setattr__(self, "z", index(self.z))


@dataclass(frozen=True)
class Reduce:
    kind = REDUCE


@dataclass(frozen=True)
class MoveSequence:
    start: object  # OrderedSeifertMatrix, or IntMatrix for classical replay
    moves: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    @property
    def kinds(self):
        return "".join(mv.kind for mv in self.moves)

    def __len__(self):
        return len(self.moves)


# -- raw matrix operations ---------------------------------------------------

def is_block_shaped(A, b):
    """True iff the first b columns of A are the first b unit vectors."""
    n = A.nrows
    return all(A[i, j] == int(i == j) for j in range(b) for i in range(n))


def enlarge_matrix(V, form, x, y, z):
    n = V.nrows
    if len(x) != n or len(y) != n:
        raise VectorLengthMismatch(f"x and y must have length {n}, got {len(x)} and {len(y)}")
    rows = [list(r) + [y[i], 0] for i, r in enumerate(V.rows)]
    if form == "A":
        rows.append(list(x) + [z, 1])
        rows.append([0] * (n + 2))
    elif form == "B":
        rows.append(list(x) + [z, 0])
        rows.append([0] * n + [1, 0])
    else:
        raise ValueError(f"unknown enlargement form {form!r}")
    return IntMatrix(rows, ncols=n + 2)


def reduce_matrix(W):
    """Split off a trailing enlargement block: returns (V, Enlarge data)."""
    N = W.nrows
    if not W.is_square():
        raise DimensionMismatch("reduction needs a square matrix")
    if N < 2:
        raise SizeUnderflow("a matrix smaller than 2x2 has no trailing block")
    n = N - 2
    last_row, last_col = W.row(N - 1), W.col(N - 1)
    if all(v == 0 for v in last_row) and W[n, n + 1] == 1 and \
            all(last_col[i] == 0 for i in range(N) if i != n):
        form = "A"
    elif all(v == 0 for v in last_col) and W[n + 1, n] == 1 and \
            all(last_row[j] == 0 for j in range(N) if j != n):
        form = "B"
    else:
        raise PatternMismatch("trailing two rows/columns are not an enlargement block")
    x = W.row(n)[:n]
    y = W.col(n)[:n]
    z = W[n, n]
    return W.submatrix(0, n, 0, n), Enlarge(form, x, y, z)


# -- moves on ordered Seifert matrices -----------------------------------------

def _check_unimodular(A, n):
    if A.shape != (n, n):
        raise DimensionMismatch(f"change of basis must be {n}x{n}, got {A.shape}")
    if det(A) not in (1, -1):
        raise NotUnimodular("change of basis has determinant other than +-1")


def apply_strong_congruence(S, A):
    if not isinstance(A, IntMatrix):
        A = IntMatrix(A)
    _check_unimodular(A, S.dim)
    if not is_block_shaped(A, S.m - 1):
        raise NotBlockShaped("congruence does not fix the first m-1 basis elements")
    return S.with_matrix(S.matrix.congruence(A))


def apply_classical_congruence(V, P):
    if not isinstance(P, IntMatrix):
        P = IntMatrix(P)
    _check_unimodular(P, V.nrows)
    return V.congruence(P)


def enlarge(S, form, x, y, z):
    x, y = tuple(x), tuple(y)
    if len(x) != S.dim or len(y) != S.dim:
        raise VectorLengthMismatch(f"x and y must have length {S.dim}")
    b = S.m - 1
    if x[:b] != y[:b]:
        raise BoundaryEntriesDiffer(f"x and y differ in their first {b} entries")
    return S.with_matrix(enlarge_matrix(S.matrix, form, x, y, z), g=S.g + 1)


def reduce_with_data(S):
    """Reduce and also return the Enlarge move that undoes it."""
    if S.dim - 2 < S.m - 1 or S.g < 1:
        raise SizeUnderflow(f"reduction would leave fewer than {S.m - 1} basis elements")
    V, data = reduce_matrix(S.matrix)
    b = S.m - 1
    if data.x[:b] != data.y[:b]:
        raise BoundaryEntriesDiffer("deleted block's x and y differ on the boundary prefix")
    return S.with_matrix(V, g=S.g - 1), data


def reduce(S):
    return reduce_with_data(S)[0]


def apply_move(current, move):
    if isinstance(current, OrderedSeifertMatrix):
        if isinstance(move, StrongCongruence):
            return apply_strong_congruence(current, move.A)
        if isinstance(move, ClassicalCongruence):
            return current.with_matrix(apply_classical_congruence(current.matrix, move.P))
        if isinstance(move, Enlarge):
            return enlarge(current, move.form, move.x, move.y, move.z)
        if isinstance(move, Reduce):
            return reduce(current)
    else:
        if isinstance(move, (StrongCongruence, ClassicalCongruence)):
            P = move.A if isinstance(move, StrongCongruence) else move.P
            return apply_classical_congruence(current, P)
        if isinstance(move, Enlarge):
            return enlarge_matrix(current, move.form, move.x, move.y, move.z)
        if isinstance(move, Reduce):
            return reduce_matrix(current)[0]
    raise TypeError(f"not a move: {move!r}")


def apply_sequence(seq):
    """Replay a sequence; returns (final value, [start, after move 1, ...])."""
    current = seq.start
    trace = [current]
    for i, mv in enumerate(seq.moves):
        try:
            current = apply_move(current, mv)
        except (ValueError, TypeError) as exc:
            raise ReplayError(i, exc) from exc
        trace.append(current)
    return current, trace


def inverse_move(move, before):
    """The move taking ``apply_move(before, move)`` back to ``before``."""
    if isinstance(move, StrongCongruence):
        return StrongCongruence(inverse_unimodular(move.A))
    if isinstance(move, ClassicalCongruence):
        return ClassicalCongruence(inverse_unimodular(move.P))
    if isinstance(move, Enlarge):
        return Reduce()
    if isinstance(move, Reduce):
        M = before.matrix if isinstance(before, OrderedSeifertMatrix) else before
        return reduce_matrix(M)[1]
    raise TypeError(f"not a move: {move!r}")


# -- random generation ---------------------------------------------------------

def random_strong_unimodular(n, b, rng, length=3, bound=1):
    """Product of ``length`` random block-shaped generators of size n.

    Generators: transvections I + c e_i e_j^t with j >= b, sign flips and
    swaps of genus basis elements.
    """
    A = IntMatrix.identity(n)
    if n - b < 1:
        return A
    for _ in range(length):
        kind = rng.random()
        j = rng.randrange(b, n)
        if kind < 0.7 and n > 1:
            i = rng.choice([k for k in range(n) if k != j])
            c = rng.choice([v for v in range(-bound, bound + 1) if v]) if bound else 1
            G = IntMatrix.elementary(n, i, j, c)
        elif kind < 0.85 or n - b < 2:
            rows = IntMatrix.identity(n).tolist()
            rows[j][j] = -1
            G = IntMatrix(rows)
        else:
            i = rng.choice([k for k in range(b, n) if k != j])
            perm = list(range(n))
            perm[i], perm[j] = perm[j], perm[i]
            G = IntMatrix([[int(perm[c] == r) for c in range(n)] for r in range(n)])
        A = A @ G
    return A


def random_enlarge(S, rng, bound, form=None):
    n, b = S.dim, S.m - 1
    x = [rng.randint(-bound, bound) for _ in range(n)]
    y = x[:b] + [rng.randint(-bound, bound) for _ in range(n - b)]
    return Enlarge(form or rng.choice("AB"), x, y, rng.randint(-bound, bound))


def random_sequence(S, length, entry_bound, seed):
    """Deterministic random strong move sequence from S; every move applies."""
    if entry_bound < 0:
        raise ValueError("entry_bound must be non-negative")
    rng = random.Random(seed)
    current = S
    moves = []
    for _ in range(length):
        reducible = False
        if current.g >= 1:
            try:
                reduce_with_data(current)
                reducible = True
            except ValueError:
                pass
        r = rng.random()
        if reducible and r < 0.35:
            mv = Reduce()
        elif r < 0.7:
            mv = random_enlarge(current, rng, entry_bound)
        else:
            A = random_strong_unimodular(current.dim, current.m - 1, rng,
                                         rng.randint(1, 3), max(entry_bound, 1))
            mv = StrongCongruence(A)
        current = apply_move(current, mv)
        moves.append(mv)
    return MoveSequence(S, tuple(moves))
