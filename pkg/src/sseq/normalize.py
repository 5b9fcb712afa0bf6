"""Rewrite strong move sequences so every enlargement precedes every reduction.

Two local rewrites do the work:

``swap_reduce_enlarge``
    ``M1 ↘ M2 ↗ M3``  becomes  ``M1 ↗ M4 ≅ M5 ↘ M3``.  M4 stacks the block
    deleted from M1 and the block added to M2 on top of M2; the congruence
    swaps those two trailing 2-blocks.

``swap_congruence_enlarge``
    ``M1 ≅ M2 ↗ M3``  becomes  ``M1 ↗ M4 ≅ M3`` where the enlargement data is
    pulled back through ``P^-1`` and the congruence is ``Q = (P 0; 0 I_2)``.

Every rewrite is checked by replay before it is accepted.
"""

from dataclasses import dataclass

from .errors import NotNormalized, RewriteError
from .linalg import IntMatrix, block_matrix, inverse_unimodular
from .moves import (
    CONGRUENCE,
    ENLARGE,
    REDUCE,
    ClassicalCongruence,
    Enlarge,
    MoveSequence,
    Reduce,
    StrongCongruence,
    apply_move,
    apply_sequence,
    reduce_with_data,
)

__all__ = [
    "AnnotatedSequence",
    "annotate",
    "inversions",
    "is_normalized",
    "swap_reduce_enlarge",
    "swap_congruence_enlarge",
    "normalize_sequence",
    "common_matrix",
]


@dataclass(frozen=True)
class AnnotatedSequence:
    sequence: MoveSequence
    snapshots: tuple  # matrix before the first move, then after each move

    @property
    def kinds(self):
        return self.sequence.kinds

    @property
    def moves(self):
        return self.sequence.moves

    @property
    def start(self):
        return self.snapshots[0]

    @property
    def final(self):
        return self.snapshots[-1]


def annotate(seq):
    final, trace = apply_sequence(seq)
    return AnnotatedSequence(seq, tuple(trace))


def inversions(kinds):
    """Number of (reduction, later enlargement) pairs in a kind string."""
    count = seen_reductions = 0
    for k in kinds:
        if k == REDUCE:
            seen_reductions += 1
        elif k == ENLARGE:
            count += seen_reductions
    return count


def is_normalized(kinds):
    return inversions(kinds) == 0


def swap_reduce_enlarge(M1, r, e):
    """Rewrite ``M1 ↘ M2 ↗ M3`` as ``(e', c, r')`` with ``M1 ↗ ≅ ↘ M3``."""
    if not isinstance(r, Reduce) or not isinstance(e, Enlarge):
        raise TypeError("expected a Reduce followed by an Enlarge")
    M2, _ = reduce_with_data(M1)
    M3 = apply_move(M2, e)

    e_new = Enlarge(e.form, e.x + (0, 0), e.y + (0, 0), e.z)
    M4 = apply_move(M1, e_new)
    k = M4.dim
    # exchange basis elements (k, k-2) and (k-1, k-3), 1-indexed
    perm = list(range(k))
    perm[k - 1], perm[k - 3] = perm[k - 3], perm[k - 1]
    perm[k - 2], perm[k - 4] = perm[k - 4], perm[k - 2]
    C = IntMatrix([[int(perm[c] == row) for c in range(k)] for row in range(k)])
    c = StrongCongruence(C)
    r_new = Reduce()

    out = MoveSequence(M1, (e_new, c, r_new))
    if apply_sequence(out)[0] != M3:
        raise RewriteError("reduce/enlarge swap did not replay to the original endpoint")
    return e_new, c, r_new


def _congruence_matrix(move):
    return move.A if isinstance(move, StrongCongruence) else move.P


def swap_congruence_enlarge(M1, P, e):
    """Rewrite ``M1 ≅ M2 ↗ M3`` as ``(e', Q)`` with ``M1 ↗ M4 ≅ M3``."""
    if isinstance(P, (StrongCongruence, ClassicalCongruence)):
        P = _congruence_matrix(P)
    if not isinstance(P, IntMatrix):
        P = IntMatrix(P)
    M2 = apply_move(M1, StrongCongruence(P))
    M3 = apply_move(M2, e)

    Pinv = inverse_unimodular(P)
    # x3 P^-1 as a row; (P^t)^-1 y3^t as a column is the same as y3 P^-1 as a row
    e_new = Enlarge(e.form, Pinv.vecmul(e.x), Pinv.vecmul(e.y), e.z)
    n = P.nrows
    Q = block_matrix([[P, IntMatrix.zeros(n, 2)], [IntMatrix.zeros(2, n), IntMatrix.identity(2)]])
    q = StrongCongruence(Q)

    out = MoveSequence(M1, (e_new, q))
    if apply_sequence(out)[0] != M3:
        raise RewriteError("congruence/enlarge swap did not replay to the original endpoint")
    return e_new, q


def _fuse(moves, i):
    """Merge the congruence at i with a congruence directly after it, if any."""
    if i + 1 < len(moves) and moves[i].kind == CONGRUENCE and moves[i + 1].kind == CONGRUENCE \
            and isinstance(moves[i], StrongCongruence) and isinstance(moves[i + 1], StrongCongruence):
        fused = StrongCongruence(moves[i].A @ moves[i + 1].A)
        moves[i:i + 2] = [fused]


def normalize_sequence(seq, history=None):
    """Push every enlargement in front of every reduction.

    ``seq`` may be an :class:`AnnotatedSequence` or a plain
    :class:`MoveSequence`.  If ``history`` is a list, the inversion count of
    the kind string is appended after every induction step, i.e. after each
    reduce/enlarge swap (congruence swaps leave the count unchanged).
    """
    if isinstance(seq, MoveSequence):
        seq = annotate(seq)
    start = seq.sequence.start
    moves = list(seq.moves)
    snaps = list(seq.snapshots)
    if any(isinstance(mv, ClassicalCongruence) for mv in moves):
        raise TypeError("normalization is defined for strong move sequences only")

    while True:
        first_reduce = next((i for i, mv in enumerate(moves) if mv.kind == REDUCE), None)
        if first_reduce is None:
            break
        k = next((i for i in range(first_reduce + 1, len(moves)) if moves[i].kind == ENLARGE), None)
        if k is None:
            break
        prev = moves[k - 1]
        before = snaps[k - 1]
        if prev.kind == CONGRUENCE:
            e_new, q = swap_congruence_enlarge(before, prev, moves[k])
            moves[k - 1:k + 1] = [e_new, q]
            _fuse(moves, k)
        else:
            e_new, c, r_new = swap_reduce_enlarge(before, prev, moves[k])
            moves[k - 1:k + 1] = [e_new, c, r_new]
        snaps = snaps[:k - 1] + list(apply_sequence(MoveSequence(before, moves[k - 1:]))[1])
        if history is not None and prev.kind == REDUCE:
            history.append(inversions("".join(mv.kind for mv in moves)))

    out = AnnotatedSequence(MoveSequence(start, tuple(moves)), tuple(snaps))
    if out.start != seq.start or out.final != seq.final:
        raise RewriteError("normalization changed the sequence endpoints")
    return out


def common_matrix(seq):
    """Matrix reached just before the first reduction of a normalized sequence."""
    if isinstance(seq, MoveSequence):
        seq = annotate(seq)
    if not is_normalized(seq.kinds):
        raise NotNormalized(f"kind string {seq.kinds} has a reduction before an enlargement")
    first_reduce = next((i for i, k in enumerate(seq.kinds) if k == REDUCE), None)
    if first_reduce is None:
        return seq.final
    return seq.snapshots[first_reduce]
