"""
Classically equivalent, strongly distinct
=========================================

Two 3-component links with 2x2 Seifert matrices.  A single change of basis
relates the matrices, but that change moves a boundary class, so it is not a
legal move once the components are ordered.  The linking numbers tell the
two apart.
"""

from sseq import IntMatrix, OrderedSeifertMatrix, SearchConfig
from sseq import classical_equiv_bounded, fingerprint, search_report, strong_equiv_bounded

M0 = OrderedSeifertMatrix(3, 0, IntMatrix([[-1, -1], [-1, -1]]))
M1 = OrderedSeifertMatrix(3, 0, IntMatrix([[-1, 0], [0, 0]]))

# --- classical search: any unimodular congruence is allowed ---
classical = classical_equiv_bounded(M1.matrix, M0.matrix, SearchConfig(max_depth=2, mode="classical"))
print(search_report(classical)[1])
print("witness:", classical.witness.moves[0].P.tolist())

# --- strong search: the fingerprint already disagrees ---
strong = strong_equiv_bounded(M0, M1)
print(search_report(strong)[1])

# the other invariants agree, so only the ordered data separates them
f0, f1 = fingerprint(M0), fingerprint(M1)
for part in ("conway", "signature", "determinant"):
    print(f"{part:12s} {getattr(f0, part)!s:>4} {getattr(f1, part)!s:>4}")
