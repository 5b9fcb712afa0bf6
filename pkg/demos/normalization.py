"""
Pushing enlargements to the front
=================================

Any strong move sequence can be rewritten so that every enlargement comes
before every reduction.  The matrix sitting between the two halves is a
common enlargement of both endpoints.
"""

from sseq import annotate, common_matrix, normalize_sequence, random_osm, random_sequence
from sseq.normalize import inversions

S = random_osm(2, 1, 2, rng=15)
seq = annotate(random_sequence(S, 6, 2, seed=15))
print("input kinds :", seq.kinds, f"({inversions(seq.kinds)} reduce-before-enlarge pairs)")

history = []
out = normalize_sequence(seq, history)
print("output kinds:", out.kinds)
print("inversions after each induction step:", history)

# both sequences start and end at the same matrices
assert out.start == seq.start and out.final == seq.final

C = common_matrix(out)
print(f"common matrix, genus {C.g}:")
print(C.matrix)
