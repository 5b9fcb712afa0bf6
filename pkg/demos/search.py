"""
Recovering a hidden move sequence
=================================

Scramble a matrix with a few random strong moves, then ask the bounded
search to find its way back.  The witness it returns need not be the
planted sequence, but it always replays exactly.
"""

import random

from sseq import SearchConfig, apply_sequence, random_osm, search_report, strong_equiv_bounded
from sseq.moves import enlarge

rng = random.Random(2)
S = random_osm(2, 1, 2, rng)
print("start:")
print(S.matrix)

# enlarge, then shear the new block into the old one
T = enlarge(S, "A", [1, 0, 0], [1, 0, -1], 1)
T = T.with_matrix(T.matrix.transvect(1, 3, 1))
print("target:")
print(T.matrix)

out = strong_equiv_bounded(S, T, SearchConfig(max_depth=3, entry_bound=1, max_genus=2))
print(search_report(out)[1])

final, _ = apply_sequence(out.witness)
print("witness replays to target:", final == T)
