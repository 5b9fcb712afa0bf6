"""
Splitting a change of basis
===========================

A change of basis that fixes the boundary classes has the block shape
(I B; 0 S) with S symplectic.  It is the product of a block-diagonal part and
a unipotent part, and the unipotent part is a word in elementary matrices.
"""

import random

from sseq import elementary_factorization, factor_DE, split_blocks, stabilizes_X
from sseq.factorize import assemble, random_change_of_basis

m, g = 3, 2
C = random_change_of_basis(m, g, random.Random(8), bound=2)
print("C =")
print(C)

cb = split_blocks(C, m, g)
D, E = factor_DE(cb)
print("S is symplectic, C = D E:", D @ E == C)

factors = elementary_factorization(cb)
print("E =", " ".join(f"E_{f.i},{f.j}^{f.exponent}" for f in factors) or "I")
print("reassembled:", assemble(factors, m, g) == E)

# C preserves the intersection pairing (0 0; 0 Sym)
print("C^t X C = X:", stabilizes_X(C, m, g))
