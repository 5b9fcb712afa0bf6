"""Block decomposition of a boundary-fixing change of basis.

A change of basis between two semi-symplectic bases has the shape
``C = (I B; 0 S)`` with ``S`` symplectic.  It factors as ``C = D E`` with
``D = (I 0; 0 S)`` and ``E = (I B; 0 I)``, and ``E`` is the commuting product
of elementary matrices ``E_ij ** b_ij``.
"""

import random
from dataclasses import dataclass

from .errors import DimensionMismatch, NotBlockForm, SNotSymplectic
from .linalg import IntMatrix, block_matrix, is_symplectic, standard_sym
from .seifert import semi_symplectic_form

__all__ = [
    "ChangeOfBasis",
    "ElementaryFactor",
    "split_blocks",
    "stabilizes_X",
    "factor_DE",
    "elementary_factorization",
    "assemble",
    "symplectic_generators",
    "random_symplectic",
    "random_change_of_basis",
]


@dataclass(frozen=True)
class ChangeOfBasis:
    C: IntMatrix
    m: int
    g: int
    B: IntMatrix
    S: IntMatrix


@dataclass(frozen=True)
class ElementaryFactor:
    """``E_ij ** exponent``: identity plus ``exponent`` at (i, j+m-1), 1-indexed."""

    i: int
    j: int
    exponent: int

    def matrix(self, m, g):
        n = m - 1 + 2 * g
        if not (1 <= self.i <= m - 1 and 1 <= self.j <= 2 * g):
            raise DimensionMismatch(f"E_{self.i},{self.j} does not exist for m={m}, g={g}")
        return IntMatrix.elementary(n, self.i - 1, self.j + m - 2, self.exponent)


def split_blocks(C, m, g):
    b = m - 1
    n = b + 2 * g
    if C.shape != (n, n):
        raise DimensionMismatch(f"expected a {n}x{n} matrix for m={m}, g={g}, got {C.shape}")
    if C.submatrix(0, b, 0, b) != IntMatrix.identity(b):
        raise NotBlockForm("upper-left block is not the identity")
    if any(C[i, j] for i in range(b, n) for j in range(b)):
        raise NotBlockForm("lower-left block is not zero")
    B = C.submatrix(0, b, b, n)
    S = C.submatrix(b, n, b, n)
    if not is_symplectic(S, g):
        raise SNotSymplectic("lower-right block is not symplectic")
    return ChangeOfBasis(C, m, g, B, S)


def stabilizes_X(C, m, g):
    """True iff C^t X C == X for X = (0 0; 0 Sym)."""
    X = semi_symplectic_form(m, g)
    if C.shape != X.shape:
        raise DimensionMismatch(f"expected {X.shape}, got {C.shape}")
    return C.T @ X @ C == X


def factor_DE(cb):
    b, k = cb.m - 1, 2 * cb.g
    I_b, I_k = IntMatrix.identity(b), IntMatrix.identity(k)
    D = block_matrix([[I_b, IntMatrix.zeros(b, k)], [IntMatrix.zeros(k, b), cb.S]])
    E = block_matrix([[I_b, cb.B], [IntMatrix.zeros(k, b), I_k]])
    return D, E


def elementary_factorization(cb):
    """Nonzero exponents b_ij in row-major order (i outer, j inner)."""
    B = cb.B
    return [ElementaryFactor(i + 1, j + 1, B[i, j])
            for i in range(B.nrows) for j in range(B.ncols) if B[i, j]]


def assemble(factors, m, g):
    n = m - 1 + 2 * g
    out = IntMatrix.identity(n)
    for f in factors:
        out = out @ f.matrix(m, g)
    return out


# -- symplectic sampling ------------------------------------------------------

def symplectic_generators(g):
    """Transvections I + c v v^t Sym (c = +-1, v in {e_i, e_i +- e_j}) and Sym."""
    n = 2 * g
    J = standard_sym(g)
    vectors = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        vectors.append(e)
        for j in range(i + 1, n):
            for s in (1, -1):
                v = [0] * n
                v[i], v[j] = 1, s
                vectors.append(v)
    gens = []
    for v in vectors:
        vvT = IntMatrix([[a * b for b in v] for a in v], ncols=n)
        T = vvT @ J
        for c in (1, -1):
            gens.append(IntMatrix.identity(n) + c * T)
    if g:
        gens.append(J)
    return gens


def random_symplectic(g, rng, max_length=12):
    gens = symplectic_generators(g)
    S = IntMatrix.identity(2 * g)
    if not gens:
        return S
    for _ in range(rng.randint(0, max_length)):
        S = S @ rng.choice(gens)
    return S


def random_change_of_basis(m, g, rng, bound=3, max_length=12):
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    b, k = m - 1, 2 * g
    B = IntMatrix([[rng.randint(-bound, bound) for _ in range(k)] for _ in range(b)], ncols=k)
    S = random_symplectic(g, rng, max_length)
    return block_matrix([[IntMatrix.identity(b), B], [IntMatrix.zeros(k, b), S]])
