"""Exact integer and Laurent-polynomial linear algebra.

Everything here works on Python integers (or ``fractions.Fraction`` in
intermediate steps) so that results are exact regardless of entry size.
Floating point is never used.
"""

from fractions import Fraction
from operator import index

from .errors import DimensionMismatch, NonSquare, NotSymmetric, NotUnimodular

__all__ = [
    "IntMatrix",
    "LaurentPoly",
    "det",
    "is_unimodular",
    "inverse_unimodular",
    "standard_sym",
    "is_symplectic",
    "signature",
    "laurent_det",
    "block_matrix",
]


class IntMatrix:
    """Immutable dense matrix of arbitrary-precision integers.

    ``IntMatrix([[1, 2], [3, 4]])`` builds a 2x2 matrix.  The empty matrix
    ``IntMatrix([])`` is 0x0; other empty shapes need ``ncols``.
    """

    __slots__ = ("_data", "_nrows", "_ncols", "_hash")

    def __init__(self, rows=(), ncols=None):
        data = tuple(tuple(index(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows in matrix literal")
        self._data = data
        self._nrows = len(data)
        self._ncols = ncols
        self._hash = None

    @classmethod
    def _raw(cls, data, ncols):
        # trusted constructor: data is already a tuple of int tuples
        obj = cls.__new__(cls)
        obj._data = data
        obj._nrows = len(data)
        obj._ncols = ncols
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, n):
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows, ncols=None):
        if ncols is None:
            ncols = nrows
        return cls._raw(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def elementary(cls, n, i, j, c=1):
        """Identity plus ``c`` in position (i, j) (0-indexed, i != j)."""
        rows = [[int(r == s) for s in range(n)] for r in range(n)]
        rows[i][j] += c
        return cls(rows)

    # -- basic access -------------------------------------------------------

    @property
    def shape(self):
        return (self._nrows, self._ncols)

    @property
    def nrows(self):
        return self._nrows

    @property
    def ncols(self):
        return self._ncols

    @property
    def rows(self):
        return self._data

    def is_square(self):
        return self._nrows == self._ncols

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i):
        return self._data[i]

    def col(self, j):
        return tuple(r[j] for r in self._data)

    def tolist(self):
        return [list(r) for r in self._data]

    def entries(self):
        """Row-major flat tuple of entries."""
        return tuple(v for r in self._data for v in r)

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._ncols, self._data))
        return self._hash

    def __repr__(self):
        if self._nrows == 0 or self._ncols == 0:
            return f"IntMatrix.zeros({self._nrows}, {self._ncols})"
        return f"IntMatrix({self.tolist()!r})"

    def __str__(self):
        if not self._data:
            return "[]"
        width = max(len(str(v)) for r in self._data for v in r) if self._ncols else 0
        return "\n".join(
            "[" + " ".join(str(v).rjust(width) for v in r) + "]" for r in self._data
        )

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self):
        if self._nrows == 0:
            return IntMatrix.zeros(self._ncols, 0)
        return IntMatrix._raw(tuple(zip(*self._data)), self._nrows)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        self._check_same_shape(other)
        return IntMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self._ncols,
        )

    def __sub__(self, other):
        self._check_same_shape(other)
        return IntMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self._ncols,
        )

    def __neg__(self):
        return IntMatrix._raw(tuple(tuple(-a for a in r) for r in self._data), self._ncols)

    def __mul__(self, scalar):
        scalar = index(scalar)
        return IntMatrix._raw(tuple(tuple(scalar * a for a in r) for r in self._data), self._ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._data)) if other._nrows else ((),) * other._ncols
        data = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self._data
        )
        return IntMatrix._raw(data, other._ncols)

    def congruence(self, P):
        """Return ``P^t @ self @ P``."""
        return P.T @ self @ P

    def vecmul(self, x):
        """Row vector ``x`` times this matrix, as a tuple."""
        if len(x) != self._nrows:
            raise DimensionMismatch("vector length does not match row count")
        return tuple(sum(a * r[j] for a, r in zip(x, self._data)) for j in range(self._ncols))

    def submatrix(self, r0, r1, c0, c1):
        return IntMatrix._raw(tuple(r[c0:c1] for r in self._data[r0:r1]), max(0, c1 - c0))

    def is_symmetric(self):
        n = self._nrows
        if n != self._ncols:
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(n) for j in range(i + 1, n))

    # -- cheap elementary congruences used in hot loops ---------------------

    def transvect(self, i, j, c):
        """Congruence by ``I + c*e_i e_j^t``: column j += c*col i, then row j += c*row i."""
        rows = [list(r) for r in self._data]
        for r in rows:
            r[j] += c * r[i]
        ri, rj = rows[i], rows[j]
        rows[j] = [b + c * a for a, b in zip(ri, rj)]
        return IntMatrix._raw(tuple(map(tuple, rows)), self._ncols)

    def negate_basis(self, j):
        """Congruence by the diagonal sign flip at index j."""
        rows = [list(r) for r in self._data]
        for r in rows:
            r[j] = -r[j]
        rows[j] = [-a for a in rows[j]]
        return IntMatrix._raw(tuple(map(tuple, rows)), self._ncols)

    def swap_basis(self, i, j):
        """Congruence by the transposition permutation (i j)."""
        perm = list(range(self._nrows))
        perm[i], perm[j] = perm[j], perm[i]
        return self.permute_basis(perm)

    def permute_basis(self, perm):
        """Entry (a, b) of the result is entry (perm[a], perm[b]) of self."""
        d = self._data
        return IntMatrix._raw(tuple(tuple(d[p][q] for q in perm) for p in perm), self._ncols)


def block_matrix(blocks):
    """Assemble a matrix from a 2D list of IntMatrix blocks."""
    rows = []
    ncols = sum(b.ncols for b in blocks[0]) if blocks else 0
    for brow in blocks:
        height = brow[0].nrows
        for b in brow:
            if b.nrows != height:
                raise DimensionMismatch("block heights differ within a block row")
        for k in range(height):
            rows.append(tuple(v for b in brow for v in b.rows[k]))
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatch("block widths differ between block rows")
    return IntMatrix._raw(tuple(rows), ncols)


def _bareiss(rows, zero, one, exact_div):
    """Fraction-free determinant over an integral domain."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if a[k][k] == zero:
            for i in range(k + 1, n):
                if a[i][k] != zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = exact_div(ri[j] * akk - aik * rk[j], prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _int_exact_div(a, b):
    q, r = divmod(a, b)
    assert r == 0, "Bareiss division was not exact"
    return q


def det(M):
    """Exact determinant by Bareiss fraction-free elimination."""
    if not M.is_square():
        raise NonSquare(f"determinant of a {M.nrows}x{M.ncols} matrix")
    return _bareiss(M.rows, 0, 1, _int_exact_div)


def is_unimodular(A):
    return A.is_square() and det(A) in (1, -1)


def inverse_unimodular(A):
    """Integer inverse of a unimodular matrix (Gauss-Jordan over the rationals)."""
    if not A.is_square():
        raise NonSquare("only square matrices have inverses")
    n = A.nrows
    aug = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(A.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise DimensionMismatch("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        p = aug[k][k]
        aug[k] = [v / p for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    inv = [r[n:] for r in aug]
    if any(v.denominator != 1 for r in inv for v in r):
        raise NotUnimodular("inverse is not integral")
    return IntMatrix([[int(v) for v in r] for r in inv])


def standard_sym(g):
    """The 2g x 2g block sum of g copies of [[0, -1], [1, 0]]."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    rows = [[0] * (2 * g) for _ in range(2 * g)]
    for k in range(g):
        rows[2 * k][2 * k + 1] = -1
        rows[2 * k + 1][2 * k] = 1
    return IntMatrix(rows, ncols=2 * g)


def is_symplectic(S, g):
    if S.shape != (2 * g, 2 * g):
        raise DimensionMismatch(f"expected a {2 * g}x{2 * g} matrix, got {S.shape}")
    J = standard_sym(g)
    return S.T @ J @ S == J


def signature(M):
    """Signature of a symmetric integer matrix by exact Lagrange diagonalization.

    A zero diagonal with a nonzero off-diagonal entry a_ij is handled by
    splitting off the hyperbolic plane [[0, a], [a, 0]], which contributes
    one positive and one negative square.
    """
    if not M.is_square():
        raise NonSquare("signature needs a square matrix")
    if not M.is_symmetric():
        raise NotSymmetric("signature needs a symmetric matrix")
    a = [[Fraction(v) for v in r] for r in M.rows]
    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is not None:
            p = a[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            a = [[a[i][j] - a[i][k] * a[k][j] / p for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            break  # remaining form is zero
        i, j = pair
        h = a[i][j]
        pos += 1
        neg += 1
        rest = [r for r in range(n) if r not in (i, j)]
        # Schur complement against H = [[0, h], [h, 0]], H^-1 = [[0, 1/h], [1/h, 0]]
        a = [[a[r][s] - (a[r][i] * a[j][s] + a[r][j] * a[i][s]) / h for s in rest]
             for r in rest]
    return pos - neg


class LaurentPoly:
    """Integer Laurent polynomial in one variable ``t``.

    Stored as a mapping exponent -> nonzero coefficient; the zero
    polynomial is the empty mapping.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in dict(coeffs).items():
                v = index(v)
                if v:
                    c[index(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent=1, coeff=1):
        return cls({exponent: coeff})

    @property
    def coeffs(self):
        return dict(self._c)

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def max_exp(self):
        return max(self._c) if self._c else None

    def min_exp(self):
        return min(self._c) if self._c else None

    def __bool__(self):
        return bool(self._c)

    @staticmethod
    def _lift(x):
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.constant(index(x))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other):
        other = self._lift(other)
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials")
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, other):
        """Quotient in Z[t, 1/t]; raises ArithmeticError if not exact."""
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        # shift both to ordinary polynomials with nonzero constant term
        sa, sb = self.min_exp(), other.min_exp()
        a = [0] * (self.max_exp() - sa + 1)
        for e, v in self._c.items():
            a[e - sa] = v
        b = [0] * (other.max_exp() - sb + 1)
        for e, v in other._c.items():
            b[e - sb] = v
        db = len(b) - 1
        lead = b[-1]
        q = [0] * max(len(a) - db, 0)
        for k in range(len(a) - 1, db - 1, -1):
            coef = a[k]
            if coef == 0:
                continue
            qk, r = divmod(coef, lead)
            if r:
                raise ArithmeticError("inexact Laurent division")
            q[k - db] = qk
            for i, bv in enumerate(b):
                a[k - db + i] -= qk * bv
        if any(a):
            raise ArithmeticError("inexact Laurent division")
        return LaurentPoly({i + sa - sb: v for i, v in enumerate(q)})

    def evaluate(self, t):
        return sum(Fraction(t) ** e * v for e, v in self._c.items())

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(v) == 1:
                coef = ""
            else:
                coef = str(abs(v))
            term = coef + ("*" if coef and mono else "") + mono
            parts.append(("-" if v < 0 else "+", term))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, term in parts[1:]:
            out += f" {s} {term}"
        return out


def laurent_det(rows):
    """Determinant of a square matrix of LaurentPoly entries (Bareiss)."""
    rows = [[LaurentPoly._lift(v) for v in r] for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare("laurent_det needs a square matrix")
    zero = LaurentPoly()
    return _bareiss(rows, zero, LaurentPoly.constant(1), lambda a, b: a.exact_div(b))
