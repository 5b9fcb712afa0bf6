"""Ordered Seifert matrices: block structure, validation and linking data.

Basis convention: indices ``0 .. m-2`` are the boundary classes of the
first m-1 link components, indices ``m-1 ..`` are the 2g genus classes.
The last component never gets a row; its class is minus the sum of the
others.
"""

import random
from dataclasses import dataclass, field

from .errors import InvalidMatrix
from .linalg import IntMatrix, det, standard_sym

__all__ = [
    "OrderedSeifertMatrix",
    "LinkingTable",
    "ValidationReport",
    "validate",
    "linking_numbers",
    "lambda_from_linking",
    "intersection_form",
    "semi_symplectic_form",
    "is_semi_symplectic",
    "random_osm",
]


@dataclass(frozen=True)
class OrderedSeifertMatrix:
    """Seifert matrix of an m-component link in an ordered basis of genus g.

    Construction never validates; call :func:`validate` or :meth:`check`.
    """

    m: int
    g: int
    matrix: IntMatrix

    def __post_init__(self):
        if not isinstance(self.matrix, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix(self.matrix))
        if self.m < 1:
            raise ValueError("a link has at least one component")
        if self.g < 0:
            raise ValueError("genus must be non-negative")

    @property
    def dim(self):
        return self.matrix.nrows

    @property
    def boundary(self):
        """Number of fixed boundary basis elements, m - 1."""
        return self.m - 1

    @property
    def lambda_block(self):
        b = self.m - 1
        return self.matrix.submatrix(0, b, 0, b)

    def with_matrix(self, matrix, g=None):
        return OrderedSeifertMatrix(self.m, self.g if g is None else g, matrix)

    def check(self, strict=True):
        report = validate(self, strict=strict)
        if not report.ok:
            raise InvalidMatrix(f"invalid ordered Seifert matrix: {report.summary()}", report)
        return self

    def __str__(self):
        return f"OrderedSeifertMatrix(m={self.m}, g={self.g})\n{self.matrix}"


@dataclass(frozen=True)
class LinkingTable:
    """Pairwise linking numbers lk(L_i, L_j), 1 <= i < j <= m (1-indexed)."""

    m: int
    lk: tuple = ()  # sorted ((i, j), value) pairs

    def __post_init__(self):
        items = dict(self.lk)
        expected = {(i, j) for i in range(1, self.m + 1) for j in range(i + 1, self.m + 1)}
        if set(items) != expected:
            raise ValueError(f"a linking table for m={self.m} needs exactly the pairs {sorted(expected)}")
        object.__setattr__(self, "lk", tuple(sorted(items.items())))

    @classmethod
    def from_dict(cls, m, values):
        norm = {}
        for (i, j), v in values.items():
            norm[(min(i, j), max(i, j))] = int(v)
        return cls(m, tuple(norm.items()))

    def __getitem__(self, pair):
        i, j = pair
        if i == j:
            raise KeyError("no self-linking in a linking table")
        return dict(self.lk)[(min(i, j), max(i, j))]

    def as_dict(self):
        return dict(self.lk)

    def values(self):
        return [v for _, v in self.lk]

    def __str__(self):
        body = ", ".join(f"lk({i},{j})={v}" for (i, j), v in self.lk)
        return "{" + body + "}"


@dataclass
class ValidationReport:
    strict: bool
    checks: dict = field(default_factory=dict)  # name -> (passed, offending indices)

    @property
    def ok(self):
        return all(passed for passed, _ in self.checks.values())

    def failures(self):
        return [name for name, (passed, _) in self.checks.items() if not passed]

    def summary(self):
        fails = self.failures()
        if not fails:
            return "all checks pass"
        return "; ".join(f"{n} fails at {self.checks[n][1]}" for n in fails)

    def to_dict(self):
        return {
            "strict": self.strict,
            "ok": self.ok,
            "checks": {
                name: {"passed": passed, "offending": [list(p) if isinstance(p, tuple) else p
                                                        for p in where]}
                for name, (passed, where) in self.checks.items()
            },
        }


def intersection_form(S):
    M = S.matrix if isinstance(S, OrderedSeifertMatrix) else S
    return M - M.T


def validate(S, strict=True):
    """Check the ordered block structure; failures are reported, not raised."""
    M = S.matrix
    report = ValidationReport(strict=strict)
    square = M.is_square()
    report.checks["square"] = (square, [] if square else [M.shape])
    if not strict:
        return report

    b = S.m - 1
    n = b + 2 * S.g
    size_ok = square and M.nrows == n
    report.checks["size"] = (size_ok, [] if size_ok else [(M.nrows, M.ncols)])
    if not size_ok:
        return report

    bad = [(i, j) for i in range(b) for j in range(i + 1, b) if M[i, j] != M[j, i]]
    report.checks["lambda_symmetry"] = (not bad, bad)

    X = intersection_form(M)
    bad = [(i, j) for i in range(b) for j in range(n) if X[i, j] != 0]
    report.checks["boundary_rows"] = (not bad, bad)

    K = X.submatrix(b, n, b, n)
    d = det(K)
    report.checks["genus_block"] = (d == 1, [] if d == 1 else [d])
    return report


def linking_numbers(S):
    """Read the pairwise linking table off the lambda block.

    Off-diagonal entries are read directly; lk(L_i, L_m) is minus the full
    row sum of row i of the lambda block.
    """
    S.check(strict=True)
    b = S.m - 1
    lam = S.lambda_block
    values = {}
    for i in range(b):
        for j in range(i + 1, b):
            values[(i + 1, j + 1)] = lam[i, j]
        values[(i + 1, S.m)] = -sum(lam.row(i))
    return LinkingTable.from_dict(S.m, values)


def lambda_from_linking(table):
    b = table.m - 1
    lk = table.as_dict()
    rows = [[0] * b for _ in range(b)]
    for i in range(b):
        for j in range(b):
            if i != j:
                rows[i][j] = lk[(min(i, j) + 1, max(i, j) + 1)]
        rows[i][i] = -sum(rows[i][j] for j in range(b) if j != i) - lk[(i + 1, table.m)]
    return IntMatrix(rows, ncols=b)


def semi_symplectic_form(m, g):
    """The block matrix X = (0 0; 0 Sym) of size m-1+2g."""
    b = m - 1
    n = b + 2 * g
    J = standard_sym(g)
    rows = [[0] * n for _ in range(n)]
    for i in range(2 * g):
        for j in range(2 * g):
            rows[b + i][b + j] = J[i, j]
    return IntMatrix(rows, ncols=n)


def is_semi_symplectic(S):
    if S.matrix.shape != (S.m - 1 + 2 * S.g,) * 2:
        return False
    return intersection_form(S) == semi_symplectic_form(S.m, S.g)


def random_osm(m, g, bound, rng=None, mix=3):
    """A random strictly valid ordered Seifert matrix.

    Starts from a semi-symplectic matrix with entries in [-bound, bound] and
    scrambles the genus basis with ``mix`` random block-shaped transvections.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    b = m - 1
    n = b + 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-bound, bound)
            rows[i][j] = rows[j][i] = v
    # add the strictly-lower half of Sym so that M - M^t = X
    for k in range(g):
        rows[b + 2 * k + 1][b + 2 * k] += 1
    M = IntMatrix(rows, ncols=n)
    if g:
        for _ in range(mix):
            j = rng.randrange(b, n)
            i = rng.choice([k for k in range(n) if k != j])
            M = M.transvect(i, j, rng.choice([-1, 1]))
    return OrderedSeifertMatrix(m, g, M)
