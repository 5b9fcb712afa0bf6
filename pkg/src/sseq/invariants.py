"""Invariants of Strong S-equivalence and the fingerprint built from them.

Conway convention: ``∇(z) = det(t M - t^-1 M^t)`` rewritten in
``z = t - t^-1``.  Signature and determinant are taken of ``M + M^t``.
"""

import json
from dataclasses import dataclass

from .errors import ComponentCountMismatch, NotAConwayPolynomial
from .linalg import LaurentPoly, det, laurent_det, signature
from .seifert import LinkingTable, OrderedSeifertMatrix, linking_numbers

__all__ = [
    "ConwayPolynomial",
    "InvariantFingerprint",
    "laurent_to_conway",
    "conway",
    "conway_of_matrix",
    "signature_invariant",
    "determinant_invariant",
    "fingerprint",
    "classical_fingerprint",
    "distinguishes",
    "distinguishes_classical",
]

_Z = LaurentPoly({1: 1, -1: -1})


@dataclass(frozen=True)
class ConwayPolynomial:
    """Integer polynomial in z, coefficients listed from z^0 upward."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def to_laurent(self):
        out = LaurentPoly()
        power = LaurentPoly.constant(1)
        for c in self.coeffs:
            if c:
                out = out + power * c
            power = power * _Z
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mag = str(abs(c)) if (abs(c) != 1 or not mono) else ""
            terms.append(("-" if c < 0 else "+", mag + mono))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for s, t in terms[1:]:
            out += f" {s} {t}"
        return out


def laurent_to_conway(f):
    """Rewrite a Laurent polynomial in t as a polynomial in z = t - 1/t.

    Peels off the top-degree term each time: z^d has leading term t^d, so
    the coefficient of t^d in the remainder is the z^d coefficient.
    """
    coeffs = {}
    rem = f
    while rem:
        d = rem.max_exp()
        if d < 0:
            raise NotAConwayPolynomial(f"{f} is not a polynomial in t - 1/t")
        c = rem[d]
        coeffs[d] = c
        rem = rem - (_Z ** d) * c
    top = max(coeffs) if coeffs else -1
    return ConwayPolynomial(tuple(coeffs.get(k, 0) for k in range(top + 1)))


def conway_of_matrix(M):
    t = LaurentPoly.monomial(1)
    tinv = LaurentPoly.monomial(-1)
    n = M.nrows
    rows = [[t * M[i, j] - tinv * M[j, i] for j in range(n)] for i in range(n)]
    return laurent_to_conway(laurent_det(rows))


def conway(S):
    return conway_of_matrix(S.matrix)


def _symmetrized(M):
    return M + M.T


def signature_invariant(S):
    M = S.matrix if isinstance(S, OrderedSeifertMatrix) else S
    return signature(_symmetrized(M))


def determinant_invariant(S):
    M = S.matrix if isinstance(S, OrderedSeifertMatrix) else S
    return abs(det(_symmetrized(M)))


@dataclass(frozen=True)
class InvariantFingerprint:
    m: int
    linking: LinkingTable  # None in a classical fingerprint
    conway: ConwayPolynomial
    signature: int
    determinant: int

    PARTS = ("linking", "conway", "signature", "determinant")

    def to_dict(self):
        return {
            "m": self.m,
            "linking": None if self.linking is None else
            [[i, j, v] for (i, j), v in self.linking.lk],
            "conway": list(self.conway.coeffs),
            "signature": self.signature,
            "determinant": self.determinant,
        }

    @classmethod
    def from_dict(cls, d):
        lk = d["linking"]
        table = None if lk is None else \
            LinkingTable.from_dict(d["m"], {(i, j): v for i, j, v in lk})
        return cls(d["m"], table, ConwayPolynomial(tuple(d["conway"])),
                   d["signature"], d["determinant"])

    def to_bytes(self):
        """Canonical serialization: m, sorted linking triples, conway low-to-high,
        signature, determinant, as compact JSON."""
        d = self.to_dict()
        payload = [d["m"], d["linking"], d["conway"], d["signature"], d["determinant"]]
        return json.dumps(payload, separators=(",", ":")).encode("ascii")

    def __str__(self):
        lk = "-" if self.linking is None else str(self.linking)
        return (f"linking: {lk}\nconway: {self.conway}\n"
                f"signature: {self.signature}\ndeterminant: {self.determinant}")


def fingerprint(S):
    table = linking_numbers(S)  # raises InvalidMatrix on non-strict input
    return InvariantFingerprint(S.m, table, conway(S), signature_invariant(S),
                                determinant_invariant(S))


def classical_fingerprint(M):
    """Fingerprint without the linking table, for unordered matrices."""
    if isinstance(M, OrderedSeifertMatrix):
        M = M.matrix
    return InvariantFingerprint(0, None, conway_of_matrix(M), signature_invariant(M),
                                determinant_invariant(M))


def _differences(f1, f2):
    return [p for p in InvariantFingerprint.PARTS if getattr(f1, p) != getattr(f2, p)]


def distinguishes(S1, S2):
    """Names of fingerprint parts that differ; [] means "not distinguished"."""
    if S1.m != S2.m:
        raise ComponentCountMismatch(f"{S1.m} vs {S2.m} components")
    return _differences(fingerprint(S1), fingerprint(S2))


def distinguishes_classical(V, W):
    return _differences(classical_fingerprint(V), classical_fingerprint(W))
