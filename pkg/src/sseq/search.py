"""Bounded search for witness move sequences between two matrices.

The procedure is a fingerprint pre-filter followed by a level-synchronous
bidirectional breadth-first search.  Nodes are matrices, keyed by
:func:`canonical_key`; edges are generator moves (elementary congruences,
bounded sparse enlargements, reductions).  Every generator has an explicit
inverse, so a meeting point yields a witness: the forward path followed by
the reversed, inverted backward path.  Witnesses are replayed before they
are returned.
"""

import itertools
from dataclasses import dataclass

from .errors import ComponentCountMismatch, DimensionMismatch, NonSquare
from .invariants import (
    InvariantFingerprint,
    classical_fingerprint,
    fingerprint,
)
from .linalg import IntMatrix
from .moves import (
    ClassicalCongruence,
    Enlarge,
    MoveSequence,
    Reduce,
    StrongCongruence,
    apply_sequence,
    enlarge_matrix,
    reduce_matrix,
)
from .seifert import OrderedSeifertMatrix

__all__ = [
    "SearchConfig",
    "Equivalent",
    "Distinguished",
    "Inconclusive",
    "canonical_key",
    "strong_equiv_bounded",
    "classical_equiv_bounded",
    "search_report",
]


@dataclass(frozen=True)
class SearchConfig:
    """Bounds for :func:`strong_equiv_bounded` / :func:`classical_equiv_bounded`.

    ``max_genus`` defaults to the larger input genus (no stabilization).
    ``enlarge_support`` is the number of nonzero coordinates allowed in
    generated enlargement data; ``max_nodes`` caps the visited-set size.
    ``seed`` is recorded in reports; the search itself is deterministic.
    """

    max_depth: int = 3
    entry_bound: int = 1
    max_genus: int = None
    mode: str = "strong"
    seed: int = 0
    enlarge_support: int = 1
    max_nodes: int = 500_000

    def __post_init__(self):
        for name in ("max_depth", "entry_bound", "enlarge_support", "max_nodes"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.max_genus is not None and self.max_genus < 0:
            raise ValueError("max_genus must be non-negative")
        if self.mode not in ("strong", "classical"):
            raise ValueError("mode must be 'strong' or 'classical'")


@dataclass(frozen=True)
class Equivalent:
    witness: MoveSequence
    meeting: IntMatrix
    target: IntMatrix
    nodes_expanded: int = 0
    verdict = "equivalent"


@dataclass(frozen=True)
class Distinguished:
    invariant: str
    first: InvariantFingerprint
    second: InvariantFingerprint
    differing: tuple = ()
    verdict = "distinguished"


@dataclass(frozen=True)
class Inconclusive:
    nodes_expanded: int
    frontier_sizes: tuple
    bound_hit: str
    depths: tuple = (0, 0)
    verdict = "inconclusive"


def canonical_key(M):
    """Injective byte encoding: shape, then each entry as length-prefixed
    two's-complement big-endian bytes."""
    parts = [M.nrows.to_bytes(4, "big"), M.ncols.to_bytes(4, "big")]
    for r in M.rows:
        for v in r:
            nbytes = (v.bit_length() + 8) // 8
            parts.append(nbytes.to_bytes(2, "big"))
            parts.append(v.to_bytes(nbytes, "big", signed=True))
    return b"".join(parts)


# -- move generation ------------------------------------------------------------

class _Generators:
    """Enumerates (descriptor, child) pairs in a fixed order.

    Descriptors: ("R", Enlarge) reduce recording the deleted data,
    ("T", i, j, c) transvection, ("F", j) sign flip, ("S", i, j) swap,
    ("E", Enlarge) enlargement.
    """

    def __init__(self, fixed, max_dim, bound, support):
        self.fixed = fixed
        self.max_dim = max_dim
        self.bound = bound
        self.support = support
        self.values = [v for v in range(-bound, bound + 1) if v]
        self._enlarge_cache = {}

    def _enlarge_data(self, n):
        if n in self._enlarge_cache:
            return self._enlarge_cache[n]
        b = self.fixed
        slots = [("xy", i) for i in range(min(b, n))] + \
                [(s, i) for i in range(b, n) for s in ("x", "y")]
        datas = []
        for form in ("A", "B"):
            for z in range(-self.bound, self.bound + 1):
                for k in range(0, self.support + 1):
                    for chosen in itertools.combinations(slots, k):
                        for vals in itertools.product(self.values, repeat=k):
                            x = [0] * n
                            y = [0] * n
                            for (s, i), v in zip(chosen, vals):
                                if s in ("xy", "x"):
                                    x[i] = v
                                if s in ("xy", "y"):
                                    y[i] = v
                            datas.append(Enlarge(form, x, y, z))
        self._enlarge_cache[n] = datas
        return datas

    def __call__(self, M):
        n = M.nrows
        b = self.fixed
        if n - 2 >= b and n >= 2:
            try:
                V, data = reduce_matrix(M)
            except ValueError:
                pass
            else:
                if data.x[:b] == data.y[:b]:
                    yield ("R", data), V
        for j in range(b, n):
            for i in range(n):
                if i == j:
                    continue
                for c in self.values:
                    yield ("T", i, j, c), M.transvect(i, j, c)
        for j in range(b, n):
            yield ("F", j), M.negate_basis(j)
        for i in range(b, n):
            for j in range(i + 1, n):
                yield ("S", i, j), M.swap_basis(i, j)
        if n + 2 <= self.max_dim:
            for data in self._enlarge_data(n):
                yield ("E", data), enlarge_matrix(M, data.form, data.x, data.y, data.z)


def _desc_to_move(desc, n, classical):
    kind = desc[0]
    wrap = ClassicalCongruence if classical else StrongCongruence
    if kind == "T":
        _, i, j, c = desc
        return wrap(IntMatrix.elementary(n, i, j, c))
    if kind == "F":
        rows = IntMatrix.identity(n).tolist()
        rows[desc[1]][desc[1]] = -1
        return wrap(IntMatrix(rows))
    if kind == "S":
        _, i, j = desc
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        return wrap(IntMatrix([[int(perm[c] == r) for c in range(n)] for r in range(n)]))
    if kind == "E":
        return desc[1]
    if kind == "R":
        return Reduce()
    raise ValueError(f"unknown descriptor {desc!r}")


def _inverse_desc(desc):
    kind = desc[0]
    if kind == "T":
        return ("T", desc[1], desc[2], -desc[3])
    if kind in ("F", "S"):
        return desc
    if kind == "E":
        return ("R", desc[1])
    if kind == "R":
        return ("E", desc[1])
    raise ValueError(f"unknown descriptor {desc!r}")


def _path(parents, key):
    """Descriptors and parent matrices from the root to ``key``."""
    steps = []
    while parents[key] is not None:
        parent, desc, pkey = parents[key]
        steps.append((parent, desc))
        key = pkey
    steps.reverse()
    return steps


def _bidirectional(start, goal, gen, cfg, classical):
    k_start, k_goal = canonical_key(start), canonical_key(goal)
    fwd = {k_start: None}
    bwd = {k_goal: None}
    if k_start == k_goal:
        return k_start, fwd, bwd, 0, None
    frontiers = {"f": [start], "b": [goal]}
    depths = {"f": 0, "b": 0}
    visited = {"f": fwd, "b": bwd}
    nodes = 0
    while True:
        open_sides = [s for s in ("f", "b") if depths[s] < cfg.max_depth and frontiers[s]]
        if not open_sides:
            exhausted = not frontiers["f"] or not frontiers["b"]
            return None, fwd, bwd, nodes, Inconclusive(
                nodes, (len(frontiers["f"]), len(frontiers["b"])),
                "exhausted" if exhausted else "max_depth", (depths["f"], depths["b"]))
        side = min(open_sides, key=lambda s: len(frontiers[s]))
        other = "b" if side == "f" else "f"
        mine, theirs = visited[side], visited[other]
        new = []
        for M in frontiers[side]:
            kM = canonical_key(M)
            for desc, child in gen(M):
                kc = canonical_key(child)
                if kc in mine:
                    continue
                mine[kc] = (M, desc, kM)
                nodes += 1
                if kc in theirs:
                    return kc, fwd, bwd, nodes, None
                if nodes >= cfg.max_nodes:
                    return None, fwd, bwd, nodes, Inconclusive(
                        nodes, (len(frontiers["f"]), len(frontiers["b"])), "max_nodes",
                        (depths["f"], depths["b"]))
                new.append(child)
        frontiers[side] = new
        depths[side] += 1


def _assemble_witness(start_value, meet_key, fwd, bwd, classical):
    moves = []
    for parent, desc in _path(fwd, meet_key):
        moves.append(_desc_to_move(desc, parent.nrows, classical))
    back = _path(bwd, meet_key)
    for parent, desc in reversed(back):
        # desc took parent -> child; its inverse acts on the child
        inv = _inverse_desc(desc)
        child_dim = parent.nrows + {"E": 2, "R": -2}.get(desc[0], 0)
        moves.append(_desc_to_move(inv, child_dim, classical))
    return MoveSequence(start_value, tuple(moves))


def _matrix(value):
    return value.matrix if isinstance(value, OrderedSeifertMatrix) else value


def _run(start_value, goal_value, fixed, max_dim, cfg, classical):
    start, goal = _matrix(start_value), _matrix(goal_value)
    gen = _Generators(fixed, max_dim, cfg.entry_bound, cfg.enlarge_support)
    meet, fwd, bwd, nodes, failure = _bidirectional(start, goal, gen, cfg, classical)
    if failure is not None:
        return failure
    witness = _assemble_witness(start_value, meet, fwd, bwd, classical)
    final, trace = apply_sequence(witness)
    if _matrix(final) != goal:
        raise AssertionError("search produced a witness that does not replay to the target")
    meeting = next(_matrix(t) for t in trace if canonical_key(_matrix(t)) == meet)
    return Equivalent(witness, meeting, goal, nodes)


def strong_equiv_bounded(S1, S2, cfg=None):
    cfg = cfg or SearchConfig()
    if S1.m != S2.m:
        raise ComponentCountMismatch(f"{S1.m} vs {S2.m} components")
    f1, f2 = fingerprint(S1), fingerprint(S2)  # also validates both strictly
    differing = [p for p in InvariantFingerprint.PARTS if getattr(f1, p) != getattr(f2, p)]
    if differing:
        return Distinguished(differing[0], f1, f2, tuple(differing))
    g_cap = max(S1.g, S2.g) if cfg.max_genus is None else cfg.max_genus
    if g_cap < max(S1.g, S2.g):
        raise ValueError("max_genus is below the genus of an input")
    return _run(S1, S2, S1.m - 1, S1.m - 1 + 2 * g_cap, cfg, classical=False)


def classical_equiv_bounded(V, W, cfg=None):
    cfg = cfg or SearchConfig(mode="classical")
    if isinstance(V, OrderedSeifertMatrix):
        V = V.matrix
    if isinstance(W, OrderedSeifertMatrix):
        W = W.matrix
    if not V.is_square() or not W.is_square():
        raise NonSquare("classical search needs square matrices")
    if V.nrows % 2 != W.nrows % 2:
        raise DimensionMismatch("enlargements preserve the parity of the matrix size")
    f1, f2 = classical_fingerprint(V), classical_fingerprint(W)
    differing = [p for p in ("conway", "signature", "determinant")
                 if getattr(f1, p) != getattr(f2, p)]
    if differing:
        return Distinguished(differing[0], f1, f2, tuple(differing))
    # an n x n matrix counts as genus n // 2 here
    start_genus = max(V.nrows, W.nrows) // 2
    g_cap = start_genus if cfg.max_genus is None else cfg.max_genus
    if g_cap < start_genus:
        raise ValueError("max_genus is below the genus of an input")
    return _run(V, W, 0, V.nrows % 2 + 2 * g_cap, cfg, classical=True)


def search_report(outcome, cfg=None):
    """A JSON-ready dict plus a human-readable text rendering."""
    data = {"verdict": outcome.verdict}
    if cfg is not None:
        data["config"] = {
            "max_depth": cfg.max_depth, "entry_bound": cfg.entry_bound,
            "max_genus": cfg.max_genus, "mode": cfg.mode, "seed": cfg.seed,
            "enlarge_support": cfg.enlarge_support, "max_nodes": cfg.max_nodes,
        }
    lines = []
    if isinstance(outcome, Equivalent):
        final, _ = apply_sequence(outcome.witness)
        replay = "pass" if _matrix(final) == outcome.target else "fail"
        data.update({
            "move_count": len(outcome.witness),
            "kinds": outcome.witness.kinds,
            "meeting": outcome.meeting.tolist(),
            "nodes_expanded": outcome.nodes_expanded,
            "replay": replay,
        })
        lines.append(f"EQUIVALENT: witness of {len(outcome.witness)} moves "
                     f"({outcome.witness.kinds or 'empty'}), replay check = {replay}")
        lines.append(f"meeting matrix:\n{outcome.meeting}")
    elif isinstance(outcome, Distinguished):
        data.update({
            "invariant": outcome.invariant,
            "differing": list(outcome.differing),
            "first": outcome.first.to_dict(),
            "second": outcome.second.to_dict(),
        })
        lines.append(f"DISTINGUISHED by {outcome.invariant}")
        lines.append(f"  first : {getattr(outcome.first, outcome.invariant)}")
        lines.append(f"  second: {getattr(outcome.second, outcome.invariant)}")
    else:
        data.update({
            "nodes_expanded": outcome.nodes_expanded,
            "frontier_sizes": list(outcome.frontier_sizes),
            "depths": list(outcome.depths),
            "bound_hit": outcome.bound_hit,
        })
        lines.append(f"INCONCLUSIVE: bound {outcome.bound_hit} hit after "
                     f"{outcome.nodes_expanded} nodes (frontiers {list(outcome.frontier_sizes)})")
    return data, "\n".join(lines)
